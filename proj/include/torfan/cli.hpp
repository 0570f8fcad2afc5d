// Command-line front end: one JSON document per invocation.
#pragma once

#include "torfan/fan_json.hpp"

#include <string>
#include <vector>

namespace torfan {

enum class Status { Ok = 0, ValidationFailure = 1, UsageError = 2 };

struct CommandResult {
  Status status = Status::Ok;
  Json payload;
  std::string diagnostics;  // for standard error
  bool pretty = false;

  int exit_code() const { return static_cast<int>(status); }
  /// The payload as written to standard output, newline-terminated.
  std::string render() const;
};

/// `args` excludes the program name.
CommandResult run(const std::vector<std::string>& args);

}  // namespace torfan
