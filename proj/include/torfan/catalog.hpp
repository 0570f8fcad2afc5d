// Builtin fans (conic-bundle 4-folds, their blow-ups and reference targets),
// external databases, and identification up to fan isomorphism.
#pragma once

#include "torfan/fano.hpp"

#include <optional>
#include <string>
#include <vector>

namespace torfan {

enum class Provenance { Builtin, Constructed, External };

std::string to_string(Provenance p);

struct CatalogEntry {
  std::string name;
  Fan fan;
  Provenance provenance = Provenance::Builtin;
  InvariantsSummary invariants;
};

// Reference constructions.
Fan projective_space(int n);
Fan hirzebruch(int a);
/// P_{P^2}(O + O(a)).
Fan p2_bundle(int a);
/// P_{P^1 x P^1}(O + O(a, b)).
Fan p1xp1_bundle(int a, int b);
/// Maximal cones are joins over `groups`, choosing all but one ray of each
/// group. A group of two rays is a P^1-fiber pair; larger groups are
/// projective-space simplices with twisted coordinates.
Fan join_fan(int dim, std::vector<IntVector> rays, const std::vector<std::vector<int>>& groups,
             std::string name = {});

/// Every builtin name in catalog order.
const std::vector<std::string>& builtin_names();

/// Throws Error("unknown builtin '...'; available: ...").
CatalogEntry builtin(const std::string& name);
Fan builtin_fan(const std::string& name);

/// All builtin entries, invariants computed once.
const std::vector<CatalogEntry>& builtin_catalog();

struct DatabaseEntryDiagnostic {
  std::size_t entry = 0;
  std::string name;
  std::string message;
};

struct Database {
  std::vector<CatalogEntry> entries;
  std::vector<DatabaseEntryDiagnostic> rejected;
  std::vector<DatabaseEntryDiagnostic> duplicates;  // kept, but flagged
};

/// Reads {"entries": [fan...]}. I/O and top-level schema problems throw
/// Error with file and line context; bad entries land in `rejected`.
Database load_database(const std::string& path);
Database parse_database(const std::string& text, const std::string& source = "<memory>");

struct Match {
  std::string name;
  IntMatrix isomorphism;  // maps rays of the query onto rays of the entry
};

/// Entries with the same invariants summary, confirmed by fan_isomorphic.
std::vector<Match> identify(const Fan& f, const std::vector<CatalogEntry>& db);

/// Targets of a drop-3 Fano conic bundle from a 4-fold with the given Picard
/// rank: P^1 x P^2, P(O+O(1)), P(O+O(2)) for rank 5; P^1 x P^1 x P^1,
/// F_1 x P^1, P(O(-1,-1)+O), P(O(0,-1)+O(-1,0)) for rank 6. Empty otherwise.
std::vector<std::string> admissible_drop3_targets(int picard_rank_of_source);

}  // namespace torfan
