#include "torfan/cli.hpp"

#include "torfan/conic.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace torfan {

std::string CommandResult::render() const { return (pretty ? payload.dump(2) : payload.dump()) + "\n"; }

namespace {

struct UsageFailure : Error {
  using Error::Error;
};

struct InvalidFan : Error {
  InvalidFan(const std::string& what, Json report) : Error(what), report(std::move(report)) {}
  Json report;
};

Fan load_fan(const std::string& arg) {
  if (!arg.empty() && arg.front() == '@') {
    try {
      return builtin_fan(arg.substr(1));
    } catch (const Error& err) {
      throw UsageFailure(err.what());
    }
  }
  std::ifstream in(arg);
  if (!in) throw UsageFailure(arg + ": cannot open fan file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  Json j;
  try {
    j = Json::parse(buffer.str());
  } catch (const Json::parse_error& err) {
    throw InvalidFan(arg + ": " + err.what(), Json{{"error", err.what()}});
  }
  try {
    return fan_from_json(j);
  } catch (const Error& err) {
    throw InvalidFan(arg + ": " + err.what(), Json{{"error", err.what()}});
  }
}

Json report_json(const ValidationReport& r) {
  Json failures = Json::array();
  for (const Finding& f : r.failures) failures.push_back({{"message", f.message}, {"cones", f.cones}});
  return {{"is_simplicial", r.is_simplicial},
          {"is_smooth", r.is_smooth},
          {"is_complete", r.is_complete},
          {"proper_intersections", r.proper_intersections},
          {"projective", "assumed"},
          {"failures", failures}};
}

void require_valid(const Fan& f) {
  const ValidationReport r = validate(f);
  if (!r.ok()) throw InvalidFan("fan is not smooth and complete: " + r.failures.front().message, report_json(r));
}

Json integer_json(const Integer& x) { return to_int64(x); }

Json wall_json(const Wall& w) {
  return {{"rays", cone_to_json(w.cone)},
          {"adjacent", w.adjacent},
          {"opposite", w.opposite},
          {"relation", vector_to_json(w.relation)}};
}

Json invariants_json(const InvariantsSummary& s) {
  Json j{{"picard_rank", s.picard_rank}, {"ray_count", s.ray_count}, {"cone_counts", s.cone_counts},
         {"is_fano", s.is_fano}};
  if (s.degree) j["degree"] = integer_json(*s.degree);
  return j;
}

Json certificate_json(const LefschetzCertificate& c) {
  return {{"lower", c.lower},
          {"upper", c.upper ? Json(*c.upper) : Json(nullptr)},
          {"value", c.value ? Json(*c.value) : Json(nullptr)},
          {"rule", c.rule},
          {"witness_ray", c.witness_ray}};
}

Json names_json(const std::vector<Match>& matches) {
  Json out = Json::array();
  for (const Match& m : matches) out.push_back(m.name);
  return out;
}

Json factorization_json(const ConicBundleFactorization& cb) {
  Json steps = Json::array();
  for (const BlowDown& s : cb.steps) {
    Json center = Json::array();
    for (int r : s.center.rays()) center.push_back(vector_to_json(s.fan.ray(r)));
    steps.push_back({{"exceptional_ray", vector_to_json(s.morphism.source.ray(s.exceptional))}, {"center", center}});
  }
  Json classes = Json::array();
  for (const auto& c : cb.contracted_classes) classes.push_back(vector_to_json(c));
  Json j{{"steps", steps},
         {"quotient_kernel", vector_to_json(cb.elementary.source.ray(cb.fiber_pair.first))},
         {"matrix", matrix_to_json(cb.composite_map)},
         {"relative_drop", cb.relative_drop},
         {"target", fan_to_json(cb.target)},
         {"target_identified", names_json(identify(cb.target, builtin_catalog()))},
         {"contracted_classes", classes}};
  try {
    const DiscriminantData d = discriminant(cb);
    Json comps = Json::array();
    for (const auto& c : d.components) {
      Json orbit = fan_to_json(c.orbit_fan);
      comps.push_back({{"target_ray", c.target_ray},
                       {"exceptional", c.exceptional},
                       {"strict_transform", c.strict},
                       {"surface", orbit},
                       {"surface_identified", names_json(identify(c.orbit_fan, builtin_catalog()))}});
    }
    j["discriminant"] = {{"components", comps}, {"pairwise_disjoint", d.pairwise_disjoint}};
  } catch (const Error& err) {
    j["discriminant"] = {{"error", err.what()}};
  }
  return j;
}

std::pair<int, int> parse_pair(const std::string& text, const std::string& flag) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument("missing comma");
    std::size_t used = 0;
    const int a = std::stoi(text.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument("trailing characters");
    const std::string rest = text.substr(comma + 1);
    const int b = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("trailing characters");
    return {a, b};
  } catch (const std::exception&) {
    throw UsageFailure(flag + " expects two comma-separated indices, got '" + text + "'");
  }
}

}  // namespace

CommandResult run(const std::vector<std::string>& args) {
  CommandResult result;
  CLI::App app{"Toric fan toolkit: validation, contractions, Fano tests, conic bundles", "torfan"};
  app.require_subcommand(1);
  app.add_flag("--pretty", result.pretty, "Indent the JSON output");

  std::string fan_arg, center, pair, db_path, entry_name;
  int ray = -1, drop = 0;
  std::function<Json()> action;

  auto fan_command = [&](const std::string& name, const std::string& help, std::function<Json(const Fan&)> body) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("fan", fan_arg, "Fan JSON file or @builtin")->required();
    sub->callback([&, body] { action = [&, body] { return body(load_fan(fan_arg)); }; });
    return sub;
  };

  fan_command("validate", "Check simplicial, smooth, complete and proper intersections", [&](const Fan& f) {
    const ValidationReport r = validate(f);
    if (!r.ok()) throw InvalidFan(r.failures.front().message, report_json(r));
    return report_json(r);
  });
  fan_command("walls", "List walls with their relations", [&](const Fan& f) {
    require_valid(f);
    Json out = Json::array();
    for (const Wall& w : walls(f)) out.push_back(wall_json(w));
    return Json{{"walls", out}};
  });
  fan_command("contractions", "Classify extremal contractions", [&](const Fan& f) {
    require_valid(f);
    Json out = Json::array();
    for (const ExtremalRay& er : extremal_rays(f)) {
      Json ws = Json::array();
      for (const Wall& w : er.walls) ws.push_back(cone_to_json(w.cone));
      out.push_back({{"class", vector_to_json(er.curve.intersections)},
                     {"walls", ws},
                     {"kind", to_string(er.type.kind)},
                     {"alpha", er.type.alpha},
                     {"zeros", er.type.zeros},
                     {"exc_dim", er.type.exc_dim},
                     {"image_dim", er.type.image_dim}});
    }
    return Json{{"extremal_rays", out}};
  });
  fan_command("blowup", "Star subdivision along a 2-cone", [&](const Fan& f) {
    require_valid(f);
    const auto [a, b] = parse_pair(center, "--center");
    const StarSubdivision s = star_subdivide(f, Cone{a, b});
    return Json{{"fan", fan_to_json(s.fan)}, {"new_ray", s.new_ray}};
  })->add_option("--center", center, "Two ray indices i,j")->required();
  fan_command("blowdown", "Contract an exceptional divisor", [&](const Fan& f) {
    require_valid(f);
    const BlowDown b = blow_down_ray(f, ray);
    return Json{{"fan", fan_to_json(b.fan)}, {"center", cone_to_json(b.center)}, {"exceptional", b.exceptional}};
  })->add_option("--ray", ray, "Ray index")->required();
  fan_command("quotient", "Project along a P^1-bundle direction", [&](const Fan& f) {
    require_valid(f);
    const auto [a, b] = parse_pair(pair, "--pair");
    const ToricMorphism m = contract_fiber_pair(f, a, b);
    return Json{{"matrix", matrix_to_json(m.matrix)},
                {"kernel", vector_to_json(f.ray(a))},
                {"target", fan_to_json(m.target)},
                {"identified", names_json(identify(m.target, builtin_catalog()))}};
  })->add_option("--pair", pair, "Two ray indices i,j with u_i = -u_j")->required();
  fan_command("fano", "Fano test via wall relations", [&](const Fan& f) {
    require_valid(f);
    const FanoReport r = is_fano(f);
    return Json{{"is_fano", r.is_fano}, {"min_degree", integer_json(r.min_degree)},
                {"witness_wall", wall_json(r.witness_wall)}};
  });
  fan_command("degree", "Anticanonical degree (-K)^n", [&](const Fan& f) {
    require_valid(f);
    return Json{{"dim", f.dim()}, {"degree", integer_json(anticanonical_degree_top(f))}};
  });
  fan_command("conic", "Search conic bundles with a given Picard drop", [&](const Fan& f) {
    require_valid(f);
    Json out = Json::array();
    for (const auto& cb : search_conic_bundles(f, drop)) out.push_back(factorization_json(cb));
    return Json{{"drop", drop}, {"factorizations", out}};
  })->add_option("--drop", drop, "Relative Picard drop")->required()->check(CLI::PositiveNumber);
  fan_command("delta", "Lefschetz defect certificate", [&](const Fan& f) {
    require_valid(f);
    return certificate_json(lefschetz_defect(f));
  });
  fan_command("theorem-check", "Check the drop-3 conic bundle criterion on one 4-fold", [&](const Fan& f) {
    require_valid(f);
    const MainTheoremReport r = main_theorem_report(f);
    Json targets = Json::array();
    for (const auto& t : r.targets)
      targets.push_back({{"identified", t.identified}, {"admissible", t.admissible}});
    return Json{{"is_product_of_surfaces", r.is_product_of_surfaces},
                {"delta", certificate_json(r.delta)},
                {"has_drop3_conic_bundle", !r.drop3.empty()},
                {"targets", targets},
                {"rho_in_range", r.rho_in_range},
                {"consistent", r.consistent}};
  });
  fan_command("identify", "Find isomorphic entries in a catalog", [&](const Fan& f) {
    require_valid(f);
    std::vector<CatalogEntry> external;
    const std::vector<CatalogEntry>* db = &builtin_catalog();
    if (!db_path.empty()) {
      if (!std::ifstream(db_path)) throw UsageFailure(db_path + ": cannot open database");
      Database loaded = load_database(db_path);
      for (const auto& d : loaded.rejected)
        result.diagnostics += "rejected entry " + std::to_string(d.entry) + " (" + d.name + "): " + d.message + "\n";
      for (const auto& d : loaded.duplicates)
        result.diagnostics += "duplicate entry " + std::to_string(d.entry) + " (" + d.name + "): " + d.message + "\n";
      external = std::move(loaded.entries);
      db = &external;
    }
    Json matches = Json::array();
    for (const Match& m : identify(f, *db)) matches.push_back({{"name", m.name}, {"matrix", matrix_to_json(m.isomorphism)}});
    return Json{{"matches", matches}};
  })->add_option("--db", db_path, "Database JSON file");

  CLI::App* catalog = app.add_subcommand("catalog", "Builtin fans");
  catalog->require_subcommand(1);
  catalog->add_subcommand("dump", "All builtin fans as a database document")->callback([&] {
    action = [] {
      Json entries = Json::array();
      for (const auto& name : builtin_names()) entries.push_back(fan_to_json(builtin_fan(name)));
      return Json{{"entries", entries}};
    };
  });
  CLI::App* get = catalog->add_subcommand("get", "One builtin entry with invariants");
  get->add_option("name", entry_name, "Builtin name")->required();
  get->callback([&] {
    action = [&] {
      CatalogEntry e;
      try {
        e = builtin(entry_name);
      } catch (const Error& err) {
        throw UsageFailure(err.what());
      }
      return Json{{"name", e.name}, {"provenance", to_string(e.provenance)}, {"fan", fan_to_json(e.fan)},
                  {"invariants", invariants_json(e.invariants)}};
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    result.payload = {{"usage", app.help()}};
    return result;
  } catch (const CLI::CallForAllHelp&) {
    result.payload = {{"usage", app.help("", CLI::AppFormatMode::All)}};
    return result;
  } catch (const CLI::ParseError& err) {
    result.status = Status::UsageError;
    result.payload = {{"error", err.what()}};
    result.diagnostics = std::string(err.what()) + "\n" + app.help();
    return result;
  }

  try {
    result.payload = action();
  } catch (const UsageFailure& err) {
    result.status = Status::UsageError;
    result.payload = {{"error", err.what()}};
    result.diagnostics += err.what();
  } catch (const InvalidFan& err) {
    result.status = Status::ValidationFailure;
    result.payload = err.report;
    result.diagnostics += err.what();
  } catch (const CertificationError& err) {
    result.status = Status::ValidationFailure;
    result.payload = {{"error", err.what()}, {"lower", err.certificate.lower},
                      {"witness_ray", err.certificate.witness_ray}};
    result.diagnostics += err.what();
  } catch (const Error& err) {
    result.status = Status::ValidationFailure;
    result.payload = {{"error", err.what()}};
    result.diagnostics += err.what();
  }
  return result;
}

}  // namespace torfan
