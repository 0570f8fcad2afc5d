#include "torfan/catalog.hpp"

#include "torfan/fan_json.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace torfan {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Builtin: return "builtin";
    case Provenance::Constructed: return "constructed";
    case Provenance::External: return "external";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Reference constructions

Fan join_fan(int dim, std::vector<IntVector> rays, const std::vector<std::vector<int>>& groups,
             std::string name) {
  std::vector<Cone> cones{Cone{}};
  for (const auto& group : groups) {
    std::vector<Cone> next;
    for (const Cone& partial : cones) {
      for (int skip : group) {
        Cone c = partial;
        for (int r : group)
          if (r != skip) c = c.with(r);
        next.push_back(c);
      }
    }
    cones = std::move(next);
  }
  return Fan(dim, std::move(rays), std::move(cones), std::move(name));
}

namespace {

IntVector v2(long a, long b) { return int_vector({a, b}); }
IntVector v3(long a, long b, long c) { return int_vector({a, b, c}); }
IntVector v4(long a, long b, long c, long d) { return int_vector({a, b, c, d}); }

// Complete 2-dimensional fan from rays listed in cyclic order.
Fan polygon_fan(std::vector<IntVector> rays, std::string name) {
  std::vector<Cone> cones;
  const int m = static_cast<int>(rays.size());
  for (int i = 0; i < m; ++i) cones.push_back(Cone{i, (i + 1) % m});
  return Fan(2, std::move(rays), std::move(cones), std::move(name));
}

Fan blow_up(const Fan& f, int a, int b) { return star_subdivide(f, Cone{a, b}).fan; }

// The seven base 4-folds, rays as given: base simplex {u1,u2,u3} or pair {u2,u3}, then fiber pairs.
const std::vector<std::vector<int>> kDTower{{0, 1, 2}, {3, 4}, {5, 6}};
const std::vector<std::vector<int>> kLTower{{1, 2}, {3, 4}, {5, 6}, {0, 7}};

struct Recipe {
  Provenance provenance;
  std::function<Fan()> build;
};

const std::vector<std::pair<std::string, Recipe>>& recipes() {
  static const std::vector<std::pair<std::string, Recipe>> table = [] {
    using P = Provenance;
    std::vector<std::pair<std::string, Recipe>> t;
    auto add = [&t](std::string name, P p, std::function<Fan()> build) {
      t.emplace_back(name, Recipe{p, [name, build] { return build().named(name); }});
    };
    auto get = [](const std::string& name) { return builtin_fan(name); };

    add("P1", P::Builtin, [] { return projective_space(1); });
    add("P2", P::Builtin, [] { return projective_space(2); });
    add("P3", P::Builtin, [] { return projective_space(3); });
    add("P4", P::Builtin, [] { return projective_space(4); });
    add("F1", P::Builtin, [] { return hirzebruch(1); });
    add("F2", P::Builtin, [] { return hirzebruch(2); });
    add("Bl2P2", P::Builtin, [] {
      return polygon_fan({v2(1, 0), v2(1, 1), v2(0, 1), v2(-1, 0), v2(-1, -1)}, {});
    });
    add("Bl3P2", P::Builtin, [] {
      return polygon_fan({v2(1, 0), v2(1, 1), v2(0, 1), v2(-1, 0), v2(-1, -1), v2(0, -1)}, {});
    });
    add("P1xP1", P::Constructed, [get] { return product(get("P1"), get("P1")); });
    add("P1xP2", P::Constructed, [get] { return product(get("P1"), get("P2")); });
    add("P1xP3", P::Constructed, [get] { return product(get("P1"), get("P3")); });
    add("P2xP2", P::Constructed, [get] { return product(get("P2"), get("P2")); });
    add("P1xP1xP1", P::Constructed, [get] { return product(get("P1"), get("P1xP1")); });
    add("F1xP1", P::Constructed, [get] { return product(get("F1"), get("P1")); });
    add("F1xP2", P::Constructed, [get] { return product(get("F1"), get("P2")); });
    add("Bl2P2xP2", P::Constructed, [get] { return product(get("Bl2P2"), get("P2")); });
    add("PP2(O+O(1))", P::Builtin, [] { return p2_bundle(1); });
    add("PP2(O+O(2))", P::Builtin, [] { return p2_bundle(2); });
    add("PP1xP1(O(-1,-1)+O)", P::Builtin, [] { return p1xp1_bundle(1, 1); });
    add("PP1xP1(O(0,-1)+O(-1,0))", P::Builtin, [] { return p1xp1_bundle(1, -1); });

    add("D5", P::Builtin, [] {
      return join_fan(4, {v4(1, 0, 0, 0), v4(0, 1, 0, 0), v4(-1, -1, 2, 0), v4(0, 0, 1, 0), v4(0, 0, -1, 0),
                          v4(0, 0, 0, 1), v4(0, 0, 0, -1)},
                      kDTower);
    });
    add("D3", P::Builtin, [] {
      return join_fan(4, {v4(1, 0, 0, 0), v4(0, 1, 0, 0), v4(-1, -1, 1, 1), v4(0, 0, 1, 0), v4(0, 0, -1, 1),
                          v4(0, 0, 0, 1), v4(0, 0, 0, -1)},
                      kDTower);
    });
    add("D16", P::Builtin, [] {
      return join_fan(4, {v4(1, 0, 0, 0), v4(0, 1, 0, 0), v4(-1, -1, 1, -1), v4(0, 0, 1, 0), v4(0, 0, -1, 1),
                          v4(0, 0, 0, 1), v4(0, 0, 0, -1)},
                      kDTower);
    });
    add("L1", P::Builtin, [] {
      return join_fan(4, {v4(1, 0, 0, 0), v4(0, 1, 0, 0), v4(1, -1, 0, 0), v4(0, 0, 1, 0), v4(1, 0, -1, 0),
                          v4(0, 0, 0, 1), v4(1, 0, 0, -1), v4(-1, 0, 0, 0)},
                      kLTower);
    });
    add("L2", P::Builtin, [] {
      return join_fan(4, {v4(1, 0, 0, 0), v4(0, 1, 0, 0), v4(1, -1, 0, 0), v4(0, 0, 1, 0), v4(1, -1, -1, 0),
                          v4(0, 0, 0, 1), v4(1, -1, 0, -1), v4(-1, 0, 0, 0)},
                      kLTower);
    });
    add("L3", P::Builtin, [] {
      return join_fan(4, {v4(1, 0, 0, 0), v4(0, 1, 0, 0), v4(1, -1, 0, 0), v4(0, 0, 1, 0), v4(1, 0, -1, 0),
                          v4(0, 0, 0, 1), v4(0, 0, 1, -1), v4(-1, 0, 0, 0)},
                      kLTower);
    });
    add("L11", P::Builtin, [] {
      return join_fan(4, {v4(1, 0, 0, 0), v4(0, 1, 0, 0), v4(0, -1, 0, 0), v4(0, 0, 1, 0), v4(0, -1, -1, 0),
                          v4(0, 0, 0, 1), v4(0, 1, 0, -1), v4(-1, 0, 0, 0)},
                      kLTower);
    });

    // Blow-up chains; centers are 0-based ray indices.
    add("H3", P::Constructed, [get] { return blow_up(get("D5"), 3, 5); });
    add("K1", P::Constructed, [get] { return blow_up(get("H3"), 4, 6); });
    add("H2", P::Constructed, [get] { return blow_up(get("D3"), 3, 6); });
    add("K2", P::Constructed, [get] { return blow_up(get("H2"), 4, 6); });
    add("H5", P::Constructed, [get] { return blow_up(get("D16"), 3, 6); });
    add("K3", P::Constructed, [get] { return blow_up(get("H5"), 4, 6); });
    add("K4", P::Constructed, [get] { return product(get("Bl3P2"), get("P2")); });
    add("Q3", P::Constructed, [get] { return blow_up(get("L1"), 2, 7); });
    add("U1", P::Constructed, [get] { return blow_up(get("Q3"), 1, 7); });
    add("Q13", P::Constructed, [get] { return blow_up(get("L2"), 1, 7); });
    add("Q5", P::Constructed, [get] { return blow_up(get("L3"), 1, 7); });
    add("U2", P::Constructed, [get] { return blow_up(get("Q5"), 2, 7); });
    add("Q16", P::Constructed, [get] { return blow_up(get("L11"), 0, 2); });
    add("U8", P::Constructed, [get] { return blow_up(get("Q16"), 1, 7); });
    add("Bl3P2xP1xP1", P::Constructed, [get] { return product(get("Bl3P2"), get("P1xP1")); });
    add("Bl3P2xBl3P2", P::Constructed, [get] { return product(get("Bl3P2"), get("Bl3P2")); });
    return t;
  }();
  return table;
}

const Recipe* find_recipe(const std::string& name) {
  for (const auto& [n, r] : recipes())
    if (n == name) return &r;
  return nullptr;
}

std::string available_names() {
  std::string s;
  for (const auto& n : builtin_names()) s += (s.empty() ? "" : ", ") + n;
  return s;
}

}  // namespace

Fan projective_space(int n) {
  if (n < 1) throw Error("projective space needs dimension >= 1");
  std::vector<IntVector> rays;
  IntVector last = IntVector::Zero(n);
  for (int i = 0; i < n; ++i) {
    rays.push_back(unit_vector(n, i));
    last(i) = -1;
  }
  rays.push_back(last);
  std::vector<int> all(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) all[static_cast<std::size_t>(i)] = i;
  return join_fan(n, std::move(rays), {all}, "P" + std::to_string(n));
}

Fan hirzebruch(int a) {
  return polygon_fan({v2(1, 0), v2(0, 1), v2(-1, a), v2(0, -1)}, "F" + std::to_string(a));
}

Fan p2_bundle(int a) {
  return join_fan(3, {v3(1, 0, 0), v3(0, 1, 0), v3(-1, -1, a), v3(0, 0, 1), v3(0, 0, -1)}, {{0, 1, 2}, {3, 4}});
}

Fan p1xp1_bundle(int a, int b) {
  return join_fan(3, {v3(1, 0, 0), v3(-1, 0, a), v3(0, 1, 0), v3(0, -1, b), v3(0, 0, 1), v3(0, 0, -1)},
                  {{0, 1}, {2, 3}, {4, 5}});
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [n, r] : recipes()) out.push_back(n);
    return out;
  }();
  return names;
}

Fan builtin_fan(const std::string& name) {
  const Recipe* r = find_recipe(name);
  if (!r) throw Error("unknown builtin '" + name + "'; available: " + available_names());
  return r->build();
}

CatalogEntry builtin(const std::string& name) {
  for (const auto& e : builtin_catalog())
    if (e.name == name) return e;
  throw Error("unknown builtin '" + name + "'; available: " + available_names());
}

const std::vector<CatalogEntry>& builtin_catalog() {
  static const std::vector<CatalogEntry> catalog = [] {
    std::vector<CatalogEntry> out;
    for (const auto& [n, r] : recipes()) {
      Fan f = r.build();
      InvariantsSummary inv = invariants_summary(f);
      out.push_back({n, std::move(f), r.provenance, std::move(inv)});
    }
    return out;
  }();
  return catalog;
}

// ---------------------------------------------------------------------------
// External databases

Database parse_database(const std::string& text, const std::string& source) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& err) {
    const std::size_t upto = std::min(err.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw Error(source + ":" + std::to_string(line) + ": JSON parse error: " + err.what());
  }
  if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array())
    throw Error(source + ": expected an object with an \"entries\" array");

  Database db;
  for (std::size_t k = 0; k < doc["entries"].size(); ++k) {
    const Json& ej = doc["entries"][k];
    std::string name = "entry-" + std::to_string(k);
    if (ej.is_object() && ej.contains("name") && ej["name"].is_string()) name = ej["name"].get<std::string>();
    try {
      Fan f = fan_from_json(ej);
      const ValidationReport report = validate(f);
      if (!report.ok()) {
        db.rejected.push_back({k, name, "not smooth and complete: " + report.failures.front().message});
        continue;
      }
      f = f.named(name);
      InvariantsSummary inv = invariants_summary(f);
      CatalogEntry entry{name, std::move(f), Provenance::External, std::move(inv)};
      for (const CatalogEntry& earlier : db.entries) {
        if (earlier.invariants == entry.invariants && fan_isomorphic(earlier.fan, entry.fan)) {
          db.duplicates.push_back({k, name, "isomorphic to " + earlier.name});
          break;
        }
      }
      db.entries.push_back(std::move(entry));
    } catch (const Error& err) {
      db.rejected.push_back({k, name, err.what()});
    }
  }
  return db;
}

Database load_database(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(path + ": cannot open database");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_database(buffer.str(), path);
}

std::vector<Match> identify(const Fan& f, const std::vector<CatalogEntry>& db) {
  std::vector<Match> out;
  if (!validate(f).ok()) return out;
  const InvariantsSummary inv = invariants_summary(f);
  for (const CatalogEntry& e : db) {
    if (!(e.invariants == inv)) continue;
    if (auto m = fan_isomorphic(f, e.fan)) out.push_back({e.name, *m});
  }
  return out;
}

std::vector<std::string> admissible_drop3_targets(int rho) {
  if (rho == 5) return {"P1xP2", "PP2(O+O(1))", "PP2(O+O(2))"};
  if (rho == 6) return {"P1xP1xP1", "F1xP1", "PP1xP1(O(-1,-1)+O)", "PP1xP1(O(0,-1)+O(-1,0))"};
  return {};
}

}  // namespace torfan
