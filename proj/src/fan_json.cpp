#include "torfan/fan_json.hpp"

namespace torfan {

namespace {

Integer integer_from(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw Error(where + ": expected an integer");
  if (v.is_number_unsigned()) return Integer(v.get<std::uint64_t>());
  return Integer(v.get<std::int64_t>());
}

}  // namespace

Fan fan_from_json(const Json& j) {
  if (!j.is_object()) throw Error("fan: expected a JSON object");
  std::string name;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw Error("fan: \"name\" must be a string");
    name = j["name"].get<std::string>();
  }
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<long long>() < 1)
    throw Error("fan: \"dim\" must be a positive integer");
  const int n = j["dim"].get<int>();
  if (!j.contains("rays") || !j["rays"].is_array()) throw Error("fan: \"rays\" must be an array");
  if (!j.contains("max_cones") || !j["max_cones"].is_array())
    throw Error("fan: \"max_cones\" must be an array");

  std::vector<IntVector> rays;
  for (std::size_t i = 0; i < j["rays"].size(); ++i) {
    const Json& r = j["rays"][i];
    const std::string where = "fan: ray " + std::to_string(i);
    if (!r.is_array() || static_cast<int>(r.size()) != n)
      throw Error(where + ": expected " + std::to_string(n) + " integers");
    IntVector v(n);
    for (int k = 0; k < n; ++k) v(k) = integer_from(r[static_cast<std::size_t>(k)], where);
    if (is_zero(v)) throw Error(where + ": zero vector");
    if (!is_primitive(v)) throw Error(where + ": not primitive");
    rays.push_back(std::move(v));
  }

  std::vector<Cone> cones;
  for (std::size_t c = 0; c < j["max_cones"].size(); ++c) {
    const Json& cj = j["max_cones"][c];
    const std::string where = "fan: max cone " + std::to_string(c);
    if (!cj.is_array()) throw Error(where + ": expected an array of ray indices");
    std::vector<int> idx;
    for (const Json& x : cj) {
      if (!x.is_number_integer()) throw Error(where + ": expected an array of ray indices");
      const long long k = x.get<long long>();
      if (k < 0 || k >= static_cast<long long>(rays.size()))
        throw Error("malformed fan: " + where + " has index " + std::to_string(k) + " out of range");
      idx.push_back(static_cast<int>(k));
    }
    cones.emplace_back(std::move(idx));
  }
  return Fan(n, std::move(rays), std::move(cones), std::move(name));
}

Json vector_to_json(const IntVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_int64(v(i)));
  return out;
}

Json matrix_to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back(vector_to_json(m.row(i).transpose()));
  return out;
}

Json cone_to_json(const Cone& c) { return Json(c.rays()); }

Json fan_to_json(const Fan& f) {
  Json out;
  if (!f.name().empty()) out["name"] = f.name();
  out["dim"] = f.dim();
  out["rays"] = Json::array();
  for (const auto& r : f.rays()) out["rays"].push_back(vector_to_json(r));
  out["max_cones"] = Json::array();
  for (const Cone& c : f.max_cones()) out["max_cones"].push_back(cone_to_json(c));
  return out;
}

}  // namespace torfan
