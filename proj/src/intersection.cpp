#include "torfan/intersection.hpp"

namespace torfan {

std::vector<int> Wall::involved_rays() const {
  std::vector<int> out = cone.rays();
  out.push_back(opposite[0]);
  out.push_back(opposite[1]);
  return out;
}

std::vector<Wall> walls(const Fan& f) {
  const int n = f.dim();
  const auto& cones = f.max_cones();
  std::vector<Wall> out;
  for (const auto& inc : facet_incidences(f)) {
    if (inc.cones.size() != 2)
      throw Error("walls undefined: facet shared by " + std::to_string(inc.cones.size()) +
                  " maximal cones (fan not complete)");
    Wall w;
    w.cone = inc.facet;
    for (int s = 0; s < 2; ++s) {
      w.adjacent[static_cast<std::size_t>(s)] = inc.cones[static_cast<std::size_t>(s)];
      for (int r : cones[static_cast<std::size_t>(inc.cones[static_cast<std::size_t>(s)])].rays())
        if (!inc.facet.contains(r)) w.opposite[static_cast<std::size_t>(s)] = r;
    }
    const std::vector<int> involved = w.involved_rays();
    IntMatrix m(n, static_cast<Eigen::Index>(involved.size()));
    for (std::size_t k = 0; k < involved.size(); ++k) m.col(static_cast<Eigen::Index>(k)) = f.ray(involved[k]);
    const auto ker = kernel_basis(m);
    if (ker.size() != 1) throw Error("walls undefined: degenerate wall " + std::to_string(out.size()));
    IntVector local = ker.front();
    const auto n_idx = static_cast<Eigen::Index>(involved.size() - 2);
    const Integer lead = local(n_idx);
    if (lead == 0 || local(n_idx + 1) != lead)
      throw Error("walls undefined: relation across wall is not of smooth shape");
    w.relation = IntVector::Zero(f.ray_count());
    for (std::size_t k = 0; k < involved.size(); ++k) {
      const Integer& c = local(static_cast<Eigen::Index>(k));
      if (c % lead != 0) throw Error("walls undefined: wall relation is not integral");
      w.relation(involved[k]) = c / lead;
    }
    out.push_back(std::move(w));
  }
  return out;
}

CurveClass curve_class(const Fan&, const Wall& w) { return CurveClass{w.relation}; }

int picard_rank(const Fan& f) { return f.ray_count() - f.dim(); }

int n1_span_of_divisor(const Fan& f, const std::vector<Wall>& all_walls, int ray) {
  if (ray < 0 || ray >= f.ray_count()) throw Error("ray index " + std::to_string(ray) + " out of range");
  std::vector<IntVector> classes;
  for (const Wall& w : all_walls)
    if (w.cone.contains(ray)) classes.push_back(w.relation);
  if (classes.empty()) return 0;
  return static_cast<int>(rank(columns_matrix(classes, f.ray_count())));
}

int n1_span_of_divisor(const Fan& f, int ray) {
  if (ray < 0 || ray >= f.ray_count()) throw Error("ray index " + std::to_string(ray) + " out of range");
  return n1_span_of_divisor(f, walls(f), ray);
}

int curve_span_rank(const Fan& f, const std::vector<Wall>& all_walls) {
  std::vector<IntVector> classes;
  for (const Wall& w : all_walls) classes.push_back(w.relation);
  if (classes.empty()) return 0;
  return static_cast<int>(rank(columns_matrix(classes, f.ray_count())));
}

}  // namespace torfan
