#include "torfan/fano.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace torfan {

Integer anticanonical_degree_curve(const Fan&, const Wall& w) { return w.relation.sum(); }

FanoReport is_fano(const Fan& f) {
  FanoReport report;
  const std::vector<Wall> all = walls(f);
  if (all.empty()) throw Error("fan has no walls");
  bool first = true;
  for (const Wall& w : all) {
    Integer d = anticanonical_degree_curve(f, w);
    if (first || d < report.min_degree) {
      report.min_degree = d;
      report.witness_wall = w;
      first = false;
    }
  }
  report.is_fano = report.min_degree >= 1;
  return report;
}

namespace {

bool rational_lex_less(const RatVector& a, const RatVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return a(i) < b(i);
  return false;
}

// Solves <m, u_i> = -1 for the rays of a maximal cone.
RatVector cone_vertex(const Fan& f, const Cone& c) {
  const int n = f.dim();
  RatMatrix a(n, n);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j) a(k, j) = Rational(f.ray(c.rays()[static_cast<std::size_t>(k)])(j));
  auto m = solve_rational(a, RatVector::Constant(n, Rational(-1)));
  if (!m) throw Error("polytope may be unbounded/degenerate: singular maximal cone");
  return *m;
}

Rational pairing(const RatVector& m, const IntVector& u) {
  Rational s(0);
  for (Eigen::Index i = 0; i < m.size(); ++i) s += m(i) * Rational(u(i));
  return s;
}

}  // namespace

Polytope anticanonical_polytope(const Fan& f) {
  if (!is_fano(f).is_fano) throw Error("polytope may be unbounded/degenerate: fan is not Fano");
  const int n = f.dim();
  const int m = f.ray_count();
  Polytope p;
  p.normals = f.rays();

  std::vector<int> pick(static_cast<std::size_t>(n));
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    RatMatrix a(n, n);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) a(k, j) = Rational(f.ray(pick[static_cast<std::size_t>(k)])(j));
    if (auto v = solve_rational(a, RatVector::Constant(n, Rational(-1)))) {
      bool inside = true;
      for (int r = 0; r < m && inside; ++r) inside = pairing(*v, f.ray(r)) >= -1;
      if (inside && std::find(p.vertices.begin(), p.vertices.end(), *v) == p.vertices.end())
        p.vertices.push_back(*v);
    }
    int k = n - 1;
    while (k >= 0 && pick[static_cast<std::size_t>(k)] == m - n + k) --k;
    if (k < 0) break;
    ++pick[static_cast<std::size_t>(k)];
    for (int j = k + 1; j < n; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
  std::sort(p.vertices.begin(), p.vertices.end(), rational_lex_less);
  return p;
}

Integer anticanonical_degree_top(const Fan& f) {
  const Polytope p = anticanonical_polytope(f);
  const int n = f.dim();

  // Vertex m_sigma of the face dual to each maximal cone.
  std::vector<RatVector> vertex;
  for (const Cone& c : f.max_cones()) {
    RatVector v = cone_vertex(f, c);
    if (std::find(p.vertices.begin(), p.vertices.end(), v) == p.vertices.end())
      throw Error("polytope may be unbounded/degenerate: cone vertex not a polytope vertex");
    vertex.push_back(std::move(v));
  }

  // Barycenter of the face dual to tau: mean of m_sigma over sigma containing tau.
  std::map<Cone, RatVector> barycenter;
  auto center_of = [&](const Cone& tau) -> const RatVector& {
    auto it = barycenter.find(tau);
    if (it != barycenter.end()) return it->second;
    RatVector sum = RatVector::Zero(n);
    int count = 0;
    for (std::size_t s = 0; s < f.max_cones().size(); ++s) {
      if (f.max_cones()[s].contains(tau)) {
        sum += vertex[s];
        ++count;
      }
    }
    sum /= Rational(count);
    return barycenter.emplace(tau, std::move(sum)).first->second;
  };

  // One simplex (origin, c_{tau_1}, ..., c_{tau_n}) per complete flag
  // tau_1 < ... < tau_n = sigma, i.e. per ordering of each cone's rays.
  Rational total(0);
  for (const Cone& sigma : f.max_cones()) {
    std::vector<int> order = sigma.rays();
    do {
      RatMatrix simplex(n, n);
      std::vector<int> prefix;
      for (int k = 0; k < n; ++k) {
        prefix.push_back(order[static_cast<std::size_t>(k)]);
        simplex.col(k) = center_of(Cone(prefix));
      }
      Rational d = determinant(simplex);
      total += d < 0 ? Rational(-d) : d;
    } while (std::next_permutation(order.begin(), order.end()));
  }
  if (boost::multiprecision::denominator(total) != 1)
    throw Error("anticanonical degree is not integral");
  return Integer(boost::multiprecision::numerator(total));
}

InvariantsSummary invariants_summary(const Fan& f) {
  InvariantsSummary s;
  s.picard_rank = picard_rank(f);
  s.ray_count = f.ray_count();
  for (int k = 1; k <= f.dim(); ++k) s.cone_counts.push_back(static_cast<int>(f.cones_of_dim(k).size()));
  s.is_fano = is_fano(f).is_fano;
  if (s.is_fano) s.degree = anticanonical_degree_top(f);
  return s;
}

}  // namespace torfan
