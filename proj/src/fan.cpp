#include "torfan/fan.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace torfan {

// ---------------------------------------------------------------------------
// Cone

Cone::Cone(std::initializer_list<int> rays) : Cone(std::vector<int>(rays)) {}

Cone::Cone(std::vector<int> rays) : rays_(std::move(rays)) {
  std::sort(rays_.begin(), rays_.end());
}

bool Cone::contains(int ray) const { return std::binary_search(rays_.begin(), rays_.end(), ray); }

bool Cone::contains(const Cone& face) const {
  return std::includes(rays_.begin(), rays_.end(), face.rays_.begin(), face.rays_.end());
}

Cone Cone::without(int ray) const {
  std::vector<int> out;
  for (int r : rays_)
    if (r != ray) out.push_back(r);
  return Cone(std::move(out));
}

Cone Cone::with(int ray) const {
  if (contains(ray)) return *this;
  std::vector<int> out = rays_;
  out.push_back(ray);
  return Cone(std::move(out));
}

Cone Cone::intersection(const Cone& other) const {
  std::vector<int> out;
  std::set_intersection(rays_.begin(), rays_.end(), other.rays_.begin(), other.rays_.end(),
                        std::back_inserter(out));
  return Cone(std::move(out));
}

// ---------------------------------------------------------------------------
// Fan

Fan::Fan(int dim, std::vector<IntVector> rays, std::vector<Cone> max_cones, std::string name)
    : dim_(dim), rays_(std::move(rays)), max_cones_(std::move(max_cones)), name_(std::move(name)) {
  if (dim_ < 0) throw Error("malformed fan: negative dimension");
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    if (rays_[i].size() != dim_)
      throw Error("malformed fan: ray " + std::to_string(i) + " has length " +
                  std::to_string(rays_[i].size()) + ", expected " + std::to_string(dim_));
  }
  for (std::size_t c = 0; c < max_cones_.size(); ++c) {
    const auto& idx = max_cones_[c].rays();
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (idx[k] < 0 || idx[k] >= ray_count())
        throw Error("malformed fan: cone " + std::to_string(c) + " references ray " +
                    std::to_string(idx[k]));
      if (k > 0 && idx[k] == idx[k - 1])
        throw Error("malformed fan: cone " + std::to_string(c) + " repeats ray " +
                    std::to_string(idx[k]));
    }
  }
  std::sort(max_cones_.begin(), max_cones_.end());
}

Fan Fan::named(std::string name) const {
  Fan out = *this;
  out.name_ = std::move(name);
  return out;
}

IntMatrix Fan::cone_matrix(const Cone& cone) const {
  IntMatrix m(dim_, cone.dim());
  for (int j = 0; j < cone.dim(); ++j) m.col(j) = ray(cone.rays()[static_cast<std::size_t>(j)]);
  return m;
}

std::optional<int> Fan::find_ray(const IntVector& v) const {
  for (int i = 0; i < ray_count(); ++i)
    if (rays_[static_cast<std::size_t>(i)] == v) return i;
  return std::nullopt;
}

bool Fan::has_cone(const Cone& cone) const {
  return std::any_of(max_cones_.begin(), max_cones_.end(),
                     [&](const Cone& m) { return m.contains(cone); });
}

std::vector<Cone> Fan::cones_of_dim(int k) const {
  std::set<Cone> out;
  for (const Cone& m : max_cones_) {
    const int d = m.dim();
    if (k > d) continue;
    std::vector<bool> pick(static_cast<std::size_t>(d), false);
    std::fill(pick.begin(), pick.begin() + k, true);
    do {
      std::vector<int> sub;
      for (int i = 0; i < d; ++i)
        if (pick[static_cast<std::size_t>(i)]) sub.push_back(m.rays()[static_cast<std::size_t>(i)]);
      out.insert(Cone(std::move(sub)));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return {out.begin(), out.end()};
}

std::vector<Cone> Fan::all_cones() const {
  std::vector<Cone> out;
  for (int k = 0; k <= dim_; ++k) {
    auto layer = cones_of_dim(k);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

std::vector<int> Fan::ray_degrees() const {
  std::vector<int> deg(rays_.size(), 0);
  for (const Cone& m : max_cones_)
    for (int r : m.rays()) ++deg[static_cast<std::size_t>(r)];
  return deg;
}

// ---------------------------------------------------------------------------
// Validation

std::vector<FacetIncidence> facet_incidences(const Fan& f) {
  std::map<Cone, std::vector<int>> by_facet;
  const auto& cones = f.max_cones();
  for (std::size_t c = 0; c < cones.size(); ++c) {
    if (cones[c].dim() != f.dim()) continue;
    for (int r : cones[c].rays()) by_facet[cones[c].without(r)].push_back(static_cast<int>(c));
  }
  std::vector<FacetIncidence> out;
  out.reserve(by_facet.size());
  for (auto& [facet, owners] : by_facet) out.push_back({facet, owners});
  return out;
}

namespace {

std::string cone_text(const Cone& c) {
  std::string s = "{";
  for (std::size_t i = 0; i < c.rays().size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c.rays()[i]);
  }
  return s + "}";
}

int sign_of(const Integer& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// Integer facet normals of a full-dimensional simplicial cone: row i is
// positive on ray i and vanishes on the others.
IntMatrix facet_normals(const IntMatrix& generators) {
  const Integer det = determinant(generators);
  const RatMatrix inv = rational_inverse(generators);
  IntMatrix out(inv.rows(), inv.cols());
  const Integer mag = boost::multiprecision::abs(det);
  for (Eigen::Index i = 0; i < inv.rows(); ++i)
    for (Eigen::Index j = 0; j < inv.cols(); ++j)
      out(i, j) = boost::multiprecision::numerator(inv(i, j) * Rational(mag));
  return out;
}

// sigma ∩ tau is a common face iff each extreme ray of the intersection is a
// shared generator. Extreme rays are found by brute force over (n-1)-subsets
// of the 2n facet inequalities.
bool properly_intersect(const Fan& f, const Cone& a, const Cone& b, const IntMatrix& na,
                        const IntMatrix& nb) {
  const int n = f.dim();
  IntMatrix ineq(2 * n, n);
  ineq.topRows(n) = na;
  ineq.bottomRows(n) = nb;
  const Cone common = a.intersection(b);
  std::vector<bool> pick(static_cast<std::size_t>(2 * n), false);
  std::fill(pick.begin(), pick.begin() + (n - 1), true);
  do {
    IntMatrix sub(n - 1, n);
    int row = 0;
    for (int i = 0; i < 2 * n; ++i)
      if (pick[static_cast<std::size_t>(i)]) sub.row(row++) = ineq.row(i);
    auto ker = kernel_basis(sub);
    if (ker.size() != 1) continue;
    IntVector d = ker.front();
    IntVector values = ineq * d;
    bool nonneg = true, nonpos = true;
    for (Eigen::Index i = 0; i < values.size(); ++i) {
      if (values(i) < 0) nonneg = false;
      if (values(i) > 0) nonpos = false;
    }
    if (!nonneg && !nonpos) continue;
    if (!nonneg) d = -d;
    // d spans an extreme ray of the intersection; it must be a shared ray.
    IntVector ca = na * d;
    int support = 0, which = -1;
    for (int i = 0; i < n; ++i) {
      if (ca(i) != 0) {
        ++support;
        which = a.rays()[static_cast<std::size_t>(i)];
      }
    }
    if (support != 1 || !common.contains(which)) return false;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return true;
}

}  // namespace

ValidationReport validate(const Fan& f) {
  ValidationReport rep;
  const int n = f.dim();
  const auto& cones = f.max_cones();
  const auto cone_count = static_cast<int>(cones.size());

  // Ray-level defects.
  std::set<std::vector<std::int64_t>> seen;
  const std::vector<int> degrees = f.ray_degrees();
  for (int i = 0; i < f.ray_count(); ++i) {
    const IntVector& u = f.ray(i);
    if (is_zero(u)) {
      rep.is_simplicial = false;
      rep.failures.push_back({"ray " + std::to_string(i) + " is zero", {}});
      continue;
    }
    if (!is_primitive(u)) {
      rep.is_simplicial = false;
      rep.failures.push_back({"ray " + std::to_string(i) + " is not primitive", {}});
    }
    std::vector<std::int64_t> key;
    for (Eigen::Index k = 0; k < u.size(); ++k) key.push_back(to_int64(u(k)));
    if (!seen.insert(key).second) {
      rep.proper_intersections = false;
      rep.failures.push_back({"ray " + std::to_string(i) + " duplicates an earlier ray", {}});
    }
    if (degrees[static_cast<std::size_t>(i)] == 0) {
      rep.is_complete = false;
      rep.failures.push_back({"ray " + std::to_string(i) + " lies in no maximal cone", {}});
    }
  }
  if (cones.empty()) {
    rep.is_complete = false;
    rep.failures.push_back({"fan has no maximal cones", {}});
  }

  // Cone-level: dimension and determinant.
  bool pure = true;
  std::vector<IntMatrix> normals(cones.size());
  for (int c = 0; c < cone_count; ++c) {
    const Cone& cone = cones[static_cast<std::size_t>(c)];
    if (c > 0 && cone == cones[static_cast<std::size_t>(c - 1)]) {
      rep.proper_intersections = false;
      rep.failures.push_back({"maximal cone " + cone_text(cone) + " is listed twice", {c - 1, c}});
    }
    if (cone.dim() != n) {
      pure = false;
      rep.is_simplicial = false;
      rep.failures.push_back({"maximal cone " + cone_text(cone) + " has " + std::to_string(cone.dim()) +
                                  " rays, expected " + std::to_string(n),
                              {c}});
      continue;
    }
    const Integer det = determinant(f.cone_matrix(cone));
    if (det == 0) {
      rep.is_simplicial = false;
      rep.failures.push_back({"maximal cone " + cone_text(cone) + " is degenerate", {c}});
      continue;
    }
    if (det != 1 && det != -1) {
      rep.is_smooth = false;
      rep.failures.push_back(
          {"maximal cone " + cone_text(cone) + " has determinant " + det.str() + ", not unimodular", {c}});
    }
    normals[static_cast<std::size_t>(c)] = facet_normals(f.cone_matrix(cone));
  }
  if (!rep.is_simplicial) rep.is_smooth = false;

  // Walls: each facet in exactly two cones, on opposite sides.
  bool closed = pure && !cones.empty();
  bool opposite = true;
  std::vector<int> parent(cones.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  for (const auto& inc : facet_incidences(f)) {
    if (inc.cones.size() != 2) {
      closed = false;
      rep.is_complete = false;
      rep.failures.push_back({"facet " + cone_text(inc.facet) + " lies in " + std::to_string(inc.cones.size()) +
                                  " maximal cones, expected 2",
                              inc.cones});
    }
    for (std::size_t k = 1; k < inc.cones.size(); ++k)
      parent[static_cast<std::size_t>(find(inc.cones[k]))] = find(inc.cones[0]);
    if (inc.cones.size() == 2 && rep.is_simplicial) {
      int signs[2];
      for (int s = 0; s < 2; ++s) {
        const Cone& full = cones[static_cast<std::size_t>(inc.cones[static_cast<std::size_t>(s)])];
        int extra = -1;
        for (int r : full.rays())
          if (!inc.facet.contains(r)) extra = r;
        IntMatrix m(n, n);
        int col = 0;
        for (int r : inc.facet.rays()) m.col(col++) = f.ray(r);
        m.col(col) = f.ray(extra);
        signs[s] = sign_of(determinant(m));
      }
      if (signs[0] == signs[1]) {
        opposite = false;
        rep.proper_intersections = false;
        rep.failures.push_back({"maximal cones on both sides of facet " + cone_text(inc.facet) + " overlap",
                                inc.cones});
      }
    }
  }
  std::set<int> components;
  for (int c = 0; c < cone_count; ++c) components.insert(find(c));
  if (components.size() > 1) {
    rep.is_complete = false;
    rep.failures.push_back({"maximal cones form " + std::to_string(components.size()) +
                                " disconnected groups",
                            {}});
  }
  if (!pure) rep.is_complete = false;

  if (rep.is_simplicial && rep.proper_intersections) {
    if (closed && opposite && components.size() == 1 && n > 0) {
      // A closed pseudo-manifold with locally opposite walls covers R^n a
      // constant number of times; count the cones through one generic point.
      for (long t = 2;; ++t) {
        IntVector p(n);
        Integer power = 1;
        for (int i = 0; i < n; ++i) {
          p(i) = power;
          power *= t;
        }
        int covering = 0;
        bool generic = true;
        for (int c = 0; c < cone_count && generic; ++c) {
          IntVector coords = normals[static_cast<std::size_t>(c)] * p;
          bool inside = true;
          for (int i = 0; i < n; ++i) {
            if (coords(i) == 0) generic = false;
            if (coords(i) < 0) inside = false;
          }
          if (inside) ++covering;
        }
        if (!generic) continue;
        if (covering != 1) {
          rep.proper_intersections = false;
          rep.failures.push_back({"maximal cones cover a generic point " + std::to_string(covering) +
                                      " times",
                                  {}});
        }
        break;
      }
    } else {
      for (int a = 0; a < cone_count; ++a) {
        for (int b = a + 1; b < cone_count; ++b) {
          const auto& ca = cones[static_cast<std::size_t>(a)];
          const auto& cb = cones[static_cast<std::size_t>(b)];
          if (ca == cb) continue;
          if (!properly_intersect(f, ca, cb, normals[static_cast<std::size_t>(a)],
                                  normals[static_cast<std::size_t>(b)])) {
            rep.proper_intersections = false;
            rep.failures.push_back({"maximal cones " + cone_text(ca) + " and " + cone_text(cb) +
                                        " meet outside a common face",
                                    {a, b}});
          }
        }
      }
    }
  }
  if (!rep.proper_intersections) rep.is_complete = false;
  return rep;
}

// ---------------------------------------------------------------------------
// Star subdivision and orbit closures

StarSubdivision star_subdivide(const Fan& f, const Cone& center) {
  if (center.dim() != 2) throw Error("center must be a 2-dimensional cone");
  if (!f.has_cone(center)) throw Error("center not in fan: " + cone_text(center));
  const int a = center.rays()[0];
  const int b = center.rays()[1];
  IntVector added = primitive_part(IntVector(f.ray(a) + f.ray(b)));
  if (f.find_ray(added)) throw Error("center not in fan: subdivision ray already present");

  std::vector<IntVector> rays = f.rays();
  rays.push_back(added);
  const int idx = f.ray_count();
  std::vector<Cone> cones;
  for (const Cone& c : f.max_cones()) {
    if (c.contains(center)) {
      cones.push_back(c.without(a).with(idx));
      cones.push_back(c.without(b).with(idx));
    } else {
      cones.push_back(c);
    }
  }
  return {Fan(f.dim(), std::move(rays), std::move(cones)), idx};
}

Fan orbit_closure_fan(const Fan& f, const Cone& sigma) {
  if (!f.has_cone(sigma)) throw Error("cone not in fan: " + cone_text(sigma));
  std::vector<IntVector> generators;
  for (int r : sigma.rays()) generators.push_back(f.ray(r));
  const IntMatrix q = quotient_map(generators, f.dim());
  const int target_dim = f.dim() - sigma.dim();

  std::vector<int> image_index(static_cast<std::size_t>(f.ray_count()), -1);
  std::vector<IntVector> rays;
  // Star of sigma, visited in ray-index order for a deterministic numbering.
  std::set<int> star_rays;
  for (const Cone& c : f.max_cones())
    if (c.contains(sigma))
      for (int r : c.rays())
        if (!sigma.contains(r)) star_rays.insert(r);
  for (int r : star_rays) {
    IntVector image = primitive_part(IntVector(q * f.ray(r)));
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (rays[k] == image) image_index[static_cast<std::size_t>(r)] = static_cast<int>(k);
    }
    if (image_index[static_cast<std::size_t>(r)] < 0) {
      image_index[static_cast<std::size_t>(r)] = static_cast<int>(rays.size());
      rays.push_back(image);
    }
  }
  std::set<Cone> cones;
  for (const Cone& c : f.max_cones()) {
    if (!c.contains(sigma)) continue;
    std::vector<int> image;
    for (int r : c.rays())
      if (!sigma.contains(r)) image.push_back(image_index[static_cast<std::size_t>(r)]);
    cones.insert(Cone(std::move(image)));
  }
  return Fan(target_dim, std::move(rays), {cones.begin(), cones.end()});
}

// ---------------------------------------------------------------------------
// Isomorphism

std::optional<IntMatrix> fan_isomorphic(const Fan& f1, const Fan& f2) {
  if (f1.dim() != f2.dim() || f1.ray_count() != f2.ray_count() ||
      f1.max_cones().size() != f2.max_cones().size() || f1.max_cones().empty())
    return std::nullopt;
  const int n = f1.dim();
  std::vector<int> deg1 = f1.ray_degrees();
  std::vector<int> deg2 = f2.ray_degrees();
  {
    auto s1 = deg1, s2 = deg2;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 != s2) return std::nullopt;
  }
  if (n == 0) return IntMatrix(0, 0);

  std::map<std::vector<std::int64_t>, int> lookup;
  for (int i = 0; i < f2.ray_count(); ++i) {
    std::vector<std::int64_t> key;
    for (int k = 0; k < n; ++k) key.push_back(to_int64(f2.ray(i)(k)));
    lookup[key] = i;
  }
  const std::set<Cone> target_cones(f2.max_cones().begin(), f2.max_cones().end());

  const Cone& anchor = f1.max_cones().front();
  const IntMatrix anchor_matrix = f1.cone_matrix(anchor);
  if (determinant(anchor_matrix) == 0) return std::nullopt;
  const RatMatrix anchor_inverse = rational_inverse(anchor_matrix);

  for (const Cone& tau : f2.max_cones()) {
    if (tau.dim() != n) continue;
    std::vector<int> order = tau.rays();
    do {
      bool degrees_match = true;
      for (int k = 0; k < n && degrees_match; ++k)
        degrees_match = deg1[static_cast<std::size_t>(anchor.rays()[static_cast<std::size_t>(k)])] ==
                        deg2[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
      if (!degrees_match) continue;
      IntMatrix image(n, n);
      for (int k = 0; k < n; ++k) image.col(k) = f2.ray(order[static_cast<std::size_t>(k)]);
      const RatMatrix mq = image.cast<Rational>() * anchor_inverse;
      IntMatrix m(n, n);
      bool integral = true;
      for (int i = 0; i < n && integral; ++i)
        for (int j = 0; j < n && integral; ++j) {
          if (boost::multiprecision::denominator(mq(i, j)) != 1) integral = false;
          else m(i, j) = boost::multiprecision::numerator(mq(i, j));
        }
      if (!integral) continue;
      const Integer det = determinant(m);
      if (det != 1 && det != -1) continue;

      std::vector<int> perm(static_cast<std::size_t>(f1.ray_count()), -1);
      std::vector<bool> used(static_cast<std::size_t>(f2.ray_count()), false);
      bool ok = true;
      for (int i = 0; i < f1.ray_count() && ok; ++i) {
        IntVector v = m * f1.ray(i);
        std::vector<std::int64_t> key;
        for (int k = 0; k < n; ++k) key.push_back(to_int64(v(k)));
        auto it = lookup.find(key);
        if (it == lookup.end() || used[static_cast<std::size_t>(it->second)]) {
          ok = false;
          break;
        }
        used[static_cast<std::size_t>(it->second)] = true;
        perm[static_cast<std::size_t>(i)] = it->second;
      }
      if (!ok) continue;
      for (const Cone& c : f1.max_cones()) {
        std::vector<int> mapped;
        for (int r : c.rays()) mapped.push_back(perm[static_cast<std::size_t>(r)]);
        if (!target_cones.count(Cone(std::move(mapped)))) {
          ok = false;
          break;
        }
      }
      if (ok) return m;
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Products

Fan product(const Fan& a, const Fan& b) {
  const int n = a.dim() + b.dim();
  std::vector<IntVector> rays;
  for (const auto& u : a.rays()) {
    IntVector v = IntVector::Zero(n);
    v.head(a.dim()) = u;
    rays.push_back(v);
  }
  for (const auto& u : b.rays()) {
    IntVector v = IntVector::Zero(n);
    v.tail(b.dim()) = u;
    rays.push_back(v);
  }
  std::vector<Cone> cones;
  for (const Cone& ca : a.max_cones()) {
    for (const Cone& cb : b.max_cones()) {
      std::vector<int> idx = ca.rays();
      for (int r : cb.rays()) idx.push_back(r + a.ray_count());
      cones.emplace_back(std::move(idx));
    }
  }
  std::string name;
  if (!a.name().empty() && !b.name().empty()) name = a.name() + "x" + b.name();
  return Fan(n, std::move(rays), std::move(cones), std::move(name));
}

namespace {

// Saturated basis of Span_Q(vs) ∩ Z^n.
std::vector<IntVector> saturated_span(const std::vector<IntVector>& vs, int n) {
  const IntMatrix m = columns_matrix(vs, n);
  const auto annihilator = kernel_basis(m.transpose());
  if (annihilator.empty()) {
    std::vector<IntVector> all;
    for (int i = 0; i < n; ++i) all.push_back(unit_vector(n, i));
    return all;
  }
  IntMatrix rows(static_cast<Eigen::Index>(annihilator.size()), n);
  for (std::size_t i = 0; i < annihilator.size(); ++i) rows.row(static_cast<Eigen::Index>(i)) = annihilator[i].transpose();
  return kernel_basis(rows);
}

struct Split {
  Fan first;
  Fan second;
};

std::optional<Split> try_split(const Fan& f, const std::vector<int>& group_a, const std::vector<int>& group_b) {
  const int n = f.dim();
  std::vector<IntVector> va, vb;
  for (int r : group_a) va.push_back(f.ray(r));
  for (int r : group_b) vb.push_back(f.ray(r));
  const auto ra = static_cast<int>(rank(columns_matrix(va, n)));
  const auto rb = static_cast<int>(rank(columns_matrix(vb, n)));
  if (ra + rb != n || ra == 0 || rb == 0) return std::nullopt;

  std::vector<bool> in_a(static_cast<std::size_t>(f.ray_count()), false);
  for (int r : group_a) in_a[static_cast<std::size_t>(r)] = true;
  std::set<Cone> parts_a, parts_b;
  for (const Cone& c : f.max_cones()) {
    std::vector<int> pa, pb;
    for (int r : c.rays()) (in_a[static_cast<std::size_t>(r)] ? pa : pb).push_back(r);
    if (static_cast<int>(pa.size()) != ra || static_cast<int>(pb.size()) != rb) return std::nullopt;
    parts_a.insert(Cone(pa));
    parts_b.insert(Cone(pb));
  }
  // Distinct maximal cones drawn from parts_a x parts_b: counting suffices.
  if (parts_a.size() * parts_b.size() != f.max_cones().size()) return std::nullopt;

  const auto basis_a = saturated_span(va, n);
  const auto basis_b = saturated_span(vb, n);
  std::vector<IntVector> joint = basis_a;
  joint.insert(joint.end(), basis_b.begin(), basis_b.end());
  const IntMatrix u = columns_matrix(joint, n);
  const Integer det = determinant(u);
  if (det != 1 && det != -1) return std::nullopt;
  const IntMatrix coords = unimodular_inverse(u);

  auto build = [&](const std::vector<int>& group, int offset, int d, const std::set<Cone>& parts) {
    std::vector<int> local(static_cast<std::size_t>(f.ray_count()), -1);
    std::vector<IntVector> rays;
    for (int r : group) {
      local[static_cast<std::size_t>(r)] = static_cast<int>(rays.size());
      IntVector full = coords * f.ray(r);
      rays.emplace_back(full.segment(offset, d));
    }
    std::vector<Cone> cones;
    for (const Cone& c : parts) {
      std::vector<int> idx;
      for (int r : c.rays()) idx.push_back(local[static_cast<std::size_t>(r)]);
      cones.emplace_back(std::move(idx));
    }
    return Fan(d, std::move(rays), std::move(cones));
  };
  return Split{build(group_a, 0, ra, parts_a), build(group_b, ra, rb, parts_b)};
}

}  // namespace

std::vector<Fan> product_decompose(const Fan& f) {
  const int r = f.ray_count();
  if (r < 2 || r > 24) return {f};
  const std::uint32_t limit = 1u << (r - 1);
  // Ray 0 always sits in the first group; masks enumerate the rest.
  for (std::uint32_t mask = 0; mask + 1 < limit; ++mask) {
    std::vector<int> a{0}, b;
    for (int i = 1; i < r; ++i) ((mask >> (i - 1)) & 1u ? a : b).push_back(i);
    if (b.empty()) continue;
    auto split = try_split(f, a, b);
    if (!split) continue;
    auto left = product_decompose(split->first);
    auto right = product_decompose(split->second);
    left.insert(left.end(), right.begin(), right.end());
    std::stable_sort(left.begin(), left.end(), [](const Fan& x, const Fan& y) {
      if (x.dim() != y.dim()) return x.dim() < y.dim();
      return x.ray_count() < y.ray_count();
    });
    return left;
  }
  return {f};
}

Fan transform(const Fan& f, const IntMatrix& unimodular) {
  std::vector<IntVector> rays;
  for (const auto& u : f.rays()) rays.emplace_back(unimodular * u);
  return Fan(f.dim(), std::move(rays), f.max_cones(), f.name());
}

Fan canonical(const Fan& f) {
  std::vector<int> order(static_cast<std::size_t>(f.ray_count()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return lex_less(f.ray(a), f.ray(b)); });
  std::vector<int> position(order.size());
  std::vector<IntVector> rays;
  for (std::size_t k = 0; k < order.size(); ++k) {
    position[static_cast<std::size_t>(order[k])] = static_cast<int>(k);
    rays.push_back(f.ray(order[k]));
  }
  std::vector<Cone> cones;
  for (const Cone& c : f.max_cones()) {
    std::vector<int> idx;
    for (int r : c.rays()) idx.push_back(position[static_cast<std::size_t>(r)]);
    cones.emplace_back(std::move(idx));
  }
  return Fan(f.dim(), std::move(rays), std::move(cones), f.name());
}

}  // namespace torfan
