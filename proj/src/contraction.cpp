#include "torfan/contraction.hpp"

#include <algorithm>
#include <set>

namespace torfan {

std::string to_string(ContractionKind kind) {
  switch (kind) {
    case ContractionKind::FiberType: return "fiber-type";
    case ContractionKind::Divisorial: return "divisorial";
    case ContractionKind::Small: return "small";
  }
  return "unknown";
}

std::string to_string(MorphismKind kind) {
  switch (kind) {
    case MorphismKind::Blowdown: return "blowdown";
    case MorphismKind::FiberQuotient: return "fiber-quotient";
    case MorphismKind::Composite: return "composite";
  }
  return "unknown";
}

WallClassification classify_wall(const Fan& f, const Wall& w) {
  WallClassification c;
  for (int r : w.involved_rays()) {
    const Integer& b = w.relation(r);
    if (b < 0)
      ++c.alpha;
    else if (b == 0)
      ++c.zeros;
    else
      ++c.positives;
  }
  c.kind = c.alpha == 0 ? ContractionKind::FiberType
                        : (c.alpha == 1 ? ContractionKind::Divisorial : ContractionKind::Small);
  c.exc_dim = f.dim() - c.alpha;
  c.image_dim = c.zeros;
  return c;
}

namespace {

RatVector to_rational(const IntVector& v) {
  RatVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = Rational(v(i));
  return out;
}

// a = t * b for some rational t > 0.
bool positively_proportional(const IntVector& a, const IntVector& b) {
  Eigen::Index pivot = 0;
  while (pivot < b.size() && b(pivot) == 0) ++pivot;
  if (pivot == b.size()) return is_zero(a);
  if (a(pivot) == 0 || (a(pivot) > 0) != (b(pivot) > 0)) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) * b(pivot) != b(i) * a(pivot)) return false;
  return true;
}

}  // namespace

std::vector<ExtremalRay> extremal_rays(const Fan& f) {
  const std::vector<Wall> all = walls(f);
  std::vector<IntVector> classes;
  std::vector<std::vector<Wall>> members;
  for (const Wall& w : all) {
    auto it = std::find(classes.begin(), classes.end(), w.relation);
    if (it == classes.end()) {
      classes.push_back(w.relation);
      members.push_back({w});
    } else {
      members[static_cast<std::size_t>(it - classes.begin())].push_back(w);
    }
  }

  std::vector<ExtremalRay> out;
  const auto rows = static_cast<Eigen::Index>(f.ray_count());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    std::vector<IntVector> others;
    for (std::size_t j = 0; j < classes.size(); ++j)
      if (j != i && !positively_proportional(classes[j], classes[i])) others.push_back(classes[j]);
    if (!others.empty()) {
      RatMatrix gens(rows, static_cast<Eigen::Index>(others.size()));
      for (std::size_t j = 0; j < others.size(); ++j)
        gens.col(static_cast<Eigen::Index>(j)) = to_rational(others[j]);
      if (in_cone(gens, to_rational(classes[i]))) continue;
    }
    ExtremalRay ray{CurveClass{classes[i]}, members[i], classify_wall(f, members[i].front())};
    for (const Wall& w : members[i])
      if (!(classify_wall(f, w) == ray.type))
        throw Error("fan not Fano-like; extremal grouping invalid");
    out.push_back(std::move(ray));
  }
  return out;
}

ToricMorphism compose(const ToricMorphism& first, const ToricMorphism& second) {
  if (first.matrix.rows() != second.matrix.cols())
    throw Error("cannot compose: lattice dimensions differ");
  return {IntMatrix(second.matrix * first.matrix), first.source, second.target, MorphismKind::Composite};
}

BlowDown blow_down(const Fan& f, int e, int a, int b) {
  const int m = f.ray_count();
  if (e < 0 || e >= m || a < 0 || a >= m || b < 0 || b >= m || a == b || e == a || e == b)
    throw Error("unsupported divisorial contraction: bad ray indices");
  const std::string what = "unsupported divisorial contraction: ";
  if (f.ray(e) != f.ray(a) + f.ray(b))
    throw Error(what + "u" + std::to_string(e) + " != u" + std::to_string(a) + " + u" + std::to_string(b));
  if (f.has_cone(Cone{a, b})) throw Error(what + "center already a cone");

  std::set<Cone> merged;
  std::vector<Cone> kept;
  int star_a = 0, star_b = 0;
  for (const Cone& c : f.max_cones()) {
    if (!c.contains(e)) {
      kept.push_back(c);
      continue;
    }
    const bool has_a = c.contains(a), has_b = c.contains(b);
    if (has_a == has_b) throw Error(what + "star of the exceptional ray is not a subdivision");
    const Cone partner = has_a ? c.without(a).with(b) : c.without(b).with(a);
    if (std::find(f.max_cones().begin(), f.max_cones().end(), partner) == f.max_cones().end())
      throw Error(what + "star of the exceptional ray is not a subdivision");
    (has_a ? star_a : star_b)++;
    merged.insert(c.without(e).with(has_a ? b : a));
  }
  if (star_a == 0 || star_a != star_b) throw Error(what + "unbalanced star");

  auto reindex = [e](int r) { return r > e ? r - 1 : r; };
  std::vector<IntVector> rays;
  for (int r = 0; r < m; ++r)
    if (r != e) rays.push_back(f.ray(r));
  kept.insert(kept.end(), merged.begin(), merged.end());
  std::vector<Cone> cones;
  for (const Cone& c : kept) {
    std::vector<int> idx;
    for (int r : c.rays()) idx.push_back(reindex(r));
    cones.emplace_back(std::move(idx));
  }
  Fan target(f.dim(), std::move(rays), std::move(cones));
  const ValidationReport report = validate(target);
  if (!report.ok()) throw Error(what + "result is not smooth and complete: " + report.failures.front().message);

  ToricMorphism morphism{IntMatrix::Identity(f.dim(), f.dim()), f, target, MorphismKind::Blowdown};
  return {std::move(target), Cone{reindex(a), reindex(b)}, e, std::move(morphism)};
}

BlowDown blow_down(const Fan& f, const ExtremalRay& divisorial) {
  if (divisorial.type.kind != ContractionKind::Divisorial || divisorial.walls.empty())
    throw Error("unsupported divisorial contraction: class is not divisorial");
  const Wall& w = divisorial.walls.front();
  int e = -1;
  std::vector<int> plus;
  for (int r : w.involved_rays()) {
    const Integer& c = w.relation(r);
    if (c == -1 && e < 0)
      e = r;
    else if (c == 1)
      plus.push_back(r);
    else if (c != 0)
      throw Error("unsupported divisorial contraction: relation is not u_a - u_e + u_b = 0");
  }
  if (e < 0 || plus.size() != 2)
    throw Error("unsupported divisorial contraction: relation is not u_a - u_e + u_b = 0");
  return blow_down(f, e, plus[0], plus[1]);
}

namespace {

std::vector<std::pair<int, int>> summand_pairs(const Fan& f, int e) {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < f.ray_count(); ++a)
    for (int b = a + 1; b < f.ray_count(); ++b)
      if (a != e && b != e && f.ray(a) + f.ray(b) == f.ray(e)) out.emplace_back(a, b);
  return out;
}

}  // namespace

BlowDown blow_down_ray(const Fan& f, int exceptional) {
  if (exceptional < 0 || exceptional >= f.ray_count())
    throw Error("ray index " + std::to_string(exceptional) + " out of range");
  std::string last = "unsupported divisorial contraction: u" + std::to_string(exceptional) +
                     " is not the sum of two rays";
  for (auto [a, b] : summand_pairs(f, exceptional)) {
    try {
      return blow_down(f, exceptional, a, b);
    } catch (const Error& err) {
      last = err.what();
    }
  }
  throw Error(last);
}

std::vector<BlowDownCandidate> blow_down_candidates(const Fan& f) {
  std::vector<BlowDownCandidate> out;
  for (int e = 0; e < f.ray_count(); ++e) {
    for (auto [a, b] : summand_pairs(f, e)) {
      try {
        blow_down(f, e, a, b);
        out.push_back({e, a, b});
      } catch (const Error&) {
      }
    }
  }
  return out;
}

ToricMorphism contract_fiber_pair(const Fan& f, int a, int b) {
  const std::string what = "not an elementary P^1-bundle direction: ";
  if (a < 0 || b < 0 || a >= f.ray_count() || b >= f.ray_count() || a == b)
    throw Error(what + "bad ray indices");
  if (f.ray(a) != -f.ray(b)) throw Error(what + "u" + std::to_string(a) + " + u" + std::to_string(b) + " != 0");

  const IntMatrix q = quotient_map({f.ray(a)}, f.dim());
  std::vector<int> image_of(static_cast<std::size_t>(f.ray_count()), -1);
  std::vector<IntVector> rays;
  for (int r = 0; r < f.ray_count(); ++r) {
    if (r == a || r == b) continue;
    IntVector image = q * f.ray(r);
    if (is_zero(image) || !is_primitive(image)) throw Error(what + "image of u" + std::to_string(r) + " is not a primitive ray");
    for (const auto& seen : rays)
      if (seen == image) throw Error(what + "two rays have the same image");
    image_of[static_cast<std::size_t>(r)] = static_cast<int>(rays.size());
    rays.push_back(std::move(image));
  }

  std::set<Cone> over_a, over_b;
  for (const Cone& c : f.max_cones()) {
    const bool has_a = c.contains(a), has_b = c.contains(b);
    if (has_a == has_b) throw Error(what + "a maximal cone contains neither or both fiber rays");
    std::vector<int> idx;
    for (int r : c.rays())
      if (r != a && r != b) idx.push_back(image_of[static_cast<std::size_t>(r)]);
    (has_a ? over_a : over_b).insert(Cone(std::move(idx)));
  }
  if (over_a != over_b) throw Error(what + "the two sections have different base fans");

  Fan target(f.dim() - 1, std::move(rays), {over_a.begin(), over_a.end()});
  const ValidationReport report = validate(target);
  if (!report.ok()) throw Error(what + "base fan invalid: " + report.failures.front().message);
  return {q, f, std::move(target), MorphismKind::FiberQuotient};
}

ToricMorphism contract_fiber_type(const Fan& f, const ExtremalRay& fiber_class) {
  const std::string what = "not an elementary P^1-bundle direction: ";
  if (fiber_class.type.kind != ContractionKind::FiberType || fiber_class.type.exc_dim != f.dim() ||
      fiber_class.type.image_dim != f.dim() - 1)
    throw Error(what + "class is not of type (n, n-1)");
  std::vector<int> support;
  for (int r = 0; r < f.ray_count(); ++r)
    if (fiber_class.curve.intersections(r) != 0) support.push_back(r);
  if (support.size() != 2) throw Error(what + "relation is not u_a + u_b = 0");
  return contract_fiber_pair(f, support[0], support[1]);
}

std::vector<std::pair<int, int>> fiber_pairs(const Fan& f) {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < f.ray_count(); ++a) {
    for (int b = a + 1; b < f.ray_count(); ++b) {
      if (f.ray(a) != -f.ray(b)) continue;
      try {
        contract_fiber_pair(f, a, b);
        out.emplace_back(a, b);
      } catch (const Error&) {
      }
    }
  }
  return out;
}

}  // namespace torfan
