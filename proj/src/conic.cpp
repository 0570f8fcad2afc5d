#include "torfan/conic.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <map>
#include <set>
#include <thread>

namespace torfan {

namespace {

// Locates vectors of N' in the minimal cone of a complete smooth fan.
class ConeLocator {
 public:
  explicit ConeLocator(const Fan& target) : target_(target) {
    for (const Cone& c : target.max_cones()) inverses_.push_back(unimodular_inverse(target.cone_matrix(c)));
  }

  Cone minimal_cone(const IntVector& v) const {
    if (is_zero(v)) return Cone{};
    for (std::size_t k = 0; k < inverses_.size(); ++k) {
      const IntVector coords = inverses_[k] * v;
      bool inside = true;
      for (Eigen::Index i = 0; i < coords.size() && inside; ++i) inside = coords(i) >= 0;
      if (!inside) continue;
      std::vector<int> support;
      const auto& rays = target_.max_cones()[k].rays();
      for (Eigen::Index i = 0; i < coords.size(); ++i)
        if (coords(i) > 0) support.push_back(rays[static_cast<std::size_t>(i)]);
      return Cone(std::move(support));
    }
    throw Error("not a toric morphism: image vector lies in no target cone");
  }

  // Minimal target cone containing the image of a source cone.
  Cone image_cone(const ToricMorphism& m, const Cone& sigma) const {
    IntVector sum = IntVector::Zero(m.matrix.rows());
    std::vector<IntVector> images;
    for (int r : sigma.rays()) {
      images.emplace_back(m.matrix * m.source.ray(r));
      sum += images.back();
    }
    const Cone result = minimal_cone(sum);
    for (const auto& g : images)
      if (!result.contains(minimal_cone(g))) throw Error("not a toric morphism: cone image is not inside a target cone");
    return result;
  }

 private:
  const Fan& target_;
  std::vector<IntMatrix> inverses_;
};

bool class_less(const IntVector& a, const IntVector& b) { return lex_less(a, b); }

int thread_cap() {
  unsigned hw = std::thread::hardware_concurrency();
  int cap = hw == 0 ? 1 : static_cast<int>(hw);
  if (const char* env = std::getenv("TORFAN_THREADS")) {
    const int requested = std::atoi(env);
    if (requested >= 1) cap = std::min(cap, requested);
  }
  return std::max(cap, 1);
}

}  // namespace

std::vector<FiberDimension> fiber_dimensions(const ToricMorphism& m) {
  if (m.matrix.cols() != m.source.dim() || m.matrix.rows() != m.target.dim())
    throw Error("not a toric morphism: matrix shape does not match the fans");
  const ConeLocator locate(m.target);
  const int n = m.source.dim();
  const int n_target = m.target.dim();
  std::map<Cone, int> worst;
  for (const Cone& sigma : m.source.all_cones()) {
    const Cone image = locate.image_cone(m, sigma);
    const int d = (n - sigma.dim()) - (n_target - image.dim());
    auto [it, inserted] = worst.emplace(image, d);
    if (!inserted) it->second = std::max(it->second, d);
  }
  std::vector<FiberDimension> out;
  for (const auto& [cone, d] : worst) out.push_back({cone, d});
  return out;
}

ConicBundleReport verify_conic_bundle(const ToricMorphism& m) {
  ConicBundleReport report;
  report.relative_drop = picard_rank(m.source) - picard_rank(m.target);
  const bool shape = m.target.dim() == m.source.dim() - 1 && is_lattice_surjective(m.matrix);
  const auto dims = fiber_dimensions(m);
  const bool covers = dims.size() == m.target.all_cones().size();
  const bool thin = std::all_of(dims.begin(), dims.end(), [](const FiberDimension& fd) { return fd.dim <= 1; });
  report.is_conic_bundle = shape && covers && thin;

  const ConeLocator locate(m.target);
  report.is_K_negative = true;
  for (const Wall& w : walls(m.source)) {
    if (locate.image_cone(m, w.cone).dim() != m.target.dim()) continue;
    if (w.relation.sum() <= 0) report.is_K_negative = false;
    report.contracted_walls.push_back(w);
  }
  return report;
}

ToricMorphism ConicBundleFactorization::composite() const {
  return {composite_map, source, target, MorphismKind::Composite};
}

namespace {

struct ClassSetLess {
  bool operator()(const std::vector<IntVector>& a, const std::vector<IntVector>& b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), class_less);
  }
};

struct SearchState {
  const Fan& source;
  int r;
  std::vector<ConicBundleFactorization> found;
  std::set<std::vector<IntVector>, ClassSetLess> seen;
  std::exception_ptr failure;
};

void explore(SearchState& state, const Fan& current, std::vector<BlowDown>& steps) {
  if (static_cast<int>(steps.size()) == state.r - 1) {
    for (auto [a, b] : fiber_pairs(current)) {
      ToricMorphism g = contract_fiber_pair(current, a, b);
      ToricMorphism total{g.matrix, state.source, g.target, MorphismKind::Composite};
      const ConicBundleReport report = verify_conic_bundle(total);
      if (!report.is_conic_bundle || !report.is_K_negative || report.relative_drop != state.r) continue;
      std::vector<IntVector> classes;
      for (const Wall& w : report.contracted_walls) classes.push_back(w.relation);
      std::sort(classes.begin(), classes.end(), class_less);
      classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
      if (!state.seen.insert(classes).second) continue;
      ConicBundleFactorization cb{steps, g, {a, b}, g.matrix, state.source, g.target, state.r, classes};
      state.found.push_back(std::move(cb));
    }
    return;
  }
  for (const BlowDownCandidate& c : blow_down_candidates(current)) {
    steps.push_back(blow_down(current, c.exceptional, c.a, c.b));
    const Fan next = steps.back().fan;
    explore(state, next, steps);
    steps.pop_back();
  }
}

}  // namespace

std::vector<ConicBundleFactorization> search_conic_bundles(const Fan& f, int r) {
  if (r < 1) throw Error("relative Picard drop must be positive");
  if (picard_rank(f) <= r) return {};

  std::vector<std::vector<BlowDown>> roots;
  if (r == 1) {
    roots.emplace_back();
  } else {
    for (const BlowDownCandidate& c : blow_down_candidates(f)) roots.push_back({blow_down(f, c.exceptional, c.a, c.b)});
  }

  std::vector<SearchState> branches;
  branches.reserve(roots.size());
  for (std::size_t k = 0; k < roots.size(); ++k) branches.push_back(SearchState{f, r, {}, {}, nullptr});
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < roots.size(); k = next++) {
      std::vector<BlowDown> steps = roots[k];
      const Fan start = steps.empty() ? f : steps.back().fan;
      try {
        explore(branches[k], start, steps);
      } catch (...) {
        branches[k].failure = std::current_exception();
      }
    }
  };
  const int threads = std::min<int>(thread_cap(), static_cast<int>(roots.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SearchState merged{f, r, {}, {}, nullptr};
  for (auto& b : branches) {
    if (b.failure) std::rethrow_exception(b.failure);
    for (auto& cb : b.found)
      if (merged.seen.insert(cb.contracted_classes).second) merged.found.push_back(std::move(cb));
  }
  return std::move(merged.found);
}

DiscriminantData discriminant(const ConicBundleFactorization& cb) {
  const ToricMorphism& g = cb.elementary;
  const Fan& base = g.source;
  const Fan& y = g.target;
  const auto [a, b] = cb.fiber_pair;
  for (const Wall& w : verify_conic_bundle(g).contracted_walls) {
    for (int k = 0; k < base.ray_count(); ++k) {
      const Integer expected = (k == a || k == b) ? 1 : 0;
      if (w.relation(k) != expected) throw Error("non-smooth elementary part unsupported");
    }
  }

  DiscriminantData data;
  for (std::size_t i = 0; i < cb.steps.size(); ++i) {
    const BlowDown& step = cb.steps[i];
    const std::string where = "discriminant: step " + std::to_string(i) + ": ";
    std::optional<int> fiber_side, other_side;
    for (int r : step.center.rays()) {
      const IntVector& u = step.fan.ray(r);
      auto in_base = base.find_ray(u);
      if (!in_base) throw Error(where + "center is not an invariant surface of the elementary base");
      (is_zero(IntVector(g.matrix * u)) ? fiber_side : other_side) = *in_base;
    }
    if (!fiber_side || !other_side) throw Error(where + "center does not map onto a divisor of the target");
    auto target_ray = y.find_ray(IntVector(g.matrix * base.ray(*other_side)));
    auto exceptional = cb.source.find_ray(step.morphism.source.ray(step.exceptional));
    auto strict = cb.source.find_ray(base.ray(*other_side));
    if (!target_ray || !exceptional || !strict) throw Error(where + "cannot trace the center to source and target");
    data.components.push_back({*target_ray, orbit_closure_fan(y, Cone{*target_ray}), *exceptional, *strict});
  }
  for (std::size_t i = 0; i < data.components.size(); ++i) {
    for (std::size_t j = i + 1; j < data.components.size(); ++j) {
      const int ti = data.components[i].target_ray, tj = data.components[j].target_ray;
      if (ti == tj || y.has_cone(Cone{ti, tj})) data.pairwise_disjoint = false;
    }
  }
  return data;
}

std::optional<std::pair<Fan, Fan>> surface_product_split(const Fan& f) {
  if (f.dim() != 4) return std::nullopt;
  const std::vector<Fan> factors = product_decompose(f);
  const auto k = factors.size();
  if (k < 2) return std::nullopt;
  auto join = [&](unsigned mask) {
    std::optional<Fan> out;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (1u << i)) out = out ? product(*out, factors[i]) : factors[i];
    return *out;
  };
  for (unsigned mask = 1; mask + 1 < (1u << k); ++mask) {
    if (!(mask & 1u)) continue;
    int d = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (1u << i)) d += factors[i].dim();
    if (d == 2) return std::make_pair(join(mask), join(((1u << k) - 1) & ~mask));
  }
  return std::nullopt;
}

LefschetzCertificate lefschetz_defect(const Fan& f) {
  LefschetzCertificate cert;
  const std::vector<Wall> ws = walls(f);
  const int rho = picard_rank(f);
  cert.lower = -1;
  for (int r = 0; r < f.ray_count(); ++r) {
    const int codim = rho - n1_span_of_divisor(f, ws, r);
    if (codim > cert.lower) {
      cert.lower = codim;
      cert.witness_ray = r;
    }
  }
  if (f.dim() != 4) throw CertificationError("certification rules are 4-fold specific", cert);

  if (auto split = surface_product_split(f)) {
    const int value = std::max(picard_rank(split->first) - 1, picard_rank(split->second) - 1);
    if (cert.lower > value) throw Error("inconsistent certificate: invariant lower bound exceeds product formula");
    cert.upper = cert.value = value;
    cert.rule = "product-formula";
    return cert;
  }
  if (cert.lower <= 3 && 3 <= rho - 1) {
    cert.upper = 3;
    cert.rule = "defect-cap";
  } else {
    cert.upper = rho - 1;
    cert.rule = "bounds-match";
  }
  if (cert.lower > *cert.upper) {
    cert.upper.reset();
  } else if (cert.lower == *cert.upper) {
    cert.value = cert.lower;
  }
  return cert;
}

MainTheoremReport main_theorem_report(const Fan& f) {
  MainTheoremReport report;
  const auto split = surface_product_split(f);
  report.is_product_of_surfaces = split.has_value();
  report.delta = lefschetz_defect(f);
  report.drop3 = search_conic_bundles(f, 3);
  const int rho = picard_rank(f);
  report.rho_in_range = report.drop3.empty() || (rho >= 5 && rho <= 13);

  const auto admissible = admissible_drop3_targets(rho);
  bool targets_ok = true;
  for (const auto& cb : report.drop3) {
    TargetCheck check;
    const auto matches = identify(cb.target, builtin_catalog());
    if (!matches.empty()) check.identified = matches.front().name;
    if (rho == 5 || rho == 6) {
      check.admissible = std::find(admissible.begin(), admissible.end(), check.identified) != admissible.end();
    } else if (rho >= 7 && rho <= 13 && split) {
      const Fan p1 = builtin_fan("P1");
      auto fits = [&](const Fan& s1, const Fan& s) {
        return picard_rank(s1) == 4 && fan_isomorphic(cb.target, product(p1, s)).has_value();
      };
      check.admissible = fits(split->first, split->second) || fits(split->second, split->first);
    }
    targets_ok = targets_ok && check.admissible;
    report.targets.push_back(std::move(check));
  }

  bool equivalence = true;
  if (!report.is_product_of_surfaces && report.delta.value)
    equivalence = (*report.delta.value == 3) == !report.drop3.empty();
  report.consistent = equivalence && report.rho_in_range && targets_ok;
  return report;
}

}  // namespace torfan
