#include <doctest.h>

#include "support.hpp"

#include "torfan/conic.hpp"

#include <cstdlib>
#include <set>

using namespace torfan;
using testing_support::isomorphic;

namespace {

const std::vector<std::string> kDrop3{"K1", "K2", "K3", "U1", "U2", "U8", "K4"};

std::string target_name(const Fan& y) {
  const auto hits = identify(y, builtin_catalog());
  return hits.empty() ? std::string{} : hits.front().name;
}

// Rays of X whose image under the composite is the given ray of Y.
std::vector<int> rays_over(const ConicBundleFactorization& cb, int target_ray) {
  std::vector<int> out;
  for (int r = 0; r < cb.source.ray_count(); ++r) {
    const IntVector image = cb.composite_map * cb.source.ray(r);
    if (!is_zero(image) && primitive_part(image) == cb.target.ray(target_ray)) out.push_back(r);
  }
  return out;
}

std::string fingerprint(const std::vector<ConicBundleFactorization>& found) {
  std::string s;
  for (const auto& cb : found) {
    for (const auto& c : cb.contracted_classes)
      for (Eigen::Index i = 0; i < c.size(); ++i) s += c(i).str() + ",";
    s += "|";
    for (const auto& r : cb.target.rays())
      for (Eigen::Index i = 0; i < r.size(); ++i) s += r(i).str() + ",";
    s += ";";
  }
  return s;
}

}  // namespace

TEST_CASE("fiber dimensions of a projection") {
  const ToricMorphism p = contract_fiber_pair(builtin_fan("P1xP2"), 0, 1);
  for (const auto& fd : fiber_dimensions(p)) CHECK(fd.dim == 1);

  // P1 x P2 -> P1 forgets the plane: fibers of dimension two.
  const Fan x = builtin_fan("P1xP2");
  IntMatrix m(1, 3);
  m << 1, 0, 0;
  const ToricMorphism to_line{m, x, builtin_fan("P1"), MorphismKind::Composite};
  int biggest = 0;
  for (const auto& fd : fiber_dimensions(to_line)) biggest = std::max(biggest, fd.dim);
  CHECK(biggest == 2);
  const ConicBundleReport r = verify_conic_bundle(to_line);
  CHECK_FALSE(r.is_conic_bundle);

  IntMatrix skew(2, 3);
  skew << 1, 1, 0, 0, 1, 1;
  CHECK_THROWS_WITH_AS(fiber_dimensions(ToricMorphism{skew, x, builtin_fan("P2"), MorphismKind::Composite}),
                       doctest::Contains("not a toric morphism"), Error);
}

TEST_CASE("elementary conic bundles verify") {
  const ConicBundleReport d5 = verify_conic_bundle(contract_fiber_pair(builtin_fan("D5"), 3, 4));
  CHECK(d5.is_conic_bundle);
  CHECK(d5.is_K_negative);
  CHECK(d5.relative_drop == 1);
  for (const Wall& w : d5.contracted_walls) CHECK(w.relation == int_vector({0, 0, 0, 1, 1, 0, 0}));
}

TEST_CASE("drop-three search on the corpus") {
  for (const auto& name : kDrop3) {
    const Fan x = builtin_fan(name);
    const auto found = search_conic_bundles(x, 3);
    INFO(name);
    REQUIRE_FALSE(found.empty());
    const auto admissible = admissible_drop3_targets(picard_rank(x));
    for (const auto& cb : found) {
      CHECK(cb.relative_drop == 3);
      CHECK(picard_rank(x) - picard_rank(cb.target) == 3);
      CHECK(cb.steps.size() == 2);
      CHECK(rank(columns_matrix(cb.contracted_classes, x.ray_count())) == 3);
      const ConicBundleReport r = verify_conic_bundle(cb.composite());
      CHECK(r.is_conic_bundle);
      CHECK(r.is_K_negative);
      CHECK(r.relative_drop == 3);
      const std::string t = target_name(cb.target);
      CHECK(std::find(admissible.begin(), admissible.end(), t) != admissible.end());
    }
  }
}

TEST_CASE("K1 and U1 targets") {
  std::set<std::string> k1;
  for (const auto& cb : search_conic_bundles(builtin_fan("K1"), 3)) k1.insert(target_name(cb.target));
  CHECK(k1.count("P1xP2") == 1);

  std::set<std::string> u1;
  for (const auto& cb : search_conic_bundles(builtin_fan("U1"), 3)) u1.insert(target_name(cb.target));
  CHECK(u1.size() >= 2);
  CHECK(u1.count("P1xP1xP1") == 1);
  CHECK(u1.count("PP1xP1(O(-1,-1)+O)") == 1);
}

TEST_CASE("no conic bundles where none exist") {
  CHECK(search_conic_bundles(builtin_fan("P4"), 1).empty());
  CHECK(search_conic_bundles(builtin_fan("P4"), 3).empty());
  CHECK(search_conic_bundles(builtin_fan("D5"), 3).empty());
  CHECK_FALSE(search_conic_bundles(builtin_fan("D5"), 1).empty());
}

TEST_CASE("discriminant components") {
  const auto k1 = search_conic_bundles(builtin_fan("K1"), 3);
  REQUIRE_FALSE(k1.empty());
  for (const auto& cb : k1) {
    const DiscriminantData d = discriminant(cb);
    REQUIRE(d.components.size() == 2);
    CHECK(d.pairwise_disjoint);
    for (const auto& c : d.components) CHECK(isomorphic(c.orbit_fan, builtin_fan("P2")));
  }

  const auto u2 = search_conic_bundles(builtin_fan("U2"), 3);
  REQUIRE_FALSE(u2.empty());
  for (const auto& cb : u2) {
    const DiscriminantData d = discriminant(cb);
    REQUIRE(d.components.size() == 2);
    CHECK(d.pairwise_disjoint);
    for (const auto& c : d.components) CHECK(isomorphic(c.orbit_fan, builtin_fan("F1")));
  }

  const auto d5 = search_conic_bundles(builtin_fan("D5"), 1);
  REQUIRE_FALSE(d5.empty());
  CHECK(discriminant(d5.front()).components.empty());
}

TEST_CASE("pullback of a discriminant component is two divisors") {
  for (const auto& name : kDrop3) {
    if (name == "K4") continue;
    INFO(name);
    for (const auto& cb : search_conic_bundles(builtin_fan(name), 3)) {
      for (const auto& c : discriminant(cb).components) {
        std::vector<int> expected{c.exceptional, c.strict};
        std::sort(expected.begin(), expected.end());
        CHECK(rays_over(cb, c.target_ray) == expected);
      }
    }
  }
}

TEST_CASE("singular elementary part is rejected") {
  // Bl_pt(P1 x P1) -> P1 has a reducible fiber inside the elementary step itself.
  const Fan q(2, {int_vector({1, 0}), int_vector({0, 1}), int_vector({-1, 0}), int_vector({0, -1})},
              {Cone{0, 1}, Cone{1, 2}, Cone{2, 3}, Cone{0, 3}});
  const Fan blown = star_subdivide(q, Cone{0, 1}).fan;
  IntMatrix m(1, 2);
  m << 0, 1;
  ConicBundleFactorization cb;
  cb.elementary = ToricMorphism{m, blown, builtin_fan("P1"), MorphismKind::FiberQuotient};
  cb.fiber_pair = {*blown.find_ray(int_vector({1, 0})), *blown.find_ray(int_vector({-1, 0}))};
  cb.source = blown;
  cb.target = builtin_fan("P1");
  cb.composite_map = m;
  CHECK_THROWS_WITH_AS(discriminant(cb), doctest::Contains("non-smooth elementary part unsupported"), Error);
}

TEST_CASE("Lefschetz defect certificates") {
  for (const char* name : {"K1", "K2", "K3", "U1", "U2", "U8"}) {
    INFO(name);
    const LefschetzCertificate c = lefschetz_defect(builtin_fan(name));
    CHECK(c.lower == 3);
    REQUIRE(c.value);
    CHECK(*c.value == 3);
  }
  const LefschetzCertificate k4 = lefschetz_defect(builtin_fan("K4"));
  REQUIRE(k4.value);
  CHECK(*k4.value == 3);
  CHECK(k4.rule == "product-formula");

  const LefschetzCertificate p4 = lefschetz_defect(builtin_fan("P4"));
  REQUIRE(p4.value);
  CHECK(*p4.value == 0);

  const LefschetzCertificate pp = lefschetz_defect(builtin_fan("Bl3P2xBl3P2"));
  REQUIRE(pp.value);
  CHECK(*pp.value == 3);

  try {
    lefschetz_defect(builtin_fan("P2"));
    FAIL("expected a certification error");
  } catch (const CertificationError& e) {
    CHECK(e.certificate.lower == 0);
    CHECK_FALSE(e.certificate.value);
  }
}

TEST_CASE("certificate bounds are ordered") {
  for (const auto& name : testing_support::corpus_names()) {
    const Fan f = builtin_fan(name);
    if (f.dim() != 4) continue;
    INFO(name);
    const LefschetzCertificate c = lefschetz_defect(f);
    CHECK(c.lower == picard_rank(f) - n1_span_of_divisor(f, c.witness_ray));
    if (c.upper) CHECK(c.lower <= *c.upper);
    CHECK(c.value.has_value() == (c.upper && *c.upper == c.lower));
  }
}

TEST_CASE("main theorem report") {
  const MainTheoremReport u8 = main_theorem_report(builtin_fan("U8"));
  CHECK(u8.consistent);
  CHECK_FALSE(u8.is_product_of_surfaces);
  REQUIRE(u8.delta.value);
  CHECK(*u8.delta.value == 3);
  CHECK_FALSE(u8.drop3.empty());
  for (const auto& t : u8.targets) CHECK(t.admissible);

  const MainTheoremReport k4 = main_theorem_report(builtin_fan("K4"));
  CHECK(k4.consistent);
  CHECK(k4.is_product_of_surfaces);

  const MainTheoremReport p1p3 = main_theorem_report(builtin_fan("P1xP3"));
  CHECK(p1p3.consistent);
  CHECK(p1p3.drop3.empty());
}

TEST_CASE("drop-three consequences hold across the corpus") {
  for (const auto& name : testing_support::corpus_names()) {
    const Fan x = builtin_fan(name);
    if (x.dim() != 4) continue;
    const auto found = search_conic_bundles(x, 3);
    INFO(name);
    if (found.empty()) continue;
    const int rho = picard_rank(x);
    CHECK(rho >= 5);
    CHECK(rho <= 13);
    CHECK(lefschetz_defect(x).lower == 3);
    bool has_divisor = false;
    for (int r = 0; r < x.ray_count(); ++r) has_divisor |= n1_span_of_divisor(x, r) == rho - 3;
    CHECK(has_divisor);
    for (const auto& cb : found) {
      for (const auto& c : cb.contracted_classes) CHECK(c.size() == x.ray_count());
    }
  }
}

TEST_CASE("named chains factor through Fano intermediates") {
  struct Chain {
    std::string x2;
    Cone first, second;
    int a, b;
    std::string x1, x;
  };
  const std::vector<Chain> chains{
      {"D5", Cone{3, 5}, Cone{4, 6}, 3, 4, "H3", "K1"},  {"D3", Cone{3, 6}, Cone{4, 6}, 5, 6, "H2", "K2"},
      {"D16", Cone{3, 6}, Cone{4, 6}, 5, 6, "H5", "K3"}, {"L1", Cone{2, 7}, Cone{1, 7}, 0, 7, "Q3", "U1"},
      {"L2", Cone{1, 7}, Cone{2, 7}, 0, 7, "Q13", "U1"}, {"L3", Cone{1, 7}, Cone{2, 7}, 0, 7, "Q5", "U2"},
      {"L11", Cone{0, 2}, Cone{1, 7}, 0, 7, "Q16", "U8"},
  };
  for (const Chain& c : chains) {
    INFO(c.x << " via " << c.x1);
    const Fan x2 = builtin_fan(c.x2);
    const Fan x1 = star_subdivide(x2, c.first).fan;
    const Fan x = star_subdivide(x1, c.second).fan;
    CHECK(isomorphic(x1, builtin_fan(c.x1)));
    CHECK(isomorphic(x, builtin_fan(c.x)));
    CHECK(is_fano(x1).is_fano);
    CHECK(is_fano(x2).is_fano);

    // The chain's composite is one of the bundles the search reports.
    const ToricMorphism g = contract_fiber_pair(x2, c.a, c.b);
    const ConicBundleReport r = verify_conic_bundle(ToricMorphism{g.matrix, x, g.target, MorphismKind::Composite});
    CHECK(r.is_conic_bundle);
    CHECK(r.relative_drop == 3);
    std::vector<IntVector> classes;
    for (const Wall& w : r.contracted_walls) classes.push_back(w.relation);
    std::sort(classes.begin(), classes.end(), lex_less);
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    bool listed = false;
    for (const auto& cb : search_conic_bundles(x, 3)) {
      auto found = cb.contracted_classes;
      std::sort(found.begin(), found.end(), lex_less);
      listed = listed || found == classes;
    }
    CHECK(listed);
  }
}

TEST_CASE("relative drop never exceeds eight") {
  for (const char* name : {"K1", "U1", "K4"}) {
    const Fan x = builtin_fan(name);
    for (int r = 1; r <= 4; ++r)
      for (const auto& cb : search_conic_bundles(x, r)) {
        CHECK(cb.relative_drop == r);
        CHECK(cb.relative_drop <= 8);
      }
  }
}

TEST_CASE("thread count does not change results") {
  const Fan u1 = builtin_fan("U1");
  setenv("TORFAN_THREADS", "1", 1);
  const std::string one = fingerprint(search_conic_bundles(u1, 3));
  setenv("TORFAN_THREADS", "4", 1);
  const std::string four = fingerprint(search_conic_bundles(u1, 3));
  unsetenv("TORFAN_THREADS");
  CHECK(one == four);
  CHECK_FALSE(one.empty());
}
