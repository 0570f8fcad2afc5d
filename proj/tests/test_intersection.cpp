#include <doctest.h>

#include "support.hpp"

using namespace torfan;

namespace {

Wall wall_on(const std::vector<Wall>& ws, const Cone& c) {
  for (const Wall& w : ws)
    if (w.cone == c) return w;
  throw Error("no such wall");
}

IntVector weighted_sum(const Fan& f, const IntVector& b) {
  IntVector s = IntVector::Zero(f.dim());
  for (int r = 0; r < f.ray_count(); ++r) s += b(r) * f.ray(r);
  return s;
}

}  // namespace

TEST_CASE("P1 has one wall") {
  const auto ws = walls(builtin_fan("P1"));
  REQUIRE(ws.size() == 1);
  CHECK(ws[0].relation == int_vector({1, 1}));
}

TEST_CASE("P2 wall relation") {
  const Fan p2 = builtin_fan("P2");
  const Wall w = wall_on(walls(p2), Cone{0});
  CHECK(w.relation == int_vector({1, 1, 1}));
  CHECK(curve_class(p2, w).intersections == int_vector({1, 1, 1}));
}

TEST_CASE("P1 x P1 ruling class") {
  const Fan q(2, {int_vector({1, 0}), int_vector({0, 1}), int_vector({-1, 0}), int_vector({0, -1})},
              {Cone{0, 1}, Cone{1, 2}, Cone{2, 3}, Cone{0, 3}});
  const Wall w = wall_on(walls(q), Cone{0});
  CHECK(curve_class(q, w).intersections == int_vector({0, 1, 0, 1}));
}

TEST_CASE("D5 has a u4 + u5 = 0 wall") {
  const Fan d5 = builtin_fan("D5");
  IntVector pure = IntVector::Zero(7);
  pure(3) = pure(4) = 1;
  int found = 0;
  for (const Wall& w : walls(d5))
    if (w.relation == pure) ++found;
  CHECK(found > 0);
}

TEST_CASE("walls need a complete fan") {
  const Fan open(2, {int_vector({1, 0}), int_vector({0, 1}), int_vector({-1, -1})}, {Cone{0, 1}, Cone{0, 2}});
  CHECK_THROWS_WITH_AS(walls(open), doctest::Contains("walls undefined"), Error);
}

TEST_CASE("Picard ranks") {
  CHECK(picard_rank(builtin_fan("P2")) == 1);
  CHECK(picard_rank(builtin_fan("D5")) == 3);
  CHECK(picard_rank(builtin_fan("K1")) == 5);
}

TEST_CASE("spans of invariant divisors") {
  CHECK(n1_span_of_divisor(builtin_fan("P2"), 0) == 1);

  const Fan k1 = builtin_fan("K1");
  const int e = *k1.find_ray(int_vector({0, 0, 1, 1}));
  CHECK(n1_span_of_divisor(k1, e) == 2);
  CHECK(picard_rank(k1) - n1_span_of_divisor(k1, e) == 3);

  const Fan p1p2 = builtin_fan("P1xP2");
  for (int r = 2; r < 5; ++r) CHECK(n1_span_of_divisor(p1p2, r) == 2);

  CHECK_THROWS_AS(n1_span_of_divisor(builtin_fan("P2"), 7), Error);
}

TEST_CASE("wall properties over the corpus") {
  for (const auto& name : testing_support::corpus_names()) {
    const Fan f = builtin_fan(name);
    const auto ws = walls(f);
    INFO(name);
    CHECK(static_cast<int>(ws.size()) * 2 == f.dim() * static_cast<int>(f.max_cones().size()));
    for (const Wall& w : ws) {
      CHECK(is_zero(weighted_sum(f, w.relation)));
      CHECK(w.relation(w.opposite[0]) == 1);
      CHECK(w.relation(w.opposite[1]) == 1);
      const auto involved = w.involved_rays();
      for (int r = 0; r < f.ray_count(); ++r)
        if (std::find(involved.begin(), involved.end(), r) == involved.end()) CHECK(w.relation(r) == 0);
      CHECK(is_zero(weighted_sum(f, curve_class(f, w).intersections)));
    }
    CHECK(curve_span_rank(f, ws) == picard_rank(f));
    for (int r = 0; r < f.ray_count(); ++r)
      CHECK(n1_span_of_divisor(f, ws, r) <= picard_rank(orbit_closure_fan(f, Cone{r})));
  }
}
