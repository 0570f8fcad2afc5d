#include <doctest.h>

#include "support.hpp"

#include "torfan/fano.hpp"

using namespace torfan;

namespace {

Integer degree_of(const std::string& name) { return anticanonical_degree_top(builtin_fan(name)); }

std::int64_t as_int(const Integer& x) { return to_int64(x); }

}  // namespace

TEST_CASE("anticanonical degree of wall curves") {
  CHECK(anticanonical_degree_curve(builtin_fan("P1"), walls(builtin_fan("P1")).front()) == 2);
  const Fan p2 = builtin_fan("P2");
  for (const Wall& w : walls(p2)) CHECK(anticanonical_degree_curve(p2, w) == 3);

  const Fan f2 = builtin_fan("F2");
  Integer smallest = 100;
  for (const Wall& w : walls(f2)) smallest = std::min(smallest, anticanonical_degree_curve(f2, w));
  CHECK(smallest == 0);
}

TEST_CASE("Fano detection") {
  CHECK(is_fano(builtin_fan("P2")).is_fano);
  CHECK(is_fano(builtin_fan("F1")).is_fano);
  const FanoReport f2 = is_fano(builtin_fan("F2"));
  CHECK_FALSE(f2.is_fano);
  CHECK(f2.min_degree == 0);
  CHECK(anticanonical_degree_curve(builtin_fan("F2"), f2.witness_wall) == 0);

  const FanoReport k1 = is_fano(builtin_fan("K1"));
  CHECK(k1.is_fano);
  CHECK(k1.min_degree == 1);

  for (const char* name : {"K1", "K2", "K3", "K4", "U1", "U2", "U8", "D5", "L1", "P1xP1xP1"}) {
    INFO(name);
    CHECK(is_fano(builtin_fan(name)).is_fano);
  }
}

TEST_CASE("anticanonical polytopes") {
  const Polytope p1 = anticanonical_polytope(builtin_fan("P1"));
  REQUIRE(p1.vertices.size() == 2);
  CHECK(p1.vertices[0](0) == -1);
  CHECK(p1.vertices[1](0) == 1);

  const Polytope p2 = anticanonical_polytope(builtin_fan("P2"));
  CHECK(p2.vertices.size() == 3);
  CHECK(p2.normals.size() == 3);
  // Vertices of {<m,e1> >= -1, <m,e2> >= -1, <m,-e1-e2> >= -1}.
  std::vector<RatVector> expected(3, RatVector(2));
  expected[0] << -1, -1;
  expected[1] << -1, 2;
  expected[2] << 2, -1;
  CHECK(p2.vertices == expected);

  CHECK(anticanonical_polytope(builtin_fan("P1xP2")).vertices.size() == 6);
  CHECK(anticanonical_polytope(builtin_fan("K1")).vertices.size() == builtin_fan("K1").max_cones().size());

  CHECK_THROWS_WITH_AS(anticanonical_polytope(builtin_fan("F2")), doctest::Contains("polytope may be unbounded"), Error);
}

TEST_CASE("top degree against closed forms") {
  CHECK(degree_of("P2") == 9);
  CHECK(degree_of("P4") == 625);
  CHECK(degree_of("P1xP3") == 512);
  CHECK(degree_of("F1") == 8);
  CHECK(degree_of("Bl3P2") == 6);
  CHECK(degree_of("P1xP1xP1") == 48);
  for (int n = 1; n <= 4; ++n) CHECK(as_int(degree_of("P" + std::to_string(n))) == oracle::power(n + 1, n));
  CHECK(as_int(degree_of("P1xP2")) == oracle::product_of_projective_spaces_degree(1, 2));
  CHECK(as_int(degree_of("P1xP3")) == oracle::product_of_projective_spaces_degree(1, 3));
  CHECK(as_int(degree_of("P2xP2")) == oracle::product_of_projective_spaces_degree(2, 2));
}

TEST_CASE("degree is multiplicative on products") {
  // (-K_{S x T})^{a+b} = C(a+b, a) (-K_S)^a (-K_T)^b
  CHECK(degree_of("P1xP2") == 54);
  CHECK(degree_of("P2xP2") == 486);
  CHECK(degree_of("K4") == oracle::binomial(4, 2) * 6 * 9);
  CHECK(degree_of("F1xP1") == oracle::binomial(3, 2) * 8 * 2);
  CHECK(degree_of("Bl3P2xBl3P2") == oracle::binomial(4, 2) * 6 * 6);
}

TEST_CASE("blowing up a surface lowers the degree") {
  for (auto chain : {std::vector<std::string>{"D5", "H3", "K1"}, {"D3", "H2", "K2"}, {"D16", "H5", "K3"},
                     {"L1", "Q3", "U1"}, {"L3", "Q5", "U2"}, {"L11", "Q16", "U8"}}) {
    INFO(chain.front());
    CHECK(degree_of(chain[0]) > degree_of(chain[1]));
    CHECK(degree_of(chain[1]) > degree_of(chain[2]));
  }
}

TEST_CASE("invariants summary") {
  const InvariantsSummary p2 = invariants_summary(builtin_fan("P2"));
  CHECK(p2.picard_rank == 1);
  CHECK(p2.ray_count == 3);
  CHECK(p2.cone_counts == std::vector<int>{3, 3});
  REQUIRE(p2.degree);
  CHECK(*p2.degree == 9);
  CHECK(p2.is_fano);

  const InvariantsSummary f2 = invariants_summary(builtin_fan("F2"));
  CHECK_FALSE(f2.is_fano);
  CHECK_FALSE(f2.degree);

  CHECK(invariants_summary(builtin_fan("K1")).picard_rank == 5);
}

TEST_CASE("polytope is full dimensional with one facet per ray") {
  for (const auto& name : testing_support::corpus_names()) {
    const Fan f = builtin_fan(name);
    if (!is_fano(f).is_fano) continue;
    INFO(name);
    const Polytope p = anticanonical_polytope(f);
    CHECK(p.normals.size() == static_cast<std::size_t>(f.ray_count()));
    CHECK(p.vertices.size() == f.max_cones().size());
    RatMatrix diffs(f.dim(), static_cast<Eigen::Index>(p.vertices.size()));
    for (std::size_t k = 0; k < p.vertices.size(); ++k)
      diffs.col(static_cast<Eigen::Index>(k)) = p.vertices[k] - p.vertices.front();
    CHECK(rank(diffs) == f.dim());
    for (const auto& v : p.vertices)
      for (Eigen::Index i = 0; i < v.size(); ++i) CHECK(denominator(v(i)) == 1);
  }
}

TEST_CASE("top degree equals twice the polygon area in dimension two") {
  for (const char* name : {"P2", "F1", "Bl2P2", "Bl3P2", "P1xP1"}) {
    const Fan f = builtin_fan(name);
    INFO(name);
    CHECK(as_int(anticanonical_degree_top(f)) == oracle::pick_twice_area(testing_support::plain_rays(f)));
  }
}

TEST_CASE("top degree equals the normalized volume from lattice point counts") {
  for (const char* name : {"P3", "P1xP2", "F1xP1", "P1xP1xP1", "PP2(O+O(1))", "PP2(O+O(2))",
                           "PP1xP1(O(-1,-1)+O)", "PP1xP1(O(0,-1)+O(-1,0))", "P4", "D5", "K1", "U1", "U8"}) {
    const Fan f = builtin_fan(name);
    INFO(name);
    CHECK(as_int(anticanonical_degree_top(f)) == oracle::normalized_volume(testing_support::plain_rays(f)));
  }
}
