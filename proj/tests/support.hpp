// Shared fixtures for the test executables.
#pragma once

#include "oracles.hpp"
#include "torfan/catalog.hpp"

#include <random>
#include <string>
#include <vector>

namespace testing_support {

using namespace torfan;

inline oracle::Matrix to_plain(const IntMatrix& m) {
  oracle::Matrix out(static_cast<std::size_t>(m.rows()), std::vector<long>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = static_cast<long>(to_int64(m(i, j)));
  return out;
}

inline IntMatrix from_plain(const oracle::Matrix& m) {
  IntMatrix out(static_cast<Eigen::Index>(m.size()), static_cast<Eigen::Index>(m.front().size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m[i][j];
  return out;
}

inline std::vector<std::vector<long>> plain_rays(const Fan& f) {
  std::vector<std::vector<long>> out;
  for (const auto& r : f.rays()) {
    std::vector<long> v;
    for (Eigen::Index i = 0; i < r.size(); ++i) v.push_back(static_cast<long>(to_int64(r(i))));
    out.push_back(v);
  }
  return out;
}

inline bool isomorphic(const Fan& a, const Fan& b) { return fan_isomorphic(a, b).has_value(); }

/// The base 4-folds with an elementary conic bundle.
inline const std::vector<std::string>& base_fourfolds() {
  static const std::vector<std::string> names{"D5", "D3", "D16", "L1", "L2", "L3", "L11"};
  return names;
}

/// Smooth complete fans used for corpus-wide properties.
inline const std::vector<std::string>& corpus_names() {
  static const std::vector<std::string> names{
      "P1",  "P2",  "P3",  "P4",  "F1",  "F2",  "Bl2P2", "Bl3P2", "P1xP1", "P1xP2", "P1xP3", "P2xP2",
      "P1xP1xP1", "F1xP1", "PP2(O+O(1))", "PP2(O+O(2))", "PP1xP1(O(-1,-1)+O)", "PP1xP1(O(0,-1)+O(-1,0))",
      "D5",  "D3",  "D16", "L1",  "L2",  "L3",  "L11",   "H3",    "K1",    "H2",    "K2",    "H5",
      "K3",  "K4",  "Q3",  "U1",  "Q13", "Q5",  "U2",    "Q16",   "U8"};
  return names;
}

/// Random element of GL_n(Z) as a product of elementary moves.
inline IntMatrix random_unimodular(int n, std::mt19937& rng) {
  IntMatrix m = IntMatrix::Identity(n, n);
  std::uniform_int_distribution<int> pick(0, n - 1), coef(-2, 2), coin(0, 3);
  for (int step = 0; step < 3 * n; ++step) {
    const int i = pick(rng), j = pick(rng);
    if (coin(rng) == 0) {
      m.row(i).swap(m.row(j));
    } else if (i != j) {
      m.row(i) += Integer(coef(rng)) * m.row(j);
    }
  }
  if (coin(rng) == 0) m.row(0) *= Integer(-1);
  return m;
}

/// Random smooth complete fan: a corpus fan, up to `max_blowups` random
/// blow-ups along invariant surfaces, then a random change of basis.
inline Fan random_fan(std::mt19937& rng, int max_blowups = 2) {
  static const std::vector<std::string> seeds{"P2", "F1", "P1xP1", "Bl3P2", "P3", "P1xP2",
                                              "PP2(O+O(1))", "P1xP1xP1", "P4", "D5", "L1", "L3"};
  std::uniform_int_distribution<std::size_t> seed_pick(0, seeds.size() - 1);
  Fan f = builtin_fan(seeds[seed_pick(rng)]);
  std::uniform_int_distribution<int> count(0, max_blowups);
  const int blowups = count(rng);
  for (int k = 0; k < blowups; ++k) {
    const auto two_cones = f.cones_of_dim(2);
    std::uniform_int_distribution<std::size_t> cone_pick(0, two_cones.size() - 1);
    f = star_subdivide(f, two_cones[cone_pick(rng)]).fan;
  }
  return transform(f, random_unimodular(f.dim(), rng)).named("random");
}

}  // namespace testing_support
