// Fano test, anticanonical polytope and (-K)^n.
#pragma once

#include "torfan/intersection.hpp"

#include <optional>
#include <vector>

namespace torfan {

/// -K . C for the invariant curve of a wall: the sum of its relation.
Integer anticanonical_degree_curve(const Fan& f, const Wall& w);

struct FanoReport {
  bool is_fano = false;
  Integer min_degree;
  Wall witness_wall;  // first wall attaining min_degree
};

FanoReport is_fano(const Fan& f);

/// P = {m : <m, u> >= -1 for every ray u}.
struct Polytope {
  std::vector<IntVector> normals;
  std::vector<RatVector> vertices;  // sorted lexicographically
};

/// Throws Error("polytope may be unbounded/degenerate") unless f is Fano.
Polytope anticanonical_polytope(const Fan& f);

/// n! vol(P), computed from a barycentric triangulation. Integral for smooth
/// Fano fans; the result is checked for that.
Integer anticanonical_degree_top(const Fan& f);

struct InvariantsSummary {
  int picard_rank = 0;
  int ray_count = 0;
  std::vector<int> cone_counts;  // cones of dimension 1..n
  std::optional<Integer> degree;
  bool is_fano = false;

  bool operator==(const InvariantsSummary&) const = default;
};

InvariantsSummary invariants_summary(const Fan& f);

}  // namespace torfan
