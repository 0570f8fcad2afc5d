// Walls, wall relations and invariant curve classes.
#pragma once

#include "torfan/fan.hpp"

#include <array>
#include <vector>

namespace torfan {

/// An (n-1)-cone shared by exactly two maximal cones.
///
/// `relation` is indexed by all rays of the fan and is zero outside the n+1
/// rays of the two adjacent cones; the two rays opposite the wall carry +1 and
/// sum(relation[i] * ray(i)) == 0.
struct Wall {
  Cone cone;
  std::array<int, 2> adjacent{};  // maximal-cone indices
  std::array<int, 2> opposite{};  // ray of adjacent[0], ray of adjacent[1]
  IntVector relation;

  /// The n+1 rays spanning the two adjacent cones.
  std::vector<int> involved_rays() const;
};

/// Numerical class of the invariant curve V(wall), as its intersection numbers
/// with every invariant divisor. Two classes are equal iff the curves are
/// numerically equivalent.
struct CurveClass {
  IntVector intersections;

  bool operator==(const CurveClass& other) const { return intersections == other.intersections; }
};

/// All walls, sorted by their ray sets. Throws Error("walls undefined: ...")
/// when some facet is not shared by exactly two maximal cones.
std::vector<Wall> walls(const Fan& f);

CurveClass curve_class(const Fan& f, const Wall& w);

/// #rays - n for a smooth complete fan.
int picard_rank(const Fan& f);

/// dim N_1(V(ray), X): rank of the classes of invariant curves lying in the
/// invariant divisor, i.e. of the walls containing the ray. Invariant curves
/// generate the Chow group of curves of a complete toric variety and each
/// invariant subvariety is toric, so this is the exact span.
int n1_span_of_divisor(const Fan& f, int ray);
int n1_span_of_divisor(const Fan& f, const std::vector<Wall>& all_walls, int ray);

/// Rank of the span of all wall classes; equals picard_rank for projective fans.
int curve_span_rank(const Fan& f, const std::vector<Wall>& all_walls);

}  // namespace torfan
