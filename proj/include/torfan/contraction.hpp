// Extremal contractions read off wall relations, and execution of the two
// kinds that preserve smoothness: blow-downs along codimension-two invariant
// subvarieties and P^1-bundle projections.
#pragma once

#include "torfan/intersection.hpp"

#include <optional>
#include <string>
#include <vector>

namespace torfan {

enum class ContractionKind { FiberType, Divisorial, Small };

std::string to_string(ContractionKind kind);

/// Sign pattern of a wall relation over its n+1 involved rays.
///
/// The contraction has type (exc_dim, image_dim) with exc_dim = n - alpha and
/// image_dim = number of zero coefficients.
struct WallClassification {
  int alpha = 0;      // negative coefficients
  int zeros = 0;      // zero coefficients among involved rays
  int positives = 0;  // includes the two +1 of the opposite rays
  ContractionKind kind = ContractionKind::FiberType;
  int exc_dim = 0;
  int image_dim = 0;

  bool operator==(const WallClassification&) const = default;
};

WallClassification classify_wall(const Fan& f, const Wall& w);

struct ExtremalRay {
  CurveClass curve;
  std::vector<Wall> walls;
  WallClassification type;
};

/// Walls grouped by numerical class, keeping only classes spanning extremal
/// rays of the cone of curves (the cone generated by all wall classes).
/// Throws Error("fan not Fano-like; extremal grouping invalid") if walls of
/// one extremal class classify differently.
std::vector<ExtremalRay> extremal_rays(const Fan& f);

enum class MorphismKind { Blowdown, FiberQuotient, Composite };

std::string to_string(MorphismKind kind);

/// A toric morphism given by a lattice map N -> N' compatible with the fans.
struct ToricMorphism {
  IntMatrix matrix;
  Fan source;
  Fan target;
  MorphismKind kind = MorphismKind::Composite;
};

/// `second` after `first`.
ToricMorphism compose(const ToricMorphism& first, const ToricMorphism& second);

struct BlowDown {
  Fan fan;            // the target X'
  Cone center;        // cone(u_a, u_b) in the target's indexing
  int exceptional;    // ray index in the source
  ToricMorphism morphism;
};

/// Inverse star subdivision removing `exceptional`, where
/// u_exceptional = u_a + u_b. Throws Error("unsupported divisorial
/// contraction: ...") if the star of the ray does not have that shape.
BlowDown blow_down(const Fan& f, int exceptional, int a, int b);

/// Blow-down of the divisorial class; requires the relation shape
/// u_a - u_e + u_b = 0.
BlowDown blow_down(const Fan& f, const ExtremalRay& divisorial);

/// Blow-down contracting the given ray, locating the center automatically.
BlowDown blow_down_ray(const Fan& f, int exceptional);

struct BlowDownCandidate {
  int exceptional;
  int a;
  int b;
};

/// Every ray that can be blown down smoothly, with its center.
std::vector<BlowDownCandidate> blow_down_candidates(const Fan& f);

/// Projection of the P^1-bundle whose fibers are the direction u_a = -u_b.
/// Throws Error("not an elementary P^1-bundle direction: ...") otherwise.
ToricMorphism contract_fiber_pair(const Fan& f, int a, int b);

/// Projection along a fiber-type class of type (n, n-1).
ToricMorphism contract_fiber_type(const Fan& f, const ExtremalRay& fiber_class);

/// Ray pairs (a < b) along which the fan is a P^1-bundle.
std::vector<std::pair<int, int>> fiber_pairs(const Fan& f);

}  // namespace torfan
