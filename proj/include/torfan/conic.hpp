// Conic bundles: fiber dimensions of toric morphisms, factorization of a
// conic bundle into blow-downs followed by a P^1-bundle, discriminant
// components, and the Lefschetz defect certificate for 4-folds.
#pragma once

#include "torfan/catalog.hpp"
#include "torfan/contraction.hpp"

#include <optional>
#include <string>
#include <vector>

namespace torfan {

struct FiberDimension {
  Cone target_cone;
  int dim = 0;
};

/// Maximal fiber dimension over the distinguished point of every target cone
/// hit by some source cone. Throws Error("not a toric morphism: ...") if the
/// image of a source cone is not inside a target cone.
std::vector<FiberDimension> fiber_dimensions(const ToricMorphism& m);

struct ConicBundleReport {
  bool is_conic_bundle = false;
  bool is_K_negative = false;
  int relative_drop = 0;
  std::vector<Wall> contracted_walls;  // walls of the source whose curve maps to a point
};

ConicBundleReport verify_conic_bundle(const ToricMorphism& m);

struct ConicBundleFactorization {
  std::vector<BlowDown> steps;  // X -> X_1 -> ... -> X_{r-1}
  ToricMorphism elementary;     // X_{r-1} -> Y
  std::pair<int, int> fiber_pair;  // rays of X_{r-1} spanning the fiber direction
  IntMatrix composite_map;
  Fan source;
  Fan target;
  int relative_drop = 0;
  std::vector<IntVector> contracted_classes;  // distinct, sorted

  ToricMorphism composite() const;
};

/// Every conic bundle X -> Y with rho_X - rho_Y = r that factors as r-1
/// smooth blow-downs followed by a P^1-bundle. Blow-downs are explored in
/// every order; results are deduplicated by the set of contracted curve
/// classes, which determines the contraction. Top-level branches run in
/// parallel, at most TORFAN_THREADS at a time.
std::vector<ConicBundleFactorization> search_conic_bundles(const Fan& f, int r);

struct DiscriminantComponent {
  int target_ray = 0;     // A_i = V(target_ray) in Y
  Fan orbit_fan;          // fan of A_i
  int exceptional = 0;    // E_i, ray of X
  int strict = 0;         // E^_i, ray of X; f^*(A_i) = E_i + E^_i
};

struct DiscriminantData {
  std::vector<DiscriminantComponent> components;
  bool pairwise_disjoint = true;
};

/// Throws Error("non-smooth elementary part unsupported") if the elementary
/// conic bundle has degenerate fibers.
DiscriminantData discriminant(const ConicBundleFactorization& cb);

struct LefschetzCertificate {
  int lower = 0;
  std::optional<int> upper;  // empty: no upper bound available
  std::optional<int> value;
  std::string rule;
  int witness_ray = 0;
};

/// Error carrying the partial certificate (lower bound only).
class CertificationError : public Error {
 public:
  CertificationError(const std::string& what, LefschetzCertificate partial)
      : Error(what), certificate(std::move(partial)) {}
  LefschetzCertificate certificate;
};

/// Lower bound from invariant divisors: max over rays of rho - dim N_1(D).
/// Upper bound: exact product formula for S_1 x S_2, otherwise 3 (a 4-fold
/// with delta >= 4 is a product of surfaces) or rho - 1, whichever is smaller.
/// Throws CertificationError("certification rules are 4-fold specific") for
/// other dimensions.
LefschetzCertificate lefschetz_defect(const Fan& f);

/// Two surface fans whose product is f, if f has such a splitting.
std::optional<std::pair<Fan, Fan>> surface_product_split(const Fan& f);

struct TargetCheck {
  std::string identified;  // builtin name, or empty
  bool admissible = false;
};

struct MainTheoremReport {
  bool is_product_of_surfaces = false;
  LefschetzCertificate delta;
  std::vector<ConicBundleFactorization> drop3;
  std::vector<TargetCheck> targets;  // one per drop-3 factorization
  bool rho_in_range = true;          // 5 <= rho <= 13 when drop-3 bundles exist
  bool consistent = false;
};

MainTheoremReport main_theorem_report(const Fan& f);

}  // namespace torfan
