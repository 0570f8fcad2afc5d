// Simplicial fans in N = Z^n and the combinatorial operations on them.
#pragma once

#include "torfan/lattice.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace torfan {

/// A cone of a simplicial fan, stored as the sorted set of its ray indices.
class Cone {
 public:
  Cone() = default;
  Cone(std::initializer_list<int> rays);
  explicit Cone(std::vector<int> rays);

  const std::vector<int>& rays() const { return rays_; }
  int dim() const { return static_cast<int>(rays_.size()); }
  bool contains(int ray) const;
  bool contains(const Cone& face) const;
  Cone without(int ray) const;
  Cone with(int ray) const;
  Cone intersection(const Cone& other) const;

  auto operator<=>(const Cone&) const = default;

 private:
  std::vector<int> rays_;
};

class Fan {
 public:
  Fan() = default;
  /// Checks ray lengths and index ranges (throws Error("malformed fan: ...")),
  /// then sorts the cone list. Rays keep the order given.
  Fan(int dim, std::vector<IntVector> rays, std::vector<Cone> max_cones, std::string name = {});

  int dim() const { return dim_; }
  int ray_count() const { return static_cast<int>(rays_.size()); }
  const std::vector<IntVector>& rays() const { return rays_; }
  const IntVector& ray(int i) const { return rays_.at(static_cast<std::size_t>(i)); }
  const std::vector<Cone>& max_cones() const { return max_cones_; }
  const std::string& name() const { return name_; }
  Fan named(std::string name) const;

  /// Columns are the generators of `cone`, in index order.
  IntMatrix cone_matrix(const Cone& cone) const;
  std::optional<int> find_ray(const IntVector& v) const;
  /// True iff `cone` is a face of some maximal cone.
  bool has_cone(const Cone& cone) const;
  /// All cones of the given dimension (faces of maximal cones), sorted.
  std::vector<Cone> cones_of_dim(int k) const;
  /// Every cone including the zero cone, sorted by dimension then indices.
  std::vector<Cone> all_cones() const;
  /// Number of maximal cones containing each ray.
  std::vector<int> ray_degrees() const;

 private:
  int dim_ = 0;
  std::vector<IntVector> rays_;
  std::vector<Cone> max_cones_;
  std::string name_;
};

struct Finding {
  std::string message;
  std::vector<int> cones;  // offending maximal-cone indices
};

/// Projectivity is never checked; it is assumed for every fan handled here.
struct ValidationReport {
  bool is_simplicial = true;
  bool is_smooth = true;
  bool is_complete = true;
  bool proper_intersections = true;
  std::vector<Finding> failures;

  bool ok() const { return failures.empty(); }
};

ValidationReport validate(const Fan& f);

/// Facets of maximal cones, each with the maximal cones containing it.
struct FacetIncidence {
  Cone facet;
  std::vector<int> cones;
};
std::vector<FacetIncidence> facet_incidences(const Fan& f);

struct StarSubdivision {
  Fan fan;
  int new_ray;
};

/// Blow-up along V(center) for a 2-dimensional `center`: inserts the ray
/// u_a + u_b (made primitive) as the last ray and splits every maximal cone
/// containing the center.
StarSubdivision star_subdivide(const Fan& f, const Cone& center);

/// Fan of the orbit closure V(sigma) in N / Span(sigma).
Fan orbit_closure_fan(const Fan& f, const Cone& sigma);

/// A unimodular M with M * rays(f1) = rays(f2) (as a bijection) carrying
/// maximal cones onto maximal cones, if one exists.
std::optional<IntMatrix> fan_isomorphic(const Fan& f1, const Fan& f2);

/// Finest decomposition as a direct sum of fans, factors ordered by
/// (dimension, ray count). A singleton means indecomposable.
std::vector<Fan> product_decompose(const Fan& f);

/// Direct sum (fan of the product variety).
Fan product(const Fan& a, const Fan& b);

/// Image of the fan under a unimodular lattice automorphism.
Fan transform(const Fan& f, const IntMatrix& unimodular);

/// Rays sorted lexicographically, cones re-indexed.
Fan canonical(const Fan& f);

}  // namespace torfan
