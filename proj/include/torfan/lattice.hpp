// Exact integer linear algebra over Z^n.
//
// Everything here is exact: integers are GMP-backed, rationals are GMP
// fractions, and the dense containers are ordinary Eigen matrices over those
// scalars. The elimination routines are templates on the Eigen expression so
// they accept blocks, transposes and maps without copies at the call site.
#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace torfan {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using IntMatrix = MatrixX<Integer>;
using IntVector = VectorX<Integer>;
using RatMatrix = MatrixX<Rational>;
using RatVector = VectorX<Rational>;

/// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Small helpers

inline IntVector int_vector(std::initializer_list<long> entries) {
  IntVector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index i = 0;
  for (long e : entries) v(i++) = e;
  return v;
}

inline IntVector unit_vector(Eigen::Index n, Eigen::Index i) {
  IntVector v = IntVector::Zero(n);
  v(i) = 1;
  return v;
}

template <typename Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) return false;
  return true;
}

/// Lexicographic comparison of two integer vectors of possibly different length.
bool lex_less(const IntVector& a, const IntVector& b);

/// Build a matrix whose columns are the given vectors (all of length `rows`).
IntMatrix columns_matrix(const std::vector<IntVector>& columns, Eigen::Index rows);

/// Narrow to int64, throwing if the value does not fit.
std::int64_t to_int64(const Integer& x);

Integer gcd_of(const IntVector& v);

// ---------------------------------------------------------------------------
// Fraction-free elimination

/// Determinant by Bareiss elimination; exact for Integer and Rational scalars.
template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  if (input.rows() != input.cols()) throw Error("determinant of a non-square matrix");
  const Eigen::Index n = input.rows();
  if (n == 0) return Scalar(1);
  MatrixX<Scalar> a = input;
  Scalar sign(1);
  Scalar prev(1);
  for (Eigen::Index k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      Eigen::Index swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return Scalar(0);
      a.row(k).swap(a.row(swap));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// Rank over Q, by Bareiss elimination with row pivoting.
template <typename Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  MatrixX<Scalar> a = input;
  const Eigen::Index rows = a.rows();
  const Eigen::Index cols = a.cols();
  Scalar prev(1);
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index pivot = r;
    while (pivot < rows && a(pivot, c) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r) a.row(r).swap(a.row(pivot));
    for (Eigen::Index i = r + 1; i < rows; ++i) {
      for (Eigen::Index j = c + 1; j < cols; ++j) {
        a(i, j) = (a(i, j) * a(r, c) - a(i, c) * a(r, j)) / prev;
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Hermite normal form and friends

/// Row-style Hermite normal form: `transform * m == form`, `transform`
/// unimodular, `form` in row echelon shape with positive pivots and entries
/// above each pivot reduced into [0, pivot).
struct HermiteForm {
  IntMatrix form;
  IntMatrix transform;
  std::vector<Eigen::Index> pivot_columns;
};

HermiteForm hermite_normal_form(const IntMatrix& m);

/// Saturated basis of {x in Z^cols : m x = 0}, in Hermite normal form (so the
/// output is canonical for the kernel lattice).
std::vector<IntVector> kernel_basis(const IntMatrix& m);

/// v / gcd(v). Throws Error("not a direction") on the zero vector.
IntVector primitive_part(const IntVector& v);

bool is_primitive(const IntVector& v);

/// Square unimodular matrix whose leading columns are exactly `vs`.
/// Throws Error("not extendable to basis") unless `vs` is part of a Z-basis.
IntMatrix unimodular_complement(const std::vector<IntVector>& vs);

/// Surjection Z^n -> Z^(n-k) with kernel exactly Span(vs) (vs saturated).
/// Rows are in Hermite normal form, so the choice is canonical.
IntMatrix quotient_map(const std::vector<IntVector>& vs, Eigen::Index n);

/// Exact inverse over Q; throws on singular input.
RatMatrix rational_inverse(const IntMatrix& m);

/// Inverse of a unimodular integer matrix; throws if |det| != 1.
IntMatrix unimodular_inverse(const IntMatrix& m);

/// Solve m x = b over Q for square nonsingular m; std::nullopt if singular.
std::optional<RatVector> solve_rational(const RatMatrix& m, const RatVector& b);

/// True iff the lattice map Z^cols -> Z^rows given by m is onto.
bool is_lattice_surjective(const IntMatrix& m);

/// True iff `target` is a nonnegative rational combination of the columns of
/// `generators`. Exact phase-one simplex with Bland's rule.
bool in_cone(const RatMatrix& generators, const RatVector& target);

}  // namespace torfan
