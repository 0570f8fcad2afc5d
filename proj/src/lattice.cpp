#include "torfan/lattice.hpp"

#include <algorithm>
#include <limits>

namespace torfan {

namespace {

// floor(a / b) for b != 0.
Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

struct ExtendedGcd {
  Integer g, p, q;  // p*a + q*b == g >= 0
};

ExtendedGcd extended_gcd(Integer a, Integer b) {
  Integer p0 = 1, q0 = 0, p1 = 0, q1 = 1;
  while (b != 0) {
    Integer t = floor_div(a, b);
    Integer r = a - t * b;
    a = b;
    b = r;
    Integer np = p0 - t * p1;
    Integer nq = q0 - t * q1;
    p0 = p1;
    q0 = q1;
    p1 = np;
    q1 = nq;
  }
  if (a < 0) return {-a, -p0, -q0};
  return {a, p0, q0};
}

// rows (r, s) <- [[p, q], [-b/g, a/g]] * rows (r, s), applied to both matrices.
void combine_rows(IntMatrix& h, IntMatrix& u, Eigen::Index r, Eigen::Index s,
                  const Integer& p, const Integer& q, const Integer& x, const Integer& y) {
  for (IntMatrix* m : {&h, &u}) {
    for (Eigen::Index j = 0; j < m->cols(); ++j) {
      Integer top = p * (*m)(r, j) + q * (*m)(s, j);
      Integer bottom = x * (*m)(r, j) + y * (*m)(s, j);
      (*m)(r, j) = std::move(top);
      (*m)(s, j) = std::move(bottom);
    }
  }
}

}  // namespace

bool lex_less(const IntVector& a, const IntVector& b) {
  const Eigen::Index n = std::min(a.size(), b.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    if (a(i) != b(i)) return a(i) < b(i);
  }
  return a.size() < b.size();
}

IntMatrix columns_matrix(const std::vector<IntVector>& columns, Eigen::Index rows) {
  IntMatrix m(rows, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw Error("vector length does not match lattice rank");
    m.col(static_cast<Eigen::Index>(j)) = columns[j];
  }
  return m;
}

std::int64_t to_int64(const Integer& x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
    throw Error("integer does not fit in 64 bits");
  return x.convert_to<std::int64_t>();
}

Integer gcd_of(const IntVector& v) {
  Integer g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) g = boost::multiprecision::gcd(g, v(i));
  return boost::multiprecision::abs(g);
}

HermiteForm hermite_normal_form(const IntMatrix& m) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  HermiteForm out{m, IntMatrix::Identity(rows, rows), {}};
  IntMatrix& h = out.form;
  IntMatrix& u = out.transform;

  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    for (Eigen::Index s = r + 1; s < rows; ++s) {
      if (h(s, c) == 0) continue;
      if (h(r, c) == 0) {
        h.row(r).swap(h.row(s));
        u.row(r).swap(u.row(s));
        continue;
      }
      const Integer a = h(r, c);
      const Integer b = h(s, c);
      ExtendedGcd e = extended_gcd(a, b);
      combine_rows(h, u, r, s, e.p, e.q, -(b / e.g), a / e.g);
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      h.row(r) = -h.row(r);
      u.row(r) = -u.row(r);
    }
    for (Eigen::Index above = 0; above < r; ++above) {
      Integer t = floor_div(h(above, c), h(r, c));
      if (t != 0) {
        h.row(above) -= t * h.row(r);
        u.row(above) -= t * u.row(r);
      }
    }
    out.pivot_columns.push_back(c);
    ++r;
  }
  return out;
}

std::vector<IntVector> kernel_basis(const IntMatrix& m) {
  const HermiteForm hnf = hermite_normal_form(m.transpose());
  const auto r = static_cast<Eigen::Index>(hnf.pivot_columns.size());
  const Eigen::Index k = m.cols() - r;
  std::vector<IntVector> basis;
  if (k == 0) return basis;
  const IntMatrix raw = hnf.transform.bottomRows(k);
  const HermiteForm canonical = hermite_normal_form(raw);
  for (Eigen::Index i = 0; i < k; ++i) basis.emplace_back(canonical.form.row(i).transpose());
  return basis;
}

IntVector primitive_part(const IntVector& v) {
  const Integer g = gcd_of(v);
  if (g == 0) throw Error("not a direction");
  IntVector out = v;
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) /= g;
  return out;
}

bool is_primitive(const IntVector& v) { return gcd_of(v) == 1; }

IntMatrix unimodular_complement(const std::vector<IntVector>& vs) {
  if (vs.empty()) throw Error("not extendable to basis: empty family");
  const Eigen::Index n = vs.front().size();
  const auto k = static_cast<Eigen::Index>(vs.size());
  const HermiteForm hnf = hermite_normal_form(columns_matrix(vs, n));
  if (static_cast<Eigen::Index>(hnf.pivot_columns.size()) != k)
    throw Error("not extendable to basis: vectors are dependent");
  for (Eigen::Index i = 0; i < k; ++i) {
    if (hnf.form(i, i) != 1) throw Error("not extendable to basis: span is not saturated");
  }
  // transform * A = [I; 0], so the inverse transform starts with A.
  return unimodular_inverse(hnf.transform);
}

IntMatrix quotient_map(const std::vector<IntVector>& vs, Eigen::Index n) {
  if (vs.empty()) return IntMatrix::Identity(n, n);
  const auto k = static_cast<Eigen::Index>(vs.size());
  const HermiteForm hnf = hermite_normal_form(columns_matrix(vs, n));
  if (static_cast<Eigen::Index>(hnf.pivot_columns.size()) != k)
    throw Error("quotient by dependent vectors");
  for (Eigen::Index i = 0; i < k; ++i) {
    if (hnf.form(i, i) != 1) throw Error("quotient by a non-saturated sublattice");
  }
  const IntMatrix rows = hnf.transform.bottomRows(n - k);
  return hermite_normal_form(rows).form;
}

RatMatrix rational_inverse(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error("inverse of a non-square matrix");
  const Eigen::Index n = m.rows();
  RatMatrix a = m.cast<Rational>();
  RatMatrix inv = RatMatrix::Identity(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index pivot = c;
    while (pivot < n && a(pivot, c) == 0) ++pivot;
    if (pivot == n) throw Error("singular matrix");
    a.row(c).swap(a.row(pivot));
    inv.row(c).swap(inv.row(pivot));
    const Rational scale = a(c, c);
    a.row(c) /= scale;
    inv.row(c) /= scale;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      a.row(i) -= f * a.row(c);
      inv.row(i) -= f * inv.row(c);
    }
  }
  return inv;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  const Integer det = determinant(m);
  if (det != 1 && det != -1) throw Error("matrix is not unimodular");
  const RatMatrix inv = rational_inverse(m);
  IntMatrix out(inv.rows(), inv.cols());
  for (Eigen::Index i = 0; i < inv.rows(); ++i)
    for (Eigen::Index j = 0; j < inv.cols(); ++j)
      out(i, j) = boost::multiprecision::numerator(inv(i, j));
  return out;
}

std::optional<RatVector> solve_rational(const RatMatrix& m, const RatVector& b) {
  const Eigen::Index n = m.rows();
  RatMatrix a(n, n + 1);
  a.leftCols(n) = m;
  a.col(n) = b;
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index pivot = c;
    while (pivot < n && a(pivot, c) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    a.row(c).swap(a.row(pivot));
    const Rational scale = a(c, c);
    a.row(c) /= scale;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      a.row(i) -= f * a.row(c);
    }
  }
  return RatVector(a.col(n));
}

bool is_lattice_surjective(const IntMatrix& m) {
  const HermiteForm hnf = hermite_normal_form(m.transpose());
  if (static_cast<Eigen::Index>(hnf.pivot_columns.size()) != m.rows()) return false;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (hnf.form(i, i) != 1) return false;
  }
  return true;
}

bool in_cone(const RatMatrix& generators, const RatVector& target) {
  const Eigen::Index d = generators.rows();
  const Eigen::Index k = generators.cols();
  const Eigen::Index width = k + d;
  // Tableau [G | I | t] with nonnegative right-hand side.
  RatMatrix t = RatMatrix::Zero(d, width + 1);
  for (Eigen::Index i = 0; i < d; ++i) {
    const bool flip = target(i) < 0;
    for (Eigen::Index j = 0; j < k; ++j) t(i, j) = flip ? Rational(-generators(i, j)) : generators(i, j);
    t(i, k + i) = 1;
    t(i, width) = flip ? Rational(-target(i)) : target(i);
  }
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) basis[static_cast<std::size_t>(i)] = k + i;
  auto cost = [k](Eigen::Index j) { return j >= k ? Rational(1) : Rational(0); };

  for (;;) {
    Eigen::Index entering = -1;
    for (Eigen::Index j = 0; j < width; ++j) {
      Rational reduced = cost(j);
      for (Eigen::Index i = 0; i < d; ++i) reduced -= cost(basis[static_cast<std::size_t>(i)]) * t(i, j);
      if (reduced < 0) {
        entering = j;
        break;
      }
    }
    if (entering < 0) break;
    Eigen::Index leaving = -1;
    Rational best;
    for (Eigen::Index i = 0; i < d; ++i) {
      if (t(i, entering) <= 0) continue;
      Rational ratio = t(i, width) / t(i, entering);
      if (leaving < 0 || ratio < best ||
          (ratio == best && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leaving)])) {
        leaving = i;
        best = ratio;
      }
    }
    if (leaving < 0) break;  // unbounded direction; cannot happen in phase one
    const Rational pivot = t(leaving, entering);
    t.row(leaving) /= pivot;
    for (Eigen::Index i = 0; i < d; ++i) {
      if (i == leaving || t(i, entering) == 0) continue;
      const Rational f = t(i, entering);
      t.row(i) -= f * t.row(leaving);
    }
    basis[static_cast<std::size_t>(leaving)] = entering;
  }
  Rational infeasibility = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    if (basis[static_cast<std::size_t>(i)] >= k) infeasibility += t(i, width);
  }
  return infeasibility == 0;
}

}  // namespace torfan
