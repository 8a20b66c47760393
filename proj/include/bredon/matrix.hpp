#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <utility>
#include <vector>

#include "bredon/errors.hpp"
#include "bredon/group_value.hpp"

namespace bredon {

using Int = boost::multiprecision::cpp_int;

/// Dense integer matrix with arbitrary-precision entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols) {}

  IntMatrix(std::initializer_list<std::initializer_list<long long>> lists) {
    rows_ = lists.size();
    cols_ = rows_ ? lists.begin()->size() : 0;
    e_.reserve(rows_ * cols_);
    for (const auto& row : lists) {
      if (row.size() != cols_) throw input_error("matrix rows have unequal lengths");
      for (long long v : row) e_.emplace_back(v);
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw input_error("matrix product: dimension mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a.at(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          c.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    return c;
  }

  /// Fraction-free (Bareiss) determinant; square matrices only.
  Int determinant() const {
    if (rows_ != cols_) throw input_error("determinant of a non-square matrix");
    std::size_t n = rows_;
    if (n == 0) return 1;
    IntMatrix a = *this;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (a.at(k, k) == 0) {
        std::size_t swap_row = k + 1;
        while (swap_row < n && a.at(swap_row, k) == 0) ++swap_row;
        if (swap_row == n) return 0;
        for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(swap_row, j));
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i)
        for (std::size_t j = k + 1; j < n; ++j)
          a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
      prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : -a.at(n - 1, n - 1);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> e_;
};

/// Result of Smith reduction: u * m * v = diag(d) with d_1 | d_2 | ... and
/// d_i >= 0, trailing zeros allowed (len(d) = min(rows, cols)). u and v are
/// unimodular when requested.
struct SnfResult {
  std::vector<Int> d;
  std::optional<IntMatrix> u;
  std::optional<IntMatrix> v;
};

namespace detail {

// x*a + y*b = gcd(a,b) >= 0.
inline Int ext_gcd(const Int& a, const Int& b, Int& x, Int& y) {
  if (b == 0) {
    if (a < 0) {
      x = -1;
      y = 0;
      return -a;
    }
    x = 1;
    y = 0;
    return a;
  }
  Int x1, y1;
  Int g = ext_gcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

struct SnfWorker {
  IntMatrix a;
  std::optional<IntMatrix> u;  // accumulates row operations
  std::optional<IntMatrix> v;  // accumulates column operations

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a.at(i, c), a.at(j, c));
    if (u)
      for (std::size_t c = 0; c < u->cols(); ++c) std::swap(u->at(i, c), u->at(j, c));
  }

  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a.at(r, i), a.at(r, j));
    if (v)
      for (std::size_t r = 0; r < v->rows(); ++r) std::swap(v->at(r, i), v->at(r, j));
  }

  void add_row(std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t c = 0; c < a.cols(); ++c) a.at(dst, c) += f * a.at(src, c);
    if (u)
      for (std::size_t c = 0; c < u->cols(); ++c) u->at(dst, c) += f * u->at(src, c);
  }

  void add_col(std::size_t dst, std::size_t src, const Int& f) {
    for (std::size_t r = 0; r < a.rows(); ++r) a.at(r, dst) += f * a.at(r, src);
    if (v)
      for (std::size_t r = 0; r < v->rows(); ++r) v->at(r, dst) += f * v->at(r, src);
  }

  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a.cols(); ++c) a.at(i, c) = -a.at(i, c);
    if (u)
      for (std::size_t c = 0; c < u->cols(); ++c) u->at(i, c) = -u->at(i, c);
  }

  // Puts gcd(a(t,col), a(i,col)) at (t, col) and 0 at (i, col). Plain
  // elimination when the pivot already divides the entry (this leaves row t
  // untouched, which is what makes the clearing loop terminate); otherwise a
  // unimodular 2x2 transform that strictly shrinks the pivot.
  void gcd_rows(std::size_t t, std::size_t i, std::size_t col) {
    Int p = a.at(t, col), q = a.at(i, col);
    if (q == 0) return;
    if (p != 0 && q % p == 0) {
      add_row(i, t, -(q / p));
      return;
    }
    Int x, y;
    Int g = ext_gcd(p, q, x, y);
    Int pr = p / g, qr = q / g;
    apply_row_pair(t, i, x, y, -qr, pr);
  }

  void gcd_cols(std::size_t t, std::size_t j, std::size_t row) {
    Int p = a.at(row, t), q = a.at(row, j);
    if (q == 0) return;
    if (p != 0 && q % p == 0) {
      add_col(j, t, -(q / p));
      return;
    }
    Int x, y;
    Int g = ext_gcd(p, q, x, y);
    Int pr = p / g, qr = q / g;
    apply_col_pair(t, j, x, y, -qr, pr);
  }

  // rows (r1, r2) <- (m11*r1 + m12*r2, m21*r1 + m22*r2); det(m) must be +-1.
  void apply_row_pair(std::size_t r1, std::size_t r2, const Int& m11, const Int& m12,
                      const Int& m21, const Int& m22) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      Int x1 = a.at(r1, c), x2 = a.at(r2, c);
      a.at(r1, c) = m11 * x1 + m12 * x2;
      a.at(r2, c) = m21 * x1 + m22 * x2;
    }
    if (u)
      for (std::size_t c = 0; c < u->cols(); ++c) {
        Int x1 = u->at(r1, c), x2 = u->at(r2, c);
        u->at(r1, c) = m11 * x1 + m12 * x2;
        u->at(r2, c) = m21 * x1 + m22 * x2;
      }
  }

  void apply_col_pair(std::size_t c1, std::size_t c2, const Int& m11, const Int& m12,
                      const Int& m21, const Int& m22) {
    for (std::size_t r = 0; r < a.rows(); ++r) {
      Int x1 = a.at(r, c1), x2 = a.at(r, c2);
      a.at(r, c1) = m11 * x1 + m12 * x2;
      a.at(r, c2) = m21 * x1 + m22 * x2;
    }
    if (v)
      for (std::size_t r = 0; r < v->rows(); ++r) {
        Int x1 = v->at(r, c1), x2 = v->at(r, c2);
        v->at(r, c1) = m11 * x1 + m12 * x2;
        v->at(r, c2) = m21 * x1 + m22 * x2;
      }
  }
};

}  // namespace detail

/// Smith normal form. Returns the divisibility chain d (length min(rows, cols),
/// trailing zeros for rank deficiency) and, when requested, unimodular u, v
/// with u * m * v = diag(d).
inline SnfResult smith_normal_form(const IntMatrix& m, bool with_transforms = false) {
  using boost::multiprecision::abs;
  detail::SnfWorker w;
  w.a = m;
  if (with_transforms) {
    w.u = IntMatrix::identity(m.rows());
    w.v = IntMatrix::identity(m.cols());
  }
  const std::size_t k = std::min(m.rows(), m.cols());

  for (std::size_t t = 0; t < k; ++t) {
    // Pivot: smallest nonzero absolute value in the trailing submatrix.
    std::size_t pi = t, pj = t;
    bool found = false;
    for (std::size_t i = t; i < m.rows(); ++i)
      for (std::size_t j = t; j < m.cols(); ++j) {
        if (w.a.at(i, j) == 0) continue;
        if (!found || abs(w.a.at(i, j)) < abs(w.a.at(pi, pj))) {
          pi = i;
          pj = j;
          found = true;
        }
      }
    if (!found) break;  // trailing submatrix is zero
    w.swap_rows(t, pi);
    w.swap_cols(t, pj);

    for (;;) {
      for (std::size_t i = t + 1; i < m.rows(); ++i) w.gcd_rows(t, i, t);
      for (std::size_t j = t + 1; j < m.cols(); ++j) w.gcd_cols(t, j, t);
      bool clear = true;
      for (std::size_t i = t + 1; i < m.rows(); ++i)
        if (w.a.at(i, t) != 0) clear = false;
      for (std::size_t j = t + 1; j < m.cols(); ++j)
        if (w.a.at(t, j) != 0) clear = false;
      if (clear) break;
    }
  }

  // Divisibility chain: if d_i does not divide d_j (i < j), replace the pair
  // by (gcd, lcm) with unimodular operations.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j) {
        const Int& di = w.a.at(i, i);
        const Int& dj = w.a.at(j, j);
        if (di == 0 && dj != 0) {
          w.swap_rows(i, j);
          w.swap_cols(i, j);
          changed = true;
          continue;
        }
        if (di == 0 || dj % di == 0) continue;
        // Replace diag(di, dj) by diag(gcd, lcm):
        w.add_col(j, i, 1);   // [di di; 0 dj]
        w.gcd_rows(i, j, j);  // [x*di, g; -di*dj/g, 0]
        w.gcd_cols(i, j, i);  // [g, 0; stray, di*dj/g]
        Int stray = w.a.at(j, i);
        if (stray != 0) w.add_row(j, i, -(stray / w.a.at(i, i)));
        changed = true;
      }
  }
  for (std::size_t i = 0; i < k; ++i)
    if (w.a.at(i, i) < 0) w.negate_row(i);

  SnfResult out;
  out.d.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.d.push_back(w.a.at(i, i));
  out.u = std::move(w.u);
  out.v = std::move(w.v);
  return out;
}

namespace detail {

inline std::uint64_t to_u64(const Int& v) {
  if (v < 0 || v > Int(UINT64_MAX))
    throw error("invariant factor exceeds supported magnitude");
  return v.convert_to<std::uint64_t>();
}

}  // namespace detail

/// Kernel and cokernel of the map K^cols -> K^rows whose entries act by
/// multiplication, computed through the Smith normal form:
///   ker  = (+)_i ker(d_i : K -> K)  (+)  K^(cols - #d)
///   coker= (+)_i coker(d_i: K -> K) (+)  K^(rows - #d)
/// with ker(d) the d-torsion of K (all of K for d = 0) and coker(d) = K (x) Z/d
/// (K itself for d = 0). Symbolic free ranks are rejected; they live only in
/// absorbing contexts.
inline std::pair<AbelianGroup, AbelianGroup> matrix_ker_coker(const IntMatrix& m,
                                                              const AbelianGroup& k) {
  if (k.has_symbolic())
    throw unsupported_error("symbolic rank in exact matrix computation");
  SnfResult snf = smith_normal_form(m);
  AbelianGroup ker, coker;
  for (const Int& dv : snf.d) {
    std::uint64_t d = detail::to_u64(dv);
    if (d == 0) {
      ker = direct_sum(ker, k);
      coker = direct_sum(coker, k);
    } else if (d > 1) {
      ker = direct_sum(ker, n_torsion(k, d));
      coker = direct_sum(coker, tensor(k, AbelianGroup::cyclic(d)));
    }
  }
  for (std::size_t i = snf.d.size(); i < m.cols(); ++i) ker = direct_sum(ker, k);
  for (std::size_t i = snf.d.size(); i < m.rows(); ++i) coker = direct_sum(coker, k);
  return {ker, coker};
}

namespace detail {

inline AbelianGroup ranks_only(const AbelianGroup& g) {
  AbelianGroup out;
  for (const auto& r : g.symbolic_ranks())
    out = direct_sum(out, AbelianGroup::symbolic(r));
  return out;
}

inline AbelianGroup concrete_only(const AbelianGroup& g) {
  std::vector<std::pair<std::uint64_t, ExtNat>> raw;
  for (const auto& [o, m] : g.multiplicities()) raw.emplace_back(o.value, m);
  return AbelianGroup::normalize(raw);
}

inline std::pair<AbelianGroup, AbelianGroup> ker_coker_with_ranks(
    const IntMatrix& m, const AbelianGroup& k) {
  auto [ker, coker] = matrix_ker_coker(m, concrete_only(k));
  if (!k.has_symbolic()) return {ker, coker};
  // The free symbolic part is acted on diagonally; d-torsion of a free group
  // vanishes and only invariant factors 0 and 1 keep the cokernel free.
  AbelianGroup ranks = ranks_only(k);
  SnfResult snf = smith_normal_form(m);
  for (const Int& dv : snf.d) {
    std::uint64_t d = to_u64(dv);
    if (d == 0) {
      ker = direct_sum(ker, ranks);
      coker = direct_sum(coker, ranks);
    } else if (d > 1) {
      throw unsupported_error(
          "matrix cokernel would need torsion of a symbolic rank");
    }
  }
  for (std::size_t i = snf.d.size(); i < m.cols(); ++i) ker = direct_sum(ker, ranks);
  for (std::size_t i = snf.d.size(); i < m.rows(); ++i) coker = direct_sum(coker, ranks);
  return {ker, coker};
}

}  // namespace detail

/// matrix_ker_coker lifted to sandwich values. Bounds are mapped separately
/// (the SNF functor is monotone for the embeddability witness) and symbolic
/// free summands are carried along when the invariant factors allow it.
inline std::pair<GroupValue, GroupValue> matrix_ker_coker_value(const IntMatrix& m,
                                                                const GroupValue& k) {
  auto [kl, cl] = detail::ker_coker_with_ranks(m, k.lower());
  if (k.is_exact())
    return {GroupValue::exact(std::move(kl)), GroupValue::exact(std::move(cl))};
  auto [ku, cu] = detail::ker_coker_with_ranks(m, k.upper());
  return {GroupValue::bounded(std::move(kl), std::move(ku)),
          GroupValue::bounded(std::move(cl), std::move(cu))};
}

}  // namespace bredon
