#pragma once

// Elementary ideals and order polynomials of the Fox matrix, rank over the
// fraction field of Z[H], thickness, and dim H_1(X; C_rho) at torsion
// characters.
//
// Index convention: order_k is the gcd of the (s-k) x (s-k) minors of the
// Fox matrix (s = generator count), i.e. the k-th order of the module the
// Fox matrix presents. For a knot group, order_k(F, 1) is the classical
// Alexander polynomial.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "alexlab/cyclotomic.hpp"
#include "alexlab/errors.hpp"
#include "alexlab/fpgroup.hpp"
#include "alexlab/laurent.hpp"

namespace alexlab {

namespace detail {

inline std::int64_t total_degree(const LaurentPoly& p) {
  auto lo = p.min_exponent(), hi = p.max_exponent();
  std::int64_t d = 0;
  for (std::size_t i = 0; i < lo.size(); ++i) d += hi[i] - lo[i];
  return d;
}

// Fraction-free Gaussian elimination with full pivoting on the nonzero entry
// of lowest total degree (ties by row, then column). Returns the rank; when
// `det` is given and the matrix is square, stores the determinant.
inline std::size_t bareiss(PolyMatrix m, LaurentPoly* det = nullptr) {
  const std::size_t rows = m.rows(), cols = m.cols(), n = m.nvars();
  LaurentPoly prev = LaurentPoly::constant(n, 1);
  int sign = 1;
  std::size_t k = 0;
  for (; k < std::min(rows, cols); ++k) {
    std::optional<std::pair<std::size_t, std::size_t>> piv;
    std::int64_t best = 0;
    std::size_t best_size = 0;
    for (std::size_t i = k; i < rows; ++i)
      for (std::size_t j = k; j < cols; ++j) {
        const auto& e = m(i, j);
        if (e.is_zero()) continue;
        std::int64_t d = total_degree(e);
        if (!piv || d < best || (d == best && e.size() < best_size)) {
          piv = {i, j};
          best = d;
          best_size = e.size();
        }
      }
    if (!piv) break;
    if (piv->first != k) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(k, j), m(piv->first, j));
      sign = -sign;
    }
    if (piv->second != k) {
      for (std::size_t i = 0; i < rows; ++i) std::swap(m(i, k), m(i, piv->second));
      sign = -sign;
    }
    const LaurentPoly pivot = m(k, k);
    for (std::size_t i = k + 1; i < rows; ++i) {
      for (std::size_t j = k + 1; j < cols; ++j) {
        LaurentPoly v = pivot * m(i, j) - m(i, k) * m(k, j);
        m(i, j) = exact_quotient(v, prev);
      }
      m(i, k) = LaurentPoly(n);
    }
    prev = pivot;
  }
  if (det) {
    if (rows != cols) throw MathError("determinant: matrix is not square");
    if (k < rows) {
      *det = LaurentPoly(n);
    } else {
      *det = rows == 0 ? LaurentPoly::constant(n, 1) : prev;
      if (sign < 0) *det = -*det;
    }
  }
  return k;
}

// Calls f on each k-subset of {0..n-1} in lexicographic order; stops when f returns false.
inline bool for_each_combination(std::size_t n, std::size_t k,
                                 const std::function<bool(const std::vector<std::size_t>&)>& f) {
  if (k > n) return true;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    if (!f(idx)) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline PolyMatrix submatrix(const PolyMatrix& m, const std::vector<std::size_t>& rows,
                            const std::vector<std::size_t>& cols) {
  PolyMatrix s(rows.size(), cols.size(), m.nvars());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = m(rows[i], cols[j]);
  return s;
}

// Drops zero rows and columns; they cannot contribute to a nonzero minor.
inline PolyMatrix compress(const PolyMatrix& m) {
  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) {
        rows.push_back(i);
        break;
      }
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (!m(i, j).is_zero()) {
        cols.push_back(j);
        break;
      }
  return submatrix(m, rows, cols);
}

}  // namespace detail

inline LaurentPoly determinant(const PolyMatrix& m) {
  LaurentPoly d(m.nvars());
  detail::bareiss(m, &d);
  return d;
}

// Rank over the fraction field Q(H).
inline std::size_t fraction_field_rank(const PolyMatrix& m) { return detail::bareiss(m); }

// Calls f on every size x size minor, rows then columns in lexicographic
// order; stops early when f returns false.
inline void for_each_minor(const PolyMatrix& m, std::size_t size,
                           const std::function<bool(const LaurentPoly&)>& f) {
  if (size == 0) {
    f(LaurentPoly::constant(m.nvars(), 1));
    return;
  }
  detail::for_each_combination(m.rows(), size, [&](const std::vector<std::size_t>& rows) {
    return detail::for_each_combination(m.cols(), size, [&](const std::vector<std::size_t>& cols) {
      return f(determinant(detail::submatrix(m, rows, cols)));
    });
  });
}

// Gcd of all (s-k) x (s-k) minors, canonical: 1 when s - k <= 0, 0 when no
// nonzero minor of that size exists.
inline LaurentPoly order_k(const FoxMatrix& f, std::size_t k) {
  const std::size_t s = f.cols(), n = f.nvars();
  if (k >= s) return LaurentPoly::constant(n, 1);
  const std::size_t size = s - k;
  PolyMatrix m = detail::compress(f.matrix);
  if (size > std::min(m.rows(), m.cols())) return LaurentPoly(n);
  if (size > fraction_field_rank(m)) return LaurentPoly(n);
  LaurentPoly g(n);
  const LaurentPoly one = LaurentPoly::constant(n, 1);
  for_each_minor(m, size, [&](const LaurentPoly& minor) {
    if (minor.is_zero()) return true;
    g = gcd(g, minor);
    return g != one;
  });
  return g;
}

struct FirstOrder {
  std::size_t k0 = 0;
  LaurentPoly delta;
};

// k0 = s - rank over Q(H); delta = order_k(F, k0), never zero.
inline FirstOrder first_order(const FoxMatrix& f) {
  const std::size_t r = fraction_field_rank(detail::compress(f.matrix));
  FirstOrder out;
  out.k0 = f.cols() - r;
  out.delta = order_k(f, out.k0);
  return out;
}

struct OrderSequence {
  std::size_t kmax = 0;
  std::size_t k0 = 0;
  std::vector<LaurentPoly> orders;  // index k = 0..kmax
};

inline OrderSequence order_sequence(const FoxMatrix& f, std::size_t kmax) {
  OrderSequence seq;
  seq.kmax = kmax;
  const std::size_t r = fraction_field_rank(detail::compress(f.matrix));
  seq.k0 = f.cols() - r;
  for (std::size_t k = 0; k <= kmax; ++k)
    seq.orders.push_back(k < seq.k0 ? LaurentPoly(f.nvars()) : order_k(f, k));
  return seq;
}

// Dimension of the Newton polytope of the first nonvanishing order.
inline std::size_t thickness(const FoxMatrix& f) { return newton_dim(first_order(f).delta); }

// ---------------------------------------------------------------------------
// Twisted homology at torsion characters.

namespace detail {

using FieldMatrix = std::vector<std::vector<CyclotomicField::Element>>;

inline FieldMatrix evaluate_matrix(const CyclotomicField& field, const PolyMatrix& m,
                                   const CharacterPoint& rho) {
  FieldMatrix out(m.rows(), std::vector<CyclotomicField::Element>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = evaluate_in(field, m(i, j), rho);
  return out;
}

inline std::size_t field_rank(const CyclotomicField& field, FieldMatrix a) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && field.is_zero(a[p][c])) ++p;
    if (p == rows) continue;
    std::swap(a[r], a[p]);
    auto inv = field.inverse(a[r][c]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (field.is_zero(a[i][c])) continue;
      auto f = field.mul(a[i][c], inv);
      for (std::size_t j = c; j < cols; ++j) a[i][j] = field.sub(a[i][j], field.mul(f, a[r][j]));
    }
    ++r;
  }
  return r;
}

}  // namespace detail

// Rank of the Fox matrix evaluated at rho, over Q(zeta_m).
inline std::size_t rank_at_character(const FoxMatrix& f, const CharacterPoint& rho) {
  if (rho.size() != f.nvars()) throw MathError("character length does not match b1");
  CyclotomicField field(rho.order());
  return detail::field_rank(field, detail::evaluate_matrix(field, f.matrix, rho));
}

struct CvReport {
  std::size_t dim = 0;                 // dim H_1(X; C_rho)
  std::vector<bool> memberships;       // index k: rho in V_k, i.e. dim >= k
};

// dim H_1(X; C_rho) = s - 1 - rank F(rho) for rho nontrivial; b1 for rho trivial.
// memberships cover k = 0..max(kmax, dim).
inline CvReport cv_dim(const FoxMatrix& f, const CharacterPoint& rho, std::size_t kmax = 0) {
  if (rho.size() != f.nvars()) throw MathError("character length does not match b1");
  CvReport out;
  if (rho.is_trivial()) {
    out.dim = f.ab.b1;
  } else {
    const std::size_t r = rank_at_character(f, rho);
    out.dim = f.cols() - 1 - r;
  }
  const std::size_t top = std::max(kmax, out.dim);
  for (std::size_t k = 0; k <= top; ++k) out.memberships.push_back(out.dim >= k);
  return out;
}

// Independent route through the elementary ideals: every (s-1-k)-minor of
// the Fox matrix vanishes at rho. Equivalent to cv_dim(rho) >= k + 1 for
// nontrivial rho.
inline bool minors_vanish_at(const FoxMatrix& f, const CharacterPoint& rho, std::size_t k) {
  const std::size_t s = f.cols();
  if (k + 1 >= s) return false;
  const std::size_t size = s - 1 - k;
  if (size > f.rows()) return true;
  bool all_zero = true;
  for_each_minor(f.matrix, size, [&](const LaurentPoly& minor) {
    if (!evaluate_at_character(minor, rho).is_zero()) all_zero = false;
    return all_zero;
  });
  return all_zero;
}

}  // namespace alexlab
