#pragma once

// Exact integer linear algebra over arbitrary-precision integers: Smith and
// Hermite normal forms, rank, kernels and lattice saturation.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "alexlab/errors.hpp"

namespace alexlab {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw MathError("IntMatrix: ragged initializer");
      for (long v : row) data_.emplace_back(v);
    }
  }

  static IntMatrix from_rows(std::size_t cols, const std::vector<IntVector>& rows) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw MathError("IntMatrix: row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row[dst] += f * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& f) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += f * (*this)(src, j);
  }
  // col[dst] += f * col[src]
  void add_col(std::size_t dst, std::size_t src, const Integer& f) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += f * (*this)(i, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = -(*this)(i, j);
  }
  void negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = -(*this)(i, j);
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
  }

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw MathError("IntMatrix: product shape mismatch");
    IntMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? "," : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

struct SnfResult {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;

  // Diagonal entries d_1 | d_2 | ... (length min(rows, cols)).
  IntVector diagonal() const {
    IntVector d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
  }
  std::size_t rank() const {
    std::size_t r = 0;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i)
      if (D(i, i) != 0) ++r;
    return r;
  }
};

namespace detail {

struct SnfState {
  IntMatrix U, D, V, Vinv;
};

// Row/column reduction with smallest-nonzero pivot; ties broken by (row, col)
// order. Tracks V^{-1} alongside V so saturation can read off a basis.
inline SnfState snf_full(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  SnfState s{IntMatrix::identity(m), a, IntMatrix::identity(n), IntMatrix::identity(n)};
  IntMatrix& A = s.D;

  auto row_swap = [&](std::size_t i, std::size_t j) {
    A.swap_rows(i, j);
    s.U.swap_rows(i, j);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    A.swap_cols(i, j);
    s.V.swap_cols(i, j);
    s.Vinv.swap_rows(i, j);
  };
  auto row_add = [&](std::size_t dst, std::size_t src, const Integer& f) {
    A.add_row(dst, src, f);
    s.U.add_row(dst, src, f);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const Integer& f) {
    A.add_col(dst, src, f);
    s.V.add_col(dst, src, f);
    s.Vinv.add_row(src, dst, -f);
  };

  const std::size_t lim = std::min(m, n);
  for (std::size_t t = 0; t < lim; ++t) {
    // Global pivot search in the trailing block.
    std::optional<std::pair<std::size_t, std::size_t>> piv;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        if (A(i, j) == 0) continue;
        if (!piv || abs(A(i, j)) < abs(A(piv->first, piv->second))) piv = {i, j};
      }
    if (!piv) break;
    row_swap(t, piv->first);
    col_swap(t, piv->second);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (A(i, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), A(i, t).get_mpz_t(), A(t, t).get_mpz_t());
        row_add(i, t, -q);
        if (A(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (A(t, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), A(t, j).get_mpz_t(), A(t, t).get_mpz_t());
        col_add(j, t, -q);
        if (A(t, j) != 0) clean = false;
      }
      if (!clean) {
        // Bring the smallest remainder in row/column t to the pivot.
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (A(i, t) != 0 && abs(A(i, t)) < abs(A(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (A(t, j) != 0 && abs(A(t, j)) < abs(A(bi, bj))) bi = t, bj = j;
        row_swap(t, bi);
        col_swap(t, bj);
        continue;
      }
      // Row and column cleared; enforce divisibility of the trailing block.
      std::optional<std::size_t> bad;
      for (std::size_t i = t + 1; i < m && !bad; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(A(i, j).get_mpz_t(), A(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (!bad) break;
      row_add(t, *bad, Integer(1));
    }
    if (A(t, t) < 0) {
      A.negate_row(t);
      s.U.negate_row(t);
    }
  }
  return s;
}

}  // namespace detail

// U·A·V = D with U, V unimodular and D = diag(d_1 | d_2 | ...), d_i >= 0.
inline SnfResult smith_normal_form(const IntMatrix& a) {
  auto s = detail::snf_full(a);
  return {std::move(s.U), std::move(s.D), std::move(s.V)};
}

// Rank over Q by fraction-free (Bareiss) elimination.
inline std::size_t integer_rank(const IntMatrix& a) {
  IntMatrix m = a;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m(p, c) == 0) ++p;
    if (p == rows) continue;
    m.swap_rows(r, p);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        m(i, j) = m(r, c) * m(i, j) - m(i, c) * m(r, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

// Determinant of a square matrix (Bareiss).
inline Integer determinant(const IntMatrix& a) {
  if (a.rows() != a.cols()) throw MathError("determinant: matrix is not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      m.swap_rows(p, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

// Row Hermite normal form: nonzero rows only, pivots positive and strictly
// increasing in column, entries above each pivot reduced into [0, pivot).
inline IntMatrix hermite_rows(const IntMatrix& a) {
  IntMatrix m = a;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // Euclid on column c below row r.
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t i = r; i < rows; ++i)
        if (m(i, c) != 0 && (!best || abs(m(i, c)) < abs(m(*best, c)))) best = i;
      if (!best) break;
      m.swap_rows(r, *best);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (m(i, c) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m(i, c).get_mpz_t(), m(r, c).get_mpz_t());
        m.add_row(i, r, -q);
        if (m(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (m(r, c) == 0) continue;
    if (m(r, c) < 0) m.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), m(i, c).get_mpz_t(), m(r, c).get_mpz_t());
      if (q != 0) m.add_row(i, r, -q);
    }
    pivots.push_back(c);
    ++r;
  }
  IntMatrix out(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) out(i, j) = m(i, j);
  return out;
}

// Z-basis (as rows) of the left kernel {x : x·A = 0}.
inline IntMatrix left_kernel(const IntMatrix& a) {
  auto s = detail::snf_full(a);
  std::size_t r = 0;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i)
    if (s.D(i, i) != 0) ++r;
  IntMatrix k(a.rows() - r, a.rows());
  for (std::size_t i = r; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.rows(); ++j) k(i - r, j) = s.U(i, j);
  return hermite_rows(k);
}

// Sublattice of Z^n given by a basis of Q-linearly independent row vectors.
class Lattice {
 public:
  explicit Lattice(std::size_t ambient = 0) : basis_(0, ambient) {}

  // Basis must have independent rows; use from_generators for arbitrary sets.
  static Lattice from_basis(IntMatrix basis) {
    if (integer_rank(basis) != basis.rows())
      throw MathError("Lattice: basis vectors are linearly dependent");
    Lattice l(basis.cols());
    l.basis_ = std::move(basis);
    return l;
  }

  static Lattice from_generators(const IntMatrix& gens) {
    Lattice l(gens.cols());
    l.basis_ = hermite_rows(gens);
    return l;
  }

  static Lattice from_generators(std::size_t ambient, const std::vector<IntVector>& gens) {
    return from_generators(IntMatrix::from_rows(ambient, gens));
  }

  std::size_t ambient() const noexcept { return basis_.cols(); }
  std::size_t rank() const noexcept { return basis_.rows(); }
  const IntMatrix& basis() const noexcept { return basis_; }

  // Hermite form of the basis; equal lattices give equal canonical bases.
  IntMatrix canonical_basis() const { return hermite_rows(basis_); }

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.ambient() == b.ambient() && a.canonical_basis() == b.canonical_basis();
  }

 private:
  IntMatrix basis_;
};

// Q-span of L intersected with Z^n, returned in Hermite form.
inline Lattice saturate(const Lattice& l) {
  const IntMatrix& b = l.basis();
  if (b.rows() == 0) return Lattice(l.ambient());
  auto s = detail::snf_full(b);
  std::size_t r = 0;
  for (std::size_t i = 0; i < std::min(b.rows(), b.cols()); ++i)
    if (s.D(i, i) != 0) ++r;
  IntMatrix sat(r, b.cols());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) sat(i, j) = s.Vinv(i, j);
  return Lattice::from_generators(sat);
}

inline bool is_saturated(const Lattice& l) { return saturate(l) == l; }

inline Lattice lattice_sum(const Lattice& a, const Lattice& b) {
  if (a.ambient() != b.ambient()) throw MathError("lattice_sum: ambient mismatch");
  IntMatrix stacked(a.rank() + b.rank(), a.ambient());
  for (std::size_t i = 0; i < a.rank(); ++i)
    for (std::size_t j = 0; j < a.ambient(); ++j) stacked(i, j) = a.basis()(i, j);
  for (std::size_t i = 0; i < b.rank(); ++i)
    for (std::size_t j = 0; j < a.ambient(); ++j) stacked(a.rank() + i, j) = b.basis()(i, j);
  return Lattice::from_generators(stacked);
}

inline Lattice lattice_intersection(const Lattice& a, const Lattice& b) {
  if (a.ambient() != b.ambient()) throw MathError("lattice_intersection: ambient mismatch");
  const std::size_t n = a.ambient(), ka = a.rank(), kb = b.rank();
  if (ka == 0 || kb == 0) return Lattice(n);
  // x·[A; -B] = 0  <=>  x_A·A = x_B·B.
  IntMatrix stacked(ka + kb, n);
  for (std::size_t i = 0; i < ka; ++i)
    for (std::size_t j = 0; j < n; ++j) stacked(i, j) = a.basis()(i, j);
  for (std::size_t i = 0; i < kb; ++i)
    for (std::size_t j = 0; j < n; ++j) stacked(ka + i, j) = -b.basis()(i, j);
  IntMatrix ker = left_kernel(stacked);
  IntMatrix gens(ker.rows(), n);
  for (std::size_t r = 0; r < ker.rows(); ++r)
    for (std::size_t i = 0; i < ka; ++i)
      if (ker(r, i) != 0)
        for (std::size_t j = 0; j < n; ++j) gens(r, j) += ker(r, i) * a.basis()(i, j);
  return Lattice::from_generators(gens);
}

}  // namespace alexlab
