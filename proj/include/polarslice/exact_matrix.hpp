#pragma once

#include <cassert>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "polarslice/rational.hpp"

namespace polarslice {

using RationalVector = std::vector<Rational>;

/// Dense matrix over the rationals. Immutable use is the norm: operations
/// below are free functions returning fresh values.
class ExactMatrix {
 public:
  ExactMatrix() : rows_(0), cols_(0) {}
  ExactMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, Rational(0)) {}

  static ExactMatrix identity(std::size_t n) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static ExactMatrix from_rows(const std::vector<RationalVector>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows[0].size();
    ExactMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      assert(rows[i].size() == c);
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static ExactMatrix from_columns(const std::vector<RationalVector>& cols) {
    std::size_t c = cols.size();
    std::size_t r = c == 0 ? 0 : cols[0].size();
    ExactMatrix m(r, c);
    for (std::size_t j = 0; j < c; ++j) {
      assert(cols[j].size() == r);
      for (std::size_t i = 0; i < r; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  RationalVector row(std::size_t i) const {
    return RationalVector(entries_.begin() + i * cols_,
                          entries_.begin() + (i + 1) * cols_);
  }
  RationalVector column(std::size_t j) const {
    RationalVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  bool operator==(const ExactMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
  }

  bool is_zero() const {
    for (const auto& e : entries_)
      if (e != 0) return false;
    return true;
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  ExactMatrix transpose() const {
    ExactMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Rational> entries_;
};

inline ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  assert(a.cols() == b.rows());
  ExactMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

inline ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
  assert(a.rows() == b.rows() && a.cols() == b.cols());
  ExactMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

inline RationalVector operator*(const ExactMatrix& a, const RationalVector& v) {
  assert(a.cols() == v.size());
  RationalVector r(a.rows(), Rational(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0 && v[j] != 0) r[i] += a(i, j) * v[j];
  return r;
}

inline Rational dot(const RationalVector& a, const RationalVector& b) {
  assert(a.size() == b.size());
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// In-place reduced row echelon form. Returns the pivot columns (their count
/// is the rank). Pivot-normalized elimination on reduced rationals keeps
/// entry growth polynomial for the matrix sizes used here.
inline std::vector<std::size_t> rref_in_place(ExactMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = c; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline ExactMatrix rref(ExactMatrix m) {
  rref_in_place(m);
  return m;
}

/// Exact rank.
inline std::size_t rank(ExactMatrix m) { return rref_in_place(m).size(); }

inline std::size_t rank_of_vectors(const std::vector<RationalVector>& vecs) {
  return rank(ExactMatrix::from_rows(vecs));
}

/// Basis of {x : M x = 0}, one column per basis vector. Columns are the
/// standard complement of the pivot columns of rref(M), so the count is
/// cols(M) - rank(M) and the basis is deterministic.
inline ExactMatrix nullspace_basis(const ExactMatrix& m) {
  ExactMatrix r = m;
  std::vector<std::size_t> pivots = rref_in_place(r);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::size_t nullity = m.cols() - pivots.size();
  ExactMatrix basis(m.cols(), nullity);
  std::size_t k = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    basis(c, k) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) basis(pivots[i], k) = -r(i, c);
    ++k;
  }
  return basis;
}

struct SpanResult {
  bool member;
  std::optional<RationalVector> coeffs;  // set iff member
};

/// Decides membership of target in span(spanners) and, when true, recovers
/// exact coefficients: target == sum_i coeffs[i] * spanners[i].
inline SpanResult in_span(const RationalVector& target,
                          const std::vector<RationalVector>& spanners) {
  const std::size_t n = target.size();
  for (const auto& s : spanners) assert(s.size() == n);
  const std::size_t m = spanners.size();
  // Augmented system [spanners | target], columns are vectors.
  ExactMatrix aug(n, m + 1);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) aug(i, j) = spanners[j][i];
  for (std::size_t i = 0; i < n; ++i) aug(i, m) = target[i];
  std::vector<std::size_t> pivots = rref_in_place(aug);
  for (std::size_t p : pivots)
    if (p == m) return {false, std::nullopt};
  RationalVector coeffs(m, Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) coeffs[pivots[i]] = aug(i, m);
  return {true, coeffs};
}

struct nonsymmetric_gram_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// True iff the restriction of the bilinear form with matrix `gram` to
/// span(subspace) is non-degenerate, i.e. S^T gram S is invertible for a
/// column matrix S of an independent subset of `subspace`.
inline bool restricted_form_nondegenerate(
    const ExactMatrix& gram, const std::vector<RationalVector>& subspace) {
  if (!gram.is_symmetric())
    throw nonsymmetric_gram_error("restricted_form_nondegenerate: gram is not symmetric");
  // Pick an independent subset via rref on the rows.
  ExactMatrix rows = ExactMatrix::from_rows(subspace);
  ExactMatrix reduced = rows;
  std::size_t r = rref_in_place(reduced).size();
  if (r == 0) return true;  // trivial subspace, vacuously non-degenerate
  // Row-reduce and take the first r rows of the rref as the basis.
  std::vector<RationalVector> basis;
  for (std::size_t i = 0; i < r; ++i) basis.push_back(reduced.row(i));
  ExactMatrix s = ExactMatrix::from_columns(basis);
  ExactMatrix restricted = s.transpose() * (gram * s);
  return rank(restricted) == r;
}

}  // namespace polarslice
