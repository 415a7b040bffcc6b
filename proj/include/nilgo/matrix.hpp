#ifndef NILGO_MATRIX_HPP
#define NILGO_MATRIX_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "nilgo/rational.hpp"

namespace nilgo {

using RatVec = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class RatMatrix {
public:
  RatMatrix() : rows_(0), cols_(0) {}
  RatMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols) {}
  RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
      : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows_ * cols_)
      throw std::invalid_argument("RatMatrix: entry count does not match shape");
  }

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  const std::vector<Rational>& entries() const { return e_; }

  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }
  friend bool operator!=(const RatMatrix& a, const RatMatrix& b) { return !(a == b); }

  RatMatrix transpose() const {
    RatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("RatMatrix: shape mismatch in product");
    RatMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("RatMatrix: shape mismatch in sum");
    RatMatrix c(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.e_.size(); ++i) c.e_[i] = a.e_[i] + b.e_[i];
    return c;
  }
  friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw std::invalid_argument("RatMatrix: shape mismatch in difference");
    RatMatrix c(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.e_.size(); ++i) c.e_[i] = a.e_[i] - b.e_[i];
    return c;
  }
  friend RatMatrix operator*(const Rational& s, const RatMatrix& a) {
    RatMatrix c(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.e_.size(); ++i) c.e_[i] = s * a.e_[i];
    return c;
  }

  RatVec apply(const RatVec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("RatMatrix: vector length mismatch");
    RatVec out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!(*this)(i, j).is_zero()) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  bool is_zero() const {
    for (const auto& x : e_)
      if (!x.is_zero()) return false;
    return true;
  }

private:
  std::size_t rows_, cols_;
  std::vector<Rational> e_;
};

inline RatVec operator+(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("RatVec: length mismatch");
  RatVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}
inline RatVec operator-(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("RatVec: length mismatch");
  RatVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}
inline RatVec operator*(const Rational& s, const RatVec& a) {
  RatVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = s * a[i];
  return c;
}
inline bool is_zero(const RatVec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

struct RrefResult {
  RatMatrix reduced;
  std::vector<std::size_t> pivot_columns;
  std::size_t rank = 0;
};

/// Row-reduced echelon form with first-nonzero pivoting. Exact throughout.
inline RrefResult rref(RatMatrix m) {
  RrefResult res;
  const std::size_t nr = m.rows(), nc = m.cols();
  std::size_t row = 0;
  for (std::size_t col = 0; col < nc && row < nr; ++col) {
    std::size_t piv = row;
    while (piv < nr && m(piv, col).is_zero()) ++piv;
    if (piv == nr) continue;
    if (piv != row)
      for (std::size_t j = 0; j < nc; ++j) std::swap(m(row, j), m(piv, j));
    const Rational inv = Rational(1) / m(row, col);
    for (std::size_t j = col; j < nc; ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < nr; ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      const Rational f = m(i, col);
      for (std::size_t j = col; j < nc; ++j) m(i, j) -= f * m(row, j);
    }
    res.pivot_columns.push_back(col);
    ++row;
  }
  res.rank = row;
  res.reduced = std::move(m);
  return res;
}

inline std::size_t rank(const RatMatrix& m) { return rref(m).rank; }

enum class SolutionKind { Empty, Unique, Family };

/// Full affine solution set of a linear system. `particular` has every free
/// variable set to zero; `nullspace_basis` vectors carry 1 in one free
/// variable (pivot order) and 0 in the others.
struct SolutionSet {
  SolutionKind kind = SolutionKind::Empty;
  RatVec particular;
  std::vector<RatVec> nullspace_basis;
};

/// Solves a·x = b, deciding consistency by the Frobenius rank criterion.
inline SolutionSet solve_affine(const RatMatrix& a, const RatVec& b) {
  if (a.rows() != b.size())
    throw std::invalid_argument("solve_affine: rhs length does not match row count");
  RatMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  RrefResult r = rref(std::move(aug));
  SolutionSet out;
  // Inconsistent iff the rhs column is a pivot.
  if (!r.pivot_columns.empty() && r.pivot_columns.back() == a.cols()) return out;

  const std::size_t nc = a.cols();
  std::vector<bool> is_pivot(nc, false);
  for (std::size_t p : r.pivot_columns) is_pivot[p] = true;

  out.particular.assign(nc, Rational(0));
  for (std::size_t i = 0; i < r.pivot_columns.size(); ++i)
    out.particular[r.pivot_columns[i]] = r.reduced(i, nc);

  for (std::size_t col = 0; col < nc; ++col) {
    if (is_pivot[col]) continue;
    RatVec v(nc);
    v[col] = Rational(1);
    for (std::size_t i = 0; i < r.pivot_columns.size(); ++i)
      v[r.pivot_columns[i]] = -r.reduced(i, col);
    out.nullspace_basis.push_back(std::move(v));
  }
  out.kind = out.nullspace_basis.empty() ? SolutionKind::Unique : SolutionKind::Family;
  return out;
}

/// Basis of {x : a·x = 0}; dimension = cols − rank.
inline std::vector<RatVec> nullspace(const RatMatrix& a) {
  SolutionSet s = solve_affine(a, RatVec(a.rows()));
  return s.nullspace_basis;
}

/// Exact inverse; throws on singular input.
inline RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
  const std::size_t n = m.rows();
  RatMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Rational(1);
  }
  RrefResult r = rref(std::move(aug));
  if (r.rank < n || r.pivot_columns[n - 1] != n - 1)
    throw std::invalid_argument("inverse: matrix is singular");
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = r.reduced(i, n + j);
  return inv;
}

/// Stacks vectors as matrix columns.
inline RatMatrix columns(const std::vector<RatVec>& vs, std::size_t dim) {
  RatMatrix m(dim, vs.size());
  for (std::size_t j = 0; j < vs.size(); ++j) {
    if (vs[j].size() != dim) throw std::invalid_argument("columns: length mismatch");
    for (std::size_t i = 0; i < dim; ++i) m(i, j) = vs[j][i];
  }
  return m;
}

}  // namespace nilgo

#endif
