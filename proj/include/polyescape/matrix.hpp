#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polyescape/polynomial.hpp"
#include "polyescape/rational.hpp"

namespace polyescape {

/// Dense row-major matrix. Entries are any exact field type.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), e_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows_ * cols_) throw std::invalid_argument("matrix entry count does not match shape");
  }
  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  const std::vector<T>& entries() const { return e_; }

  T& operator()(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(e_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                          e_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
  }
  std::vector<T> column(std::size_t c) const {
    std::vector<T> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  bool is_zero() const {
    for (const auto& v : e_) {
      if (!(v == 0)) return false;
    }
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix m(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.e_.size(); ++i) m.e_[i] = a.e_[i] + b.e_[i];
    return m;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same(a, b);
    Matrix m(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.e_.size(); ++i) m.e_[i] = a.e_[i] - b.e_[i];
    return m;
  }
  friend Matrix operator*(const T& s, const Matrix& a) {
    Matrix m(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.e_.size(); ++i) m.e_[i] = s * a.e_[i];
    return m;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) { return mat_mul(a, b); }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

 private:
  static void check_same(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix dimension mismatch");
  }
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> e_;
};

template <class T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: inner dimensions disagree");
  Matrix<T> m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += aik * b(k, j);
    }
  }
  return m;
}

template <class T>
std::vector<T> mat_vec(const Matrix<T>& a, const std::vector<T>& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("mat_vec: dimension mismatch");
  std::vector<T> out(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) out[i] += a(i, k) * v[k];
  return out;
}

/// Row vector times matrix.
template <class T>
std::vector<T> vec_mat(const std::vector<T>& v, const Matrix<T>& a) {
  if (a.rows() != v.size()) throw std::invalid_argument("vec_mat: dimension mismatch");
  std::vector<T> out(a.cols(), T(0));
  for (std::size_t k = 0; k < a.rows(); ++k) {
    if (v[k] == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += v[k] * a(k, j);
  }
  return out;
}

using RationalMatrix = Matrix<Rational>;

/// Exact basis of the right null space (one vector per free column of the
/// reduced row echelon form).
std::vector<RationalVector> kernel_basis(const RationalMatrix& a);
std::size_t rank(const RationalMatrix& a);
/// Reduced row echelon form; also reports pivot columns.
RationalMatrix rref(const RationalMatrix& a, std::vector<std::size_t>* pivots = nullptr);
/// Inverse of a square matrix; throws std::domain_error if singular.
RationalMatrix inverse(const RationalMatrix& a);

/// det(xI - A), monic of degree d.
RationalPolynomial char_poly(const RationalMatrix& a);
/// Least-degree monic annihilating polynomial.
RationalPolynomial min_poly(const RationalMatrix& a);

/// p(A) by Horner's rule.
RationalMatrix evaluate(const RationalPolynomial& p, const RationalMatrix& a);
/// A^0 .. A^(count-1)
std::vector<RationalMatrix> powers(const RationalMatrix& a, std::size_t count);

std::string to_string(const RationalMatrix& a);

}  // namespace polyescape
