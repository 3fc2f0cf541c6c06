#ifndef KNWZNW_LINALG_HPP
#define KNWZNW_LINALG_HPP

#include "rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace knwznw {

/// Dense row-major matrix over the rationals.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Rat(1);
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  Rat& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  Matrix& operator*=(const Rat& s) {
    for (auto& x : a_) x *= s;
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Rat& s) { return a *= s; }
  friend Matrix operator*(const Rat& s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw DomainError("matrix shape mismatch in product");
    Matrix m(a.r_, b.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        const Rat& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.c_; ++j) m(i, j) += x * b(k, j);
      }
    return m;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Kronecker product.
  friend Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix m(a.r_ * b.r_, a.c_ * b.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t j = 0; j < a.c_; ++j) {
        if (a(i, j).is_zero()) continue;
        for (std::size_t k = 0; k < b.r_; ++k)
          for (std::size_t l = 0; l < b.c_; ++l) m(i * b.r_ + k, j * b.c_ + l) = a(i, j) * b(k, l);
      }
    return m;
  }

  friend Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

  /// Reduced row echelon form in place; returns pivot columns.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < c_ && row < r_; ++col) {
      std::size_t piv = row;
      while (piv < r_ && (*this)(piv, col).is_zero()) ++piv;
      if (piv == r_) continue;
      if (piv != row)
        for (std::size_t j = 0; j < c_; ++j) std::swap((*this)(piv, j), (*this)(row, j));
      Rat inv = (*this)(row, col).inverse();
      for (std::size_t j = col; j < c_; ++j) (*this)(row, j) *= inv;
      for (std::size_t i = 0; i < r_; ++i) {
        if (i == row || (*this)(i, col).is_zero()) continue;
        Rat f = (*this)(i, col);
        for (std::size_t j = col; j < c_; ++j) (*this)(i, j) -= f * (*this)(row, j);
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }

  std::size_t rank() const {
    Matrix m = *this;
    return m.rref().size();
  }

  /// Basis of the right null space, one vector per free column.
  std::vector<std::vector<Rat>> nullspace() const {
    Matrix m = *this;
    auto pivots = m.rref();
    std::vector<bool> is_pivot(c_, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Rat>> basis;
    for (std::size_t free = 0; free < c_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<Rat> v(c_);
      v[free] = Rat(1);
      for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m(k, free);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  /// Inverse of a square nonsingular matrix.
  Matrix inverse() const {
    if (r_ != c_) throw DomainError("inverse of a non-square matrix");
    Matrix aug(r_, 2 * c_);
    for (std::size_t i = 0; i < r_; ++i) {
      for (std::size_t j = 0; j < c_; ++j) aug(i, j) = (*this)(i, j);
      aug(i, c_ + i) = Rat(1);
    }
    auto piv = aug.rref();
    if (piv.size() < r_ || piv[r_ - 1] >= c_) throw DomainError("singular matrix");
    Matrix inv(r_, c_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) inv(i, j) = aug(i, c_ + j);
    return inv;
  }

  std::vector<std::vector<std::string>> to_strings() const {
    std::vector<std::vector<std::string>> out(r_, std::vector<std::string>(c_));
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) out[i][j] = (*this)(i, j).str();
    return out;
  }

private:
  void check_same(const Matrix& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw DomainError("matrix shape mismatch");
  }
  std::size_t r_ = 0, c_ = 0;
  std::vector<Rat> a_;
};

/// Incrementally maintained echelon basis of a subspace of Q^n; reduces
/// vectors to a canonical normal form modulo the span.
class EchelonSpan {
public:
  explicit EchelonSpan(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }

  /// Normal form of v modulo the span (pivot coordinates cleared).
  std::vector<Rat> reduce(std::vector<Rat> v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Rat f = v[pivots_[k]];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < dim_; ++j)
        if (!rows_[k][j].is_zero()) v[j] -= f * rows_[k][j];
    }
    return v;
  }

  /// Adds v to the span; returns true if the rank grew.
  bool insert(std::vector<Rat> v) {
    v = reduce(std::move(v));
    std::size_t p = 0;
    while (p < dim_ && v[p].is_zero()) ++p;
    if (p == dim_) return false;
    Rat inv = v[p].inverse();
    for (auto& x : v) x *= inv;
    for (auto& row : rows_) {
      const Rat f = row[p];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < dim_; ++j) row[j] -= f * v[j];
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

private:
  std::size_t dim_;
  std::vector<std::vector<Rat>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace knwznw

#endif  // KNWZNW_LINALG_HPP
