#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ppk/scalar.hpp"

namespace ppk {

template <class S>
using Vec = std::vector<S>;

template <class S>
Vec<S> zero_vec(std::size_t n) { return Vec<S>(n, S{}); }

template <class S>
Vec<S> basis_vec(std::size_t n, std::size_t i) {
  Vec<S> v(n, S{});
  v[i] = S::from_int(1);
  return v;
}

template <class S>
Vec<S> operator+(const Vec<S>& a, const Vec<S>& b) {
  if (a.size() != b.size()) throw Error("vector size mismatch");
  Vec<S> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

template <class S>
Vec<S> operator-(const Vec<S>& a, const Vec<S>& b) {
  if (a.size() != b.size()) throw Error("vector size mismatch");
  Vec<S> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

template <class S>
Vec<S> operator-(const Vec<S>& a) {
  Vec<S> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

template <class S>
Vec<S> operator*(const S& c, const Vec<S>& a) {
  Vec<S> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

template <class S>
Vec<S> scaled(long c, const Vec<S>& a) { return S::from_int(c) * a; }

template <class S>
bool is_zero(const Vec<S>& a) {
  for (const auto& x : a)
    if (!x.is_zero()) return false;
  return true;
}

/// Dense row-major matrix of exact scalars. Acts on column vectors:
/// entry (r, c) is the coefficient of e_r in the image of e_c.
template <class S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), e_(rows * cols, S{}) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = S::from_int(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  S& operator()(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
  const S& operator()(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

  bool is_zero() const {
    for (const auto& x : e_)
      if (!x.is_zero()) return false;
    return true;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
    return r;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    a.require_same_shape(b);
    Matrix r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
    return r;
  }
  Matrix operator-() const {
    Matrix r(rows_, cols_);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = -e_[i];
    return r;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error("matrix product shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k).is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          r(i, j) += a(i, k) * b(k, j);
      }
    return r;
  }
  friend Matrix operator*(const S& c, const Matrix& a) {
    Matrix r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = c * a.e_[i];
    return r;
  }

  Vec<S> apply(const Vec<S>& v) const {
    if (v.size() != cols_) throw Error("matrix apply shape mismatch");
    Vec<S> r(rows_, S{});
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (!(*this)(i, j).is_zero()) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  Matrix transposed() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix shape mismatch");
  }
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<S> e_;
};

template <class S>
Matrix<S> scaled(long c, const Matrix<S>& a) { return S::from_int(c) * a; }

/// τ on A⊗A: transpose of the coefficient matrix.
template <class S>
Matrix<S> tensor_flip(const Matrix<S>& t) {
  if (t.rows() != t.cols()) throw Error("tensor flip requires a square matrix");
  return t.transposed();
}

/// One exact solution of Mx = b, or nullopt when the system is inconsistent.
/// Gaussian elimination with the first nonzero pivot in column order.
template <class S>
std::optional<Vec<S>> solve_linear(Matrix<S> m, Vec<S> b) {
  if (b.size() != m.rows()) throw Error("solve_linear shape mismatch");
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> pivot_col;  // pivot column of each eliminated row
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t sel = rank;
    while (sel < rows && m(sel, col).is_zero()) ++sel;
    if (sel == rows) continue;
    if (sel != rank) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m(rank, j), m(sel, j));
      std::swap(b[rank], b[sel]);
    }
    S inv = m(rank, col).inverse();
    for (std::size_t j = col; j < cols; ++j) m(rank, j) = inv * m(rank, j);
    b[rank] = inv * b[rank];
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m(r, col).is_zero()) continue;
      S factor = m(r, col);
      for (std::size_t j = col; j < cols; ++j) m(r, j) = m(r, j) - factor * m(rank, j);
      b[r] = b[r] - factor * b[rank];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (std::size_t r = rank; r < rows; ++r)
    if (!b[r].is_zero()) return std::nullopt;
  Vec<S> x(cols, S{});
  for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = b[r];
  return x;
}

template <class S>
S determinant(Matrix<S> m) {
  if (m.rows() != m.cols()) throw Error("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  S det = S::from_int(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && m(sel, col).is_zero()) ++sel;
    if (sel == n) return S{};
    if (sel != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(col, j), m(sel, j));
      det = -det;
    }
    det = det * m(col, col);
    S inv = m(col, col).inverse();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m(r, col).is_zero()) continue;
      S factor = m(r, col) * inv;
      for (std::size_t j = col; j < n; ++j) m(r, j) = m(r, j) - factor * m(col, j);
    }
  }
  return det;
}

/// Coefficient array indexed (i, j, k). Houses structure-constant tables
/// c[i][j][k] (e_i · e_j = Σ_k c[i][j][k] e_k), comultiplications
/// (first index = input basis vector) and elements of A⊗A⊗A.
template <class S>
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(std::size_t d0, std::size_t d1, std::size_t d2)
      : d_{d0, d1, d2}, e_(d0 * d1 * d2, S{}) {}

  std::size_t dim(int leg) const { return d_[leg]; }

  S& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return e_[(i * d_[1] + j) * d_[2] + k];
  }
  const S& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return e_[(i * d_[1] + j) * d_[2] + k];
  }

  bool is_zero() const {
    for (const auto& x : e_)
      if (!x.is_zero()) return false;
    return true;
  }
  bool same_shape(const Tensor3& o) const {
    return d_[0] == o.d_[0] && d_[1] == o.d_[1] && d_[2] == o.d_[2];
  }
  bool operator==(const Tensor3& o) const { return same_shape(o) && e_ == o.e_; }
  bool operator!=(const Tensor3& o) const { return !(*this == o); }

  friend Tensor3 operator+(const Tensor3& a, const Tensor3& b) {
    if (!a.same_shape(b)) throw Error("tensor shape mismatch");
    Tensor3 r = a;
    for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = r.e_[i] + b.e_[i];
    return r;
  }
  friend Tensor3 operator-(const Tensor3& a, const Tensor3& b) {
    if (!a.same_shape(b)) throw Error("tensor shape mismatch");
    Tensor3 r = a;
    for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] = r.e_[i] - b.e_[i];
    return r;
  }
  Tensor3 operator-() const {
    Tensor3 r = *this;
    for (auto& x : r.e_) x = -x;
    return r;
  }
  friend Tensor3 operator*(const S& c, const Tensor3& a) {
    Tensor3 r = a;
    for (auto& x : r.e_) x = c * x;
    return r;
  }

 private:
  std::size_t d_[3] = {0, 0, 0};
  std::vector<S> e_;
};

/// Apply an operator matrix to one leg of a 3-tensor.
template <class S>
Tensor3<S> apply_leg(const Matrix<S>& op, const Tensor3<S>& t, int leg) {
  std::size_t dims[3] = {t.dim(0), t.dim(1), t.dim(2)};
  if (op.cols() != dims[leg]) throw Error("apply_leg shape mismatch");
  std::size_t out[3] = {dims[0], dims[1], dims[2]};
  out[leg] = op.rows();
  Tensor3<S> r(out[0], out[1], out[2]);
  for (std::size_t i = 0; i < dims[0]; ++i)
    for (std::size_t j = 0; j < dims[1]; ++j)
      for (std::size_t k = 0; k < dims[2]; ++k) {
        const S& v = t(i, j, k);
        if (v.is_zero()) continue;
        std::size_t src = leg == 0 ? i : leg == 1 ? j : k;
        for (std::size_t o = 0; o < op.rows(); ++o) {
          if (op(o, src).is_zero()) continue;
          std::size_t idx[3] = {i, j, k};
          idx[leg] = o;
          r(idx[0], idx[1], idx[2]) += op(o, src) * v;
        }
      }
  return r;
}

/// Apply an operator matrix to one leg of a 2-tensor (coefficient matrix).
template <class S>
Matrix<S> apply_leg(const Matrix<S>& op, const Matrix<S>& t, int leg) {
  return leg == 0 ? op * t : t * op.transposed();
}

/// Swap two legs of a 3-tensor.
template <class S>
Tensor3<S> swap_legs(const Tensor3<S>& t, int a, int b) {
  std::size_t dims[3] = {t.dim(0), t.dim(1), t.dim(2)};
  std::size_t out[3] = {dims[0], dims[1], dims[2]};
  std::swap(out[a], out[b]);
  Tensor3<S> r(out[0], out[1], out[2]);
  for (std::size_t i = 0; i < dims[0]; ++i)
    for (std::size_t j = 0; j < dims[1]; ++j)
      for (std::size_t k = 0; k < dims[2]; ++k) {
        std::size_t idx[3] = {i, j, k};
        std::swap(idx[a], idx[b]);
        r(idx[0], idx[1], idx[2]) = t(i, j, k);
      }
  return r;
}

}  // namespace ppk
