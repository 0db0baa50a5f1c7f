#include "holodyn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "holodyn/errors.hpp"

namespace holodyn {

double max_norm(std::span<const cplx> p) {
  double m = 0.0;
  for (const auto& z : p) m = std::max(m, std::abs(z));
  return m;
}

double max_dist(std::span<const cplx> p, std::span<const cplx> q) {
  double m = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) m = std::max(m, std::abs(p[i] - q[i]));
  return m;
}

bool all_finite(std::span<const cplx> p) {
  return std::all_of(p.begin(), p.end(), [](const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const cplx> d) {
  Matrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (o.n_ != n_) throw DimensionError("matrix product: size mismatch");
  Matrix r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t k = 0; k < n_; ++k) {
      const cplx a = (*this)(i, k);
      if (a == cplx{}) continue;
      for (std::size_t j = 0; j < n_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

Point Matrix::operator*(std::span<const cplx> v) const {
  if (v.size() != n_) throw DimensionError("matrix-vector product: size mismatch");
  Point r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r[i] += (*this)(i, j) * v[j];
  return r;
}

Matrix Matrix::inverse() const {
  Matrix a = *this;
  Matrix inv = identity(n_);
  for (std::size_t col = 0; col < n_; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n_; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (std::abs(a(piv, col)) < 1e-300) throw DomainError("singular matrix");
    if (piv != col)
      for (std::size_t j = 0; j < n_; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const cplx d = a(col, col);
    for (std::size_t j = 0; j < n_; ++j) {
      a(col, j) /= d;
      inv(col, j) /= d;
    }
    for (std::size_t r = 0; r < n_; ++r) {
      if (r == col) continue;
      const cplx f = a(r, col);
      if (f == cplx{}) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

bool Matrix::is_diagonal(double tol) const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (i != j && std::abs((*this)(i, j)) > tol) return false;
  return true;
}

bool Matrix::is_lower_triangular(double tol) const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (std::abs((*this)(i, j)) > tol) return false;
  return true;
}

bool Matrix::is_upper_triangular(double tol) const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs((*this)(i, j)) > tol) return false;
  return true;
}

double Matrix::max_abs_diff(const Matrix& o) const {
  if (o.n_ != n_) throw DimensionError("matrix comparison: size mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a_.size(); ++i) m = std::max(m, std::abs(a_[i] - o.a_[i]));
  return m;
}

}  // namespace holodyn
