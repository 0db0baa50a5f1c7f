#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace holodyn {

using cplx = std::complex<double>;

/// A point of C^n.
using Point = std::vector<cplx>;

/// Max-norm on C^n (the polydisc norm used throughout for escape checks).
double max_norm(std::span<const cplx> p);

/// max_i |p_i - q_i|
double max_dist(std::span<const cplx> p, std::span<const cplx> q);

bool all_finite(std::span<const cplx> p);

/// Dense square complex matrix, row-major. Only ever small (n <= 8 in practice).
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), a_(n * n) {}

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const cplx> d);

  std::size_t size() const { return n_; }
  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  Matrix operator*(const Matrix& o) const;
  Point operator*(std::span<const cplx> v) const;

  /// Gauss-Jordan with partial pivoting. Throws DomainError when singular.
  Matrix inverse() const;

  bool is_diagonal(double tol = 0.0) const;
  bool is_lower_triangular(double tol = 0.0) const;
  bool is_upper_triangular(double tol = 0.0) const;

  /// Largest entrywise deviation.
  double max_abs_diff(const Matrix& o) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<cplx> a_;
};

}  // namespace holodyn
