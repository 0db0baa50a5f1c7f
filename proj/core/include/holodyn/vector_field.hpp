#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "holodyn/jet.hpp"

namespace holodyn {

/// Polynomial vector field sum_i X_i d/dx_i on (C^n, 0).
///
/// Components are stored as jets whose truncation order is at least the
/// polynomial degree, so no information is lost. The eigenvalues are the
/// diagonal of the linear part and are only populated when that part is
/// diagonal.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(std::vector<Jet> components);

  std::size_t n_vars() const { return comps_.size(); }
  int order() const { return comps_.empty() ? 0 : comps_.front().order(); }
  const Jet& operator[](std::size_t i) const { return comps_[i]; }
  const std::vector<Jet>& components() const { return comps_; }
  const Matrix& linear_part() const { return linear_; }
  const std::optional<std::vector<cplx>>& eigenvalues() const { return eigen_; }

  bool vanishes_at_origin() const;
  /// Highest total degree among the component polynomials.
  int degree() const;

  Point eval(std::span<const cplx> p) const;

  /// Same field with components re-truncated (or extended) to `order`.
  VectorField with_order(int order) const;
  VectorField scaled(cplx s) const;

  friend VectorField operator+(const VectorField& a, const VectorField& b);

 private:
  std::vector<Jet> comps_;
  Matrix linear_;
  std::optional<std::vector<cplx>> eigen_;
};

/// sum_i X_i dg/dx_i, truncated at g's order.
Jet lie_derivative(const VectorField& X, const Jet& g);

/// Built-in fields.
namespace fields {

/// x(1 + x^2 y z^3) d/dx + y(1 - x^2 y z^3) d/dy - z d/dz
VectorField thm_b();
/// x(1 + x y z^2) d/dx + y(1 - x y z^2) d/dy - z d/dz
VectorField example3();
/// x^a y^b (x d/dx - (n/m) y d/dy); x^n y^m is a first integral.
VectorField example1(int n, int m, int a, int b);
/// sum lambda_i x_i d/dx_i
VectorField linear(std::span<const cplx> lambda);
/// 2 pi i x^a y^b (x d/dx - y d/dy). Time-one maps preserve xy; (a,b) = (1,1)
/// generates an F-type map and (2,1) an H-type map (both with f(0) = 2 pi i).
VectorField generator(int a, int b);
/// The zero field on C^n.
VectorField zero(std::size_t n);

}  // namespace fields

// JSON: {"n_vars", "components": [jet, ...], "eigenvalues": [[re, im], ...] | null}
std::string field_to_json(const VectorField& f);
VectorField field_from_json(std::string_view text);

}  // namespace holodyn
