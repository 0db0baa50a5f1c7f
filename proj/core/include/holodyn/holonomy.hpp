#pragma once

// Holonomy of a foliation on (C^n, 0) along a coordinate-axis separatrix.
//
// Lifting the loop z = z0 e^{2 pi i t} (z the axis coordinate) into the leaves
// turns dx/dz = X_trans / X_axis into the periodic monodromy system
//   dx_j/dt = sum_m e^{2 pi i m t} P_{j,m}(x),
// whose time-one map is the holonomy. Two routes compute it: an exact
// recursion on coefficient functions in the exponential-polynomial ring, and
// numeric integration of the same system.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "holodyn/exp_poly.hpp"
#include "holodyn/integrator.hpp"
#include "holodyn/jet.hpp"
#include "holodyn/vector_field.hpp"

namespace holodyn {

class Foliation {
 public:
  /// Validates that the coordinate axis `separatrix_axis` is invariant and
  /// carries a nonzero eigenvalue. Throws DomainError otherwise.
  Foliation(VectorField field, std::size_t separatrix_axis, double transversal_radius = 0.1);

  const VectorField& field() const { return field_; }
  std::size_t axis() const { return axis_; }
  double transversal_radius() const { return radius_; }
  /// Indices of the transverse coordinates, in increasing order.
  std::vector<std::size_t> transverse_indices() const;

 private:
  VectorField field_;
  std::size_t axis_;
  double radius_;
};

/// dx_j/dt = sum over terms of e^{2 pi i freq t} * jet(x), j over transverse coordinates.
struct MonodromySystem {
  struct Term {
    int freq = 0;
    Jet jet;  // in the n-1 transverse variables
  };
  std::size_t dim = 0;
  std::vector<std::vector<Term>> rhs;
  cplx z0 = 1.0;

  Point eval(double t, std::span<const cplx> x) const;
  /// Sorted distinct frequencies over all components.
  std::vector<int> frequencies() const;
};

/// Substitutes z = z0 e^{2 pi i t}. The axis component must be lambda * z
/// exactly (a single linear monomial); anything else cannot be divided out in
/// closed form and raises DomainError.
MonodromySystem build_monodromy_system(const Foliation& F, cplx z0 = 1.0);

/// a_{j,e}(t): coefficient of x0^e in the j-th transverse coordinate at time t.
struct CoefficientTable {
  std::size_t dim = 0;
  int order = 0;
  std::vector<std::map<MultiIndex, ExpPoly, GradedLex>> entries;  // entries[j][e]
  std::vector<Frequency> diagonal;  // alpha_j of a'_{j,e} = alpha_j a_{j,e} + forcing

  const ExpPoly& at(std::size_t component, const MultiIndex& e) const;
};

struct HolonomySeries {
  JetMap map;  // coefficients at t = 1
  CoefficientTable table;
};

HolonomySeries holonomy_series(const Foliation& F, int order, cplx z0 = 1.0);
HolonomySeries holonomy_series(const MonodromySystem& sys, int order);

/// Recomputes every table entry's forcing term from the table itself and
/// returns the largest coefficient of the ODE residual (0 up to pruning).
double coefficient_table_residual(const MonodromySystem& sys, const CoefficientTable& table);

struct NumericHolonomy {
  Point point;
  bool escaped = false;
  IntegrationResult::Status status = IntegrationResult::Status::Ok;
};

NumericHolonomy holonomy_numeric(const MonodromySystem& sys, std::span<const cplx> p,
                                 const IntegratorOptions& opts = {});
NumericHolonomy holonomy_numeric(const Foliation& F, std::span<const cplx> p, cplx z0 = 1.0,
                                 const IntegratorOptions& opts = {});

/// max over integrator steps on t in [0, T] of |g(x(t)) - g(p) m(t)| along the
/// monodromy system (m = 1 when absent).
double monodromy_integral_drift(const MonodromySystem& sys, const Jet& g, std::span<const cplx> p,
                                double T, const std::optional<ExpPoly>& modulation = {},
                                const IntegratorOptions& opts = {});

/// h(x, y) = (x (1 + w f(w)), y (1 + w f(w))^{-1}), w = x^a y^b.
struct NormalForm {
  int a = 0;
  int b = 0;
  Jet f;  // one variable; order floor((N-1)/(a+b)) - 1
  cplx f0() const { return f.constant_term(); }
};

/// Fits the form above through the jet order, with coefficient tolerance `tol`.
/// Throws DomainError if h is not 2-dimensional tangent to the identity or
/// does not preserve xy, and returns nullopt when no monomial pattern fits.
std::optional<NormalForm> extract_normal_form(const JetMap& h, double tol = 1e-10);

/// Y + 2 pi i z d/dz on C^{n+1}, axis z (the last coordinate).
Foliation realize_as_holonomy(const VectorField& Y);

}  // namespace holodyn
