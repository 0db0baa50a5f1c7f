#pragma once

#include <optional>
#include <vector>

#include "holodyn/exp_poly.hpp"
#include "holodyn/integrator.hpp"
#include "holodyn/jet.hpp"
#include "holodyn/vector_field.hpp"

namespace holodyn {

/// Polyline in the complex time plane, starting at its first vertex.
struct TimePath {
  std::vector<cplx> vertices{cplx{}};

  /// 0 -> t
  static TimePath segment(cplx t);
  /// Sampled circle start + r (e^{i theta} - 1), theta in [0, 2 pi], so it
  /// starts and ends at `start`. At least 64 segments.
  static TimePath circle(cplx start, double radius, int segments = 64);

  cplx end() const { return vertices.back(); }
};

/// Degree-`order` truncation of the time-t flow of X.
///
/// Each Picard pass x <- e^{Lt} x0 + int_0^t e^{L(t-s)} N(x(s)) ds is carried
/// out exactly on series with exponential-polynomial coefficients and fixes one
/// more degree; iteration stops at the fixed point. Requires X(0) = 0 and a
/// triangular linear part.
JetMap formal_flow(const VectorField& X, cplx t, int order);

/// Integrates dx/dt = X(x) along the path. Raw status, no exceptions.
IntegrationResult try_numeric_flow(const VectorField& X, std::span<const cplx> p,
                                   const TimePath& path, const IntegratorOptions& opts = {},
                                   const std::function<void(cplx t, std::span<const cplx> x)>&
                                       observe = {});

/// As try_numeric_flow, but throws NumericError on escape or integrator failure.
Point numeric_flow(const VectorField& X, std::span<const cplx> p, const TimePath& path,
                   const IntegratorOptions& opts = {});

/// max over integrator steps of |g(x(t)) - g(p) m(t)| where m is `modulation`
/// (m = 1 when absent, i.e. g is a first integral).
double first_integral_drift(const VectorField& X, const Jet& g, std::span<const cplx> p,
                            const TimePath& path, const std::optional<ExpPoly>& modulation = {},
                            const IntegratorOptions& opts = {});

}  // namespace holodyn
