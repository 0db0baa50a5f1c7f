#include "holodyn/flows.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "exp_series.hpp"
#include "holodyn/errors.hpp"

namespace holodyn {

TimePath TimePath::segment(cplx t) { return TimePath{{cplx{}, t}}; }

TimePath TimePath::circle(cplx start, double radius, int segments) {
  segments = std::max(segments, 64);
  TimePath p;
  p.vertices.clear();
  for (int k = 0; k <= segments; ++k) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(k) / segments;
    p.vertices.push_back(k == segments ? start : start + radius * (std::polar(1.0, th) - 1.0));
  }
  return p;
}

JetMap formal_flow(const VectorField& X, cplx t, int order) {
  using detail::ExpSeries;
  if (!X.vanishes_at_origin()) throw DomainError("formal_flow: field does not vanish at the origin");
  if (order < 1) throw DomainError("formal_flow: order must be >= 1");
  const std::size_t n = X.n_vars();
  const Matrix& lin = X.linear_part();
  if (!lin.is_lower_triangular() && !lin.is_upper_triangular())
    throw DomainError("formal_flow: linear part must be triangular");

  std::vector<Frequency> alpha;
  std::vector<Jet> nonlin;
  for (std::size_t j = 0; j < n; ++j) {
    alpha.push_back(Frequency::snapped(lin(j, j)));
    nonlin.push_back(X[j].with_order(order).nonlinear_part());
  }

  std::vector<ExpSeries> x;
  for (std::size_t j = 0; j < n; ++j) {
    ExpSeries s(n, order);
    s.set(MultiIndex::unit(n, j), ExpPoly::monomial(1.0, 0, alpha[j]));
    x.push_back(std::move(s));
  }

  const int max_pass = order + static_cast<int>(n) + 2;
  for (int pass = 0;; ++pass) {
    if (pass == max_pass) throw DomainError("formal_flow: Picard iteration did not settle");
    std::vector<ExpSeries> next;
    for (std::size_t j = 0; j < n; ++j) {
      ExpSeries forcing = detail::substitute(nonlin[j], x, order);
      for (std::size_t i = 0; i < n; ++i) {
        if (i == j || lin(j, i) == cplx{}) continue;
        for (const auto& [e, p] : x[i].coeffs()) forcing.add(e, p.scaled(lin(j, i)));
      }
      ExpSeries s(n, order);
      const MultiIndex unit = MultiIndex::unit(n, j);
      s.set(unit, solve_linear_ode(alpha[j], forcing.at(unit), 1.0));
      for (const auto& [e, g] : forcing.coeffs())
        if (!(e == unit)) s.set(e, solve_linear_ode(alpha[j], g, 0.0));
      next.push_back(std::move(s));
    }
    const bool settled = detail::max_coeff_diff(x, next) == 0.0;
    x = std::move(next);
    if (settled) break;
  }

  std::vector<Jet> comps;
  for (const auto& s : x) comps.push_back(s.at_time(t));
  return JetMap(std::move(comps));
}

IntegrationResult try_numeric_flow(const VectorField& X, std::span<const cplx> p,
                                   const TimePath& path, const IntegratorOptions& opts,
                                   const std::function<void(cplx, std::span<const cplx>)>& observe) {
  if (p.size() != X.n_vars()) throw DimensionError("numeric_flow: point dimension mismatch");
  if (path.vertices.empty() || path.vertices.front() != cplx{})
    throw DomainError("numeric_flow: time path must start at 0");
  IntegrationResult res;
  res.x.assign(p.begin(), p.end());
  if (observe) observe(cplx{}, res.x);
  for (std::size_t seg = 0; seg + 1 < path.vertices.size(); ++seg) {
    const cplx a = path.vertices[seg];
    const cplx d = path.vertices[seg + 1] - a;
    if (d == cplx{}) continue;
    // t = a + s d, s in [0,1]
    auto rhs = [&](double, std::span<const cplx> x, std::span<cplx> dx) {
      for (std::size_t i = 0; i < x.size(); ++i) dx[i] = d * X[i].eval(x);
    };
    OdeObserver obs;
    if (observe)
      obs = [&](double s, std::span<const cplx> x) {
        if (s > 0.0) observe(a + s * d, x);
      };
    IntegratorOptions o = opts;
    o.max_steps = opts.max_steps > res.accepted + res.rejected
                      ? opts.max_steps - res.accepted - res.rejected
                      : 0;
    auto r = integrate_dopri5(rhs, 0.0, 1.0, res.x, o, obs);
    res.accepted += r.accepted;
    res.rejected += r.rejected;
    res.x = std::move(r.x);
    res.status = r.status;
    if (!r.ok()) return res;
  }
  return res;
}

Point numeric_flow(const VectorField& X, std::span<const cplx> p, const TimePath& path,
                   const IntegratorOptions& opts) {
  auto r = try_numeric_flow(X, p, path, opts);
  if (!r.ok())
    throw NumericError(std::string("numeric_flow: integration stopped (") + to_string(r.status) + ")");
  return r.x;
}

double first_integral_drift(const VectorField& X, const Jet& g, std::span<const cplx> p,
                            const TimePath& path, const std::optional<ExpPoly>& modulation,
                            const IntegratorOptions& opts) {
  const cplx g0 = g.eval(p);
  double drift = 0.0;
  auto r = try_numeric_flow(X, p, path, opts, [&](cplx t, std::span<const cplx> x) {
    const cplx expected = modulation ? g0 * modulation->eval(t) : g0;
    drift = std::max(drift, std::abs(g.eval(x) - expected));
  });
  if (!r.ok())
    throw NumericError(std::string("first_integral_drift: integration stopped (") +
                       to_string(r.status) + ")");
  return drift;
}

}  // namespace holodyn
