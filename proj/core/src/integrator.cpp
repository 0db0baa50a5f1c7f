#include "holodyn/integrator.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace holodyn {

const char* to_string(IntegrationResult::Status s) {
  switch (s) {
    case IntegrationResult::Status::Ok: return "ok";
    case IntegrationResult::Status::Escaped: return "escaped";
    case IntegrationResult::Status::StepUnderflow: return "step-underflow";
    case IntegrationResult::Status::StepBudget: return "step-budget";
  }
  return "?";
}

namespace {

// Dormand & Prince (1980) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// fifth minus fourth order weights
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

IntegrationResult integrate_dopri5(const OdeRhs& f, double s0, double s1, Point x0,
                                   const IntegratorOptions& opts, const OdeObserver& observe) {
  using Status = IntegrationResult::Status;
  IntegrationResult res;
  const std::size_t n = x0.size();
  res.x = std::move(x0);
  res.s_end = s0;
  if (observe) observe(s0, res.x);
  if (s1 == s0 || n == 0) return res;

  const double dir = s1 > s0 ? 1.0 : -1.0;
  const double span = std::abs(s1 - s0);
  std::array<Point, 7> k;
  for (auto& v : k) v.assign(n, cplx{});
  Point tmp(n), xnew(n);

  double s = s0;
  double h = span / 100.0;
  f(s, res.x, k[0]);

  auto stage = [&](double cs, auto&& combine, Point& out) {
    for (std::size_t i = 0; i < n; ++i) tmp[i] = res.x[i] + combine(i);
    f(s + dir * cs * h, tmp, out);
  };

  while (dir * (s1 - s) > 0.0) {
    if (res.accepted + res.rejected >= opts.max_steps) {
      res.status = Status::StepBudget;
      break;
    }
    bool last = false;
    if (h >= std::abs(s1 - s)) {
      h = std::abs(s1 - s);
      last = true;
    }
    if (h < 1e-14 * std::max(1.0, std::abs(s))) {
      res.status = Status::StepUnderflow;
      break;
    }
    const double hs = dir * h;
    stage(c2, [&](std::size_t i) { return hs * a21 * k[0][i]; }, k[1]);
    stage(c3, [&](std::size_t i) { return hs * (a31 * k[0][i] + a32 * k[1][i]); }, k[2]);
    stage(c4, [&](std::size_t i) { return hs * (a41 * k[0][i] + a42 * k[1][i] + a43 * k[2][i]); },
          k[3]);
    stage(c5,
          [&](std::size_t i) {
            return hs * (a51 * k[0][i] + a52 * k[1][i] + a53 * k[2][i] + a54 * k[3][i]);
          },
          k[4]);
    stage(1.0,
          [&](std::size_t i) {
            return hs * (a61 * k[0][i] + a62 * k[1][i] + a63 * k[2][i] + a64 * k[3][i] +
                         a65 * k[4][i]);
          },
          k[5]);
    for (std::size_t i = 0; i < n; ++i)
      xnew[i] = res.x[i] +
                hs * (b1 * k[0][i] + b3 * k[2][i] + b4 * k[3][i] + b5 * k[4][i] + b6 * k[5][i]);
    const double s_new = last ? s1 : s + hs;
    f(s_new, xnew, k[6]);

    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx e = hs * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] + e5 * k[4][i] +
                           e6 * k[5][i] + e7 * k[6][i]);
      const double sc = opts.abs_tol + opts.rel_tol * std::max(std::abs(res.x[i]), std::abs(xnew[i]));
      const double r = std::abs(e) / sc;
      err += r * r;
    }
    err = std::sqrt(err / static_cast<double>(n));
    if (!std::isfinite(err)) err = 1e10;

    if (err <= 1.0) {
      ++res.accepted;
      s = s_new;
      res.x.swap(xnew);
      k[0].swap(k[6]);
      res.s_end = s;
      if (observe) observe(s, res.x);
      if (!all_finite(res.x) || max_norm(res.x) > opts.escape_radius) {
        res.status = Status::Escaped;
        break;
      }
      const double fac = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h *= fac;
    } else {
      ++res.rejected;
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
  }
  return res;
}

}  // namespace holodyn
