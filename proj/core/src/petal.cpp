#include "holodyn/petal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "holodyn/errors.hpp"

namespace holodyn {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_2pi(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a < 0.0) a += 2.0 * kPi;
  // values within rounding of 2 pi collapse to 0
  if (2.0 * kPi - a < 1e-15) a = 0.0;
  return a;
}

}  // namespace

double angle_distance(double a, double b) {
  const double d = wrap_2pi(a - b);
  return std::min(d, 2.0 * kPi - d);
}

PetalReport petal_analysis(int d, cplx c, const PetalOptions& opts) {
  if (d < 1) throw DomainError("petal_analysis: d must be positive");
  if (c == cplx{}) throw DomainError("petal_analysis: c must be nonzero");
  PetalReport rep;
  rep.d = d;
  rep.c = c;
  const double argc = std::arg(c);
  for (int k = 0; k < d; ++k) {
    rep.attracting.push_back(wrap_2pi((kPi - argc + 2.0 * kPi * k) / d));
    rep.repelling.push_back(wrap_2pi((-argc + 2.0 * kPi * k) / d));
  }
  std::sort(rep.attracting.begin(), rep.attracting.end());
  std::sort(rep.repelling.begin(), rep.repelling.end());

  rep.all_converged = true;
  for (double dir : rep.attracting) {
    for (double off : opts.angle_offsets) {
      PetalRun run;
      run.direction = dir;
      run.seed_angle = dir + off;
      cplx x = std::polar(opts.seed_radius, run.seed_angle);
      for (std::size_t s = 0; s < opts.steps; ++s) x += c * std::pow(x, d + 1);
      run.final_modulus = std::abs(x);
      run.arg_error = std::isfinite(run.final_modulus) ? angle_distance(std::arg(x), dir) : kPi;
      run.converged = std::isfinite(run.final_modulus) && run.final_modulus < opts.seed_radius &&
                      run.arg_error < opts.arg_tol;
      rep.max_arg_error = std::max(rep.max_arg_error, run.arg_error);
      rep.all_converged = rep.all_converged && run.converged;
      rep.runs.push_back(run);
    }
  }
  return rep;
}

}  // namespace holodyn
