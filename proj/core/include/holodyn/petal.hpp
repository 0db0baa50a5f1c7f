#pragma once

#include <cstddef>
#include <vector>

#include "holodyn/linalg.hpp"

namespace holodyn {

struct PetalOptions {
  double seed_radius = 0.1;
  /// Seeds are placed at each attracting direction rotated by these offsets (radians).
  std::vector<double> angle_offsets{0.0, 0.2, -0.2};
  std::size_t steps = 100'000;
  double arg_tol = 1e-3;
};

struct PetalRun {
  double direction = 0.0;  // attracting direction the seed was placed near
  double seed_angle = 0.0;
  double final_modulus = 0.0;
  double arg_error = 0.0;  // |arg x_N - direction|, wrapped to [0, pi]
  bool converged = false;  // |x_N| < seed modulus and arg_error < arg_tol
};

/// Characteristic directions of x -> x + c x^{d+1}: attracting where c x^d is
/// negative real, repelling where it is positive real; d of each. Angles in
/// [0, 2 pi), ascending.
struct PetalReport {
  int d = 1;
  cplx c{};
  std::vector<double> attracting;
  std::vector<double> repelling;
  std::vector<PetalRun> runs;
  bool all_converged = false;
  double max_arg_error = 0.0;
};

PetalReport petal_analysis(int d, cplx c, const PetalOptions& opts = {});

/// Wraps an angle difference into [0, pi].
double angle_distance(double a, double b);

}  // namespace holodyn
