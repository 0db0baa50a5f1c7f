#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "holodyn/linalg.hpp"

namespace holodyn {

struct IntegratorOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::size_t max_steps = 1'000'000;
  /// Integration stops with Escaped once the max-norm of the state exceeds this.
  double escape_radius = 10.0;
};

/// dx/ds = f(s, x)
using OdeRhs = std::function<void(double s, std::span<const cplx> x, std::span<cplx> dx)>;
/// Called with the initial state and after every accepted step.
using OdeObserver = std::function<void(double s, std::span<const cplx> x)>;

struct IntegrationResult {
  enum class Status { Ok, Escaped, StepUnderflow, StepBudget };
  Status status = Status::Ok;
  Point x;
  double s_end = 0.0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;

  bool ok() const { return status == Status::Ok; }
};

const char* to_string(IntegrationResult::Status s);

/// Dormand-Prince 5(4) with FSAL and standard step-size control, on complex
/// state vectors over a real parameter interval [s0, s1].
IntegrationResult integrate_dopri5(const OdeRhs& f, double s0, double s1, Point x0,
                                   const IntegratorOptions& opts = {},
                                   const OdeObserver& observe = {});

}  // namespace holodyn
