#pragma once

// Power series in the initial condition whose coefficients are exponential
// polynomials in time: x(t) = sum_e a_e(t) x0^e. Internal to the flow and
// holonomy recursions.

#include <map>
#include <vector>

#include "holodyn/exp_poly.hpp"
#include "holodyn/jet.hpp"

namespace holodyn::detail {

class ExpSeries {
 public:
  using Coeffs = std::map<MultiIndex, ExpPoly, GradedLex>;

  ExpSeries(std::size_t n_vars, int order) : n_(n_vars), order_(order) {}

  std::size_t n_vars() const { return n_; }
  int order() const { return order_; }
  const Coeffs& coeffs() const { return c_; }

  const ExpPoly& at(const MultiIndex& e) const;
  void set(const MultiIndex& e, ExpPoly p);
  void add(const MultiIndex& e, const ExpPoly& p);

  static ExpSeries constant(std::size_t n_vars, int order, const ExpPoly& p);

  /// Product truncated at total degree `max_degree` (<= order).
  friend ExpSeries mul(const ExpSeries& a, const ExpSeries& b, int max_degree);

  /// Coefficient jet at time t.
  Jet at_time(cplx t) const;

 private:
  std::size_t n_;
  int order_;
  Coeffs c_;
};

/// poly(x_0(t), ..., x_{m-1}(t)) truncated at max_degree; poly's variables are
/// substituted by the series `x` (which must have no constant terms).
ExpSeries substitute(const Jet& poly, const std::vector<ExpSeries>& x, int max_degree);

/// Largest coefficient deviation between two tuples of series.
double max_coeff_diff(const std::vector<ExpSeries>& a, const std::vector<ExpSeries>& b);

}  // namespace holodyn::detail
