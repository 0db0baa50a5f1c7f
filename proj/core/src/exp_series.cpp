#include "exp_series.hpp"

#include <algorithm>

#include "holodyn/errors.hpp"

namespace holodyn::detail {

const ExpPoly& ExpSeries::at(const MultiIndex& e) const {
  static const ExpPoly kZero;
  auto it = c_.find(e);
  return it == c_.end() ? kZero : it->second;
}

void ExpSeries::set(const MultiIndex& e, ExpPoly p) {
  if (p.is_zero())
    c_.erase(e);
  else
    c_[e] = std::move(p);
}

void ExpSeries::add(const MultiIndex& e, const ExpPoly& p) {
  if (p.is_zero()) return;
  set(e, expoly_add(at(e), p));
}

ExpSeries ExpSeries::constant(std::size_t n_vars, int order, const ExpPoly& p) {
  ExpSeries s(n_vars, order);
  s.set(MultiIndex(n_vars), p);
  return s;
}

ExpSeries mul(const ExpSeries& a, const ExpSeries& b, int max_degree) {
  ExpSeries r(a.n_, a.order_);
  for (const auto& [ea, pa] : a.c_)
    for (const auto& [eb, pb] : b.c_) {
      if (ea.degree() + eb.degree() > max_degree) break;
      r.add(ea + eb, expoly_mul(pa, pb));
    }
  return r;
}

Jet ExpSeries::at_time(cplx t) const {
  Jet::Terms terms;
  for (const auto& [e, p] : c_) terms.emplace(e, p.eval(t));
  return Jet(n_, order_, std::move(terms));
}

ExpSeries substitute(const Jet& poly, const std::vector<ExpSeries>& x, int max_degree) {
  if (poly.n_vars() != x.size()) throw DimensionError("substitute: variable count mismatch");
  const std::size_t m = x.size();
  const std::size_t n = x.front().n_vars();
  const int order = x.front().order();
  std::vector<std::vector<ExpSeries>> powers(m);
  for (auto& row : powers) row.push_back(ExpSeries::constant(n, order, ExpPoly::constant(1.0)));

  ExpSeries acc(n, order);
  for (const auto& [e, c] : poly.terms()) {
    if (e.degree() > max_degree) break;  // every x_i starts at degree 1
    ExpSeries term = ExpSeries::constant(n, order, ExpPoly::constant(c));
    for (std::size_t i = 0; i < m; ++i) {
      if (e[i] == 0) continue;
      auto& row = powers[i];
      while (static_cast<int>(row.size()) <= e[i]) row.push_back(mul(row.back(), x[i], max_degree));
      term = mul(term, row[e[i]], max_degree);
    }
    for (const auto& [te, tp] : term.coeffs()) acc.add(te, tp);
  }
  return acc;
}

double max_coeff_diff(const std::vector<ExpSeries>& a, const std::vector<ExpSeries>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (const auto& [e, p] : a[i].coeffs()) m = std::max(m, max_coeff_diff(p, b[i].at(e)));
    for (const auto& [e, p] : b[i].coeffs())
      if (!a[i].coeffs().contains(e)) m = std::max(m, max_coeff_diff(p, ExpPoly{}));
  }
  return m;
}

}  // namespace holodyn::detail
