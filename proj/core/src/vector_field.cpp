#include "holodyn/vector_field.hpp"

#include <algorithm>
#include <numbers>

#include "holodyn/errors.hpp"
#include "json_io.hpp"

namespace holodyn {

VectorField::VectorField(std::vector<Jet> components) : comps_(std::move(components)) {
  if (comps_.empty()) throw DimensionError("VectorField: no components");
  const std::size_t n = comps_.size();
  const int order = comps_.front().order();
  for (const auto& c : comps_)
    if (c.n_vars() != n || c.order() != order)
      throw DimensionError("VectorField: components must be jets in n variables of a common order");
  linear_ = Matrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) linear_(i, j) = comps_[i].coeff(MultiIndex::unit(n, j));
  if (linear_.is_diagonal()) {
    std::vector<cplx> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = linear_(i, i);
    eigen_ = std::move(ev);
  }
}

bool VectorField::vanishes_at_origin() const {
  return std::all_of(comps_.begin(), comps_.end(),
                     [](const Jet& c) { return c.constant_term() == cplx{}; });
}

int VectorField::degree() const {
  int d = 0;
  for (const auto& c : comps_) d = std::max(d, c.max_degree());
  return d;
}

Point VectorField::eval(std::span<const cplx> p) const {
  Point r(comps_.size());
  for (std::size_t i = 0; i < comps_.size(); ++i) r[i] = comps_[i].eval(p);
  return r;
}

VectorField VectorField::with_order(int order) const {
  std::vector<Jet> c;
  c.reserve(comps_.size());
  for (const auto& j : comps_) c.push_back(j.with_order(order));
  return VectorField(std::move(c));
}

VectorField VectorField::scaled(cplx s) const {
  std::vector<Jet> c;
  c.reserve(comps_.size());
  for (const auto& j : comps_) c.push_back(j.scaled(s));
  return VectorField(std::move(c));
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  if (a.n_vars() != b.n_vars()) throw DimensionError("VectorField sum: dimension mismatch");
  const int order = std::max(a.order(), b.order());
  std::vector<Jet> c;
  for (std::size_t i = 0; i < a.n_vars(); ++i)
    c.push_back(jet_add(a[i].with_order(order), b[i].with_order(order)));
  return VectorField(std::move(c));
}

Jet lie_derivative(const VectorField& X, const Jet& g) {
  if (X.n_vars() != g.n_vars()) throw DimensionError("lie_derivative: dimension mismatch");
  Jet acc(g.n_vars(), g.order());
  for (std::size_t i = 0; i < X.n_vars(); ++i)
    acc = jet_add(acc, jet_mul(X[i].with_order(g.order()), g.derivative(i)));
  return acc;
}

namespace fields {

namespace {

using T = Jet::Terms;

VectorField from_terms(std::size_t n, std::vector<T> comps) {
  int order = 1;
  for (const auto& c : comps)
    for (const auto& [e, v] : c) order = std::max(order, e.degree());
  std::vector<Jet> jets;
  for (auto& c : comps) jets.emplace_back(n, order, std::move(c));
  return VectorField(std::move(jets));
}

// x(1 + x^p y^q z^r) d/dx + y(1 - x^p y^q z^r) d/dy - z d/dz
VectorField coupled_siegel(int p, int q, int r) {
  return from_terms(3, {
                           T{{{1, 0, 0}, 1.0}, {{p + 1, q, r}, 1.0}},
                           T{{{0, 1, 0}, 1.0}, {{p, q + 1, r}, -1.0}},
                           T{{{0, 0, 1}, -1.0}},
                       });
}

}  // namespace

VectorField thm_b() { return coupled_siegel(2, 1, 3); }

VectorField example3() { return coupled_siegel(1, 1, 2); }

VectorField example1(int n, int m, int a, int b) {
  if (n <= 0 || m <= 0 || a < 0 || b < 0) throw DomainError("example1: need n, m > 0 and a, b >= 0");
  const double lambda = static_cast<double>(n) / static_cast<double>(m);
  return from_terms(2, {T{{{a + 1, b}, 1.0}}, T{{{a, b + 1}, -lambda}}});
}

VectorField linear(std::span<const cplx> lambda) {
  const std::size_t n = lambda.size();
  if (n == 0) throw DimensionError("linear field: no eigenvalues");
  std::vector<T> comps(n);
  for (std::size_t i = 0; i < n; ++i) comps[i].emplace(MultiIndex::unit(n, i), lambda[i]);
  return from_terms(n, std::move(comps));
}

VectorField generator(int a, int b) {
  if (a < 0 || b < 0) throw DomainError("generator: negative exponent");
  const cplx s{0.0, 2.0 * std::numbers::pi};
  return from_terms(2, {T{{{a + 1, b}, s}}, T{{{a, b + 1}, -s}}});
}

VectorField zero(std::size_t n) { return from_terms(n, std::vector<T>(n)); }

}  // namespace fields

namespace detail {

json field_json(const VectorField& f) {
  json comps = json::array();
  for (const auto& c : f.components()) comps.push_back(jet_json(c));
  json ev = nullptr;
  if (f.eigenvalues()) {
    ev = json::array();
    for (const auto& z : *f.eigenvalues()) ev.push_back(complex_json(z));
  }
  return {{"n_vars", f.n_vars()}, {"components", std::move(comps)}, {"eigenvalues", std::move(ev)}};
}

VectorField field_parse(const json& j) {
  try {
    const auto n = require(j, "n_vars").get<std::size_t>();
    std::vector<Jet> comps;
    std::size_t idx = 0;
    for (const auto& c : require(j, "components")) {
      try {
        comps.push_back(jet_parse(c));
      } catch (const ParseError& e) {
        throw ParseError("components[" + std::to_string(idx) + "]: " + e.what());
      }
      ++idx;
    }
    if (comps.size() != n) throw ParseError("field: n_vars differs from number of components");
    return VectorField(std::move(comps));
  } catch (const json::exception& e) {
    throw ParseError(std::string("field: ") + e.what());
  } catch (const DimensionError& e) {
    throw ParseError(std::string("field: ") + e.what());
  }
}

}  // namespace detail

std::string field_to_json(const VectorField& f) { return detail::field_json(f).dump(); }

VectorField field_from_json(std::string_view text) {
  return detail::field_parse(detail::parse_text(text));
}

}  // namespace holodyn
