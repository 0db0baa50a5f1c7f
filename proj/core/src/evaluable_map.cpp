#include "holodyn/evaluable_map.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "holodyn/errors.hpp"
#include "holodyn/flows.hpp"

namespace holodyn {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::optional<Point> finite_or_none(Point p) {
  if (!all_finite(p)) return std::nullopt;
  return p;
}

cplx ipow(cplx z, int k) {
  cplx r = 1.0;
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

Matrix permutation_matrix(const PermutationMap& pm) {
  const std::size_t n = pm.perm.size();
  Matrix p(n);
  for (std::size_t j = 0; j < n; ++j) p(j, pm.perm[j]) = 1.0;
  return pm.m * p;
}

cplx unit_value(const Jet& f, cplx w) {
  const std::array<cplx, 1> pt{w};
  return 1.0 + w * f.eval(pt);
}

// u(w) = 1 + w f(w) and u'(w)
std::pair<cplx, cplx> unit_factor(const Jet& f, cplx w) {
  const std::array<cplx, 1> pt{w};
  const cplx fw = f.eval(pt);
  const cplx dfw = f.derivative(0).eval(pt);
  return {1.0 + w * fw, fw + w * dfw};
}

std::optional<Point> product_preserving_inverse(const ProductPreservingMap& m,
                                                std::span<const cplx> q) {
  // image invariant S = X^a Y^b = w u(w)^{a-b}; solve for w, then undo u(w).
  const cplx S = ipow(q[0], m.a) * ipow(q[1], m.b);
  const int k = m.a - m.b;
  cplx w = S;
  if (k != 0) {
    for (int it = 0; it < 60; ++it) {
      const auto [u, du] = unit_factor(m.f, w);
      const cplx uk = std::pow(u, k);
      const cplx phi = w * uk - S;
      const cplx dphi = uk + w * static_cast<double>(k) * std::pow(u, k - 1) * du;
      if (dphi == cplx{}) return std::nullopt;
      const cplx step = phi / dphi;
      w -= step;
      if (std::abs(step) <= 1e-17 * std::max(std::abs(w), 1e-300)) break;
    }
  }
  const cplx u = unit_value(m.f, w);
  return finite_or_none({q[0] / u, q[1] * u});
}

std::optional<Point> parabolic_inverse(const ParabolicMap& m, cplx X) {
  cplx x = X;
  for (int it = 0; it < 60; ++it) {
    const cplx xd = ipow(x, m.d);
    const cplx phi = x + m.c * xd * x - X;
    const cplx dphi = 1.0 + static_cast<double>(m.d + 1) * m.c * xd;
    if (dphi == cplx{}) return std::nullopt;
    const cplx step = phi / dphi;
    x -= step;
    if (std::abs(step) <= 1e-17 * std::max(std::abs(x), 1e-300)) break;
  }
  return finite_or_none({x});
}

}  // namespace

EvaluableMap::EvaluableMap(Variant v, std::string name) : v_(std::move(v)), name_(std::move(name)) {
  std::visit(overloaded{
                 [](const LinearMap& m) {
                   if (m.m.size() == 0) throw DimensionError("linear map: empty matrix");
                 },
                 [](const PermutationMap& m) {
                   if (m.perm.size() != m.m.size())
                     throw DimensionError("permutation map: size mismatch");
                   std::vector<bool> seen(m.perm.size());
                   for (auto i : m.perm) {
                     if (i >= seen.size() || seen[i]) throw DomainError("not a permutation");
                     seen[i] = true;
                   }
                 },
                 [](const ProductPreservingMap& m) {
                   if (m.a < 1 || m.b < 1)
                     throw DomainError("product-preserving map: a, b must be positive");
                   if (m.f.n_vars() != 1) throw DimensionError("product-preserving map: f must be univariate");
                 },
                 [](const ParabolicMap& m) {
                   if (m.d < 1) throw DomainError("parabolic map: d must be positive");
                 },
                 [](const TimeOneMap&) {},
                 [](const TruncatedJetMap&) {},
             },
             v_);
}

EvaluableMap EvaluableMap::linear(Matrix m, std::string name) {
  return EvaluableMap(LinearMap{std::move(m)}, std::move(name));
}

EvaluableMap EvaluableMap::permutation(std::vector<std::size_t> perm, Matrix m, std::string name) {
  return EvaluableMap(PermutationMap{std::move(perm), std::move(m)}, std::move(name));
}

EvaluableMap EvaluableMap::product_preserving(int a, int b, Jet f, std::string name) {
  return EvaluableMap(ProductPreservingMap{a, b, std::move(f)}, std::move(name));
}

EvaluableMap EvaluableMap::parabolic(int d, cplx c, std::string name) {
  return EvaluableMap(ParabolicMap{d, c}, std::move(name));
}

EvaluableMap EvaluableMap::time_one(VectorField field, IntegratorOptions opts, std::string name) {
  return EvaluableMap(TimeOneMap{std::move(field), opts}, std::move(name));
}

EvaluableMap EvaluableMap::truncated_jet(JetMap map, std::string name) {
  JetMap inv = jetmap_inverse(map);
  return EvaluableMap(TruncatedJetMap{std::move(map), std::move(inv)}, std::move(name));
}

std::size_t EvaluableMap::n_vars() const {
  return std::visit(overloaded{
                        [](const LinearMap& m) { return m.m.size(); },
                        [](const PermutationMap& m) { return m.perm.size(); },
                        [](const ProductPreservingMap&) { return std::size_t{2}; },
                        [](const ParabolicMap&) { return std::size_t{1}; },
                        [](const TimeOneMap& m) { return m.field.n_vars(); },
                        [](const TruncatedJetMap& m) { return m.map.size(); },
                    },
                    v_);
}

std::optional<Point> EvaluableMap::apply(std::span<const cplx> p) const {
  if (p.size() != n_vars()) throw DimensionError("EvaluableMap::apply: point dimension mismatch");
  return std::visit(
      overloaded{
          [&](const LinearMap& m) { return finite_or_none(m.m * p); },
          [&](const PermutationMap& m) {
            Point q(p.size());
            for (std::size_t j = 0; j < p.size(); ++j) q[j] = p[m.perm[j]];
            return finite_or_none(m.m * q);
          },
          [&](const ProductPreservingMap& m) {
            const cplx w = ipow(p[0], m.a) * ipow(p[1], m.b);
            const cplx u = unit_value(m.f, w);
            return finite_or_none({p[0] * u, p[1] / u});
          },
          [&](const ParabolicMap& m) {
            return finite_or_none({p[0] + m.c * ipow(p[0], m.d + 1)});
          },
          [&](const TimeOneMap& m) -> std::optional<Point> {
            auto r = try_numeric_flow(m.field, p, TimePath::segment(1.0), m.opts);
            if (!r.ok()) return std::nullopt;
            return r.x;
          },
          [&](const TruncatedJetMap& m) { return finite_or_none(m.map.eval(p)); },
      },
      v_);
}

std::optional<Point> EvaluableMap::apply_inverse(std::span<const cplx> p) const {
  if (p.size() != n_vars())
    throw DimensionError("EvaluableMap::apply_inverse: point dimension mismatch");
  return std::visit(
      overloaded{
          [&](const LinearMap& m) { return finite_or_none(m.m.inverse() * p); },
          [&](const PermutationMap& m) {
            const Point q = m.m.inverse() * p;
            Point r(p.size());
            for (std::size_t j = 0; j < p.size(); ++j) r[m.perm[j]] = q[j];
            return finite_or_none(std::move(r));
          },
          [&](const ProductPreservingMap& m) { return product_preserving_inverse(m, p); },
          [&](const ParabolicMap& m) { return parabolic_inverse(m, p[0]); },
          [&](const TimeOneMap& m) -> std::optional<Point> {
            auto r = try_numeric_flow(m.field, p, TimePath::segment(-1.0), m.opts);
            if (!r.ok()) return std::nullopt;
            return r.x;
          },
          [&](const TruncatedJetMap& m) { return finite_or_none(m.inverse.eval(p)); },
      },
      v_);
}

bool EvaluableMap::exactly_invertible() const {
  return !std::holds_alternative<TruncatedJetMap>(v_);
}

std::optional<Matrix> EvaluableMap::as_matrix() const {
  if (auto* m = std::get_if<LinearMap>(&v_)) return m->m;
  if (auto* m = std::get_if<PermutationMap>(&v_)) return permutation_matrix(*m);
  return std::nullopt;
}

double EvaluableMap::inverse_tolerance() const {
  if (auto* m = std::get_if<TimeOneMap>(&v_))
    return 1e3 * std::max(m->opts.abs_tol, m->opts.rel_tol);
  return 1e-12;
}

std::vector<Point> probe_points(std::size_t n_vars, double radius, std::size_t count) {
  std::vector<Point> out;
  constexpr double kGolden = 0.6180339887498949;
  for (std::size_t k = 0; k < count; ++k) {
    Point p(n_vars);
    for (std::size_t i = 0; i < n_vars; ++i) {
      const double r = radius * (0.3 + 0.7 * std::fmod(0.37 * (k + 1) + 0.21 * i, 1.0));
      const double th = 2.0 * std::numbers::pi * std::fmod(kGolden * (k + 1) + 0.29 * i, 1.0);
      p[i] = std::polar(r, th);
    }
    out.push_back(std::move(p));
  }
  return out;
}

bool verify_inverse(const EvaluableMap& h, double radius) {
  const double tol = h.inverse_tolerance();
  for (const auto& p : probe_points(h.n_vars(), radius / 2.0)) {
    auto q = h.apply(p);
    if (!q) return false;
    auto back = h.apply_inverse(*q);
    if (!back || max_dist(*back, p) > tol) return false;
    auto qi = h.apply_inverse(p);
    if (!qi) return false;
    auto fwd = h.apply(*qi);
    if (!fwd || max_dist(*fwd, p) > tol) return false;
  }
  return true;
}

}  // namespace holodyn
