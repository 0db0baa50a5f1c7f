#include "holodyn/holonomy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "exp_series.hpp"
#include "holodyn/errors.hpp"

namespace holodyn {

namespace {

constexpr cplx kTwoPiI{0.0, 2.0 * std::numbers::pi};

}  // namespace

Foliation::Foliation(VectorField field, std::size_t separatrix_axis, double transversal_radius)
    : field_(std::move(field)), axis_(separatrix_axis), radius_(transversal_radius) {
  const std::size_t n = field_.n_vars();
  if (n < 2) throw DomainError("Foliation: need at least two variables");
  if (axis_ >= n) throw DomainError("Foliation: separatrix axis out of range");
  if (!(radius_ > 0.0)) throw DomainError("Foliation: transversal radius must be positive");
  if (!field_.vanishes_at_origin()) throw DomainError("Foliation: field does not vanish at 0");
  for (std::size_t j = 0; j < n; ++j) {
    if (j == axis_) continue;
    for (const auto& [e, c] : field_[j].terms()) {
      bool has_transverse = false;
      for (std::size_t i = 0; i < n; ++i)
        if (i != axis_ && e[i] > 0) has_transverse = true;
      if (!has_transverse)
        throw DomainError("Foliation: axis " + std::to_string(axis_) +
                          " is not invariant (component " + std::to_string(j) + " has term " +
                          e.to_string() + ")");
    }
  }
  if (field_.linear_part()(axis_, axis_) == cplx{})
    throw DomainError("Foliation: zero eigenvalue along the separatrix axis");
}

std::vector<std::size_t> Foliation::transverse_indices() const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < field_.n_vars(); ++i)
    if (i != axis_) idx.push_back(i);
  return idx;
}

// ---------------------------------------------------------------------------

Point MonodromySystem::eval(double t, std::span<const cplx> x) const {
  Point dx(dim);
  for (std::size_t j = 0; j < dim; ++j)
    for (const auto& term : rhs[j]) {
      const cplx v = term.jet.eval(x);
      if (v == cplx{}) continue;
      dx[j] += (term.freq == 0 ? 1.0 : Frequency::integer(term.freq).exp_at(t)) * v;
    }
  return dx;
}

std::vector<int> MonodromySystem::frequencies() const {
  std::set<int> f;
  for (const auto& comp : rhs)
    for (const auto& t : comp) f.insert(t.freq);
  return {f.begin(), f.end()};
}

MonodromySystem build_monodromy_system(const Foliation& F, cplx z0) {
  const VectorField& X = F.field();
  const std::size_t n = X.n_vars();
  const std::size_t ax = F.axis();
  const MultiIndex axis_unit = MultiIndex::unit(n, ax);

  const Jet& C = X[ax];
  if (C.terms().size() != 1 || !(C.terms().begin()->first == axis_unit))
    throw DomainError(
        "build_monodromy_system: axis component must be lambda * z; the division by it is not "
        "resolvable in closed form otherwise");
  const cplx lambda = C.terms().begin()->second;
  const cplx scale = kTwoPiI / lambda;
  if (z0 == cplx{}) throw DomainError("build_monodromy_system: z0 must be nonzero");

  const auto trans = F.transverse_indices();
  MonodromySystem sys;
  sys.dim = n - 1;
  sys.z0 = z0;
  for (std::size_t j : trans) {
    std::map<int, Jet::Terms> by_freq;
    for (const auto& [e, c] : X[j].terms()) {
      std::vector<int> te;
      for (std::size_t i : trans) te.push_back(e[i]);
      const int k = e[ax];
      by_freq[k][MultiIndex(std::move(te))] += scale * c * std::pow(z0, k);
    }
    std::vector<MonodromySystem::Term> comp;
    for (auto& [k, terms] : by_freq) {
      Jet jt(sys.dim, std::max(X.order(), 1), std::move(terms));
      if (!jt.is_zero()) comp.push_back({k, std::move(jt)});
    }
    sys.rhs.push_back(std::move(comp));
  }
  return sys;
}

const ExpPoly& CoefficientTable::at(std::size_t component, const MultiIndex& e) const {
  static const ExpPoly kZero;
  const auto& m = entries.at(component);
  auto it = m.find(e);
  return it == m.end() ? kZero : it->second;
}

// ---------------------------------------------------------------------------

namespace {

struct Decomposed {
  Matrix linear;
  std::vector<Frequency> alpha;
  std::vector<std::vector<std::pair<int, Jet>>> nonlinear;  // per component: (freq, jet)
  std::vector<std::size_t> order;                           // processing order of components
};

Decomposed decompose(const MonodromySystem& sys) {
  const std::size_t d = sys.dim;
  Decomposed out;
  out.linear = Matrix(d);
  out.nonlinear.resize(d);
  for (std::size_t j = 0; j < d; ++j) {
    for (const auto& term : sys.rhs[j]) {
      if (term.jet.constant_term() != cplx{})
        throw DomainError("monodromy system: transverse origin is not fixed");
      for (std::size_t i = 0; i < d; ++i) {
        const cplx c = term.jet.coeff(MultiIndex::unit(d, i));
        if (c == cplx{}) continue;
        if (term.freq != 0)
          throw DomainError("monodromy system: time-dependent linear part is not supported");
        out.linear(j, i) += c;
      }
      Jet nl = term.jet.nonlinear_part();
      if (!nl.is_zero()) out.nonlinear[j].emplace_back(term.freq, std::move(nl));
    }
  }
  if (out.linear.is_lower_triangular()) {
    for (std::size_t j = 0; j < d; ++j) out.order.push_back(j);
  } else if (out.linear.is_upper_triangular()) {
    for (std::size_t j = d; j-- > 0;) out.order.push_back(j);
  } else {
    throw DomainError("monodromy system: linear part must be triangular");
  }
  for (std::size_t j = 0; j < d; ++j) out.alpha.push_back(Frequency::snapped(out.linear(j, j)));
  return out;
}

// sum_m e^{2 pi i m t} N_{j,m}(x) truncated at max_degree
detail::ExpSeries nonlinear_forcing(const Decomposed& dec, std::size_t j,
                                    const std::vector<detail::ExpSeries>& x, int max_degree) {
  detail::ExpSeries acc(x.front().n_vars(), x.front().order());
  for (const auto& [m, jet] : dec.nonlinear[j]) {
    const ExpPoly phase = ExpPoly::monomial(1.0, 0, Frequency::integer(m));
    auto s = detail::substitute(jet, x, max_degree);
    for (const auto& [e, p] : s.coeffs()) acc.add(e, m == 0 ? p : expoly_mul(phase, p));
  }
  return acc;
}

}  // namespace

HolonomySeries holonomy_series(const MonodromySystem& sys, int order) {
  if (order < 1) throw DomainError("holonomy_series: order must be >= 1");
  const std::size_t d = sys.dim;
  const Decomposed dec = decompose(sys);

  std::vector<detail::ExpSeries> x(d, detail::ExpSeries(d, order));
  for (int deg = 1; deg <= order; ++deg) {
    // Degree-deg forcing only involves coefficients of degree < deg.
    std::vector<detail::ExpSeries> forcing;
    forcing.reserve(d);
    for (std::size_t j = 0; j < d; ++j)
      forcing.push_back(deg >= 2 ? nonlinear_forcing(dec, j, x, deg)
                                 : detail::ExpSeries(d, order));
    const auto monos = monomials_of_degree(d, deg);
    for (std::size_t j : dec.order) {
      for (const auto& e : monos) {
        ExpPoly g = forcing[j].at(e);
        for (std::size_t i = 0; i < d; ++i)
          if (i != j && dec.linear(j, i) != cplx{}) g = g + x[i].at(e).scaled(dec.linear(j, i));
        const cplx a0 = (deg == 1 && e[j] == 1) ? 1.0 : 0.0;
        if (g.is_zero() && a0 == cplx{}) continue;
        x[j].set(e, solve_linear_ode(dec.alpha[j], g, a0));
      }
    }
  }

  HolonomySeries out;
  out.table.dim = d;
  out.table.order = order;
  out.table.diagonal = dec.alpha;
  std::vector<Jet> comps;
  for (std::size_t j = 0; j < d; ++j) {
    out.table.entries.emplace_back(x[j].coeffs().begin(), x[j].coeffs().end());
    comps.push_back(x[j].at_time(1.0));
  }
  out.map = JetMap(std::move(comps));
  return out;
}

HolonomySeries holonomy_series(const Foliation& F, int order, cplx z0) {
  return holonomy_series(build_monodromy_system(F, z0), order);
}

double coefficient_table_residual(const MonodromySystem& sys, const CoefficientTable& table) {
  const std::size_t d = sys.dim;
  const Decomposed dec = decompose(sys);
  std::vector<detail::ExpSeries> x(d, detail::ExpSeries(d, table.order));
  for (std::size_t j = 0; j < d; ++j)
    for (const auto& [e, p] : table.entries[j]) x[j].set(e, p);

  double worst = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    auto rhs = nonlinear_forcing(dec, j, x, table.order);
    for (std::size_t i = 0; i < d; ++i)
      if (i != j && dec.linear(j, i) != cplx{})
        for (const auto& [e, p] : x[i].coeffs()) rhs.add(e, p.scaled(dec.linear(j, i)));
    std::set<MultiIndex, GradedLex> keys;
    for (const auto& [e, p] : rhs.coeffs()) keys.insert(e);
    for (const auto& [e, p] : x[j].coeffs()) keys.insert(e);
    for (const auto& e : keys) {
      const ExpPoly& a = x[j].at(e);
      worst = std::max(worst, max_coeff_diff(ode_residual(dec.alpha[j], rhs.at(e), a), ExpPoly{}));
      const cplx a0 = (e.degree() == 1 && e[j] == 1) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(a.eval(0.0) - a0));
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------

NumericHolonomy holonomy_numeric(const MonodromySystem& sys, std::span<const cplx> p,
                                 const IntegratorOptions& opts) {
  if (p.size() != sys.dim) throw DimensionError("holonomy_numeric: point dimension mismatch");
  auto rhs = [&](double t, std::span<const cplx> x, std::span<cplx> dx) {
    const Point v = sys.eval(t, x);
    std::copy(v.begin(), v.end(), dx.begin());
  };
  auto r = integrate_dopri5(rhs, 0.0, 1.0, Point(p.begin(), p.end()), opts);
  NumericHolonomy out;
  out.point = std::move(r.x);
  out.status = r.status;
  out.escaped = !r.ok();
  return out;
}

NumericHolonomy holonomy_numeric(const Foliation& F, std::span<const cplx> p, cplx z0,
                                 const IntegratorOptions& opts) {
  return holonomy_numeric(build_monodromy_system(F, z0), p, opts);
}

double monodromy_integral_drift(const MonodromySystem& sys, const Jet& g, std::span<const cplx> p,
                                double T, const std::optional<ExpPoly>& modulation,
                                const IntegratorOptions& opts) {
  if (g.n_vars() != sys.dim) throw DimensionError("monodromy_integral_drift: g has wrong n_vars");
  const cplx g0 = g.eval(p);
  double drift = 0.0;
  auto rhs = [&](double t, std::span<const cplx> x, std::span<cplx> dx) {
    const Point v = sys.eval(t, x);
    std::copy(v.begin(), v.end(), dx.begin());
  };
  auto r = integrate_dopri5(rhs, 0.0, T, Point(p.begin(), p.end()), opts,
                            [&](double t, std::span<const cplx> x) {
                              const cplx expected = modulation ? g0 * modulation->eval(t) : g0;
                              drift = std::max(drift, std::abs(g.eval(x) - expected));
                            });
  if (!r.ok())
    throw NumericError(std::string("monodromy_integral_drift: integration stopped (") +
                       to_string(r.status) + ")");
  return drift;
}

// ---------------------------------------------------------------------------

std::optional<NormalForm> extract_normal_form(const JetMap& h, double tol) {
  if (h.size() != 2) throw DomainError("extract_normal_form: map must be 2-dimensional");
  const int N = h.order();
  if (h.linear_part().max_abs_diff(Matrix::identity(2)) > tol)
    throw DomainError("extract_normal_form: map is not tangent to the identity");
  const Jet xy = Jet::monomial(2, N, MultiIndex{1, 1});
  if (max_coeff_diff(jet_compose(xy, h), xy) > tol)
    throw DomainError("extract_normal_form: map does not preserve xy");

  // h_1 = x (1 + r), r = sum_k c_k w^k
  std::vector<std::pair<MultiIndex, cplx>> r;
  for (const auto& [e, c] : h[0].terms()) {
    if (e.degree() < 2 || std::abs(c) <= tol) continue;
    if (e[0] < 1) return std::nullopt;
    r.emplace_back(e.lowered(0), c);
  }
  if (r.empty()) return NormalForm{0, 0, Jet(1, std::max(0, N - 2))};

  const MultiIndex w = r.front().first;  // graded-lex smallest
  const int a = w[0], b = w[1];
  const int kmax = (N - 1) / (a + b);
  Jet::Terms fterms;
  for (const auto& [e, c] : r) {
    if (e.degree() % w.degree() != 0) return std::nullopt;
    const int k = e.degree() / w.degree();
    if (e[0] != k * a || e[1] != k * b) return std::nullopt;
    fterms.emplace(MultiIndex{k - 1}, c);
  }
  NormalForm nf{a, b, Jet(1, std::max(0, kmax - 1), std::move(fterms))};

  // second component must be y (1 + w f(w))^{-1}
  Jet::Terms uterms;
  uterms.emplace(MultiIndex{0, 0}, 1.0);
  for (const auto& [e, c] : nf.f.terms()) {
    const int k = e[0] + 1;
    uterms.emplace(MultiIndex{k * a, k * b}, c);
  }
  const Jet u(2, N, std::move(uterms));
  const Jet h2 = jet_mul(Jet::variable(2, N, 1), jet_reciprocal(u));
  if (max_coeff_diff(h2, h[1]) > tol) return std::nullopt;
  return nf;
}

Foliation realize_as_holonomy(const VectorField& Y) {
  if (!Y.vanishes_at_origin()) throw DomainError("realize_as_holonomy: Y must vanish at 0");
  const std::size_t n = Y.n_vars();
  const int order = std::max(Y.order(), 1);
  std::vector<Jet> comps;
  for (std::size_t i = 0; i < n; ++i) {
    Jet::Terms t;
    for (const auto& [e, c] : Y[i].terms()) {
      auto ex = e.exponents();
      ex.push_back(0);
      t.emplace(MultiIndex(std::move(ex)), c);
    }
    comps.emplace_back(n + 1, order, std::move(t));
  }
  comps.push_back(Jet::monomial(n + 1, order, MultiIndex::unit(n + 1, n), kTwoPiI));
  return Foliation(VectorField(std::move(comps)), n);
}

}  // namespace holodyn
