#include "holodyn/acceptance.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <deque>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "holodyn/errors.hpp"
#include "holodyn/flows.hpp"
#include "holodyn/holonomy.hpp"
#include "holodyn/orbit.hpp"
#include "holodyn/presets.hpp"
#include "holodyn/pseudogroup.hpp"

namespace holodyn {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kTwoPiI{0.0, 2.0 * kPi};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

CriterionResult start(int id, std::string title) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  return r;
}

Jet xy_jet(int order) { return Jet::monomial(2, order, MultiIndex{1, 1}); }

// Largest |c| over monomials of total degree in [lo, hi] across all components.
double max_coeff_in_degrees(const JetMap& h, int lo, int hi) {
  double m = 0.0;
  for (const auto& c : h.components())
    for (const auto& [e, v] : c.terms())
      if (e.degree() >= lo && e.degree() <= hi) m = std::max(m, std::abs(v));
  return m;
}

CriterionResult holonomy_exact() {
  CriterionResult r = start(1, "thmB holonomy series: degrees 2-3 vanish, a31(1) = -2 pi i, b22(1) = 2 pi i");
  const auto h = holonomy_series(presets::foliation("thmB"), 4).map;
  const double low = max_coeff_in_degrees(h, 2, 3);
  const cplx a31 = h[0].coeff(MultiIndex{3, 1});
  const cplx b22 = h[1].coeff(MultiIndex{2, 2});
  const double ea = std::abs(a31 + kTwoPiI);
  const double eb = std::abs(b22 - kTwoPiI);
  r.passed = low < 1e-12 && ea < 1e-10 && eb < 1e-10;
  r.detail = fmt("max|deg 2-3| = %.3g, a31 = %.12g%+.12gi, b22 = %.12g%+.12gi", low, a31.real(),
                 a31.imag(), b22.real(), b22.imag());
  return r;
}

std::vector<Point> small_grid(double radius) {
  std::vector<Point> pts;
  const cplx rx = std::polar(1.0, 0.3), ry = std::polar(1.0, -0.7);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      pts.push_back({radius * 0.5 * (i - 2) * rx, radius * 0.5 * (j - 2) * ry});
  return pts;
}

CriterionResult holonomy_oracle() {
  CriterionResult r = start(2, "thmB holonomy: numeric monodromy agrees with the series on a 5x5 grid");
  const Foliation F = presets::foliation("thmB");
  const auto sys = build_monodromy_system(F);
  const auto h = holonomy_series(sys, 8).map;
  double err = 0.0;
  for (const auto& p : small_grid(0.05)) {
    const auto num = holonomy_numeric(sys, p);
    if (num.escaped) throw NumericError("monodromy integration failed");
    err = std::max(err, max_dist(num.point, h.eval(p)));
  }
  r.passed = err < 1e-6;
  r.detail = fmt("max abs error = %.3g over 25 points, |p| <= 0.05, N = 8", err);
  return r;
}

CriterionResult example3_normal_form() {
  CriterionResult r = start(3, "example3: normal form (1,1), |f(0)| = 2 pi, series and numeric signs agree");
  const Foliation F = presets::foliation("example3");
  const auto sys = build_monodromy_system(F);
  const auto h = holonomy_series(sys, 8).map;
  const auto nf = extract_normal_form(h);
  if (!nf) {
    r.detail = "no normal form found";
    return r;
  }
  const cplx f0 = nf->f0();
  // f(0) from one numeric return: x1 / x0 - 1 = w f(w) + O(w^2), w = x0 y0
  const Point p{1e-3, 1e-3};
  IntegratorOptions tight;
  tight.abs_tol = 1e-18;
  tight.rel_tol = 1e-13;
  const auto num = holonomy_numeric(sys, p, tight);
  const cplx w = p[0] * p[1];
  const cplx f0_num = (num.point[0] / p[0] - 1.0) / w;
  const bool same_sign = std::signbit(f0.imag()) == std::signbit(f0_num.imag()) &&
                         std::abs(f0 - f0_num) < 1e-3;
  r.passed = nf->a == 1 && nf->b == 1 && std::abs(std::abs(f0) - 2 * kPi) < 1e-9 && same_sign;
  r.detail = fmt("(a,b) = (%d,%d), f(0) series = %.12g%+.12gi, numeric = %.6g%+.6gi", nf->a, nf->b,
                 f0.real(), f0.imag(), f0_num.real(), f0_num.imag());
  return r;
}

CriterionResult xy_preservation() {
  CriterionResult r = start(4, "holonomy preserves xy (series, N=8) and (xy)(t) = x0 y0 e^{-4 pi i t}");
  double series_err = 0.0;
  for (const char* name : {"example3", "thmB"}) {
    const auto h = holonomy_series(presets::foliation(name), 8).map;
    const Jet xy = xy_jet(8);
    series_err = std::max(series_err, max_coeff_diff(jet_compose(xy, h), xy));
  }
  const auto sys = build_monodromy_system(presets::foliation("example3"));
  const auto mod = ExpPoly::monomial(1.0, 0, Frequency::integer(-2));
  double drift = 0.0;
  for (const auto& p : small_grid(0.05))
    drift = std::max(drift, monodromy_integral_drift(sys, xy_jet(2), p, 1.0, mod));
  r.passed = series_err <= 1e-12 && drift < 1e-8;
  r.detail = fmt("max|xy o h - xy| = %.3g, covariant drift = %.3g", series_err, drift);
  return r;
}

CriterionResult realization() {
  CriterionResult r = start(5, "holonomy of Y + 2 pi i z d/dz equals the time-one flow of Y (N=6)");
  double err = 0.0;
  std::string names;
  for (const char* name : {"genF", "genH", "gen(1,2)", "gen(3,1)"}) {
    const VectorField Y = presets::field(name);
    const auto h = holonomy_series(realize_as_holonomy(Y), 6).map;
    err = std::max(err, max_coeff_diff(h, formal_flow(Y, 1.0, 6)));
    names += names.empty() ? name : std::string(", ") + name;
  }
  r.passed = err < 1e-10;
  r.detail = fmt("max coefficient difference = %.3g over %s", err, names.c_str());
  return r;
}

CriterionResult linear_model() {
  CriterionResult r = start(6, "linear field: holonomy = diag(e^{2 pi i lambda_j / lambda_1})");
  double err = 0.0;
  for (const auto& lam : {std::array<cplx, 3>{1.0, -1.0, -2.0}, std::array<cplx, 3>{2.0, -1.0, -3.0}}) {
    const Foliation F(fields::linear(lam), 0);
    const auto h = holonomy_series(F, 4).map;
    std::vector<cplx> d;
    for (std::size_t j = 1; j < 3; ++j) d.push_back(std::exp(kTwoPiI * lam[j] / lam[0]));
    err = std::max(err, max_coeff_diff(h, JetMap::linear(Matrix::diagonal(d), 4)));
  }
  r.passed = err < 1e-12;
  r.detail = fmt("max coefficient error = %.3g", err);
  return r;
}

CriterionResult h_finite_orbits(unsigned threads) {
  CriterionResult r = start(7, "H map: 400 lattice seeds in rho = 0.3 all escape or are periodic");
  const DomainBall V(0.3);
  OrbitOptions o;
  o.budget = 100'000;
  const auto g = classify_seed_grid(presets::map("H"), V, lattice_seeds({20, 20}, V.radius), o, threads);
  r.passed = g.budget_exhausted == 0 && g.escaped + g.periodic == 400;
  r.detail = fmt("escaped %zu, periodic %zu, infinite-suspected %zu", g.escaped, g.periodic,
                 g.budget_exhausted);
  return r;
}

CriterionResult f_contrast(unsigned threads) {
  CriterionResult r = start(8, "F map on |1 + C f(C)| = 1, irrational rotation: bounded infinite-suspected orbit");
  const DomainBall V(0.3);
  const cplx C = presets::f_level_constant();
  const auto F = presets::map("F");
  const auto seeds = level_circle_seeds(C, 8);
  const auto g = classify_seed_grid(F, V, seeds, {}, threads);
  // bounded: re-run the first infinite-suspected seed and measure the orbit
  double max_norm = 0.0, product_drift = 0.0;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (g.records[i].status != OrbitStatus::BudgetExhausted) continue;
    Point x = seeds[i];
    for (int k = 0; k < 100'000; ++k) {
      x = *F.apply(x);
      max_norm = std::max(max_norm, holodyn::max_norm(x));
      product_drift = std::max(product_drift, std::abs(x[0] * x[1] - C));
    }
    break;
  }
  r.passed = g.budget_exhausted >= 1 && max_norm <= V.radius && product_drift < 1e-10;
  r.detail = fmt("theta = %.15g, |C| = %.6g, infinite-suspected %zu/%zu, max |x| = %.6g, |xy - C| <= %.3g",
                 presets::f_rotation_number(), std::abs(C), g.budget_exhausted, seeds.size(),
                 max_norm, product_drift);
  return r;
}

CriterionResult pseudogroup_check() {
  CriterionResult r = start(9, "h1h2: closure order 24, orbit sizes divide 24, non-abelian; H not periodic");
  const auto gens = presets::generators("h1h2");
  const auto cl = group_closure(gens);
  const std::size_t oracle = schur24_order_exact();
  const DomainBall V(0.3);
  std::size_t bad = 0, largest = 0;
  for (const auto& p : lattice_seeds({10, 10}, V.radius)) {
    const auto orb = pseudogroup_orbit(gens, p, V);
    const std::size_t k = orb.points.size();
    largest = std::max(largest, k);
    if (orb.truncated || k > 24 || 24 % k != 0) ++bad;
  }
  bool noncommuting = false;
  if (cl.noncommuting) {
    const auto& a = cl.elements[cl.noncommuting->first];
    const auto& b = cl.elements[cl.noncommuting->second];
    noncommuting = (a * b).max_abs_diff(b * a) > 1e-6;
  }
  const auto period = periodicity_test(presets::map("H"), 200);
  r.passed = cl.order && *cl.order == 24 && oracle == 24 && bad == 0 && noncommuting && !period;
  r.detail = fmt("closure %zu, oracle %zu, largest orbit %zu, bad seeds %zu, non-commuting pair %s, "
                 "H period %s",
                 cl.order.value_or(0), oracle, largest, bad, noncommuting ? "found" : "missing",
                 period ? std::to_string(*period).c_str() : "none up to 200");
  return r;
}

CriterionResult conservation() {
  CriterionResult r = start(10, "x^n y^m conserved along x^a y^b (x d/dx - (n/m) y d/dy); L_X(xyz^2) = 0");
  double drift = 0.0;
  const std::array<std::array<int, 4>, 2> cases{{{1, 1, 1, 1}, {2, 3, 1, 2}}};
  const std::vector<Point> pts{{cplx{0.3, 0.1}, cplx{0.2, -0.2}},
                               {cplx{-0.25, 0.15}, cplx{0.1, 0.3}},
                               {cplx{0.05, -0.4}, cplx{-0.3, -0.05}}};
  for (const auto& [n, m, a, b] : cases) {
    const Jet g = Jet::monomial(2, n + m, MultiIndex{n, m});
    for (const auto& p : pts)
      drift = std::max(drift, first_integral_drift(fields::example1(n, m, a, b), g, p,
                                                   TimePath::segment(1.0)));
  }
  const Jet lie = lie_derivative(presets::field("thmB"), Jet::monomial(3, 8, MultiIndex{1, 1, 2}));
  r.passed = drift < 1e-8 && lie.is_zero();
  r.detail = fmt("max drift = %.3g, Lie derivative %s", drift, lie.is_zero() ? "0" : "nonzero");
  return r;
}

// ---- property suites ----

Jet random_jet(std::mt19937_64& rng, std::size_t n, int order, int min_deg) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::bernoulli_distribution keep(0.6);
  Jet::Terms t;
  for (int d = min_deg; d <= order; ++d)
    for (const auto& e : monomials_of_degree(n, d))
      if (keep(rng)) t.emplace(e, cplx{u(rng), u(rng)});
  return Jet(n, order, std::move(t));
}

JetMap random_germ(std::mt19937_64& rng, std::size_t n, int order) {
  std::vector<Jet> c;
  for (std::size_t i = 0; i < n; ++i)
    c.push_back(Jet::variable(n, order, i) + random_jet(rng, n, order, 2).scaled(0.5));
  return JetMap(std::move(c));
}

ExpPoly random_expoly(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> freq(-3, 3), k(0, 3);
  std::vector<ExpPoly::Term> t;
  for (int i = 0; i < 5; ++i) t.push_back({k(rng), Frequency::integer(freq(rng)), cplx{u(rng), u(rng)}});
  return ExpPoly(std::move(t));
}

CriterionResult properties() {
  CriterionResult r = start(11, "property suites: ring laws, flow group law, ODE residual, cross-checks");
  std::mt19937_64 rng(20240611);
  int checks = 0, failed = 0;
  std::set<std::string> failing;
  auto check = [&](bool ok, const char* what) {
    ++checks;
    if (!ok) {
      ++failed;
      failing.insert(what);
    }
  };

  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const Jet a = random_jet(rng, n, 6, 0), b = random_jet(rng, n, 6, 0), c = random_jet(rng, n, 6, 0);
    check(max_coeff_diff(a * b, b * a) < 1e-12, "jet product commutes");
    check(max_coeff_diff((a * b) * c, a * (b * c)) < 1e-12, "jet product associates");
    check(max_coeff_diff(a * (b + c), a * b + a * c) < 1e-12, "jet product distributes");
    const Jet unit = jet_add(Jet::constant(n, 6, 1.0), random_jet(rng, n, 6, 1).scaled(0.3));
    check(max_coeff_diff(unit * jet_reciprocal(unit), Jet::constant(n, 6, 1.0)) < 1e-12, "jet reciprocal");

    const JetMap f = random_germ(rng, n, 5), g = random_germ(rng, n, 5), h = random_germ(rng, n, 5);
    check(max_coeff_diff(jetmap_compose(f, jetmap_compose(g, h)), jetmap_compose(jetmap_compose(f, g), h)) <
          1e-10, "composition associates");
    check(max_coeff_diff(jetmap_compose(f, jetmap_inverse(f)), JetMap::identity(n, 5)) < 1e-10, "compositional inverse");
  }

  for (const char* name : {"example3", "genH", "example1(2,3,1,2)"}) {
    const VectorField X = presets::field(name);
    const cplx s{0.3, 0.1}, t{-0.45, 0.2};
    const auto lhs = jetmap_compose(formal_flow(X, s, 5), formal_flow(X, t, 5));
    check(max_coeff_diff(lhs, formal_flow(X, s + t, 5)) < 1e-10, "formal flow group law");
    // numeric group law at a point
    const Point p{0.1, cplx{0.05, 0.05}};
    Point q(X.n_vars() == 3 ? Point{0.1, cplx{0.05, 0.05}, 0.08} : p);
    const Point a1 = numeric_flow(X, numeric_flow(X, q, TimePath::segment(s)), TimePath::segment(t));
    check(max_dist(a1, numeric_flow(X, q, TimePath::segment(s + t))) < 1e-8, "numeric flow group law");
  }

  for (int trial = 0; trial < 30; ++trial) {
    const ExpPoly g = random_expoly(rng);
    std::uniform_int_distribution<int> fa(-3, 3);
    const Frequency alpha = trial % 3 == 0 ? Frequency(cplx{0.3, 1.7}) : Frequency::integer(fa(rng));
    const ExpPoly a = solve_linear_ode(alpha, g, cplx{0.5, -0.25});
    check(max_coeff_diff(ode_residual(alpha, g, a), ExpPoly{}) < 1e-12, "ODE residual");
    check(std::abs(a.eval(0.0) - cplx{0.5, -0.25}) < 1e-12, "ODE initial value");
  }

  for (const char* name : {"thmB", "example3"}) {
    const auto sys = build_monodromy_system(presets::foliation(name));
    const auto hs = holonomy_series(sys, 6);
    check(coefficient_table_residual(sys, hs.table) < 1e-12, "coefficient table residual");
    std::uniform_real_distribution<double> u(-0.02, 0.02);
    for (int k = 0; k < 3; ++k) {
      const Point p{cplx{u(rng), u(rng)}, cplx{u(rng), u(rng)}};
      check(max_dist(holonomy_numeric(sys, p).point, hs.map.eval(p)) < 1e-6, "series vs numeric holonomy");
    }
  }

  r.passed = failed == 0;
  r.detail = fmt("%d checks, %d failed (seed 20240611)", checks, failed);
  for (const auto& f : failing) r.detail += "; failing: " + f;
  return r;
}

}  // namespace

std::size_t schur24_order_exact() {
  // element: x -> diag(z^e0, z^e1) P^s x, z = e^{pi i / 3}
  using E = std::array<int, 3>;
  auto mul = [](const E& a, const E& b) {
    // P diag(u, v) = diag(v, u) P
    const int b0 = a[2] ? b[1] : b[0];
    const int b1 = a[2] ? b[0] : b[1];
    return E{(a[0] + b0) % 6, (a[1] + b1) % 6, a[2] ^ b[2]};
  };
  const std::array<E, 2> gens{E{1, 2, 0}, E{0, 0, 1}};
  std::set<E> seen{E{0, 0, 0}};
  std::deque<E> q{E{0, 0, 0}};
  while (!q.empty()) {
    const E cur = q.front();
    q.pop_front();
    for (const auto& g : gens) {
      const E nx = mul(cur, g);
      if (seen.insert(nx).second) q.push_back(nx);
    }
  }
  return seen.size();
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const std::function<void(const CriterionResult&)>& on_result) {
  const unsigned th = std::max(1u, opts.threads);
  const std::vector<std::pair<int, std::function<CriterionResult()>>> all{
      {1, holonomy_exact},
      {2, holonomy_oracle},
      {3, example3_normal_form},
      {4, xy_preservation},
      {5, realization},
      {6, linear_model},
      {7, [th] { return h_finite_orbits(th); }},
      {8, [th] { return f_contrast(th); }},
      {9, pseudogroup_check},
      {10, conservation},
      {11, properties},
  };
  std::vector<CriterionResult> out;
  for (const auto& [id, fn] : all) {
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), id) == opts.only.end())
      continue;
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult res;
    try {
      res = fn();
    } catch (const std::exception& e) {
      res.id = id;
      res.passed = false;
      res.detail = std::string("exception: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (on_result) on_result(res);
    out.push_back(std::move(res));
  }
  return out;
}

std::string acceptance_markdown(const std::vector<CriterionResult>& results) {
  std::ostringstream os;
  std::size_t passed = 0;
  for (const auto& r : results) passed += r.passed;
  os << "# holodyn reproduction report\n\n"
     << passed << " of " << results.size() << " checks passed.\n\n"
     << "| # | check | result | time (s) | details |\n"
     << "|---|---|---|---|---|\n";
  for (const auto& r : results) {
    std::string detail = r.detail;
    std::replace(detail.begin(), detail.end(), '|', '/');
    os << "| " << r.id << " | " << r.title << " | " << (r.passed ? "PASS" : "FAIL") << " | "
       << fmt("%.2f", r.seconds) << " | " << detail << " |\n";
  }
  return os.str();
}

}  // namespace holodyn
