#include <doctest.h>

#include <numbers>

#include "holodyn/errors.hpp"
#include "holodyn/flows.hpp"
#include "holodyn/holonomy.hpp"
#include "holodyn/presets.hpp"
#include "support.hpp"

using namespace holodyn;
using namespace testing;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kTwoPiI{0.0, 2.0 * kPi};

// (x, y) -> (x u, y / u), u = 1 + w f(w), w = x^a y^b, as a jet map.
JetMap product_preserving_jet(int a, int b, const std::vector<cplx>& f, int N) {
  const Jet x = Jet::variable(2, N, 0), y = Jet::variable(2, N, 1);
  const Jet w = Jet::monomial(2, N, MultiIndex{a, b});
  Jet fw(2, N), wk = Jet::constant(2, N, 1.0);
  for (cplx c : f) {
    fw = fw + wk.scaled(c);
    wk = wk * w;
  }
  const Jet u = Jet::constant(2, N, 1.0) + w * fw;
  return JetMap({x * u, y * jet_reciprocal(u)});
}

}  // namespace

TEST_CASE("thmB holonomy at order 4") {
  const auto h = holonomy_series(presets::foliation("thmB"), 4).map;
  CHECK(dist(h[0].coeff(MultiIndex{3, 1}), -kTwoPiI) < 1e-12);
  CHECK(dist(h[1].coeff(MultiIndex{2, 2}), kTwoPiI) < 1e-12);
  for (int d = 2; d <= 3; ++d)
    for (const auto& c : h.components()) CHECK(c.homogeneous_part(d).is_zero());
}

TEST_CASE("coefficient functions of thmB are t-linear times a phase") {
  const auto hs = holonomy_series(presets::foliation("thmB"), 4);
  const ExpPoly& a31 = hs.table.at(0, MultiIndex{3, 1});
  // a31(t) = -2 pi i t e^{-2 pi i t}
  for (double t : {0.0, 0.25, 0.5, 0.9}) CHECK(dist(a31.eval(t), -kTwoPiI * t * std::exp(-kTwoPiI * t)) < 1e-12);
}

TEST_CASE("example3: a21(1) = -2 pi i and the normal form has f(0) = -2 pi i") {
  const auto h = holonomy_series(presets::foliation("example3"), 6).map;
  CHECK(dist(h[0].coeff(MultiIndex{2, 1}), -kTwoPiI) < 1e-12);
  const auto nf = extract_normal_form(h);
  REQUIRE(nf.has_value());
  CHECK(nf->a == 1);
  CHECK(nf->b == 1);
  CHECK(dist(nf->f0(), -kTwoPiI) < 1e-12);
}

TEST_CASE("series and numeric monodromy agree; table residual vanishes") {
  for (const char* name : {"thmB", "example3"}) {
    const auto sys = build_monodromy_system(presets::foliation(name));
    const auto hs = holonomy_series(sys, 8);
    CHECK(coefficient_table_residual(sys, hs.table) < 1e-12);
    std::mt19937_64 rng(31);
    for (int k = 0; k < 5; ++k) {
      const Point p{random_cplx(rng, 0.03), random_cplx(rng, 0.03)};
      const auto num = holonomy_numeric(sys, p);
      REQUIRE_FALSE(num.escaped);
      CHECK(max_dist(num.point, hs.map.eval(p)) < 1e-8);
    }
  }
}

TEST_CASE("moving the base point rescales f(0) by z0^2") {
  // the nonlinearity enters through w = xy z^2
  const cplx z0{0.5, 0.5};
  const auto h = holonomy_series(presets::foliation("example3"), 6, z0).map;
  const auto nf = extract_normal_form(h);
  REQUIRE(nf.has_value());
  CHECK(dist(nf->f0(), -kTwoPiI * z0 * z0) < 1e-12);
}

TEST_CASE("linear model holonomy") {
  const std::vector<cplx> lam{2.0, -1.0, -3.0};
  const auto h = holonomy_series(Foliation(fields::linear(lam), 0), 3).map;
  CHECK(dist(h[0].coeff(MultiIndex{1, 0}), -1.0) < 1e-14);
  CHECK(dist(h[1].coeff(MultiIndex{0, 1}), -1.0) < 1e-14);
  const std::vector<cplx> irr{1.0, cplx{std::sqrt(2.0), 0.0}};
  const auto g = holonomy_series(Foliation(fields::linear(irr), 0), 3).map;
  CHECK(dist(g[0].coeff(MultiIndex{1}), std::exp(kTwoPiI * std::sqrt(2.0))) < 1e-13);
}

TEST_CASE("realized generators: holonomy equals the time-one flow") {
  for (const char* name : {"genF", "genH", "gen(2,3)"}) {
    const VectorField Y = presets::field(name);
    const auto h = holonomy_series(realize_as_holonomy(Y), 7).map;
    CHECK(max_coeff_diff(h, formal_flow(Y, 1.0, 7)) < 1e-10);
  }
}

TEST_CASE("xy is preserved and follows the covariant law") {
  for (const char* name : {"thmB", "example3"}) {
    const auto h = holonomy_series(presets::foliation(name), 8).map;
    const Jet xy = Jet::monomial(2, 8, MultiIndex{1, 1});
    CHECK(max_coeff_diff(jet_compose(xy, h), xy) < 1e-12);
  }
  const auto sys = build_monodromy_system(presets::foliation("example3"));
  const Point p{cplx{0.03, 0.01}, cplx{-0.02, 0.04}};
  const auto mod = ExpPoly::monomial(1.0, 0, Frequency::integer(-2));
  CHECK(monodromy_integral_drift(sys, Jet::monomial(2, 2, MultiIndex{1, 1}), p, 1.0, mod) < 1e-10);
}

TEST_CASE("normal form extraction recovers a synthetic map") {
  const std::vector<cplx> f{cplx{0, 3}, cplx{1, -1}, 0.5};
  const auto nf = extract_normal_form(product_preserving_jet(2, 1, f, 10));
  REQUIRE(nf.has_value());
  CHECK(nf->a == 2);
  CHECK(nf->b == 1);
  // f has order floor(9/3) - 1 = 2
  for (int k = 0; k < 3; ++k) CHECK(dist(nf->f.coeff(MultiIndex{k}), f[k]) < 1e-12);

  const auto id = extract_normal_form(JetMap::identity(2, 5));
  REQUIRE(id.has_value());
  CHECK(id->f.is_zero());
}

TEST_CASE("normal form preconditions") {
  const Jet x = Jet::variable(2, 4, 0), y = Jet::variable(2, 4, 1);
  CHECK_THROWS_AS(extract_normal_form(JetMap({x.scaled(2.0), y})), DomainError);
  CHECK_THROWS_AS(extract_normal_form(JetMap({x + y * y, y})), DomainError);
  CHECK_THROWS_AS(extract_normal_form(JetMap::identity(3, 4)), DomainError);
}

TEST_CASE("foliation validation") {
  // z-axis not invariant: dx/dt has a pure z term
  const Jet x = Jet::variable(2, 2, 0), z = Jet::variable(2, 2, 1);
  CHECK_THROWS_AS(Foliation(VectorField({x + z * z, z.scaled(-1.0)}), 1), DomainError);
  CHECK_THROWS_AS(Foliation(VectorField({x, Jet(2, 2)}), 1), DomainError);
  CHECK_THROWS_AS(Foliation(fields::thm_b(), 5), DomainError);
  // the axis component must be lambda z exactly
  const Foliation F(VectorField({x, z.scaled(-1.0) + (z * z)}), 1);
  CHECK_THROWS_AS(build_monodromy_system(F), DomainError);
}
