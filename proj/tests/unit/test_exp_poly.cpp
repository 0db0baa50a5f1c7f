#include <doctest.h>

#include <numbers>

#include "holodyn/errors.hpp"
#include "holodyn/exp_poly.hpp"
#include "support.hpp"

using namespace holodyn;
using namespace testing;

namespace {

constexpr double kPi = std::numbers::pi;

// Classic RK4 on a' = alpha a + g(t) over [0, 1]: an independent quadrature
// of the same initial value problem.
cplx rk4_solution(cplx alpha, const ExpPoly& g, cplx a0, int steps = 4000) {
  const double h = 1.0 / steps;
  cplx a = a0;
  auto f = [&](double t, cplx y) { return alpha * y + g.eval(t); };
  for (int i = 0; i < steps; ++i) {
    const double t = i * h;
    const cplx k1 = f(t, a), k2 = f(t + h / 2, a + h / 2 * k1), k3 = f(t + h / 2, a + h / 2 * k2),
               k4 = f(t + h, a + h * k3);
    a += h / 6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return a;
}

ExpPoly random_expoly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> k(0, 3), m(-2, 2);
  std::vector<ExpPoly::Term> t;
  for (int i = 0; i < 4; ++i) t.push_back({k(rng), Frequency::integer(m(rng)), random_cplx(rng)});
  return ExpPoly(std::move(t));
}

}  // namespace

TEST_CASE("rationals reduce and parse") {
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational::parse("3/9") == Rational(1, 3));
  CHECK(Rational::parse("-2") == Rational(-2));
  CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
  CHECK(Rational::snap(0.2).value() == Rational(1, 5));
  CHECK_FALSE(Rational::snap(0.6180339887498949).has_value());
  CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
  CHECK_THROWS_AS(Rational::parse("abc"), ParseError);
}

TEST_CASE("exact frequencies make integer turns exact") {
  const Frequency f = Frequency::integer(3);
  CHECK(f.exp_at(1.0) == cplx{1.0, 0.0});
  CHECK(Frequency::exact(Rational(1, 4)).exp_at(1.0) == cplx{0.0, 1.0});
  CHECK(dist(Frequency::exact(Rational(1, 3)).exp_at(0.5), std::polar(1.0, kPi / 3)) < 1e-15);
}

TEST_CASE("snapping recognises rational multiples of 2 pi i") {
  const auto f = Frequency::snapped(cplx{0.0, 2.0 * kPi * 0.75});
  CHECK(f.is_exact());
  CHECK(f.same_as(Frequency::exact(Rational(3, 4))));
  CHECK_FALSE(Frequency::snapped(cplx{0.3, 1.7}).is_exact());
  CHECK_FALSE(Frequency(cplx{0.3, 1.7}).same_as(Frequency{}));
}

TEST_CASE("terms with the same key merge") {
  const ExpPoly a({{1, Frequency::integer(1), 2.0}, {1, Frequency::integer(1), -2.0}, {0, Frequency{}, 1.0}});
  CHECK(a.terms().size() == 1);
  CHECK(a.eval(0.7) == cplx{1.0});
}

TEST_CASE("product and derivative agree with pointwise values") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const ExpPoly a = random_expoly(rng), b = random_expoly(rng);
    const double t = 0.37;
    CHECK(dist((a * b).eval(t), a.eval(t) * b.eval(t)) < 1e-12);
    const double h = 1e-5;
    const cplx fd = (a.eval(t + h) - a.eval(t - h)) / (2 * h);
    CHECK(dist(a.derivative().eval(t), fd) < 1e-6 * (1 + std::abs(fd)));
  }
}

TEST_CASE("variation of parameters matches an RK4 quadrature") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 12; ++trial) {
    const ExpPoly g = random_expoly(rng);
    const Frequency alpha = trial % 2 ? Frequency::integer(trial % 3 - 1) : Frequency(cplx{-0.4, 1.1});
    const cplx a0 = random_cplx(rng);
    const ExpPoly a = solve_linear_ode(alpha, g, a0);
    CHECK(max_coeff_diff(ode_residual(alpha, g, a), ExpPoly{}) < 1e-12);
    CHECK(dist(a.eval(0.0), a0) < 1e-13);
    const cplx ref = rk4_solution(alpha.mu(), g, a0);
    CHECK(dist(a.eval(1.0), ref) < 1e-9 * (1 + std::abs(ref)));
  }
}

TEST_CASE("resonant forcing gains a power of t") {
  // a' = 2 pi i a + e^{2 pi i t}, a(0) = 0  =>  a = t e^{2 pi i t}
  const Frequency w = Frequency::integer(1);
  const ExpPoly a = solve_linear_ode(w, ExpPoly::monomial(1.0, 0, w), 0.0);
  REQUIRE(a.terms().size() == 1);
  CHECK(a.terms()[0].k == 1);
  CHECK(a.terms()[0].freq.same_as(w));
  CHECK(dist(a.terms()[0].c, 1.0) < 1e-15);
  // a' = t^2 => a = t^3 / 3
  const ExpPoly b = solve_linear_ode(Frequency{}, ExpPoly::monomial(1.0, 2, Frequency{}), 0.0);
  CHECK(dist(b.eval(3.0), 9.0) < 1e-12);
}

TEST_CASE("exp poly json round trip keeps exactness") {
  const ExpPoly a({{2, Frequency::exact(Rational(1, 3)), cplx{1, -2}}, {0, Frequency(cplx{0.1, 0.2}), 3.0}});
  const ExpPoly b = expoly_from_json(expoly_to_json(a));
  CHECK(max_coeff_diff(a, b) == 0.0);
  bool saw_exact = false;
  for (const auto& t : b.terms()) saw_exact = saw_exact || t.freq.is_exact();
  CHECK(saw_exact);
  CHECK_THROWS_AS(expoly_from_json("[1,2"), ParseError);
}
