#include <doctest.h>

#include <numbers>

#include "holodyn/errors.hpp"
#include "holodyn/flows.hpp"
#include "holodyn/integrator.hpp"
#include "holodyn/presets.hpp"
#include "support.hpp"

using namespace holodyn;
using namespace testing;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kTwoPiI{0.0, 2.0 * kPi};

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

TEST_CASE("dopri5 integrates x' = i x around the circle") {
  const OdeRhs f = [](double, std::span<const cplx> x, std::span<cplx> dx) { dx[0] = cplx{0, 1} * x[0]; };
  const auto r = integrate_dopri5(f, 0.0, 2 * kPi, {1.0});
  REQUIRE(r.ok());
  CHECK(dist(r.x[0], 1.0) < 1e-8);
}

TEST_CASE("dopri5 reports escape for a blow-up") {
  // x' = x^2 from x(0) = 1 blows up at s = 1
  const OdeRhs f = [](double, std::span<const cplx> x, std::span<cplx> dx) { dx[0] = x[0] * x[0]; };
  const auto r = integrate_dopri5(f, 0.0, 2.0, {1.0});
  CHECK(r.status == IntegrationResult::Status::Escaped);
  CHECK(r.s_end < 1.0);
}

TEST_CASE("lie derivative of a first integral vanishes") {
  CHECK(lie_derivative(fields::thm_b(), Jet::monomial(3, 8, MultiIndex{1, 1, 2})).is_zero());
  CHECK(lie_derivative(fields::example3(), Jet::monomial(3, 6, MultiIndex{1, 1, 2})).is_zero());
  CHECK(lie_derivative(fields::example1(2, 3, 1, 2), Jet::monomial(2, 8, MultiIndex{2, 3})).is_zero());
  CHECK_FALSE(lie_derivative(fields::thm_b(), Jet::monomial(3, 8, MultiIndex{1, 0, 0})).is_zero());
}

TEST_CASE("formal flow of a linear field is the matrix exponential") {
  const std::vector<cplx> lam{1.0, cplx{0, 2}, -0.5};
  const cplx t{0.3, -0.2};
  const JetMap phi = formal_flow(fields::linear(lam), t, 4);
  std::vector<cplx> d;
  for (auto l : lam) d.push_back(std::exp(l * t));
  CHECK(max_coeff_diff(phi, JetMap::linear(Matrix::diagonal(d), 4)) < 1e-14);
}

TEST_CASE("formal flow of 2 pi i xy(x d/dx - y d/dy) matches x exp(2 pi i t xy)") {
  // xy is conserved, so the flow is x e^{2 pi i t xy}, y e^{-2 pi i t xy}
  const cplx t{0.7, 0.1};
  const int N = 9;
  const JetMap phi = formal_flow(fields::generator(1, 1), t, N);
  for (int k = 0; 2 * k + 1 <= N; ++k) {
    const cplx c = std::pow(kTwoPiI * t, k) / factorial(k);
    CHECK(dist(phi[0].coeff(MultiIndex{k + 1, k}), c) < 1e-12 * (1 + std::abs(c)));
    CHECK(dist(phi[1].coeff(MultiIndex{k, k + 1}), std::pow(-kTwoPiI * t, k) / factorial(k)) <
          1e-12 * (1 + std::abs(c)));
  }
}

TEST_CASE("formal flow group law") {
  for (const char* name : {"example3", "thmB", "genH"}) {
    const VectorField X = presets::field(name);
    const cplx s{0.2, 0.1}, t{0.35, -0.3};
    CHECK(max_coeff_diff(jetmap_compose(formal_flow(X, s, 6), formal_flow(X, t, 6)), formal_flow(X, s + t, 6)) <
          1e-10);
  }
}

TEST_CASE("formal flow rejects non-triangular linear parts") {
  const Jet x = Jet::variable(2, 2, 0), y = Jet::variable(2, 2, 1);
  CHECK_THROWS_AS(formal_flow(VectorField({y, x}), 1.0, 3), DomainError);
  CHECK_THROWS_AS(formal_flow(VectorField({Jet::constant(2, 2, 1.0), y}), 1.0, 3), DomainError);
}

TEST_CASE("numeric flow: central difference in t reproduces the field") {
  const VectorField X = fields::example3();
  const Point p{cplx{0.1, 0.05}, cplx{-0.08, 0.02}, 0.12};
  const double t = 0.4, h = 1e-4;
  const Point a = numeric_flow(X, p, TimePath::segment(t + h));
  const Point b = numeric_flow(X, p, TimePath::segment(t - h));
  const Point x = numeric_flow(X, p, TimePath::segment(t));
  const Point v = X.eval(x);
  for (std::size_t i = 0; i < 3; ++i) CHECK(dist((a[i] - b[i]) / (2 * h), v[i]) < 1e-6);
}

TEST_CASE("numeric flow agrees with the formal flow near 0") {
  for (const char* name : {"example3", "genF", "example1(2,3,1,2)"}) {
    const VectorField X = presets::field(name);
    const std::size_t n = X.n_vars();
    Point p(n, cplx{0.01, 0.005});
    const cplx t{0.5, 0.25};
    const Point num = numeric_flow(X, p, TimePath::segment(t));
    CHECK(max_dist(num, formal_flow(X, t, 8).eval(p)) < 1e-9);
  }
}

TEST_CASE("numeric flow around a closed loop in complex time returns to the start") {
  // an autonomous flow is single valued in t, so a loop brings p back
  const VectorField X = fields::example3();
  const Point p{0.05, cplx{0.02, 0.01}, 0.04};
  const auto path = TimePath::circle(0.0, 0.5);
  CHECK(path.vertices.size() >= 65);
  CHECK(path.end() == path.vertices.front());
  CHECK(max_dist(numeric_flow(X, p, path), p) < 1e-9);
}

TEST_CASE("numeric flow throws on escape") {
  const Jet x = Jet::variable(1, 2, 0);
  const VectorField X({x * x});
  CHECK_THROWS_AS(numeric_flow(X, Point{1.0}, TimePath::segment(2.0)), NumericError);
  CHECK_THROWS_AS(numeric_flow(X, Point{1.0, 2.0}, TimePath::segment(0.1)), DimensionError);
}

TEST_CASE("first integral drift stays at rounding level") {
  const Point p{cplx{0.3, 0.1}, cplx{0.2, -0.2}};
  CHECK(first_integral_drift(fields::example1(1, 1, 1, 1), Jet::monomial(2, 2, MultiIndex{1, 1}), p,
                             TimePath::segment(1.0)) < 1e-10);
  // x alone is not conserved
  CHECK(first_integral_drift(fields::example1(1, 1, 1, 1), Jet::variable(2, 2, 0), p, TimePath::segment(1.0)) >
        1e-3);
}

TEST_CASE("field json round trip") {
  const VectorField X = fields::thm_b();
  const VectorField Y = field_from_json(field_to_json(X));
  for (std::size_t i = 0; i < 3; ++i) CHECK(max_coeff_diff(X[i], Y[i]) == 0.0);
  CHECK(Y.eigenvalues().has_value());
  CHECK_THROWS_AS(field_from_json("{\"n_vars\": 2, \"components\": []}"), ParseError);
}
