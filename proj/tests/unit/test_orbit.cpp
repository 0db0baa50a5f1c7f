#include <doctest.h>

#include <numbers>
#include <set>

#include "holodyn/errors.hpp"
#include "holodyn/orbit.hpp"
#include "holodyn/presets.hpp"
#include "holodyn/pseudogroup.hpp"
#include "support.hpp"

using namespace holodyn;
using namespace testing;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("product-preserving maps keep xy per step") {
  const auto H = presets::map("H");
  Point x{cplx{0.2, 0.05}, cplx{-0.1, 0.15}};
  const cplx c = x[0] * x[1];
  for (int k = 0; k < 200; ++k) {
    x = *H.apply(x);
    CHECK(dist(x[0] * x[1], c) < 1e-12 * (k + 1));
  }
}

TEST_CASE("H restricted to xy = C is x -> x + x^2 C f(xC)") {
  const auto H = presets::map("H");
  const cplx C{0.01, -0.02}, x{0.1, 0.03};
  const Point img = *H.apply(Point{x, C / x});
  const cplx f = cplx{0.0, 2.0 * kPi};
  CHECK(dist(img[0], x + x * x * C * f) < 1e-15);
}

TEST_CASE("inverses verify on probes") {
  for (const char* name : {"H", "F", "h1", "swap", "parabolic(2,1:0.5)", "phiX"}) {
    const auto h = presets::map(name);
    CHECK(verify_inverse(h, 0.1));
  }
  const auto H = presets::map("H");
  const Point p{cplx{0.12, -0.04}, cplx{0.07, 0.09}};
  CHECK(max_dist(*H.apply_inverse(*H.apply(p)), p) < 1e-13);
}

TEST_CASE("origin orbit is the origin") {
  for (const char* name : {"H", "h1", "parabolic(1,1)"}) {
    const auto h = presets::map(name);
    const Point zero(h.n_vars());
    const auto rec = iterate_orbit(h, zero, DomainBall(0.3));
    CHECK(rec.status == OrbitStatus::Periodic);
    CHECK(rec.period == 1);
    CHECK(rec.cardinality == 1);
    CHECK_FALSE(rec.mu.has_value());
  }
}

TEST_CASE("rotation by 2 pi / 5 is periodic with period 5") {
  const auto rec = iterate_orbit(presets::map("rot(1/5)"), Point{0.2}, DomainBall(0.3));
  CHECK(rec.status == OrbitStatus::Periodic);
  CHECK(rec.period == 5);
  CHECK(rec.cardinality == 5);
  CHECK(std::string(to_string(rec.status)) == "periodic");
}

TEST_CASE("doubling leaves forward but not backward") {
  // forward: 0.02 .. 0.16 (4 steps); backward halving never leaves, so the budget stops it
  OrbitOptions o;
  o.budget = 50;
  const auto r2 = iterate_orbit(presets::map("double"), Point{0.01}, DomainBall(0.3), o);
  CHECK(r2.forward_steps == 4);
  CHECK(r2.status == OrbitStatus::BudgetExhausted);
}

TEST_CASE("status is monotone in the budget") {
  const auto H = presets::map("H");
  const DomainBall V(0.3);
  const auto seeds = lattice_seeds({4, 4}, 0.3);
  OrbitOptions small, large;
  small.budget = 50;
  large.budget = 5000;
  for (const auto& p : seeds) {
    const auto a = iterate_orbit(H, p, V, small);
    const auto b = iterate_orbit(H, p, V, large);
    if (a.status == OrbitStatus::Escaped) {
      CHECK(b.status == OrbitStatus::Escaped);
      CHECK(a.mu == b.mu);
    }
    if (b.status == OrbitStatus::BudgetExhausted) CHECK(a.status == OrbitStatus::BudgetExhausted);
  }
}

TEST_CASE("one-generator pseudogroup orbit equals the iterated orbit") {
  const auto H = presets::map("H");
  const DomainBall V(0.3);
  const Point p{cplx{0.2, 0.1}, cplx{0.15, -0.1}};
  const auto rec = iterate_orbit(H, p, V);
  REQUIRE(rec.status == OrbitStatus::Escaped);
  const auto pg = pseudogroup_orbit({H}, p, V, {.word_budget = 100'000, .point_budget = 100'000});
  CHECK(pg.points.size() == rec.cardinality);
  std::set<std::pair<double, double>> a, b;
  for (const auto& q : pg.points) a.insert({q[0].real(), q[0].imag()});
  b.insert({p[0].real(), p[0].imag()});
  for (const auto& q : rec.forward) b.insert({q[0].real(), q[0].imag()});
  for (const auto& q : rec.backward) b.insert({q[0].real(), q[0].imag()});
  CHECK(a == b);
}

TEST_CASE("point dedup agrees with a pairwise scan") {
  std::mt19937_64 rng(41);
  const double tol = 1e-3;
  PointDedup d(tol);
  std::vector<Point> kept;
  std::uniform_real_distribution<double> u(-0.01, 0.01);
  for (int i = 0; i < 2000; ++i) {
    const Point p{cplx{u(rng), u(rng)}, cplx{u(rng), u(rng)}};
    bool near = false;
    for (const auto& q : kept) near = near || max_dist(p, q) <= tol;
    CHECK(d.insert(p) == !near);
    if (!near) kept.push_back(p);
  }
  CHECK(d.size() == kept.size());
}

TEST_CASE("seed generators") {
  const auto lat = lattice_seeds({20, 20}, 0.3);
  CHECK(lat.size() == 400);
  const DomainBall V(0.3);
  for (const auto& p : lat) CHECK(V.contains(p));
  CHECK(lattice_seeds({3, 3}, 0.3) == lattice_seeds({3, 3}, 0.3));
  CHECK(random_seeds(2, 10, 0.3, 7) == random_seeds(2, 10, 0.3, 7));
  CHECK(random_seeds(2, 10, 0.3, 7) != random_seeds(2, 10, 0.3, 8));
  const cplx C{0.01, 0.02};
  for (const auto& p : level_circle_seeds(C, 6)) {
    CHECK(dist(p[0] * p[1], C) < 1e-16);
    CHECK(std::abs(std::abs(p[0]) - std::abs(p[1])) < 1e-15);
  }
}

TEST_CASE("grid classification is independent of the thread count") {
  const auto H = presets::map("H");
  const auto seeds = lattice_seeds({6, 6}, 0.3);
  const auto a = classify_seed_grid(H, DomainBall(0.3), seeds, {}, 1);
  const auto b = classify_seed_grid(H, DomainBall(0.3), seeds, {}, 3);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].status == b.records[i].status);
    CHECK(a.records[i].mu == b.records[i].mu);
  }
}

TEST_CASE("F on the irrational level circle stays bounded") {
  OrbitOptions o;
  o.budget = 20'000;
  const auto seeds = level_circle_seeds(presets::f_level_constant(), 2);
  const auto g = classify_seed_grid(presets::map("F"), DomainBall(0.3), seeds, o);
  CHECK(g.budget_exhausted == 2);
}

TEST_CASE("orbit errors") {
  CHECK_THROWS_AS(DomainBall(0.0), DomainError);
  CHECK_THROWS_AS(iterate_orbit(presets::map("H"), Point{0.5, 0.0}, DomainBall(0.3)), DomainError);
  CHECK_THROWS_AS(iterate_orbit(presets::map("H"), Point{0.1}, DomainBall(0.3)), DimensionError);
}
