#include <doctest.h>

#include <map>
#include <numbers>

#include "holodyn/errors.hpp"
#include "holodyn/orbit.hpp"
#include "holodyn/petal.hpp"
#include "holodyn/presets.hpp"
#include "holodyn/pseudogroup.hpp"
#include "support.hpp"

using namespace holodyn;
using namespace testing;

namespace {

constexpr double kPi = std::numbers::pi;

// Brute force: multiply out every word of length <= L and count distinct
// matrices after rounding entries to a 1e-8 grid.
std::size_t words_closure(const std::vector<Matrix>& gens, int L) {
  std::map<std::vector<long long>, int> seen;
  std::vector<Matrix> layer{Matrix::identity(gens[0].size())};
  auto key = [](const Matrix& m) {
    std::vector<long long> k;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) {
        k.push_back(std::llround(m(i, j).real() * 1e8));
        k.push_back(std::llround(m(i, j).imag() * 1e8));
      }
    return k;
  };
  seen[key(layer[0])] = 1;
  for (int len = 1; len <= L; ++len) {
    std::vector<Matrix> next;
    for (const auto& m : layer)
      for (const auto& g : gens) next.push_back(m * g);
    for (const auto& m : next) seen[key(m)] = 1;
    layer = std::move(next);
  }
  return seen.size();
}

}  // namespace

TEST_CASE("closure of the two generators has order 24 and is non-abelian") {
  const auto gens = presets::generators("h1h2");
  const auto cl = group_closure(gens);
  REQUIRE(cl.order.has_value());
  CHECK(*cl.order == 24);
  CHECK(words_closure({*gens[0].as_matrix(), *gens[1].as_matrix()}, 14) == 24);
  REQUIRE(cl.noncommuting.has_value());
  const auto& a = cl.elements[cl.noncommuting->first];
  const auto& b = cl.elements[cl.noncommuting->second];
  CHECK((a * b).max_abs_diff(b * a) > 0.1);
}

TEST_CASE("small closures") {
  const auto ii = EvaluableMap::linear(Matrix::diagonal(std::vector<cplx>{cplx{0, 1}, cplx{0, 1}}));
  CHECK(group_closure({ii}).order == 4u);
  CHECK_FALSE(group_closure({ii}).noncommuting.has_value());
  CHECK(group_closure({presets::map("identity(2)")}).order == 1u);
  CHECK_FALSE(group_closure({presets::map("double")}, 50).order.has_value());
}

TEST_CASE("pseudogroup orbits of h1, h2 have sizes dividing 24") {
  const auto gens = presets::generators("schur24");
  const DomainBall V(0.3);
  for (const auto& p : random_seeds(2, 40, 0.28, 5)) {
    const auto orb = pseudogroup_orbit(gens, p, V);
    CHECK_FALSE(orb.truncated);
    CHECK(24 % orb.points.size() == 0);
    // every witnessing word reproduces its point
    for (std::size_t i = 0; i < orb.points.size(); ++i) {
      Point q = p;
      for (int letter : orb.words[i]) {
        const auto& g = gens[static_cast<std::size_t>(std::abs(letter)) - 1];
        q = letter > 0 ? *g.apply(q) : *g.apply_inverse(q);
      }
      CHECK(max_dist(q, orb.points[i]) < 1e-14);
    }
  }
  // points with x = y are fixed by the swap, so their orbit is smaller
  const auto orb = pseudogroup_orbit(gens, Point{0.1, 0.1}, V);
  CHECK(orb.points.size() < 24);
  CHECK(24 % orb.points.size() == 0);
}

TEST_CASE("pseudogroup respects the domain") {
  const DomainBall V(0.3);
  const auto orb = pseudogroup_orbit({presets::map("double")}, Point{0.01}, V);
  for (const auto& q : orb.points) CHECK(V.contains(q));
  // 0.01 * 2^k for k = 1..4 and halvings until they merge within 1e-9 rho
  CHECK(orb.points.size() < 40);
  CHECK(std::abs(orb.points.back()[0]) < 1e-9);
}

TEST_CASE("periodicity test") {
  CHECK(periodicity_test(presets::map("rot(2/7)"), 20) == 7u);
  CHECK(periodicity_test(presets::map("h1"), 20) == 6u);
  CHECK_FALSE(periodicity_test(presets::map("H"), 200).has_value());
  CHECK_FALSE(periodicity_test(presets::map("rot(1/7)"), 6).has_value());
  const JetMap r3 = JetMap::linear(Matrix::diagonal(std::vector<cplx>{std::polar(1.0, 2 * kPi / 3)}), 4);
  CHECK(periodicity_test(r3, 10) == 3u);
}

TEST_CASE("petal directions") {
  const auto a = petal_analysis(1, 1.0);
  REQUIRE(a.attracting.size() == 1);
  CHECK(std::abs(a.attracting[0] - kPi) < 1e-15);
  CHECK(std::abs(a.repelling[0]) < 1e-15);

  const auto b = petal_analysis(2, 1.0);
  REQUIRE(b.attracting.size() == 2);
  CHECK(std::abs(b.attracting[0] - kPi / 2) < 1e-15);
  CHECK(std::abs(b.attracting[1] - 3 * kPi / 2) < 1e-15);
  CHECK(b.all_converged);
  CHECK(b.max_arg_error < 1e-3);

  // the level-set dynamics of H near 0 is the d = 1 petal with c = C f(0)
  const cplx C{0.001, 0.0005};
  const auto c = petal_analysis(1, C * cplx{0.0, 2 * kPi});
  CHECK(angle_distance(c.attracting[0], kPi - std::arg(C * cplx{0.0, 2 * kPi})) < 1e-15);
}

TEST_CASE("presets and map json") {
  CHECK(presets::field("thmB").n_vars() == 3);
  CHECK(presets::field("example3")[0].coeff(MultiIndex{2, 1, 2}) == cplx{1.0});
  CHECK(presets::field("thmB")[0].coeff(MultiIndex{3, 1, 3}) == cplx{1.0});
  CHECK_THROWS_AS(presets::field("nope"), ParseError);
  CHECK_THROWS_AS(presets::map("rot(1/0)"), ParseError);
  CHECK_THROWS_AS(presets::field("example1(1,1)"), ParseError);
  for (const char* name : {"H", "h1", "swap", "parabolic(2,0.5:1)", "phiX"}) {
    const auto m = presets::map(name);
    const auto back = presets::map_from_json(presets::map_to_json(m));
    const Point p{cplx{0.05, 0.01}, cplx{-0.03, 0.02}};
    const std::span<const cplx> q(p.data(), m.n_vars());
    CHECK(max_dist(*m.apply(q), *back.apply(q)) == 0.0);
  }
  CHECK_THROWS_AS(presets::map_from_json("{\"kind\": \"linear\", \"matrix\": [[1, 0], [0]]}"), ParseError);
  CHECK_THROWS_AS(presets::map_from_json("{\"kind\": \"spiral\"}"), ParseError);
}
