#include <doctest.h>

#include <vector>

#include "holodyn/errors.hpp"
#include "holodyn/jet.hpp"
#include "support.hpp"

using namespace holodyn;
using namespace testing;

namespace {

// Two-variable jets as dense (order+1)^2 arrays, a[i][j] = coeff of x^i y^j.
using Dense = std::vector<std::vector<cplx>>;

Dense to_dense(const Jet& a) {
  const int N = a.order();
  Dense d(N + 1, std::vector<cplx>(N + 1));
  for (const auto& [e, c] : a.terms()) d[e[0]][e[1]] = c;
  return d;
}

Dense dense_mul(const Dense& a, const Dense& b, int N) {
  Dense r(N + 1, std::vector<cplx>(N + 1));
  for (int i = 0; i <= N; ++i)
    for (int j = 0; i + j <= N; ++j)
      for (int k = 0; i + k <= N; ++k)
        for (int l = 0; i + j + k + l <= N && j + l <= N; ++l) r[i + k][j + l] += a[i][j] * b[k][l];
  return r;
}

double dense_diff(const Dense& a, const Dense& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
  return m;
}

}  // namespace

TEST_CASE("graded lex order puts x before y within a degree") {
  GradedLex lt;
  CHECK(lt(MultiIndex{0, 0}, MultiIndex{1, 0}));
  CHECK(lt(MultiIndex{1, 0}, MultiIndex{0, 1}));
  CHECK(lt(MultiIndex{0, 1}, MultiIndex{2, 0}));
  CHECK(lt(MultiIndex{3, 1}, MultiIndex{2, 2}));
  const auto deg3 = monomials_of_degree(3, 3);
  CHECK(deg3.size() == 10);
  CHECK(deg3.front() == MultiIndex{3, 0, 0});
}

TEST_CASE("construction prunes tiny coefficients and truncates") {
  Jet::Terms t{{MultiIndex{1, 0}, 1e-15}, {MultiIndex{0, 1}, 2.0}, {MultiIndex{4, 0}, 1.0}};
  const Jet a(2, 3, t);
  CHECK(a.terms().size() == 1);
  CHECK(a.coeff(MultiIndex{0, 1}) == cplx{2.0});
  CHECK(a.max_degree() == 1);
}

TEST_CASE("jet add and mul agree with dense arrays") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const int N = 2 + trial % 6;
    const Jet a = random_jet(rng, 2, N), b = random_jet(rng, 2, N);
    CHECK(dense_diff(to_dense(a * b), dense_mul(to_dense(a), to_dense(b), N)) < 1e-13);
    Dense s = to_dense(a);
    const Dense db = to_dense(b);
    for (int i = 0; i <= N; ++i)
      for (int j = 0; j <= N; ++j) s[i][j] += db[i][j];
    CHECK(dense_diff(to_dense(a + b), s) < 1e-15);
  }
}

TEST_CASE("ring laws on random jets") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const Jet a = random_jet(rng, n, 5), b = random_jet(rng, n, 5), c = random_jet(rng, n, 5);
    CHECK(max_coeff_diff(a * b, b * a) < 1e-13);
    CHECK(max_coeff_diff((a * b) * c, a * (b * c)) < 1e-12);
    CHECK(max_coeff_diff(a * (b + c), a * b + a * c) < 1e-12);
    CHECK(max_coeff_diff(a - a, Jet(n, 5)) == 0.0);
    CHECK(max_coeff_diff(jet_pow(a, 3), a * a * a) < 1e-12);
  }
}

TEST_CASE("reciprocal multiplies back to one") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const Jet u = Jet::constant(n, 7, random_cplx(rng) + 2.0) + random_jet(rng, n, 7, 1, 0.5);
    CHECK(max_coeff_diff(u * jet_reciprocal(u), Jet::constant(n, 7, 1.0)) < 1e-12);
  }
  CHECK_THROWS_AS(jet_reciprocal(Jet::variable(2, 3, 0)), DomainError);
}

TEST_CASE("1/(1-x) is the geometric series") {
  const Jet u = Jet::constant(1, 6, 1.0) - Jet::variable(1, 6, 0);
  const Jet r = jet_reciprocal(u);
  for (int k = 0; k <= 6; ++k) CHECK(dist(r.coeff(MultiIndex{k}), 1.0) < 1e-15);
}

TEST_CASE("derivative matches the power rule") {
  const Jet a = Jet::monomial(2, 5, MultiIndex{3, 2}, cplx{0, 2});
  const Jet dx = a.derivative(0);
  CHECK(dx.coeff(MultiIndex{2, 2}) == cplx{0, 6});
  CHECK(a.derivative(1).coeff(MultiIndex{3, 1}) == cplx{0, 4});
}

TEST_CASE("composition agrees with evaluating g at h(p)") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 8; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const int N = 6;
    const Jet g = random_jet(rng, n, N);
    const JetMap h = random_germ(rng, n, N);
    const Jet gh = jet_compose(g, h);
    Point p(n);
    for (auto& z : p) z = random_cplx(rng, 1e-2);
    // truncation error is O(|p|^{N+1})
    CHECK(dist(gh.eval(p), g.eval(h.eval(p))) < 1e-11);
  }
}

TEST_CASE("composition is associative and the inverse is two-sided") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const JetMap f = random_germ(rng, n, 6), g = random_germ(rng, n, 6), h = random_germ(rng, n, 6);
    CHECK(max_coeff_diff(jetmap_compose(f, jetmap_compose(g, h)), jetmap_compose(jetmap_compose(f, g), h)) <
          1e-11);
    const JetMap fi = jetmap_inverse(f);
    CHECK(max_coeff_diff(jetmap_compose(f, fi), JetMap::identity(n, 6)) < 1e-11);
    CHECK(max_coeff_diff(jetmap_compose(fi, f), JetMap::identity(n, 6)) < 1e-11);
  }
}

TEST_CASE("inverse of a non-identity linear part") {
  Matrix m = Matrix::identity(2);
  m(0, 0) = 2.0;
  m(0, 1) = cplx{0, 1};
  m(1, 1) = -0.5;
  std::vector<Jet> c{JetMap::linear(m, 5)[0] + Jet::monomial(2, 5, MultiIndex{2, 0}),
                     JetMap::linear(m, 5)[1] + Jet::monomial(2, 5, MultiIndex{1, 2}, 3.0)};
  const JetMap f(std::move(c));
  CHECK(max_coeff_diff(jetmap_compose(f, jetmap_inverse(f)), JetMap::identity(2, 5)) < 1e-12);
}

TEST_CASE("jet maps reject constants and mismatched sizes") {
  std::vector<Jet> bad{Jet::constant(2, 3, 1.0) + Jet::variable(2, 3, 0), Jet::variable(2, 3, 1)};
  CHECK_THROWS_AS(JetMap{bad}, DomainError);
  std::vector<Jet> wrong{Jet::variable(3, 3, 0), Jet::variable(3, 3, 1)};
  CHECK_THROWS_AS(JetMap{wrong}, DimensionError);
  CHECK_THROWS_AS(Jet::variable(2, 3, 0) + Jet::variable(3, 3, 0), DimensionError);
}

TEST_CASE("json round trip") {
  std::mt19937_64 rng(16);
  const JetMap h = random_germ(rng, 2, 4);
  const JetMap back = jetmap_from_json(jetmap_to_json(h));
  CHECK(max_coeff_diff(h, back) == 0.0);
  const Jet j = random_jet(rng, 3, 3);
  CHECK(max_coeff_diff(jet_from_json(jet_to_json(j)), j) == 0.0);
  CHECK_THROWS_AS(jet_from_json("{\"n_vars\": 2"), ParseError);
  CHECK_THROWS_AS(jet_from_json("{\"n_vars\": 2, \"order\": 3, \"terms\": [{\"exp\": [1], \"re\": 1, \"im\": 0}]}"), ParseError);
}
