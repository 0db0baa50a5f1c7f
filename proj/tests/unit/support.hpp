#pragma once

#include <cmath>
#include <random>

#include "holodyn/jet.hpp"

namespace testing {

using holodyn::cplx;
using holodyn::Jet;
using holodyn::JetMap;
using holodyn::MultiIndex;

inline cplx random_cplx(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng)};
}

// Dense random jet: every monomial of degree in [min_deg, order] present.
inline Jet random_jet(std::mt19937_64& rng, std::size_t n, int order, int min_deg = 0, double scale = 1.0) {
  Jet::Terms t;
  for (int d = min_deg; d <= order; ++d)
    for (const auto& e : holodyn::monomials_of_degree(n, d)) t.emplace(e, random_cplx(rng, scale));
  return Jet(n, order, std::move(t));
}

// x + small higher-order terms in every component.
inline JetMap random_germ(std::mt19937_64& rng, std::size_t n, int order, double scale = 0.3) {
  std::vector<Jet> c;
  for (std::size_t i = 0; i < n; ++i)
    c.push_back(Jet::variable(n, order, i) + random_jet(rng, n, order, 2, scale));
  return JetMap(std::move(c));
}

inline double dist(cplx a, cplx b) { return std::abs(a - b); }

}  // namespace testing
