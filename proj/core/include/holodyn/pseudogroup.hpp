#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "holodyn/evaluable_map.hpp"
#include "holodyn/orbit.hpp"

namespace holodyn {

/// A word is a sequence of signed 1-based generator indices applied left to
/// right: {2, -1} means g_1^{-1}(g_2(p)).
using Word = std::vector<int>;

struct PseudogroupOrbit {
  std::vector<Point> points;  // points[0] is the seed
  std::vector<Word> words;    // words[i] maps the seed to points[i]
  bool truncated = false;     // a budget stopped the search early
};

struct PseudogroupOptions {
  std::size_t word_budget = 40;
  std::size_t point_budget = 10'000;
  double dedup_tol = 1e-9;  // relative to the ball radius
};

/// Breadth-first search over words in the generators and their inverses. A
/// letter is admitted only when its image stays inside V, so every witnessing
/// word keeps all partial images in V.
PseudogroupOrbit pseudogroup_orbit(const std::vector<EvaluableMap>& generators,
                                   std::span<const cplx> p, const DomainBall& V,
                                   const PseudogroupOptions& opts = {});

struct GroupClosure {
  std::optional<std::size_t> order;  // nullopt when the budget was exceeded
  std::vector<Matrix> elements;
  /// Indices into `elements` of a non-commuting pair, if one exists.
  std::optional<std::pair<std::size_t, std::size_t>> noncommuting;
};

/// BFS closure of Linear/Permutation generators under composition; matrices
/// are identified when all entries agree within 1e-12.
GroupClosure group_closure(const std::vector<EvaluableMap>& generators, std::size_t budget = 100'000);

/// Least N <= n_max with h^N = id: exact matrix powers (entries within 1e-12)
/// for Linear/Permutation, coefficientwise (1e-10) for truncated jets, and
/// pointwise (1e-10) on probe points of radius `probe_radius` otherwise.
std::optional<std::size_t> periodicity_test(const EvaluableMap& h, std::size_t n_max,
                                            double probe_radius = 0.05);
std::optional<std::size_t> periodicity_test(const JetMap& h, std::size_t n_max);

}  // namespace holodyn
