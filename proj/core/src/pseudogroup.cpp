#include "holodyn/pseudogroup.hpp"

#include <deque>

#include "holodyn/errors.hpp"

namespace holodyn {

PseudogroupOrbit pseudogroup_orbit(const std::vector<EvaluableMap>& generators,
                                   std::span<const cplx> p, const DomainBall& V,
                                   const PseudogroupOptions& opts) {
  if (!V.contains(p)) throw DomainError("pseudogroup_orbit: seed outside the domain ball");
  for (const auto& g : generators)
    if (g.n_vars() != p.size()) throw DimensionError("pseudogroup_orbit: generator dimension mismatch");

  // letters: +k -> g_k, -k -> g_k^{-1} (only when the inverse is trustworthy)
  std::vector<int> letters;
  for (std::size_t k = 0; k < generators.size(); ++k) {
    const int id = static_cast<int>(k) + 1;
    letters.push_back(id);
    if (generators[k].exactly_invertible() || verify_inverse(generators[k], V.radius))
      letters.push_back(-id);
  }

  PseudogroupOrbit out;
  PointDedup seen(opts.dedup_tol * V.radius);
  seen.insert(p);
  out.points.emplace_back(p.begin(), p.end());
  out.words.emplace_back();

  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    const std::size_t cur = frontier.front();
    frontier.pop_front();
    if (out.words[cur].size() >= opts.word_budget) {
      out.truncated = true;
      continue;
    }
    for (int letter : letters) {
      const auto& g = generators[static_cast<std::size_t>(std::abs(letter)) - 1];
      const Point src = out.points[cur];
      auto img = letter > 0 ? g.apply(src) : g.apply_inverse(src);
      if (!img || !V.contains(*img)) continue;
      if (!seen.insert(*img)) continue;
      if (out.points.size() >= opts.point_budget) {
        out.truncated = true;
        return out;
      }
      Word w = out.words[cur];
      w.push_back(letter);
      out.points.push_back(std::move(*img));
      out.words.push_back(std::move(w));
      frontier.push_back(out.points.size() - 1);
    }
  }
  return out;
}

namespace {

bool matrix_close(const Matrix& a, const Matrix& b) { return a.max_abs_diff(b) <= 1e-12; }

}  // namespace

GroupClosure group_closure(const std::vector<EvaluableMap>& generators, std::size_t budget) {
  if (generators.empty()) throw DomainError("group_closure: no generators");
  std::vector<Matrix> gens;
  for (const auto& g : generators) {
    auto m = g.as_matrix();
    if (!m) throw DomainError("group_closure: only linear and permutation maps are supported");
    gens.push_back(std::move(*m));
  }
  const std::size_t n = gens.front().size();

  GroupClosure out;
  auto find = [&](const Matrix& m) {
    for (const auto& e : out.elements)
      if (matrix_close(e, m)) return true;
    return false;
  };

  out.elements.push_back(Matrix::identity(n));
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      Matrix prod = out.elements[cur] * g;
      if (find(prod)) continue;
      if (out.elements.size() >= budget) return out;  // order stays nullopt
      out.elements.push_back(std::move(prod));
      queue.push_back(out.elements.size() - 1);
    }
  }
  out.order = out.elements.size();
  for (std::size_t i = 0; i < out.elements.size() && !out.noncommuting; ++i)
    for (std::size_t j = i + 1; j < out.elements.size(); ++j)
      if (!matrix_close(out.elements[i] * out.elements[j], out.elements[j] * out.elements[i])) {
        out.noncommuting = {i, j};
        break;
      }
  return out;
}

std::optional<std::size_t> periodicity_test(const JetMap& h, std::size_t n_max) {
  const JetMap id = JetMap::identity(h.size(), h.order());
  JetMap power = h;
  for (std::size_t k = 1; k <= n_max; ++k) {
    if (max_coeff_diff(power, id) < 1e-10) return k;
    power = jetmap_compose(h, power);
  }
  return std::nullopt;
}

std::optional<std::size_t> periodicity_test(const EvaluableMap& h, std::size_t n_max,
                                            double probe_radius) {
  if (auto m = h.as_matrix()) {
    const Matrix id = Matrix::identity(m->size());
    Matrix power = *m;
    for (std::size_t k = 1; k <= n_max; ++k) {
      if (power.max_abs_diff(id) <= 1e-12) return k;
      power = power * *m;
    }
    return std::nullopt;
  }
  if (auto* tj = std::get_if<TruncatedJetMap>(&h.variant())) return periodicity_test(tj->map, n_max);

  auto probes = probe_points(h.n_vars(), probe_radius);
  std::vector<Point> cur = probes;
  for (std::size_t k = 1; k <= n_max; ++k) {
    bool all_back = true;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      auto next = h.apply(cur[i]);
      if (!next) return std::nullopt;
      cur[i] = std::move(*next);
      if (max_dist(cur[i], probes[i]) > 1e-10) all_back = false;
    }
    if (all_back) return k;
  }
  return std::nullopt;
}

}  // namespace holodyn
