#include "holodyn/orbit.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "holodyn/errors.hpp"
#include "holodyn/parallel.hpp"

namespace holodyn {

DomainBall::DomainBall(double r) : radius(r) {
  if (!(r > 0.0)) throw DomainError("DomainBall: radius must be positive");
}

bool DomainBall::contains(std::span<const cplx> p) const {
  return all_finite(p) && max_norm(p) <= radius;
}

const char* to_string(OrbitStatus s) {
  switch (s) {
    case OrbitStatus::Escaped: return "escaped";
    case OrbitStatus::Periodic: return "periodic";
    case OrbitStatus::BudgetExhausted: return "infinite-suspected";
  }
  return "?";
}

// ---------------------------------------------------------------------------

std::uint64_t PointDedup::cell_hash(std::span<const std::int64_t> cell) const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (auto v : cell) h = (h ^ static_cast<std::uint64_t>(v)) * 0x100000001b3ull;
  return h;
}

// Cells have side 2 tol, so the tol-neighbourhood of p meets at most two
// cells per real coordinate: its own and the nearer neighbour.
bool PointDedup::insert(std::span<const cplx> p) {
  const std::size_t dims = 2 * p.size();
  std::array<std::int64_t, 16> base{}, side{}, k{};
  if (dims > base.size()) throw DimensionError("PointDedup: at most 8 complex coordinates");
  for (std::size_t i = 0; i < dims; ++i) {
    const double v = (i % 2 == 0 ? p[i / 2].real() : p[i / 2].imag()) / (2.0 * tol_);
    const double f = std::floor(v);
    base[i] = static_cast<std::int64_t>(f);
    side[i] = v - f < 0.5 ? -1 : 1;
  }
  for (std::size_t c = 0; c < (std::size_t{1} << dims); ++c) {
    for (std::size_t i = 0; i < dims; ++i) k[i] = base[i] + (((c >> i) & 1u) ? side[i] : 0);
    auto it = cells_.find(cell_hash({k.data(), dims}));
    if (it == cells_.end()) continue;
    for (const auto& q : it->second)
      if (max_dist(q, p) <= tol_) return false;
  }
  cells_[cell_hash({base.data(), dims})].emplace_back(p.begin(), p.end());
  ++count_;
  return true;
}

// ---------------------------------------------------------------------------

OrbitRecord iterate_orbit(const EvaluableMap& h, std::span<const cplx> p, const DomainBall& V,
                          const OrbitOptions& opts) {
  if (p.size() != h.n_vars()) throw DimensionError("iterate_orbit: seed dimension mismatch");
  if (!V.contains(p)) throw DomainError("iterate_orbit: seed outside the domain ball");
  const double eps_cycle = opts.cycle_tol * V.radius;

  OrbitRecord rec;
  rec.seed.assign(p.begin(), p.end());
  PointDedup seen(opts.dedup_tol * V.radius);
  seen.insert(p);

  bool fwd_escaped = false;
  Point q = rec.seed;
  for (std::uint64_t step = 1; step <= opts.budget; ++step) {
    auto r = h.apply(q);
    if (!r || !V.contains(*r)) {
      fwd_escaped = true;
      break;
    }
    if (max_dist(*r, p) < eps_cycle) {
      rec.status = OrbitStatus::Periodic;
      rec.period = step;
      rec.cardinality = seen.size();
      return rec;
    }
    ++rec.forward_steps;
    seen.insert(*r);
    if (opts.keep_points) rec.forward.push_back(*r);
    q = std::move(*r);
  }

  const bool backward_ok = opts.backward_ok ? *opts.backward_ok : verify_inverse(h, V.radius);
  bool bwd_escaped = false;
  if (backward_ok) {
    q = rec.seed;
    for (std::uint64_t step = 1; step <= opts.budget; ++step) {
      auto r = h.apply_inverse(q);
      if (!r || !V.contains(*r)) {
        bwd_escaped = true;
        break;
      }
      ++rec.backward_steps;
      seen.insert(*r);
      if (opts.keep_points) rec.backward.push_back(*r);
      q = std::move(*r);
    }
  } else {
    rec.one_sided = true;
  }

  rec.cardinality = seen.size();
  const bool escaped = fwd_escaped && (bwd_escaped || rec.one_sided);
  if (escaped) {
    rec.status = OrbitStatus::Escaped;
    rec.mu = rec.forward_steps + rec.backward_steps;
  } else {
    rec.status = OrbitStatus::BudgetExhausted;
  }
  return rec;
}

// ---------------------------------------------------------------------------

std::vector<Point> lattice_seeds(const std::vector<int>& counts, double radius) {
  constexpr double kGolden = 0.6180339887498949;
  std::vector<std::vector<cplx>> axes;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] < 1) throw DomainError("lattice_seeds: counts must be positive");
    std::vector<cplx> vals;
    for (int k = 0; k < counts[i]; ++k) {
      const double r = radius * (0.35 + 0.6 * (k + 0.5) / counts[i]);
      const double frac = std::fmod(kGolden * k + 0.1 * static_cast<double>(i) + 0.05, 1.0);
      vals.push_back(std::polar(r, 2.0 * std::numbers::pi * frac));
    }
    axes.push_back(std::move(vals));
  }
  std::vector<Point> out;
  if (axes.empty()) return out;
  std::vector<std::size_t> idx(axes.size(), 0);
  for (;;) {
    Point p(axes.size());
    for (std::size_t i = 0; i < axes.size(); ++i) p[i] = axes[i][idx[i]];
    out.push_back(std::move(p));
    std::size_t d = axes.size();
    while (d-- > 0) {
      if (++idx[d] < axes[d].size()) break;
      idx[d] = 0;
    }
    if (d == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

std::vector<Point> random_seeds(std::size_t n_vars, std::size_t count, double radius,
                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Point p(n_vars);
    for (auto& z : p) {
      const double r = radius * std::sqrt(unit(rng));
      z = std::polar(r, 2.0 * std::numbers::pi * unit(rng));
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Point> level_circle_seeds(cplx C, std::size_t count) {
  if (C == cplx{}) throw DomainError("level_circle_seeds: C must be nonzero");
  const double r = std::sqrt(std::abs(C));
  std::vector<Point> out;
  for (std::size_t k = 0; k < count; ++k) {
    const cplx x = std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(k) / count);
    out.push_back({x, C / x});
  }
  return out;
}

GridSummary classify_seed_grid(const EvaluableMap& h, const DomainBall& V,
                               const std::vector<Point>& seeds, const OrbitOptions& opts,
                               unsigned threads) {
  OrbitOptions o = opts;
  o.keep_points = false;
  if (!o.backward_ok) o.backward_ok = verify_inverse(h, V.radius);

  GridSummary out;
  out.records.resize(seeds.size());
  parallel_for(seeds.size(), threads,
               [&](std::size_t i) { out.records[i] = iterate_orbit(h, seeds[i], V, o); });
  for (const auto& r : out.records) {
    switch (r.status) {
      case OrbitStatus::Escaped: ++out.escaped; break;
      case OrbitStatus::Periodic: ++out.periodic; break;
      case OrbitStatus::BudgetExhausted: ++out.budget_exhausted; break;
    }
  }
  return out;
}

}  // namespace holodyn
