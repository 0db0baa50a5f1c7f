#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "holodyn/evaluable_map.hpp"

namespace holodyn {

/// Closed max-norm polydisc {|x_i| <= radius}.
struct DomainBall {
  double radius = 0.3;

  explicit DomainBall(double r = 0.3);
  bool contains(std::span<const cplx> p) const;
};

enum class OrbitStatus { Escaped, Periodic, BudgetExhausted };

/// "escaped", "periodic", "infinite-suspected"
const char* to_string(OrbitStatus s);

struct OrbitOptions {
  std::uint64_t budget = 100'000;  // iterations per direction
  double cycle_tol = 1e-9;         // relative to the ball radius
  double dedup_tol = 1e-9;         // relative to the ball radius
  bool keep_points = true;
  /// Whether backward iteration may be used; computed with verify_inverse when unset.
  std::optional<bool> backward_ok;
};

struct OrbitRecord {
  Point seed;
  std::vector<Point> forward;   // h(p), h^2(p), ... while inside the ball
  std::vector<Point> backward;  // h^{-1}(p), ...
  std::uint64_t forward_steps = 0;
  std::uint64_t backward_steps = 0;
  /// Number of iterates (both signs) of p inside the ball; nullopt when it is
  /// unbounded (periodic) or the budget ran out.
  std::optional<std::uint64_t> mu;
  std::size_t cardinality = 0;  // distinct points, seed included
  OrbitStatus status = OrbitStatus::BudgetExhausted;
  std::uint64_t period = 0;
  bool one_sided = false;  // backward iteration was not available
};

OrbitRecord iterate_orbit(const EvaluableMap& h, std::span<const cplx> p, const DomainBall& V,
                          const OrbitOptions& opts = {});

/// Tolerance-based point set in C^n, hashed on a grid of cell size 2 tol.
class PointDedup {
 public:
  explicit PointDedup(double tol) : tol_(tol) {}
  /// Inserts p unless a stored point lies within tol (max-norm). Returns true if inserted.
  bool insert(std::span<const cplx> p);
  std::size_t size() const { return count_; }

 private:
  // cells are keyed by a hash of their integer coordinates; collisions only
  // add candidates, since every candidate is distance-checked
  std::uint64_t cell_hash(std::span<const std::int64_t> cell) const;

  double tol_;
  std::size_t count_ = 0;
  std::unordered_map<std::uint64_t, std::vector<Point>> cells_;
};

// Seed generators. All deterministic except random_seeds, which is seeded.

/// Cartesian product of per-coordinate spirals: coordinate i takes counts[i]
/// values with moduli in [0.35, 0.95] * radius.
std::vector<Point> lattice_seeds(const std::vector<int>& counts, double radius);
/// Uniform in the polydisc of the given radius, std::mt19937_64 seeded with `seed`.
std::vector<Point> random_seeds(std::size_t n_vars, std::size_t count, double radius,
                                std::uint64_t seed);
/// Points (x, C/x) with |x| = sqrt|C| spread over the circle.
std::vector<Point> level_circle_seeds(cplx C, std::size_t count);

struct GridSummary {
  std::size_t escaped = 0;
  std::size_t periodic = 0;
  std::size_t budget_exhausted = 0;
  std::vector<OrbitRecord> records;  // in seed order, without point lists
};

/// Runs iterate_orbit on every seed (in parallel when threads > 1); results
/// are in input order regardless of thread count.
GridSummary classify_seed_grid(const EvaluableMap& h, const DomainBall& V,
                               const std::vector<Point>& seeds, const OrbitOptions& opts = {},
                               unsigned threads = 1);

}  // namespace holodyn
