// holodyn: command-line front end.
//
// Exit codes: 0 success, 1 failed check (reproduce-paper, verify-integral),
// 2 bad configuration or input, 3 numeric failure.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli_support.hpp"
#include "holodyn/acceptance.hpp"
#include "holodyn/errors.hpp"
#include "holodyn/flows.hpp"
#include "holodyn/holonomy.hpp"
#include "holodyn/orbit.hpp"
#include "holodyn/parallel.hpp"
#include "holodyn/petal.hpp"
#include "holodyn/presets.hpp"
#include "holodyn/pseudogroup.hpp"

using namespace holodyn;
using cli::json;
using cli::ordered_json;

namespace {

constexpr const char* kVersion = "holodyn 0.1.0";

std::string complex_str(cplx z) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.15g %c %.15gi", z.real(), z.imag() < 0 ? '-' : '+', std::abs(z.imag()));
  return buf;
}

// "a31" for the coefficient of x^3 y in the first component; digits are
// comma-separated once an exponent reaches 10.
std::string coeff_name(std::size_t component, const MultiIndex& e) {
  std::string s(1, static_cast<char>('a' + component));
  const auto& ex = e.exponents();
  const bool wide = std::any_of(ex.begin(), ex.end(), [](int v) { return v >= 10; });
  for (std::size_t i = 0; i < ex.size(); ++i) {
    if (wide && i) s += ',';
    s += std::to_string(ex[i]);
  }
  return s;
}

ordered_json parse_embedded(const std::string& text) { return ordered_json::parse(text); }

std::string csv_header(const std::string& command, const ordered_json& config) {
  return "# " + std::string(kVersion) + " " + command + "\n# config: " + config.dump() + "\n";
}

// ---------------------------------------------------------------------------
// holonomy

struct HolonomyArgs {
  std::string field = "thmB";
  int order = 4;
  std::string z0 = "1";
  std::optional<std::size_t> axis;
  double radius = 0.1;
  std::string emit;
  std::string oracle;
  double oracle_radius = 0.05;
};

int run_holonomy(const HolonomyArgs& a) {
  const Foliation F0 = presets::load_foliation(a.field, a.axis);
  const Foliation F(F0.field(), F0.axis(), a.radius);
  const cplx z0 = cli::parse_complex(a.z0);
  const auto sys = build_monodromy_system(F, z0);
  const auto hs = holonomy_series(sys, a.order);

  ordered_json config{{"command", "holonomy"},  {"field", a.field},          {"order", a.order},
                      {"z0", cli::complex_json(z0)}, {"axis", F.axis()}, {"transversal_radius", a.radius}};

  std::cout << "holonomy of " << a.field << " along axis " << F.axis() << ", order " << a.order
            << ", z0 = " << complex_str(z0) << "\n";
  for (std::size_t j = 0; j < hs.map.size(); ++j)
    for (const auto& [e, c] : hs.map[j].terms())
      std::cout << "  " << coeff_name(j, e) << "(1) = " << complex_str(c) << "\n";

  if (hs.map.size() == 2) {
    try {
      if (auto nf = extract_normal_form(hs.map)) {
        std::cout << "normal form: h(x,y) = (x(1 + w f(w)), y/(1 + w f(w))), w = x^" << nf->a << " y^"
                  << nf->b << ", f(0) = " << complex_str(nf->f0()) << "\n";
      } else {
        std::cout << "normal form: no monomial pattern fits\n";
      }
    } catch (const DomainError& e) {
      std::cout << "normal form: not applicable (" << e.what() << ")\n";
    }
  }

  if (!a.emit.empty()) {
    ordered_json table = ordered_json::array();
    for (std::size_t j = 0; j < hs.table.entries.size(); ++j)
      for (const auto& [e, ep] : hs.table.entries[j])
        table.push_back({{"component", j},
                         {"exponent", e.exponents()},
                         {"name", coeff_name(j, e)},
                         {"coefficient", parse_embedded(expoly_to_json(ep))}});
    ordered_json diag = ordered_json::array();
    for (const auto& f : hs.table.diagonal) diag.push_back(cli::complex_json(f.mu()));
    ordered_json out{{"config", config},
                     {"table", {{"dim", hs.table.dim}, {"order", hs.table.order}, {"diagonal_mu", diag},
                                {"entries", table}}},
                     {"holonomy", parse_embedded(jetmap_to_json(hs.map))}};
    cli::write_text(a.emit, out.dump(2) + "\n");
  }

  if (!a.oracle.empty()) {
    const std::size_t dim = sys.dim;
    std::string csv = csv_header("holonomy --oracle", config);
    for (std::size_t i = 0; i < dim; ++i) csv += "p_re_" + std::to_string(i) + ",p_im_" + std::to_string(i) + ",";
    for (std::size_t i = 0; i < dim; ++i)
      csv += "series_re_" + std::to_string(i) + ",series_im_" + std::to_string(i) + ",";
    for (std::size_t i = 0; i < dim; ++i)
      csv += "monodromy_re_" + std::to_string(i) + ",monodromy_im_" + std::to_string(i) + ",";
    csv += "abs_error\n";
    double worst = 0.0;
    std::vector<int> counts(dim, 5);
    for (const auto& p : lattice_seeds(counts, a.oracle_radius)) {
      const auto num = holonomy_numeric(sys, p);
      if (num.escaped) throw NumericError(std::string("monodromy integration: ") + to_string(num.status));
      const Point s = hs.map.eval(p);
      const double err = max_dist(s, num.point);
      worst = std::max(worst, err);
      for (const auto& v : {p, s, num.point})
        for (const auto& z : v) csv += cli::num(z.real()) + "," + cli::num(z.imag()) + ",";
      csv += cli::num(err) + "\n";
    }
    cli::write_text(a.oracle, csv);
    std::cout << "oracle: max |series - monodromy| = " << cli::num(worst) << " over "
              << static_cast<int>(std::pow(5, dim)) << " points\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// flow

struct FlowArgs {
  std::string field = "example3";
  std::string time = "1";
  int order = 6;
  std::string point;
  std::string json_out;
};

int run_flow(const FlowArgs& a) {
  const VectorField X = presets::load_field(a.field);
  const cplx t = cli::parse_complex(a.time);
  ordered_json config{{"command", "flow"}, {"field", a.field}, {"time", cli::complex_json(t)}, {"order", a.order}};

  const JetMap phi = formal_flow(X, t, a.order);
  std::cout << "time-" << complex_str(t) << " flow of " << a.field << ", order " << a.order << "\n";
  for (std::size_t j = 0; j < phi.size(); ++j)
    for (const auto& [e, c] : phi[j].terms())
      std::cout << "  x" << j << " <- " << e.to_string() << ": " << complex_str(c) << "\n";

  ordered_json out{{"config", config}, {"flow", parse_embedded(jetmap_to_json(phi))}};
  if (!a.point.empty()) {
    const Point p = cli::parse_point(a.point);
    if (p.size() != X.n_vars()) throw DimensionError("--point has the wrong number of coordinates");
    config["point"] = ordered_json::array();
    for (const auto& z : p) config["point"].push_back(cli::complex_json(z));
    out["config"] = config;
    const Point num = numeric_flow(X, p, TimePath::segment(t));
    const Point ser = phi.eval(p);
    std::cout << "numeric flow at point:\n";
    ordered_json pts = ordered_json::array();
    for (std::size_t i = 0; i < num.size(); ++i) {
      std::cout << "  x" << i << " = " << complex_str(num[i]) << "  (jet: " << complex_str(ser[i]) << ")\n";
      pts.push_back(cli::complex_json(num[i]));
    }
    std::cout << "  |numeric - jet| = " << cli::num(max_dist(num, ser)) << "\n";
    out["numeric"] = pts;
  }
  if (!a.json_out.empty()) cli::write_text(a.json_out, out.dump(2) + "\n");
  return 0;
}

// ---------------------------------------------------------------------------
// orbit

struct OrbitArgs {
  std::string map = "H";
  double radius = 0.3;
  std::string grid = "20x20";
  std::uint64_t budget = 100'000;
  double cycle_tol = 1e-9;
  double dedup_tol = 1e-9;
  std::string csv;
  bool level_circle = false;
  std::string level;
  std::size_t count = 16;
  std::size_t random_seeds = 0;
  std::uint64_t seed = 1;
  std::string svg;
  std::string svg_plane = "x";
  std::size_t svg_orbits = 12;
};

std::string mu_field(const OrbitRecord& r) {
  if (r.mu) return std::to_string(*r.mu);
  return r.status == OrbitStatus::Periodic ? "inf" : "budget_exceeded";
}

int run_orbit(const OrbitArgs& a, unsigned threads) {
  const EvaluableMap h = presets::load_map(a.map);
  const std::size_t n = h.n_vars();
  const DomainBall V(a.radius);
  ordered_json config{{"command", "orbit"},   {"map", a.map},
                      {"radius", a.radius},   {"budget", a.budget},
                      {"cycle_tol", a.cycle_tol}, {"dedup_tol", a.dedup_tol}};

  std::vector<Point> seeds;
  if (a.level_circle) {
    if (n != 2) throw DomainError("--level-circle needs a map on C^2");
    const cplx C = a.level.empty() ? presets::f_level_constant() : cli::parse_complex(a.level);
    seeds = level_circle_seeds(C, a.count);
    config["seeds"] = {{"kind", "level-circle"}, {"C", cli::complex_json(C)}, {"count", a.count}};
  } else if (a.random_seeds > 0) {
    seeds = random_seeds(n, a.random_seeds, 0.95 * a.radius, a.seed);
    config["seeds"] = {{"kind", "random"}, {"generator", "mt19937_64"}, {"count", a.random_seeds}, {"seed", a.seed}};
  } else {
    std::vector<int> counts = cli::parse_grid(a.grid);
    if (counts.size() == 1) counts.assign(n, counts[0]);
    if (counts.size() != n) throw DimensionError("--grid has " + std::to_string(counts.size()) +
                                                 " factors for a map on C^" + std::to_string(n));
    seeds = lattice_seeds(counts, a.radius);
    config["seeds"] = {{"kind", "lattice"}, {"grid", a.grid}};
  }
  for (const auto& s : seeds)
    if (!V.contains(s)) throw DomainError("a seed lies outside the ball; increase --radius");

  OrbitOptions o;
  o.budget = a.budget;
  o.cycle_tol = a.cycle_tol;
  o.dedup_tol = a.dedup_tol;
  const auto g = classify_seed_grid(h, V, seeds, o, threads);

  if (!a.csv.empty()) {
    static const char* names[] = {"x", "y", "z", "w"};
    std::string csv = csv_header("orbit", config);
    for (std::size_t i = 0; i < n; ++i) {
      const std::string c = i < 4 ? names[i] : std::to_string(i);
      csv += "seed_re_" + c + ",seed_im_" + c + ",";
    }
    csv += "status,period,mu,cardinality\n";
    for (const auto& r : g.records) {
      for (const auto& z : r.seed) csv += cli::num(z.real()) + "," + cli::num(z.imag()) + ",";
      csv += std::string(to_string(r.status)) + "," +
             (r.status == OrbitStatus::Periodic ? std::to_string(r.period) : std::string()) + "," +
             mu_field(r) + "," + std::to_string(r.cardinality) + "\n";
    }
    cli::write_text(a.csv, csv);
  }

  if (!a.svg.empty()) {
    const auto plane = cli::parse_plane(a.svg_plane, n);
    OrbitOptions so = o;
    so.budget = std::min<std::uint64_t>(a.budget, 20'000);
    std::vector<cli::ScatterSeries> series;
    for (std::size_t k = 0; k < std::min(a.svg_orbits, seeds.size()); ++k) {
      auto rec = iterate_orbit(h, seeds[k], V, so);
      cli::ScatterSeries s{std::string(to_string(rec.status)), {rec.seed}};
      s.points.insert(s.points.end(), rec.forward.begin(), rec.forward.end());
      s.points.insert(s.points.end(), rec.backward.begin(), rec.backward.end());
      series.push_back(std::move(s));
    }
    cli::write_text(a.svg, cli::scatter_svg(series, plane, a.radius, "orbits of " + a.map));
  }

  auto& os = a.csv == "-" ? std::cerr : std::cout;
  os << seeds.size() << " seeds in the radius-" << a.radius << " polydisc, budget " << a.budget
     << ": escaped " << g.escaped << ", periodic " << g.periodic << ", infinite-suspected "
     << g.budget_exhausted << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// pseudogroup

struct PseudogroupArgs {
  std::string preset = "schur24";
  std::vector<std::string> maps;
  std::size_t seeds = 100;
  double radius = 0.3;
  std::size_t word_budget = 40;
  std::size_t point_budget = 10'000;
  std::string json_out;
  std::string svg;
  std::string svg_plane = "x";
};

int run_pseudogroup(const PseudogroupArgs& a, unsigned threads) {
  std::vector<EvaluableMap> gens;
  if (a.maps.empty()) {
    gens = presets::generators(a.preset);
  } else {
    for (const auto& m : a.maps) gens.push_back(presets::load_map(m));
  }
  const std::size_t n = gens.front().n_vars();
  const DomainBall V(a.radius);
  ordered_json config{{"command", "pseudogroup"}, {"radius", a.radius},           {"seeds", a.seeds},
                      {"word_budget", a.word_budget}, {"point_budget", a.point_budget}};
  if (a.maps.empty()) config["preset"] = a.preset;
  else config["maps"] = a.maps;

  ordered_json out{{"config", config}};
  std::optional<std::size_t> order;
  bool linear = std::all_of(gens.begin(), gens.end(), [](const auto& g) { return g.as_matrix().has_value(); });
  if (linear) {
    const auto cl = group_closure(gens);
    order = cl.order;
    ordered_json closure{{"order", cl.order ? ordered_json(*cl.order) : ordered_json(nullptr)}};
    std::cout << "group closure: order " << (cl.order ? std::to_string(*cl.order) : "> budget") << "\n";
    if (cl.noncommuting) {
      auto mat = [](const Matrix& m) {
        ordered_json rows = ordered_json::array();
        for (std::size_t i = 0; i < m.size(); ++i) {
          ordered_json row = ordered_json::array();
          for (std::size_t j = 0; j < m.size(); ++j) row.push_back(cli::complex_json(m(i, j)));
          rows.push_back(row);
        }
        return rows;
      };
      closure["noncommuting_pair"] = {mat(cl.elements[cl.noncommuting->first]),
                                      mat(cl.elements[cl.noncommuting->second])};
      std::cout << "non-commuting pair: elements " << cl.noncommuting->first << " and "
                << cl.noncommuting->second << " of the enumeration\n";
    } else if (cl.order) {
      std::cout << "the group is abelian\n";
    }
    out["closure"] = closure;
  }

  std::size_t side = 1;
  while (std::pow(static_cast<double>(side), static_cast<double>(n)) < static_cast<double>(a.seeds)) ++side;
  auto seeds = lattice_seeds(std::vector<int>(n, static_cast<int>(side)), a.radius);
  seeds.resize(std::min(seeds.size(), a.seeds));

  PseudogroupOptions po;
  po.word_budget = a.word_budget;
  po.point_budget = a.point_budget;
  std::vector<PseudogroupOrbit> orbits(seeds.size());
  parallel_for(seeds.size(), threads, [&](std::size_t i) { orbits[i] = pseudogroup_orbit(gens, seeds[i], V, po); });

  std::map<std::size_t, std::size_t> histogram;
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const std::size_t k = orbits[i].points.size();
    ++histogram[k];
    ordered_json seed = ordered_json::array();
    for (const auto& z : seeds[i]) seed.push_back(cli::complex_json(z));
    ordered_json row{{"seed", seed}, {"cardinality", k}, {"truncated", orbits[i].truncated}};
    if (order) row["divides_order"] = *order % k == 0;
    rows.push_back(row);
  }
  out["orbits"] = rows;
  std::cout << "orbit cardinalities over " << seeds.size() << " seeds:";
  for (const auto& [k, c] : histogram) std::cout << " " << k << " (x" << c << ")";
  std::cout << "\n";

  if (!a.json_out.empty()) cli::write_text(a.json_out, out.dump(2) + "\n");
  if (!a.svg.empty()) {
    const auto plane = cli::parse_plane(a.svg_plane, n);
    std::vector<cli::ScatterSeries> series;
    for (std::size_t i = 0; i < std::min<std::size_t>(orbits.size(), 12); ++i)
      series.push_back({"seed " + std::to_string(i), orbits[i].points});
    cli::write_text(a.svg, cli::scatter_svg(series, plane, a.radius, "pseudogroup orbits"));
  }
  return 0;
}

// ---------------------------------------------------------------------------
// petal

struct PetalArgs {
  int d = 1;
  std::string c = "1";
  std::size_t steps = 100'000;
  double seed_radius = 0.1;
  std::string json_out;
};

int run_petal(const PetalArgs& a) {
  PetalOptions o;
  o.steps = a.steps;
  o.seed_radius = a.seed_radius;
  const cplx c = cli::parse_complex(a.c);
  const auto rep = petal_analysis(a.d, c, o);
  std::cout << "x -> x + c x^" << a.d + 1 << ", c = " << complex_str(c) << "\n";
  std::cout << "attracting directions (rad):";
  for (double t : rep.attracting) std::cout << " " << cli::num(t);
  std::cout << "\nrepelling directions (rad):";
  for (double t : rep.repelling) std::cout << " " << cli::num(t);
  std::cout << "\n" << rep.runs.size() << " seeded runs, " << (rep.all_converged ? "all" : "not all")
            << " converged, max arg error " << cli::num(rep.max_arg_error) << "\n";
  if (!a.json_out.empty()) {
    ordered_json runs = ordered_json::array();
    for (const auto& r : rep.runs)
      runs.push_back({{"direction", r.direction},
                      {"seed_angle", r.seed_angle},
                      {"final_modulus", r.final_modulus},
                      {"arg_error", r.arg_error},
                      {"converged", r.converged}});
    ordered_json out{{"config", {{"command", "petal"}, {"d", a.d}, {"c", cli::complex_json(c)},
                                 {"steps", a.steps}, {"seed_radius", a.seed_radius}}},
                     {"attracting", rep.attracting},
                     {"repelling", rep.repelling},
                     {"runs", runs},
                     {"all_converged", rep.all_converged}};
    cli::write_text(a.json_out, out.dump(2) + "\n");
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify-integral

struct IntegralArgs {
  std::string field = "example1(1,1,1,1)";
  std::string g = "1,1";
  std::string point = "0.3:0.1,0.2:-0.2";
  std::string time = "1";
  double tol = 1e-8;
};

int run_verify_integral(const IntegralArgs& a) {
  const VectorField X = presets::load_field(a.field);
  const std::vector<int> ex = cli::parse_ints(a.g);
  if (ex.size() != X.n_vars()) throw DimensionError("--g needs one exponent per coordinate");
  if (std::any_of(ex.begin(), ex.end(), [](int v) { return v < 0; })) throw DomainError("--g exponents must be >= 0");
  const MultiIndex e(ex);
  const Jet g = Jet::monomial(X.n_vars(), std::max(e.degree(), 1), e);
  const Point p = cli::parse_point(a.point);
  if (p.size() != X.n_vars()) throw DimensionError("--point has the wrong number of coordinates");
  const cplx t = cli::parse_complex(a.time);

  const Jet lie = lie_derivative(X.with_order(std::max(X.order(), e.degree() + X.degree())),
                                 g.with_order(e.degree() + X.degree()));
  const double drift = first_integral_drift(X, g, p, TimePath::segment(t));
  std::cout << "g = x^(" << a.g << ") along " << a.field << "\n"
            << "  Lie derivative: " << (lie.is_zero() ? "0 (exact)" : "nonzero") << "\n"
            << "  numeric drift over [0, " << complex_str(t) << "]: " << cli::num(drift) << "\n";
  const bool ok = lie.is_zero() && drift < a.tol;
  std::cout << (ok ? "first integral confirmed" : "not a first integral at this tolerance") << "\n";
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// reproduce-paper

struct ReproduceArgs {
  std::string report = "reproduce_report.md";
  std::vector<int> only;
};

int run_reproduce(const ReproduceArgs& a, unsigned threads) {
  AcceptanceOptions o;
  o.threads = threads;
  o.only = a.only;
  const auto results = run_acceptance(o, [](const CriterionResult& r) {
    std::printf("[%s] %2d %s (%.2fs)\n     %s\n", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str(),
                r.seconds, r.detail.c_str());
    std::fflush(stdout);
  });
  if (!a.report.empty()) cli::write_text(a.report, acceptance_markdown(results));
  const bool ok = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  return ok ? 0 : 1;
}

unsigned default_threads() {
  if (const char* env = std::getenv("HOLODYN_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Holonomy maps, formal flows and orbit experiments for singular holomorphic foliations"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  unsigned threads = default_threads();
  app.add_option("--threads", threads, "Worker threads (default: HOLODYN_THREADS or 1)")
      ->check(CLI::PositiveNumber);

  HolonomyArgs ha;
  auto* hol = app.add_subcommand("holonomy", "Holonomy series along the separatrix and its normal form");
  hol->add_option("--field", ha.field, "Field preset or JSON file")->capture_default_str();
  hol->add_option("--order", ha.order, "Jet order N")->check(CLI::Range(1, 40))->capture_default_str();
  hol->add_option("--z0", ha.z0, "Base point on the axis (re or re:im)")->capture_default_str();
  hol->add_option("--axis", ha.axis, "Separatrix axis index (default: preset's)");
  hol->add_option("--transversal-radius", ha.radius, "Transversal radius")->check(CLI::PositiveNumber);
  hol->add_option("--emit", ha.emit, "Write coefficient table and jet as JSON");
  hol->add_option("--oracle", ha.oracle, "Write series vs numeric monodromy CSV");
  hol->add_option("--oracle-radius", ha.oracle_radius, "Radius of the oracle grid")->check(CLI::PositiveNumber);

  FlowArgs fa;
  auto* flow = app.add_subcommand("flow", "Formal (and optionally numeric) flow of a vector field");
  flow->add_option("--field", fa.field, "Field preset or JSON file")->capture_default_str();
  flow->add_option("--time", fa.time, "Complex time (re or re:im)")->capture_default_str();
  flow->add_option("--order", fa.order, "Jet order")->check(CLI::Range(1, 40))->capture_default_str();
  flow->add_option("--point", fa.point, "Also integrate numerically from this point (re:im,re:im,...)");
  flow->add_option("--json", fa.json_out, "Write the flow jet as JSON");

  OrbitArgs oa;
  auto* orb = app.add_subcommand("orbit", "Classify orbits of a germ on a seed grid");
  orb->add_option("--map", oa.map, "Map preset or JSON file")->capture_default_str();
  orb->add_option("--radius", oa.radius, "Polydisc radius rho")->check(CLI::PositiveNumber)->capture_default_str();
  orb->add_option("--grid", oa.grid, "Lattice counts per coordinate, e.g. 20x20")->capture_default_str();
  orb->add_option("--budget", oa.budget, "Iterations per direction")->check(CLI::PositiveNumber)->capture_default_str();
  orb->add_option("--cycle-tol", oa.cycle_tol, "Return tolerance relative to rho")->check(CLI::PositiveNumber);
  orb->add_option("--dedup-tol", oa.dedup_tol, "Point identification tolerance relative to rho")
      ->check(CLI::PositiveNumber);
  orb->add_option("--csv", oa.csv, "Write per-seed CSV ('-' for stdout)");
  orb->add_flag("--level-circle", oa.level_circle, "Seeds on the circle xy = C, |x| = |y|");
  orb->add_option("--level", oa.level, "C for --level-circle (default: the irrational-rotation level)");
  orb->add_option("--count", oa.count, "Seeds for --level-circle")->check(CLI::PositiveNumber);
  orb->add_option("--random-seeds", oa.random_seeds, "Use k uniform random seeds instead of the lattice");
  orb->add_option("--seed", oa.seed, "Seed of the mt19937_64 generator for --random-seeds");
  orb->add_option("--svg", oa.svg, "Write an orbit scatter plot");
  orb->add_option("--svg-plane", oa.svg_plane, "Projection: x, y or abs")->capture_default_str();
  orb->add_option("--svg-orbits", oa.svg_orbits, "Number of seeds drawn")->check(CLI::PositiveNumber);

  PseudogroupArgs pa;
  auto* pg = app.add_subcommand("pseudogroup", "Pseudogroup orbits and finite group closure");
  pg->add_option("--preset", pa.preset, "Generator preset (schur24, h1h2)")->capture_default_str();
  pg->add_option("--map", pa.maps, "Generator map preset or JSON file (repeatable; overrides --preset)");
  pg->add_option("--seeds", pa.seeds, "Number of lattice seeds")->check(CLI::PositiveNumber)->capture_default_str();
  pg->add_option("--radius", pa.radius, "Polydisc radius")->check(CLI::PositiveNumber)->capture_default_str();
  pg->add_option("--word-budget", pa.word_budget, "Maximum word length")->check(CLI::PositiveNumber);
  pg->add_option("--point-budget", pa.point_budget, "Maximum orbit points per seed")->check(CLI::PositiveNumber);
  pg->add_option("--json", pa.json_out, "Write results as JSON");
  pg->add_option("--svg", pa.svg, "Write an orbit scatter plot");
  pg->add_option("--svg-plane", pa.svg_plane, "Projection: x, y or abs");

  PetalArgs pe;
  auto* pet = app.add_subcommand("petal", "Characteristic directions of x -> x + c x^{d+1}");
  pet->add_option("--d", pe.d, "Multiplicity d")->check(CLI::PositiveNumber)->capture_default_str();
  pet->add_option("--c", pe.c, "Coefficient c (re or re:im)")->capture_default_str();
  pet->add_option("--steps", pe.steps, "Iterations per seeded run")->check(CLI::PositiveNumber);
  pet->add_option("--seed-radius", pe.seed_radius, "Modulus of seeded points")->check(CLI::PositiveNumber);
  pet->add_option("--json", pe.json_out, "Write results as JSON");

  IntegralArgs ia;
  auto* vi = app.add_subcommand("verify-integral", "Check that a monomial is a first integral of a field");
  vi->add_option("--field", ia.field, "Field preset or JSON file")->capture_default_str();
  vi->add_option("--g", ia.g, "Exponents of the monomial, e.g. 1,1")->capture_default_str();
  vi->add_option("--point", ia.point, "Start point (re:im,re:im,...)")->capture_default_str();
  vi->add_option("--time", ia.time, "Final time (re or re:im)")->capture_default_str();
  vi->add_option("--tol", ia.tol, "Drift tolerance")->check(CLI::PositiveNumber)->capture_default_str();

  ReproduceArgs ra;
  auto* rp = app.add_subcommand("reproduce-paper", "Run the numbered reproduction checks");
  rp->add_option("--report", ra.report, "Markdown report path ('' to skip)")->capture_default_str();
  rp->add_option("--only", ra.only, "Run only these check numbers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*hol) return run_holonomy(ha);
    if (*flow) return run_flow(fa);
    if (*orb) return run_orbit(oa, threads);
    if (*pg) return run_pseudogroup(pa, threads);
    if (*pet) return run_petal(pe);
    if (*vi) return run_verify_integral(ia);
    if (*rp) return run_reproduce(ra, threads);
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
