#include "holodyn/presets.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "holodyn/errors.hpp"
#include "json_io.hpp"

namespace holodyn::presets {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kTwoPiI{0.0, 2.0 * kPi};

struct Call {
  std::string name;
  std::vector<std::string> args;
  bool has_parens = false;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

Call parse_call(std::string_view s) {
  Call c;
  const auto open = s.find('(');
  if (open == std::string_view::npos) {
    c.name = trim(s);
    return c;
  }
  if (s.back() != ')') throw ParseError("malformed preset '" + std::string(s) + "'");
  c.name = trim(s.substr(0, open));
  c.has_parens = true;
  const std::string_view inner = s.substr(open + 1, s.size() - open - 2);
  int depth = 0;
  std::string cur;
  for (char ch : inner) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      c.args.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!trim(cur).empty() || !c.args.empty()) c.args.push_back(trim(cur));
  return c;
}

double parse_double(const std::string& s) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw ParseError("");
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected a number, got '" + s + "'");
  }
}

int parse_int(const std::string& s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError("expected an integer, got '" + s + "'");
  return v;
}

// "x" or "re:im"
cplx parse_complex(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) return {parse_double(s), 0.0};
  return {parse_double(s.substr(0, colon)), parse_double(s.substr(colon + 1))};
}

void expect_args(const Call& c, std::size_t n) {
  if (c.args.size() != n)
    throw ParseError("preset '" + c.name + "' expects " + std::to_string(n) + " argument(s)");
}

[[noreturn]] void unknown(const char* what, std::string_view name,
                          const std::vector<std::string>& known) {
  std::string msg = std::string("unknown ") + what + " '" + std::string(name) + "'; available: ";
  for (std::size_t i = 0; i < known.size(); ++i) msg += (i ? ", " : "") + known[i];
  throw ParseError(msg);
}

Jet constant_f(cplx c) { return Jet::constant(1, 4, c); }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_file(const std::string& source) {
  std::error_code ec;
  return std::filesystem::is_regular_file(source, ec);
}

}  // namespace

double f_rotation_number() { return (std::sqrt(5.0) - 1.0) / 20.0; }

cplx f_level_constant() {
  return (std::polar(1.0, 2.0 * kPi * f_rotation_number()) - 1.0) / kTwoPiI;
}

std::vector<std::string> field_names() {
  return {"thmB", "example3", "example1(n,m,a,b)", "linear(l1,...,ln)", "genF", "genH",
          "gen(a,b)", "zero(n)"};
}

std::vector<std::string> map_names() {
  return {"H", "F", "h1", "h2", "swap", "rot(p/q)", "double", "half", "identity(n)", "phiX",
          "parabolic(d,c)"};
}

VectorField field(std::string_view name) {
  const Call c = parse_call(name);
  if (c.name == "thmB") return fields::thm_b();
  if (c.name == "example3") return fields::example3();
  if (c.name == "genF") return fields::generator(1, 1);
  if (c.name == "genH") return fields::generator(2, 1);
  if (c.name == "gen") {
    expect_args(c, 2);
    return fields::generator(parse_int(c.args[0]), parse_int(c.args[1]));
  }
  if (c.name == "example1") {
    expect_args(c, 4);
    return fields::example1(parse_int(c.args[0]), parse_int(c.args[1]), parse_int(c.args[2]),
                            parse_int(c.args[3]));
  }
  if (c.name == "linear") {
    if (c.args.empty()) throw ParseError("linear(...) needs at least one eigenvalue");
    std::vector<cplx> l;
    for (const auto& a : c.args) l.push_back(parse_complex(a));
    return fields::linear(l);
  }
  if (c.name == "zero") {
    expect_args(c, 1);
    return fields::zero(static_cast<std::size_t>(parse_int(c.args[0])));
  }
  unknown("field", name, field_names());
}

Foliation foliation(std::string_view name) {
  const Call c = parse_call(name);
  if (c.name == "realize") {
    expect_args(c, 1);
    return realize_as_holonomy(field(c.args[0]));
  }
  VectorField f = field(name);
  const std::size_t axis = c.name == "linear" ? 0 : f.n_vars() - 1;
  return Foliation(std::move(f), axis);
}

EvaluableMap map(std::string_view name) {
  const Call c = parse_call(name);
  const std::string label(name);
  if (c.name == "H") return EvaluableMap::product_preserving(2, 1, constant_f(kTwoPiI), label);
  if (c.name == "F") return EvaluableMap::product_preserving(1, 1, constant_f(kTwoPiI), label);
  if (c.name == "h1") {
    const std::vector<cplx> d{std::polar(1.0, kPi / 3.0), std::polar(1.0, 2.0 * kPi / 3.0)};
    return EvaluableMap::linear(Matrix::diagonal(d), label);
  }
  if (c.name == "h2" || c.name == "swap") return EvaluableMap::permutation({1, 0}, Matrix::identity(2), label);
  if (c.name == "rot") {
    expect_args(c, 1);
    const Rational q = Rational::parse(c.args[0]);
    const std::vector<cplx> d{std::polar(1.0, 2.0 * kPi * q.to_double())};
    return EvaluableMap::linear(Matrix::diagonal(d), label);
  }
  if (c.name == "double" || c.name == "half") {
    const std::vector<cplx> d{c.name == "double" ? 2.0 : 0.5};
    return EvaluableMap::linear(Matrix::diagonal(d), label);
  }
  if (c.name == "identity") {
    expect_args(c, 1);
    return EvaluableMap::linear(Matrix::identity(static_cast<std::size_t>(parse_int(c.args[0]))), label);
  }
  if (c.name == "phiX") return EvaluableMap::time_one(fields::example1(1, 1, 1, 1), {}, label);
  if (c.name == "parabolic") {
    expect_args(c, 2);
    return EvaluableMap::parabolic(parse_int(c.args[0]), parse_complex(c.args[1]), label);
  }
  unknown("map", name, map_names());
}

std::vector<EvaluableMap> generators(std::string_view name) {
  if (name == "schur24" || name == "h1h2") return {map("h1"), map("h2")};
  return {map(name)};
}

VectorField load_field(const std::string& source) {
  if (is_file(source)) return field_from_json(read_file(source));
  return field(source);
}

Foliation load_foliation(const std::string& source, std::optional<std::size_t> axis) {
  if (is_file(source)) {
    const auto j = detail::parse_text(read_file(source));
    VectorField f = detail::field_parse(j);
    std::size_t ax = f.n_vars() - 1;
    if (j.contains("axis")) {
      if (!j["axis"].is_number_unsigned()) throw ParseError("axis: expected a non-negative integer");
      ax = j["axis"].get<std::size_t>();
    }
    if (axis) ax = *axis;
    return Foliation(std::move(f), ax);
  }
  Foliation F = foliation(source);
  if (axis) return Foliation(F.field(), *axis);
  return F;
}

EvaluableMap load_map(const std::string& source) {
  if (is_file(source)) return map_from_json(read_file(source));
  return map(source);
}

namespace {

using detail::json;

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(detail::complex_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_parse(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix: expected a non-empty array of rows");
  Matrix m(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != j.size())
      throw ParseError("matrix: row " + std::to_string(i) + " has the wrong length");
    for (std::size_t k = 0; k < j.size(); ++k) m(i, k) = detail::complex_parse(j[i][k]);
  }
  return m;
}

}  // namespace

EvaluableMap map_from_json(std::string_view text) {
  const auto j = detail::parse_text(text);
  try {
    const auto kind = detail::require(j, "kind").get<std::string>();
    const std::string name = j.value("name", kind);
    if (kind == "linear") return EvaluableMap::linear(matrix_parse(detail::require(j, "matrix")), name);
    if (kind == "permutation") {
      auto perm = detail::require(j, "perm").get<std::vector<std::size_t>>();
      Matrix m = j.contains("matrix") ? matrix_parse(j["matrix"]) : Matrix::identity(perm.size());
      return EvaluableMap::permutation(std::move(perm), std::move(m), name);
    }
    if (kind == "product_preserving")
      return EvaluableMap::product_preserving(detail::require(j, "a").get<int>(),
                                              detail::require(j, "b").get<int>(),
                                              detail::jet_parse(detail::require(j, "f")), name);
    if (kind == "parabolic")
      return EvaluableMap::parabolic(detail::require(j, "d").get<int>(),
                                     detail::complex_parse(detail::require(j, "c")), name);
    if (kind == "time_one") {
      IntegratorOptions o;
      o.abs_tol = j.value("abs_tol", o.abs_tol);
      o.rel_tol = j.value("rel_tol", o.rel_tol);
      return EvaluableMap::time_one(detail::field_parse(detail::require(j, "field")), o, name);
    }
    if (kind == "jet") {
      std::vector<Jet> comps;
      for (const auto& c : detail::require(j, "components")) comps.push_back(detail::jet_parse(c));
      return EvaluableMap::truncated_jet(JetMap(std::move(comps)), name);
    }
    throw ParseError("map: unknown kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw ParseError(std::string("map: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("map: ") + e.what());
  } catch (const DimensionError& e) {
    throw ParseError(std::string("map: ") + e.what());
  }
}

std::string map_to_json(const EvaluableMap& m) {
  json out;
  if (auto* v = std::get_if<LinearMap>(&m.variant())) {
    out = {{"kind", "linear"}, {"matrix", matrix_json(v->m)}};
  } else if (auto* v = std::get_if<PermutationMap>(&m.variant())) {
    out = {{"kind", "permutation"}, {"perm", v->perm}, {"matrix", matrix_json(v->m)}};
  } else if (auto* v = std::get_if<ProductPreservingMap>(&m.variant())) {
    out = {{"kind", "product_preserving"}, {"a", v->a}, {"b", v->b}, {"f", detail::jet_json(v->f)}};
  } else if (auto* v = std::get_if<ParabolicMap>(&m.variant())) {
    out = {{"kind", "parabolic"}, {"d", v->d}, {"c", detail::complex_json(v->c)}};
  } else if (auto* v = std::get_if<TimeOneMap>(&m.variant())) {
    out = {{"kind", "time_one"},
           {"field", detail::field_json(v->field)},
           {"abs_tol", v->opts.abs_tol},
           {"rel_tol", v->opts.rel_tol}};
  } else if (auto* v = std::get_if<TruncatedJetMap>(&m.variant())) {
    json comps = json::array();
    for (const auto& c : v->map.components()) comps.push_back(detail::jet_json(c));
    out = {{"kind", "jet"}, {"components", std::move(comps)}};
  }
  if (!m.name().empty()) out["name"] = m.name();
  return out.dump();
}

}  // namespace holodyn::presets
