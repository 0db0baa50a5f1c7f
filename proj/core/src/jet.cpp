#include "holodyn/jet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

#include "holodyn/errors.hpp"
#include "json_io.hpp"

namespace holodyn {

MultiIndex::MultiIndex(std::initializer_list<int> e) : MultiIndex(std::vector<int>(e)) {}

MultiIndex::MultiIndex(std::vector<int> e) : e_(std::move(e)) {
  for (int x : e_) {
    if (x < 0) throw DomainError("MultiIndex: negative exponent");
    degree_ += x;
  }
}

MultiIndex MultiIndex::unit(std::size_t n, std::size_t i) {
  std::vector<int> e(n, 0);
  e.at(i) = 1;
  return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  MultiIndex r = *this;
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
  r.degree_ += o.degree_;
  return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& o) const {
  MultiIndex r = *this;
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
  r.degree_ -= o.degree_;
  return r;
}

bool MultiIndex::divisible_by(const MultiIndex& o) const {
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] < o.e_[i]) return false;
  return true;
}

MultiIndex MultiIndex::lowered(std::size_t i) const {
  MultiIndex r = *this;
  --r.e_[i];
  --r.degree_;
  return r;
}

std::string MultiIndex::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < e_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(e_[i]);
  }
  return s + "]";
}

bool GradedLex::operator()(const MultiIndex& a, const MultiIndex& b) const {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

namespace {

void monomials_rec(std::size_t var, int remaining, std::vector<int>& cur,
                   std::vector<MultiIndex>& out) {
  if (var + 1 == cur.size()) {
    cur[var] = remaining;
    out.emplace_back(cur);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    cur[var] = k;
    monomials_rec(var + 1, remaining - k, cur, out);
  }
}

void require_same_shape(const Jet& a, const Jet& b, const char* op) {
  if (a.n_vars() != b.n_vars() || a.order() != b.order())
    throw DimensionError(std::string(op) + ": jets differ in n_vars or order");
}

}  // namespace

std::vector<MultiIndex> monomials_of_degree(std::size_t n, int degree) {
  std::vector<MultiIndex> out;
  if (n == 0) return out;
  std::vector<int> cur(n, 0);
  monomials_rec(0, degree, cur, out);
  return out;
}

// ---------------------------------------------------------------------------

Jet::Jet(std::size_t n_vars, int order) : n_(n_vars), order_(order) {
  if (n_vars == 0) throw DimensionError("Jet: need at least one variable");
  if (order < 0) throw DomainError("Jet: negative truncation order");
}

Jet::Jet(std::size_t n_vars, int order, Terms terms) : Jet(n_vars, order) {
  for (auto it = terms.begin(); it != terms.end();) {
    if (it->first.size() != n_) throw DimensionError("Jet: exponent length differs from n_vars");
    if (it->first.degree() > order_ || std::abs(it->second) < kPruneTol)
      it = terms.erase(it);
    else
      ++it;
  }
  terms_ = std::move(terms);
}

Jet Jet::constant(std::size_t n_vars, int order, cplx c) {
  return monomial(n_vars, order, MultiIndex(n_vars), c);
}

Jet Jet::variable(std::size_t n_vars, int order, std::size_t i) {
  return monomial(n_vars, order, MultiIndex::unit(n_vars, i), 1.0);
}

Jet Jet::monomial(std::size_t n_vars, int order, const MultiIndex& e, cplx c) {
  Terms t;
  t.emplace(e, c);
  return Jet(n_vars, order, std::move(t));
}

cplx Jet::coeff(const MultiIndex& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? cplx{} : it->second;
}

cplx Jet::constant_term() const { return coeff(MultiIndex(n_)); }

int Jet::min_degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }
int Jet::max_degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

Jet Jet::with_order(int order) const { return Jet(n_, order, terms_); }

Jet Jet::homogeneous_part(int degree) const {
  Terms t;
  for (const auto& [e, c] : terms_)
    if (e.degree() == degree) t.emplace(e, c);
  return Jet(n_, order_, std::move(t));
}

Jet Jet::nonlinear_part() const {
  Terms t;
  for (const auto& [e, c] : terms_)
    if (e.degree() >= 2) t.emplace(e, c);
  return Jet(n_, order_, std::move(t));
}

Jet Jet::derivative(std::size_t var) const {
  if (var >= n_) throw DimensionError("Jet::derivative: variable out of range");
  Terms t;
  for (const auto& [e, c] : terms_)
    if (e[var] > 0) t.emplace(e.lowered(var), c * static_cast<double>(e[var]));
  return Jet(n_, order_, std::move(t));
}

cplx Jet::eval(std::span<const cplx> p) const {
  if (p.size() != n_) throw DimensionError("Jet::eval: point dimension mismatch");
  std::vector<std::vector<cplx>> pw(n_, std::vector<cplx>{1.0});
  cplx sum{};
  for (const auto& [e, c] : terms_) {
    cplx m = c;
    for (std::size_t i = 0; i < n_; ++i) {
      auto& row = pw[i];
      while (static_cast<int>(row.size()) <= e[i]) row.push_back(row.back() * p[i]);
      m *= row[e[i]];
    }
    sum += m;
  }
  return sum;
}

Jet Jet::operator-() const { return scaled(-1.0); }

Jet Jet::scaled(cplx s) const {
  Terms t;
  for (const auto& [e, c] : terms_) t.emplace(e, c * s);
  return Jet(n_, order_, std::move(t));
}

Jet jet_add(const Jet& a, const Jet& b) {
  require_same_shape(a, b, "jet_add");
  Jet::Terms t = a.terms();
  for (const auto& [e, c] : b.terms()) t[e] += c;
  return Jet(a.n_vars(), a.order(), std::move(t));
}

Jet jet_sub(const Jet& a, const Jet& b) {
  require_same_shape(a, b, "jet_sub");
  Jet::Terms t = a.terms();
  for (const auto& [e, c] : b.terms()) t[e] -= c;
  return Jet(a.n_vars(), a.order(), std::move(t));
}

Jet jet_mul(const Jet& a, const Jet& b) {
  require_same_shape(a, b, "jet_mul");
  const int n = a.order();
  Jet::Terms t;
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      // terms are graded, so the rest of b only gets worse
      if (ea.degree() + eb.degree() > n) break;
      t[ea + eb] += ca * cb;
    }
  }
  return Jet(a.n_vars(), n, std::move(t));
}

Jet jet_reciprocal(const Jet& a) {
  const cplx c0 = a.constant_term();
  if (c0 == cplx{}) throw DomainError("jet_reciprocal: zero constant term");
  // a = c0 (1 + u), 1/a = (1/c0) sum (-u)^k, Horner: r <- 1 - u r
  const Jet one = Jet::constant(a.n_vars(), a.order(), 1.0);
  const Jet u = jet_sub(a.scaled(1.0 / c0), one);
  Jet r = one;
  for (int k = 0; k < a.order(); ++k) r = jet_sub(one, jet_mul(u, r));
  return r.scaled(1.0 / c0);
}

Jet jet_pow(const Jet& a, int k) {
  if (k < 0) return jet_pow(jet_reciprocal(a), -k);
  Jet r = Jet::constant(a.n_vars(), a.order(), 1.0);
  Jet base = a;
  while (k > 0) {
    if (k & 1) r = jet_mul(r, base);
    k >>= 1;
    if (k) base = jet_mul(base, base);
  }
  return r;
}

double max_coeff_diff(const Jet& a, const Jet& b) {
  require_same_shape(a, b, "max_coeff_diff");
  double m = 0.0;
  for (const auto& [e, c] : a.terms()) m = std::max(m, std::abs(c - b.coeff(e)));
  for (const auto& [e, c] : b.terms())
    if (!a.terms().contains(e)) m = std::max(m, std::abs(c));
  return m;
}

// ---------------------------------------------------------------------------

JetMap::JetMap(std::vector<Jet> components) : comps_(std::move(components)) {
  if (comps_.empty()) throw DimensionError("JetMap: no components");
  const std::size_t n = comps_.size();
  const int order = comps_.front().order();
  linear_ = Matrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Jet& c = comps_[i];
    if (c.n_vars() != n || c.order() != order)
      throw DimensionError("JetMap: components must be jets in n variables of a common order");
    if (c.constant_term() != cplx{}) throw DomainError("JetMap: nonzero constant term");
    for (std::size_t j = 0; j < n; ++j) linear_(i, j) = c.coeff(MultiIndex::unit(n, j));
  }
}

JetMap JetMap::identity(std::size_t n, int order) { return linear(Matrix::identity(n), order); }

JetMap JetMap::linear(const Matrix& m, int order) {
  const std::size_t n = m.size();
  std::vector<Jet> comps;
  comps.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Jet::Terms t;
    for (std::size_t j = 0; j < n; ++j) t.emplace(MultiIndex::unit(n, j), m(i, j));
    comps.emplace_back(n, order, std::move(t));
  }
  return JetMap(std::move(comps));
}

Point JetMap::eval(std::span<const cplx> p) const {
  Point r(comps_.size());
  for (std::size_t i = 0; i < comps_.size(); ++i) r[i] = comps_[i].eval(p);
  return r;
}

Jet jet_compose(const Jet& g, const JetMap& h) {
  if (g.n_vars() != h.size()) throw DimensionError("jet_compose: g.n_vars differs from map size");
  const std::size_t n = h.size();
  const int order = std::min(g.order(), h.order());
  std::vector<Jet> hc;
  hc.reserve(n);
  for (const auto& c : h.components()) hc.push_back(c.with_order(order));

  // powers[i][k] = h_i^k, extended lazily
  std::vector<std::vector<Jet>> powers(n);
  for (std::size_t i = 0; i < n; ++i) powers[i].push_back(Jet::constant(n, order, 1.0));

  Jet::Terms acc;
  for (const auto& [e, c] : g.terms()) {
    if (e.degree() > order) break;
    Jet m = Jet::constant(n, order, c);
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] == 0) continue;
      auto& row = powers[i];
      while (static_cast<int>(row.size()) <= e[i]) row.push_back(jet_mul(row.back(), hc[i]));
      m = jet_mul(m, row[e[i]]);
    }
    for (const auto& [me, mc] : m.terms()) acc[me] += mc;
  }
  return Jet(n, order, std::move(acc));
}

JetMap jetmap_compose(const JetMap& h1, const JetMap& h2) {
  if (h1.size() != h2.size() || h1.order() != h2.order())
    throw DimensionError("jetmap_compose: maps differ in size or order");
  std::vector<Jet> out;
  out.reserve(h1.size());
  for (const auto& c : h1.components()) out.push_back(jet_compose(c, h2));
  return JetMap(std::move(out));
}

JetMap jetmap_inverse(const JetMap& h) {
  const std::size_t n = h.size();
  const int order = h.order();
  const Matrix linv = h.linear_part().inverse();

  std::vector<Jet> nonlin;
  nonlin.reserve(n);
  for (const auto& c : h.components()) nonlin.push_back(c.nonlinear_part());

  // g <- L^{-1} (id - N o g); each pass fixes one more degree.
  JetMap g = JetMap::linear(linv, order);
  for (int pass = 1; pass < order; ++pass) {
    std::vector<Jet> r;
    r.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      r.push_back(jet_sub(Jet::variable(n, order, i), jet_compose(nonlin[i], g)));
    std::vector<Jet> next;
    next.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      Jet acc(n, order);
      for (std::size_t j = 0; j < n; ++j)
        if (linv(i, j) != cplx{}) acc = jet_add(acc, r[j].scaled(linv(i, j)));
      next.push_back(std::move(acc));
    }
    g = JetMap(std::move(next));
  }
  return g;
}

double max_coeff_diff(const JetMap& a, const JetMap& b) {
  if (a.size() != b.size()) throw DimensionError("max_coeff_diff: map sizes differ");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, max_coeff_diff(a[i], b[i]));
  return m;
}

// ---------------------------------------------------------------------------
// JSON

namespace detail {

json parse_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

const json& require(const json& obj, const char* key) {
  if (!obj.is_object()) throw ParseError(std::string("expected an object holding '") + key + "'");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_parse(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("expected a complex number as [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json jet_json(const Jet& jt) {
  json terms = json::array();
  for (const auto& [e, c] : jt.terms())
    terms.push_back({{"exp", e.exponents()}, {"re", c.real()}, {"im", c.imag()}});
  return {{"n_vars", jt.n_vars()}, {"order", jt.order()}, {"terms", std::move(terms)}};
}

Jet jet_parse(const json& j) {
  try {
    const auto n = require(j, "n_vars").get<std::size_t>();
    const auto order = require(j, "order").get<int>();
    Jet::Terms t;
    std::size_t idx = 0;
    for (const auto& term : require(j, "terms")) {
      auto exps = require(term, "exp").get<std::vector<int>>();
      if (exps.size() != n)
        throw ParseError("term " + std::to_string(idx) + ": exponent length differs from n_vars");
      t[MultiIndex(std::move(exps))] +=
          cplx{require(term, "re").get<double>(), require(term, "im").get<double>()};
      ++idx;
    }
    return Jet(n, order, std::move(t));
  } catch (const json::exception& e) {
    throw ParseError(std::string("jet: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("jet: ") + e.what());
  }
}

}  // namespace detail

std::string jet_to_json(const Jet& j) { return detail::jet_json(j).dump(); }

Jet jet_from_json(std::string_view text) { return detail::jet_parse(detail::parse_text(text)); }

std::string jetmap_to_json(const JetMap& m) {
  detail::json comps = detail::json::array();
  for (const auto& c : m.components()) comps.push_back(detail::jet_json(c));
  return detail::json{{"components", std::move(comps)}}.dump();
}

JetMap jetmap_from_json(std::string_view text) {
  const auto j = detail::parse_text(text);
  std::vector<Jet> comps;
  for (const auto& c : detail::require(j, "components")) comps.push_back(detail::jet_parse(c));
  return JetMap(std::move(comps));
}

}  // namespace holodyn
