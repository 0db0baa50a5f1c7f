#include "holodyn/exp_poly.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <tuple>

#include "holodyn/errors.hpp"
#include "holodyn/jet.hpp"
#include "json_io.hpp"

namespace holodyn {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kResonanceTol = 1e-12;

std::int64_t checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw DomainError("Rational: overflow");
  return static_cast<std::int64_t>(v);
}

Rational make_reduced(__int128 num, __int128 den) {
  if (den == 0) throw DomainError("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 a = num < 0 ? -num : num, b = den;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return Rational(checked(num), checked(den));
}

// e^{2 pi i x} with exact values at quarter turns.
cplx unit_phase(double x) {
  x -= std::floor(x);
  if (x == 0.0) return {1.0, 0.0};
  if (x == 0.25) return {0.0, 1.0};
  if (x == 0.5) return {-1.0, 0.0};
  if (x == 0.75) return {0.0, -1.0};
  return {std::cos(kTwoPi * x), std::sin(kTwoPi * x)};
}

}  // namespace

// ---------------------------------------------------------------------------

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("Rational: zero denominator");
  const auto r = std::gcd(num, den);
  num_ = num / r;
  den_ = den / r;
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

Rational Rational::operator+(const Rational& o) const {
  return make_reduced(static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_,
                      static_cast<__int128>(den_) * o.den_);
}

Rational Rational::operator-(const Rational& o) const { return *this + (-o); }

Rational Rational::operator*(const Rational& o) const {
  return make_reduced(static_cast<__int128>(num_) * o.num_, static_cast<__int128>(den_) * o.den_);
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view s) {
  auto parse_int = [](std::string_view part) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc{} || ptr != part.data() + part.size())
      throw ParseError("malformed rational '" + std::string(part) + "'");
    return v;
  };
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(s));
  const auto den = parse_int(s.substr(slash + 1));
  if (den == 0) throw ParseError("malformed rational '" + std::string(s) + "': zero denominator");
  return Rational(parse_int(s.substr(0, slash)), den);
}

std::optional<Rational> Rational::snap(double x, std::int64_t max_den, double tol) {
  if (!std::isfinite(x) || std::abs(x) > 1e12) return std::nullopt;
  for (std::int64_t q = 1; q <= max_den; ++q) {
    const double p = std::round(x * static_cast<double>(q));
    if (std::abs(x - p / static_cast<double>(q)) < tol)
      return Rational(static_cast<std::int64_t>(p), q);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

Frequency Frequency::exact(Rational q_re, Rational q_im) {
  Frequency f;
  f.q_re_ = q_re;
  f.q_im_ = q_im;
  f.exact_ = true;
  f.mu_ = cplx{-kTwoPi * q_im.to_double(), kTwoPi * q_re.to_double()};
  return f;
}

Frequency Frequency::snapped(cplx mu, double tol) {
  // q = mu / (2 pi i) = (mu_im - i mu_re) / (2 pi)
  const double qr = mu.imag() / kTwoPi;
  const double qi = -mu.real() / kTwoPi;
  auto r = Rational::snap(qr, 64, tol);
  auto i = Rational::snap(qi, 64, tol);
  if (r && i) return exact(*r, *i);
  return Frequency(mu);
}

bool Frequency::is_zero() const {
  if (exact_) return q_re_.is_zero() && q_im_.is_zero();
  return std::abs(mu_) < kResonanceTol;
}

Frequency Frequency::operator+(const Frequency& o) const {
  if (exact_ && o.exact_) return exact(q_re_ + o.q_re_, q_im_ + o.q_im_);
  return Frequency(mu_ + o.mu_);
}

Frequency Frequency::operator-() const {
  if (exact_) return exact(-q_re_, -q_im_);
  return Frequency(-mu_);
}

Frequency Frequency::operator-(const Frequency& o) const { return *this + (-o); }

bool Frequency::same_as(const Frequency& o) const {
  if (exact_ && o.exact_) return q_re_ == o.q_re_ && q_im_ == o.q_im_;
  return std::abs(mu_ - o.mu_) < kResonanceTol;
}

cplx Frequency::exp_at(cplx t) const {
  if (exact_ && t.imag() == 0.0) {
    const double tr = t.real();
    const cplx phase = unit_phase(q_re_.to_double() * tr);
    if (q_im_.is_zero()) return phase;
    return phase * std::exp(-kTwoPi * q_im_.to_double() * tr);
  }
  return std::exp(mu_ * t);
}

// ---------------------------------------------------------------------------

namespace {

bool term_key_less(const ExpPoly::Term& a, const ExpPoly::Term& b) {
  return std::make_tuple(a.k, a.freq.mu().imag(), a.freq.mu().real()) <
         std::make_tuple(b.k, b.freq.mu().imag(), b.freq.mu().real());
}

void accumulate(std::vector<ExpPoly::Term>& out, int k, const Frequency& f, cplx c) {
  for (auto& t : out)
    if (t.k == k && t.freq.same_as(f)) {
      t.c += c;
      return;
    }
  out.push_back({k, f, c});
}

}  // namespace

ExpPoly::ExpPoly(std::vector<Term> terms) {
  for (const auto& t : terms) {
    if (t.k < 0) throw DomainError("ExpPoly: negative power of t");
    accumulate(terms_, t.k, t.freq, t.c);
  }
  std::erase_if(terms_, [](const Term& t) { return std::abs(t.c) < kPruneTol; });
  std::sort(terms_.begin(), terms_.end(), term_key_less);
}

ExpPoly ExpPoly::constant(cplx c) { return ExpPoly({Term{0, Frequency{}, c}}); }

ExpPoly ExpPoly::monomial(cplx c, int k, const Frequency& f) { return ExpPoly({Term{k, f, c}}); }

cplx ExpPoly::eval(cplx t) const {
  // Horner in t within each frequency group
  std::vector<const Term*> pending;
  pending.reserve(terms_.size());
  for (const auto& term : terms_) pending.push_back(&term);
  cplx sum{};
  while (!pending.empty()) {
    const Frequency f = pending.front()->freq;
    int kmax = 0;
    for (const Term* p : pending)
      if (p->freq.same_as(f)) kmax = std::max(kmax, p->k);
    std::vector<cplx> poly(static_cast<std::size_t>(kmax) + 1);
    std::erase_if(pending, [&](const Term* p) {
      if (!p->freq.same_as(f)) return false;
      poly[static_cast<std::size_t>(p->k)] += p->c;
      return true;
    });
    cplx h{};
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) h = h * t + *it;
    sum += h * f.exp_at(t);
  }
  return sum;
}

ExpPoly ExpPoly::derivative() const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.k > 0) out.push_back({t.k - 1, t.freq, t.c * static_cast<double>(t.k)});
    if (!t.freq.is_zero()) out.push_back({t.k, t.freq, t.c * t.freq.mu()});
  }
  return ExpPoly(std::move(out));
}

ExpPoly ExpPoly::scaled(cplx s) const {
  std::vector<Term> out = terms_;
  for (auto& t : out) t.c *= s;
  return ExpPoly(std::move(out));
}

double max_coeff_diff(const ExpPoly& a, const ExpPoly& b) {
  std::vector<ExpPoly::Term> d;
  for (const auto& t : a.terms_) accumulate(d, t.k, t.freq, t.c);
  for (const auto& t : b.terms_) accumulate(d, t.k, t.freq, -t.c);
  double m = 0.0;
  for (const auto& t : d) m = std::max(m, std::abs(t.c));
  return m;
}

ExpPoly expoly_add(const ExpPoly& a, const ExpPoly& b) {
  std::vector<ExpPoly::Term> t = a.terms();
  t.insert(t.end(), b.terms().begin(), b.terms().end());
  return ExpPoly(std::move(t));
}

ExpPoly expoly_sub(const ExpPoly& a, const ExpPoly& b) { return expoly_add(a, b.scaled(-1.0)); }

ExpPoly expoly_mul(const ExpPoly& a, const ExpPoly& b) {
  std::vector<ExpPoly::Term> t;
  t.reserve(a.terms().size() * b.terms().size());
  for (const auto& x : a.terms())
    for (const auto& y : b.terms()) accumulate(t, x.k + y.k, x.freq + y.freq, x.c * y.c);
  return ExpPoly(std::move(t));
}

ExpPoly expoly_scale(const ExpPoly& a, cplx s) { return a.scaled(s); }

cplx expoly_eval(const ExpPoly& a, cplx t) { return a.eval(t); }

ExpPoly solve_linear_ode(const Frequency& alpha, const ExpPoly& g, cplx a0) {
  // a(t) = e^{alpha t} (a0 + int_0^t e^{-alpha s} g(s) ds)
  std::vector<ExpPoly::Term> out;
  out.push_back({0, alpha, a0});
  for (const auto& term : g.terms()) {
    const int k = term.k;
    const Frequency nu = term.freq - alpha;
    if (nu.is_zero()) {
      out.push_back({k + 1, alpha, term.c / static_cast<double>(k + 1)});
      continue;
    }
    // int_0^t s^k e^{nu s} ds
    //   = e^{nu t} sum_j (-1)^j k!/(k-j)! t^{k-j} / nu^{j+1}  -  (-1)^k k! / nu^{k+1}
    const cplx inv_nu = 1.0 / nu.mu();
    cplx falling = 1.0;  // k!/(k-j)!
    cplx inv_pow = inv_nu;
    double sign = 1.0;
    for (int j = 0; j <= k; ++j) {
      out.push_back({k - j, term.freq, term.c * sign * falling * inv_pow});
      if (j == k) out.push_back({0, alpha, -term.c * sign * falling * inv_pow});
      falling *= static_cast<double>(k - j);
      inv_pow *= inv_nu;
      sign = -sign;
    }
  }
  return ExpPoly(std::move(out));
}

ExpPoly ode_residual(const Frequency& alpha, const ExpPoly& g, const ExpPoly& a) {
  return expoly_sub(expoly_sub(a.derivative(), a.scaled(alpha.mu())), g);
}

// ---------------------------------------------------------------------------

namespace detail {

json expoly_json(const ExpPoly& e) {
  json terms = json::array();
  for (const auto& t : e.terms()) {
    json q_re = nullptr, q_im = nullptr;
    if (t.freq.is_exact()) {
      q_re = t.freq.q_re().to_string();
      q_im = t.freq.q_im().to_string();
    }
    terms.push_back({{"k", t.k},
                     {"q_re", q_re},
                     {"q_im", q_im},
                     {"mu_re", t.freq.mu().real()},
                     {"mu_im", t.freq.mu().imag()},
                     {"c_re", t.c.real()},
                     {"c_im", t.c.imag()}});
  }
  return {{"terms", std::move(terms)}};
}

ExpPoly expoly_parse(const json& j) {
  try {
    std::vector<ExpPoly::Term> terms;
    for (const auto& t : require(j, "terms")) {
      Frequency f;
      const auto& qr = require(t, "q_re");
      const auto& qi = require(t, "q_im");
      if (qr.is_null() || qi.is_null())
        f = Frequency(cplx{require(t, "mu_re").get<double>(), require(t, "mu_im").get<double>()});
      else
        f = Frequency::exact(Rational::parse(qr.get<std::string>()),
                             Rational::parse(qi.get<std::string>()));
      terms.push_back({require(t, "k").get<int>(), f,
                       cplx{require(t, "c_re").get<double>(), require(t, "c_im").get<double>()}});
    }
    return ExpPoly(std::move(terms));
  } catch (const json::exception& e) {
    throw ParseError(std::string("exp-poly: ") + e.what());
  }
}

}  // namespace detail

std::string expoly_to_json(const ExpPoly& e) { return detail::expoly_json(e).dump(); }

ExpPoly expoly_from_json(std::string_view text) {
  return detail::expoly_parse(detail::parse_text(text));
}

}  // namespace holodyn
