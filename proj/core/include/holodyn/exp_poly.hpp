#pragma once

// Exponential polynomials sum c_{k,mu} t^k e^{mu t} and the closed-form solver
// for a' = alpha a + g in that ring.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "holodyn/linalg.hpp"

namespace holodyn {

/// Reduced fraction with positive denominator.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_zero() const { return num_ == 0; }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator-() const { return {-num_, den_}; }
  Rational operator*(const Rational& o) const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b);

  /// "p" or "p/q"
  std::string to_string() const;
  static Rational parse(std::string_view s);

  /// Closest p/q with q <= max_den if it lies within tol of x.
  static std::optional<Rational> snap(double x, std::int64_t max_den = 64, double tol = 1e-12);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// A frequency mu = 2 pi i q. When q is an exact complex rational the exact
/// value is kept so that resonance tests are exact; otherwise only mu is known.
class Frequency {
 public:
  Frequency() = default;
  /// Inexact frequency from its complex value.
  explicit Frequency(cplx mu) : mu_(mu), exact_(false) {}

  /// mu = 2 pi i (q_re + i q_im)
  static Frequency exact(Rational q_re, Rational q_im = {});
  static Frequency integer(std::int64_t m) { return exact(Rational(m)); }
  /// Snaps mu / (2 pi i) to a small-denominator rational when one is within tol.
  static Frequency snapped(cplx mu, double tol = 1e-12);

  cplx mu() const { return mu_; }
  bool is_exact() const { return exact_; }
  const Rational& q_re() const { return q_re_; }
  const Rational& q_im() const { return q_im_; }

  bool is_zero() const;
  Frequency operator+(const Frequency& o) const;
  Frequency operator-(const Frequency& o) const;
  Frequency operator-() const;

  /// Exact comparison when both are exact, |mu - nu| < 1e-12 otherwise.
  bool same_as(const Frequency& o) const;

  /// e^{mu t}; for exact real-q frequencies and real t the phase is reduced
  /// modulo 1 first, so e^{2 pi i m} is exactly 1 for integers m.
  cplx exp_at(cplx t) const;

 private:
  cplx mu_{};
  Rational q_re_, q_im_;
  bool exact_ = true;  // default-constructed frequency is exactly zero
};

/// Sum of c t^k e^{mu t}; keys (k, mu) unique, no zero coefficients stored.
class ExpPoly {
 public:
  struct Term {
    int k = 0;
    Frequency freq;
    cplx c{};
  };

  ExpPoly() = default;
  explicit ExpPoly(std::vector<Term> terms);

  static ExpPoly constant(cplx c);
  /// c t^k e^{mu t}
  static ExpPoly monomial(cplx c, int k, const Frequency& f);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  cplx eval(cplx t) const;
  ExpPoly derivative() const;
  ExpPoly scaled(cplx s) const;

  /// Largest |c| over terms of a - b (after merging).
  friend double max_coeff_diff(const ExpPoly& a, const ExpPoly& b);

 private:
  std::vector<Term> terms_;
};

ExpPoly expoly_add(const ExpPoly& a, const ExpPoly& b);
ExpPoly expoly_sub(const ExpPoly& a, const ExpPoly& b);
ExpPoly expoly_mul(const ExpPoly& a, const ExpPoly& b);
ExpPoly expoly_scale(const ExpPoly& a, cplx s);
cplx expoly_eval(const ExpPoly& a, cplx t);

inline ExpPoly operator+(const ExpPoly& a, const ExpPoly& b) { return expoly_add(a, b); }
inline ExpPoly operator-(const ExpPoly& a, const ExpPoly& b) { return expoly_sub(a, b); }
inline ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) { return expoly_mul(a, b); }

/// The solution of a' = alpha a + g, a(0) = a0, by variation of parameters.
/// Resonant terms (frequency of g equal to alpha) gain a power of t.
ExpPoly solve_linear_ode(const Frequency& alpha, const ExpPoly& g, cplx a0);

/// Residual a' - alpha a - g, exact in the ring.
ExpPoly ode_residual(const Frequency& alpha, const ExpPoly& g, const ExpPoly& a);

// JSON: {"terms": [{"k", "q_re", "q_im", "mu_re", "mu_im", "c_re", "c_im"}]},
// q_* are "p/q" strings or null for inexact frequencies.
std::string expoly_to_json(const ExpPoly& e);
ExpPoly expoly_from_json(std::string_view text);

}  // namespace holodyn
