#pragma once

// Truncated multivariate power series over C ("jets") and n-tuples of them
// fixing the origin ("jet maps", germs of Diff(C^n, 0) modulo high order).

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "holodyn/linalg.hpp"

namespace holodyn {

/// Coefficients smaller than this in modulus are dropped after every operation.
inline constexpr double kPruneTol = 1e-14;

/// Default truncation degree.
inline constexpr int kDefaultOrder = 8;

/// Exponent vector of a monomial x_0^{e_0} ... x_{n-1}^{e_{n-1}}.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t n) : e_(n, 0) {}
  MultiIndex(std::initializer_list<int> e);
  explicit MultiIndex(std::vector<int> e);

  static MultiIndex unit(std::size_t n, std::size_t i);

  std::size_t size() const { return e_.size(); }
  int degree() const { return degree_; }
  int operator[](std::size_t i) const { return e_[i]; }
  const std::vector<int>& exponents() const { return e_; }

  MultiIndex operator+(const MultiIndex& o) const;
  /// Componentwise difference; caller guarantees *this >= o.
  MultiIndex operator-(const MultiIndex& o) const;
  /// True when every exponent is >= the corresponding one of `o`.
  bool divisible_by(const MultiIndex& o) const;

  /// Lowers exponent i by one (requires e_i > 0).
  MultiIndex lowered(std::size_t i) const;

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.e_ == b.e_; }

  std::string to_string() const;

 private:
  std::vector<int> e_;
  int degree_ = 0;
};

/// Graded-lexicographic order: total degree first, then larger leading
/// exponent first (so x precedes y within a degree).
struct GradedLex {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// All multi-indices in n variables of exactly the given total degree, graded-lex order.
std::vector<MultiIndex> monomials_of_degree(std::size_t n, int degree);

/// Truncated power series in n variables, sparse, immutable after construction.
class Jet {
 public:
  using Terms = std::map<MultiIndex, cplx, GradedLex>;

  Jet() = default;
  Jet(std::size_t n_vars, int order);
  /// Drops indices of degree > order and coefficients below kPruneTol.
  Jet(std::size_t n_vars, int order, Terms terms);

  static Jet constant(std::size_t n_vars, int order, cplx c);
  static Jet variable(std::size_t n_vars, int order, std::size_t i);
  static Jet monomial(std::size_t n_vars, int order, const MultiIndex& e, cplx c = 1.0);

  std::size_t n_vars() const { return n_; }
  int order() const { return order_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  cplx coeff(const MultiIndex& e) const;
  cplx constant_term() const;

  /// Lowest / highest total degree carrying a stored coefficient (-1 if zero).
  int min_degree() const;
  int max_degree() const;

  /// Same coefficients reinterpreted at another truncation order.
  Jet with_order(int order) const;
  /// Terms of exactly the given total degree.
  Jet homogeneous_part(int degree) const;
  /// Terms of total degree >= 2.
  Jet nonlinear_part() const;

  Jet derivative(std::size_t var) const;

  cplx eval(std::span<const cplx> p) const;

  Jet operator-() const;
  Jet scaled(cplx s) const;

 private:
  std::size_t n_ = 0;
  int order_ = 0;
  Terms terms_;
};

Jet jet_add(const Jet& a, const Jet& b);
Jet jet_sub(const Jet& a, const Jet& b);
/// Cauchy product; terms above the truncation order are discarded.
Jet jet_mul(const Jet& a, const Jet& b);
/// Multiplicative inverse; throws DomainError for zero constant term.
Jet jet_reciprocal(const Jet& a);
Jet jet_pow(const Jet& a, int k);

inline Jet operator+(const Jet& a, const Jet& b) { return jet_add(a, b); }
inline Jet operator-(const Jet& a, const Jet& b) { return jet_sub(a, b); }
inline Jet operator*(const Jet& a, const Jet& b) { return jet_mul(a, b); }
inline Jet operator*(cplx s, const Jet& a) { return a.scaled(s); }

/// Largest coefficientwise deviation |a_e - b_e| (shapes must match).
double max_coeff_diff(const Jet& a, const Jet& b);

/// n-tuple of jets in n variables with zero constant terms.
class JetMap {
 public:
  JetMap() = default;
  explicit JetMap(std::vector<Jet> components);

  static JetMap identity(std::size_t n, int order);
  static JetMap linear(const Matrix& m, int order);

  std::size_t size() const { return comps_.size(); }
  int order() const { return comps_.empty() ? 0 : comps_.front().order(); }
  const Jet& operator[](std::size_t i) const { return comps_[i]; }
  const std::vector<Jet>& components() const { return comps_; }
  const Matrix& linear_part() const { return linear_; }

  Point eval(std::span<const cplx> p) const;

 private:
  std::vector<Jet> comps_;
  Matrix linear_;
};

/// g o h truncated at g's order. `h` must have zero constant terms.
Jet jet_compose(const Jet& g, const JetMap& h);
/// (h1 o h2)
JetMap jetmap_compose(const JetMap& h1, const JetMap& h2);
/// Compositional inverse through the truncation order; DomainError if the linear part is singular.
JetMap jetmap_inverse(const JetMap& h);

double max_coeff_diff(const JetMap& a, const JetMap& b);

// JSON: {"n_vars", "order", "terms": [{"exp": [...], "re", "im"}]}, graded-lex order.
std::string jet_to_json(const Jet& j);
Jet jet_from_json(std::string_view text);
std::string jetmap_to_json(const JetMap& m);
JetMap jetmap_from_json(std::string_view text);

}  // namespace holodyn
