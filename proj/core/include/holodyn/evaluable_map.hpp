#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "holodyn/integrator.hpp"
#include "holodyn/jet.hpp"
#include "holodyn/vector_field.hpp"

namespace holodyn {

struct LinearMap {
  Matrix m;
};

/// x -> M (x_{perm[0]}, ..., x_{perm[n-1]})
struct PermutationMap {
  std::vector<std::size_t> perm;
  Matrix m;
};

/// (x, y) -> (x u, y / u), u = 1 + w f(w), w = x^a y^b. Preserves xy exactly.
struct ProductPreservingMap {
  int a = 1;
  int b = 1;
  Jet f;  // one variable
};

/// x -> x + c x^{d+1}
struct ParabolicMap {
  int d = 1;
  cplx c = 1.0;
};

/// Numeric time-one map of a vector field.
struct TimeOneMap {
  VectorField field;
  IntegratorOptions opts;
};

/// Polynomial map given by a truncated jet; its inverse is the truncated
/// compositional inverse and is therefore only approximate.
struct TruncatedJetMap {
  JetMap map;
  JetMap inverse;
};

/// A germ that can be evaluated exactly (up to rounding) at points.
class EvaluableMap {
 public:
  using Variant = std::variant<LinearMap, PermutationMap, ProductPreservingMap, ParabolicMap,
                               TimeOneMap, TruncatedJetMap>;

  EvaluableMap(Variant v, std::string name = {});

  static EvaluableMap linear(Matrix m, std::string name = {});
  static EvaluableMap permutation(std::vector<std::size_t> perm, Matrix m, std::string name = {});
  static EvaluableMap product_preserving(int a, int b, Jet f, std::string name = {});
  static EvaluableMap parabolic(int d, cplx c, std::string name = {});
  static EvaluableMap time_one(VectorField field, IntegratorOptions opts = {}, std::string name = {});
  static EvaluableMap truncated_jet(JetMap map, std::string name = {});

  const Variant& variant() const { return v_; }
  const std::string& name() const { return name_; }
  std::size_t n_vars() const;

  /// nullopt when the image is not finite (or the flow blew up).
  std::optional<Point> apply(std::span<const cplx> p) const;
  std::optional<Point> apply_inverse(std::span<const cplx> p) const;

  /// True for every variant except TruncatedJet.
  bool exactly_invertible() const;
  /// Matrix of Linear/Permutation variants.
  std::optional<Matrix> as_matrix() const;

  /// Tolerance used when checking h^{-1}(h(p)) = p.
  double inverse_tolerance() const;

 private:
  Variant v_;
  std::string name_;
};

/// Checks h^{-1}(h(p)) = p and h(h^{-1}(p)) = p on deterministic probes of
/// max-norm <= radius / 2.
bool verify_inverse(const EvaluableMap& h, double radius);

/// Deterministic probe points in the polydisc of the given radius.
std::vector<Point> probe_points(std::size_t n_vars, double radius, std::size_t count = 6);

}  // namespace holodyn
