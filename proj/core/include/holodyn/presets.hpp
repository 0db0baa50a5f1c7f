#pragma once

// Named objects: the fields, foliations and maps used by the CLI and the
// reproduction suite.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "holodyn/evaluable_map.hpp"
#include "holodyn/holonomy.hpp"
#include "holodyn/vector_field.hpp"

namespace holodyn::presets {

/// Rotation number of the invariant circle used for the F-map contrast
/// experiment: (sqrt(5) - 1) / 20, a quadratic irrational.
double f_rotation_number();
/// Level C with 1 + 2 pi i C = e^{2 pi i theta}, theta = f_rotation_number(),
/// so |1 + C f(C)| = 1 for f = 2 pi i.
cplx f_level_constant();

/// "thmB", "example3", "example1(n,m,a,b)", "linear(l1,l2,...)", "genF", "genH",
/// "gen(a,b)", "zero(n)". Numbers in linear(...) may be complex as "re:im".
VectorField field(std::string_view name);

/// Field presets plus "realize(<field>)" (Y + 2 pi i z d/dz). Axis is the last
/// coordinate for 3-variable presets and realized fields, 0 for linear(...).
Foliation foliation(std::string_view name);

/// "H", "F" (product-preserving with f = 2 pi i), "h1", "h2", "swap",
/// "rot(p/q)" (x -> e^{2 pi i p/q} x), "double" (x -> 2x), "half", "identity(n)",
/// "phiX" (time-one map of x y (x d/dx - y d/dy)), "parabolic(d,re:im)".
EvaluableMap map(std::string_view name);

/// "schur24" / "h1h2": {h1, h2}. Otherwise a comma-free single map name.
std::vector<EvaluableMap> generators(std::string_view name);

std::vector<std::string> field_names();
std::vector<std::string> map_names();

/// Resolves a preset name or, when `source` names an existing file, loads JSON.
VectorField load_field(const std::string& source);
Foliation load_foliation(const std::string& source, std::optional<std::size_t> axis = {});
EvaluableMap load_map(const std::string& source);

/// {"kind": "linear"|"permutation"|"product_preserving"|"parabolic"|"time_one"|"jet", ...}
EvaluableMap map_from_json(std::string_view text);
std::string map_to_json(const EvaluableMap& m);

}  // namespace holodyn::presets
