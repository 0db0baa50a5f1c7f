#pragma once

// The reproduction suite: eleven numbered checks shared by the acceptance
// test binary and `holodyn reproduce-paper`.

#include <functional>
#include <string>
#include <vector>

namespace holodyn {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;  // measured values, one line
  double seconds = 0.0;
};

struct AcceptanceOptions {
  unsigned threads = 1;
  /// Run only these ids (all when empty).
  std::vector<int> only;
};

/// Runs the checks in id order, calling `on_result` as each finishes. A check
/// that throws is reported as failed with the exception text.
std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& opts = {},
    const std::function<void(const CriterionResult&)>& on_result = {});

std::string acceptance_markdown(const std::vector<CriterionResult>& results);

/// Order of the group generated by diag(e^{pi i/3}, e^{2 pi i/3}) and the
/// coordinate swap, enumerated on integer data (exponents of e^{pi i/3} mod 6
/// and a permutation bit), so no floating-point comparison is involved.
std::size_t schur24_order_exact();

}  // namespace holodyn
