#pragma once

#include <string>
#include <vector>

#include "lrkit/config.hpp"

namespace lrkit {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

/// Runs the full invariant suite on an assembled experiment: geometry
/// certificates, operator-algebra identities, propagation invariants, the
/// two commutator-bound dominance checks (both honoring the bound_scale
/// negative-control hook) and the quasi-locality contracts.
/// Needs the experiment to carry an observable, a probe and a time grid.
std::vector<CheckResult> run_verification(const Experiment& ex, unsigned threads = 1);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace lrkit
