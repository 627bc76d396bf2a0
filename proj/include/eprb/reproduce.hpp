#pragma once

// End-to-end reproduction: runs the sweep, CHSH and bound-audit experiments at
// their reference sizes and checks each headline claim at a pinned tolerance.

#include <ostream>
#include <string>
#include <vector>

#include "eprb/experiment.hpp"

namespace eprb {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Only `seed` and `workers` are taken from `base`; event counts, tau and the
/// angle grids are fixed per check. Progress lines go to `log` when non-null.
std::vector<CheckResult> run_reference_checks(const ExperimentConfig& base, std::ostream* log = nullptr);

}  // namespace eprb
