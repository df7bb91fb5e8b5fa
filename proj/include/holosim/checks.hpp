#pragma once

#include "holosim/grid.hpp"

#include <string>
#include <vector>

namespace holosim {

/// One verification entry: a measured figure against its pinned threshold.
/// `expects_error` entries pass when the named guard fires.
struct CheckResult {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string note;
};

struct OracleReport {
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

/// Runs the holography verification suite on the given grid: decomposition
/// identity, phase complementarity, the quantum/classical point-regime
/// equivalence, washout/revival behaviour, eta scaling, the three
/// closed-form equivalences and the divergence guards. Sampling-guard
/// violations on degraded grids surface as failed entries with the guard
/// diagnostic, never as silent numbers.
OracleReport oracle_check(const SamplingGrid& grid);
OracleReport oracle_check();

/// One line per check: "PASS|FAIL <name> measured=<v> threshold=<t> <note>".
std::string format_report(const OracleReport& report);

} // namespace holosim
