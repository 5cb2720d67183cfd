#pragma once

// The acceptance battery: eight criteria, each a list of checks.

#include <array>
#include <string>
#include <vector>

#include "kropina/app/config.hpp"
#include "kropina/app/report.hpp"

namespace kropina::app {

struct Criterion {
  int id;
  const char* title;
};

const std::array<Criterion, 8>& acceptance_criteria();

struct CriterionResult {
  Criterion criterion;
  std::vector<Check> checks;
  double seconds = 0.0;  // wall time, kept out of the checks so reports stay deterministic
};

// Uses cfg.b and cfg.seed; everything else is fixed by the battery.
CriterionResult run_criterion(int id, const RunConfig& cfg);
std::vector<CriterionResult> run_acceptance(const RunConfig& cfg);

// Profiles used where the battery needs a spread of non-minimal surfaces.
std::vector<std::string> battery_profiles();

}  // namespace kropina::app
