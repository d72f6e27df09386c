#pragma once

#include <vector>

#include "gridmaint/degrade.hpp"
#include "gridmaint/instance.hpp"
#include "gridmaint/pboracle.hpp"

namespace oracle {

// Joint probability by enumerating every failure outcome of H, from the raw day CDFs.
double brute_force_joint(const gridmaint::Instance& inst, const gridmaint::Schedule& v);

struct ExtensiveResult {
  bool feasible = false;
  double objective = 0.0;
  gridmaint::Schedule v;
};

// Monolithic scenario MILP with maintenance logic rows, big-M switching and a
// no-good row for every schedule below 1 - alpha. `fixed` pins the schedule.
ExtensiveResult solve_extensive(const gridmaint::Instance& inst, const gridmaint::ScenarioSet& sc, bool chance,
                                const gridmaint::Schedule* fixed = nullptr);

}  // namespace oracle
