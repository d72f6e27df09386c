#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gridmaint/caseio.hpp"
#include "gridmaint/components.hpp"
#include "gridmaint/degrade.hpp"
#include "gridmaint/flowmask.hpp"
#include "gridmaint/pboracle.hpp"

namespace gridmaint {

// Everything a planning run needs, immutable once built.
struct Instance {
  Network net;
  DemandGrid demand;
  RunConfig cfg;
  std::vector<ComponentRef> components;            // H
  std::vector<std::optional<ComponentRLD>> rlds;   // per H; empty when the table was given directly
  SuccessProbTable table;                          // over H, with the H' / H'' split
  std::optional<FlowBoundMask> flow_mask;

  int horizon() const { return cfg.horizon_days; }
  int tbar() const { return cfg.horizon_days + 1; }
  int hours() const { return cfg.hours_per_day; }
  int num_maintainable() const { return table.num_maintainable(); }
  const std::vector<int>& maintainable() const { return table.maintainable; }
  const std::vector<int>& unmaintained() const { return table.unmaintained; }
  int rho_gen() const { return cfg.rho_gen; }
  int rho_line() const { return cfg.resolved_rho_line(static_cast<int>(net.lines.size())); }

  Durations durations(int h) const { return durations_for(cfg, components[h].kind); }
  double pred_cost(int h) const;
  double corr_cost(int h) const;
  std::string label(int h) const { return component_label(net, components[h]); }
  std::vector<std::string> maintainable_labels() const;
  // Lines in L' (switchable) flagged per network line.
  std::vector<std::uint8_t> switchable_lines() const;
  // F(1..T) per component of H (zeros for non-degrading ones).
  std::vector<std::vector<double>> day_cdfs() const;
};

// Selects H' from the RLDs with the configured thresholds and builds the table.
Instance make_instance(Network net, DemandGrid demand, RunConfig cfg, std::vector<std::optional<ComponentRLD>> rlds,
                       std::vector<std::string>* warnings = nullptr);

// Uses explicit per-component day CDFs and an explicit H' (tests, fixtures).
Instance make_instance_from_cdfs(Network net, DemandGrid demand, RunConfig cfg,
                                 const std::vector<std::vector<double>>& cdfs, std::vector<int> maintainable);

}  // namespace gridmaint
