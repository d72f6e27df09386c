#pragma once

#include <string>
#include <vector>

#include "gridmaint/caseio.hpp"
#include "gridmaint/flowmask.hpp"
#include "gridmaint/solver.hpp"

namespace gridmaint {

enum class FlowDirection { Upper, Lower };

// Relaxed single-period dispatch (commitment and switching in [0,1], demand
// anywhere in [0, cap]) with the static limits of all non-switchable lines
// left out. Returns max f (Upper) or min f (Lower) on `line`.
double flow_extreme(const Network& net, const std::vector<double>& demand_cap, int line, FlowDirection dir,
                    const std::vector<std::uint8_t>& switchable, Backend& backend);
double flow_extreme(const Network& net, const std::vector<double>& demand_cap, int line, FlowDirection dir,
                    const std::vector<std::uint8_t>& switchable = {});

struct RedundancyEntry {
  int line = 0;  // index into Network::lines
  FlowDirection dir = FlowDirection::Upper;
  int day = 0;   // 1..T, 0 = whole horizon
  int hour = 0;  // 1..S, 0 = whole day
  double f_star = 0.0;
  double limit = 0.0;
  bool redundant = false;
};

struct RedundancyReport {
  FlowMode mode = FlowMode::I;
  std::vector<RedundancyEntry> entries;
  double seconds = 0.0;

  int count_redundant() const;
  // Scoped rows (per line, direction, day, hour) covered by a redundant entry.
  bool covers(int line, FlowDirection dir, int day, int hour) const;
  std::string to_csv(const Network& net, const std::string& config_hash = {}) const;
  FlowBoundMask to_mask(const Network& net, int days, int hours, const std::vector<std::uint8_t>& switchable) const;
};

// Lines flagged in `switchable` are not analyzed.
RedundancyReport analyze(const Network& net, const DemandGrid& demand, FlowMode mode,
                         const std::vector<std::uint8_t>& switchable = {}, int threads = 1);

}  // namespace gridmaint
