#pragma once

#include <string>
#include <vector>

#include "gridmaint/caseio.hpp"

namespace gridmaint {

enum class ComponentKind { Generator, Line };

struct ComponentRef {
  ComponentKind kind = ComponentKind::Generator;
  int index = 0;  // into Network::generators or Network::lines

  bool operator==(const ComponentRef&) const = default;
};

// H: all generators, then all lines.
std::vector<ComponentRef> all_components(const Network& net);

// "G<id>" / "L<id>" using the network ids.
std::string component_label(const Network& net, const ComponentRef& c);
// Index into all_components(net); -1 when not found.
int find_component(const Network& net, const std::string& label);

struct Durations {
  int tau_p = 1;
  int tau_c = 2;
};

Durations durations_for(const RunConfig& cfg, ComponentKind kind);

// Availability of one component on operational day t (1..T) given its maintenance
// period m (1..T+1) and failure period xi (1..T+1). Windows are clamped to the horizon.
//   predictive  (m < xi):            out on [m, m+tau_p-1]
//   corrective  (m >= xi, xi <= T):  out on [xi, xi+tau_c-1]
bool component_available(int m, int xi, int t, const Durations& d, int horizon);

// Same rule for a component that is never maintained (H''): out on [xi, xi+tau_c-1].
bool unmaintained_available(int xi, int t, const Durations& d, int horizon);

// Maintenance cost of scheduling at m when the failure period is xi.
double maintenance_cost(int m, int xi, double c_pred, double c_corr, int horizon);

}  // namespace gridmaint
