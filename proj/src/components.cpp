#include "gridmaint/components.hpp"

namespace gridmaint {

std::vector<ComponentRef> all_components(const Network& net) {
  std::vector<ComponentRef> h;
  for (size_t i = 0; i < net.generators.size(); ++i) h.push_back({ComponentKind::Generator, static_cast<int>(i)});
  for (size_t i = 0; i < net.lines.size(); ++i) h.push_back({ComponentKind::Line, static_cast<int>(i)});
  return h;
}

std::string component_label(const Network& net, const ComponentRef& c) {
  if (c.kind == ComponentKind::Generator) return "G" + std::to_string(net.generators[c.index].id);
  return "L" + std::to_string(net.lines[c.index].id);
}

int find_component(const Network& net, const std::string& label) {
  const auto h = all_components(net);
  for (size_t i = 0; i < h.size(); ++i)
    if (component_label(net, h[i]) == label) return static_cast<int>(i);
  return -1;
}

Durations durations_for(const RunConfig& cfg, ComponentKind kind) {
  if (kind == ComponentKind::Generator) return {cfg.tau_p_gen, cfg.tau_c_gen};
  return {cfg.tau_p_line, cfg.tau_c_line};
}

bool component_available(int m, int xi, int t, const Durations& d, int horizon) {
  if (m < xi) return !(t >= m && t <= m + d.tau_p - 1 && m <= horizon);
  if (xi <= horizon) return !(t >= xi && t <= xi + d.tau_c - 1);
  return true;
}

bool unmaintained_available(int xi, int t, const Durations& d, int horizon) {
  if (xi > horizon) return true;
  return !(t >= xi && t <= xi + d.tau_c - 1);
}

double maintenance_cost(int m, int xi, double c_pred, double c_corr, int horizon) {
  const int tbar = horizon + 1;
  if (m < xi) return c_pred;
  if (xi != tbar) return c_corr;
  return 0.0;
}

}  // namespace gridmaint
