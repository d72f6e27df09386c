#include "gridmaint/instance.hpp"

#include <algorithm>

namespace gridmaint {

double Instance::pred_cost(int h) const {
  const auto& c = components[h];
  return c.kind == ComponentKind::Generator ? net.generators[c.index].maint_cost_pred : net.lines[c.index].maint_cost_pred;
}

double Instance::corr_cost(int h) const {
  const auto& c = components[h];
  return c.kind == ComponentKind::Generator ? net.generators[c.index].maint_cost_corr : net.lines[c.index].maint_cost_corr;
}

std::vector<std::string> Instance::maintainable_labels() const {
  std::vector<std::string> out;
  for (int h : maintainable()) out.push_back(label(h));
  return out;
}

std::vector<std::uint8_t> Instance::switchable_lines() const {
  std::vector<std::uint8_t> s(net.lines.size(), 0);
  for (int h : maintainable())
    if (components[h].kind == ComponentKind::Line) s[components[h].index] = 1;
  return s;
}

std::vector<std::vector<double>> Instance::day_cdfs() const {
  std::vector<std::vector<double>> out;
  for (const auto& q : table.q) out.emplace_back(q.begin(), q.begin() + horizon());
  return out;
}

namespace {

void check_demand(const Network& net, const DemandGrid& d, const RunConfig& cfg) {
  if (d.buses() != static_cast<int>(net.buses.size()) || d.days() != cfg.horizon_days ||
      d.hours() != cfg.hours_per_day)
    throw ValidationError("demand grid dimensions do not match the network and horizon");
  for (double v : d.data())
    if (v < 0) throw ValidationError("negative demand");
}

}  // namespace

Instance make_instance(Network net, DemandGrid demand, RunConfig cfg, std::vector<std::optional<ComponentRLD>> rlds,
                       std::vector<std::string>* warnings) {
  cfg.validate();
  validate_network(net);
  check_demand(net, demand, cfg);
  Instance inst;
  inst.components = all_components(net);
  if (rlds.size() != inst.components.size()) throw ValidationError("one RLD entry per component required");
  const auto sel = select_subset(inst.components, rlds, cfg.pfail_gen, cfg.pfail_line, cfg.horizon_days);
  std::vector<ComponentKind> kinds;
  std::vector<std::vector<double>> cdfs;
  for (size_t h = 0; h < inst.components.size(); ++h) {
    kinds.push_back(inst.components[h].kind);
    cdfs.push_back(day_cdf(rlds[h], cfg.horizon_days));
    if (!rlds[h] && warnings)
      warnings->push_back(component_label(net, inst.components[h]) + " does not degrade; kept out of maintenance planning");
  }
  inst.table = SuccessProbTable::from_cdfs(kinds, cdfs, sel.maintainable, sel.unmaintained);
  inst.net = std::move(net);
  inst.demand = std::move(demand);
  inst.cfg = std::move(cfg);
  inst.rlds = std::move(rlds);
  return inst;
}

Instance make_instance_from_cdfs(Network net, DemandGrid demand, RunConfig cfg,
                                 const std::vector<std::vector<double>>& cdfs, std::vector<int> maintainable) {
  cfg.validate();
  validate_network(net);
  check_demand(net, demand, cfg);
  Instance inst;
  inst.components = all_components(net);
  if (cdfs.size() != inst.components.size()) throw ValidationError("one CDF per component required");
  std::sort(maintainable.begin(), maintainable.end());
  std::vector<int> rest;
  std::vector<ComponentKind> kinds;
  for (size_t h = 0; h < inst.components.size(); ++h) {
    kinds.push_back(inst.components[h].kind);
    if (!std::binary_search(maintainable.begin(), maintainable.end(), static_cast<int>(h)))
      rest.push_back(static_cast<int>(h));
  }
  inst.table = SuccessProbTable::from_cdfs(kinds, cdfs, maintainable, rest);
  inst.net = std::move(net);
  inst.demand = std::move(demand);
  inst.cfg = std::move(cfg);
  return inst;
}

}  // namespace gridmaint
