#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fixtures.hpp"
#include "gridmaint/decomp.hpp"
#include "gridmaint/preflow.hpp"
#include "gridmaint/saa.hpp"

namespace fs = std::filesystem;
using namespace gridmaint;

namespace {

enum Exit { kOk = 0, kError = 1, kUsage = 2, kLimit = 3 };

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Common {
  std::string case_path, demand_path, config_path, rld_path, out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  bool quiet = false;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--case", c.case_path, "MATPOWER-style case file")->required()->check(CLI::ExistingFile);
  app->add_option("--demand", c.demand_path, "demand CSV (bus,t,s,mw); synthesized from case loads when absent")
      ->check(CLI::ExistingFile);
  app->add_option("--config", c.config_path, "run configuration (JSON)")->check(CLI::ExistingFile);
  app->add_option("--rld", c.rld_path, "per-component RLD parameters (JSON)")->check(CLI::ExistingFile);
  app->add_option("--seed", c.seed, "master RNG seed");
  app->add_option("--threads", c.threads, "worker threads");
  app->add_option("--out", c.out_dir, "output directory");
  app->add_flag("--quiet", c.quiet, "no progress log");
}

void log(const Common& c, const std::string& msg) {
  if (!c.quiet) std::cerr << msg << '\n';
}

RunConfig load_cfg(const Common& c) {
  RunConfig cfg = c.config_path.empty() ? RunConfig{} : load_config_file(c.config_path);
  if (c.seed) cfg.seed = *c.seed;
  if (c.threads) cfg.threads = *c.threads;
  return cfg;
}

void validate_usage(const RunConfig& cfg) {
  try {
    cfg.validate();
  } catch (const ValidationError& e) {
    throw UsageError(e.what());
  }
}

struct Loaded {
  Network net;
  DemandGrid demand;
};

Loaded load_network(const Common& c, const RunConfig& cfg) {
  ParseOptions po;
  po.hours_per_day = cfg.hours_per_day;
  po.curtail_multiplier = cfg.curtail_multiplier;
  std::vector<std::string> warnings;
  Loaded l;
  l.net = load_case_file(c.case_path, po, &warnings);
  for (const auto& w : warnings) log(c, "warning: " + w);
  l.demand = c.demand_path.empty() ? fixtures::nominal_demand(l.net, cfg) : load_demand(c.demand_path, l.net, cfg);
  return l;
}

Instance load_instance(const Common& c, const RunConfig& cfg) {
  auto l = load_network(c, cfg);
  std::vector<std::string> warnings;
  const std::string rld_path = !c.rld_path.empty() ? c.rld_path : cfg.rld_file;
  auto rlds = rld_path.empty() ? fixtures::synthesize_rlds(l.net, cfg, derive_seed(cfg.seed, 1000), &warnings)
                               : rlds_from_json(read_text_file(rld_path), l.net);
  auto inst = make_instance(std::move(l.net), std::move(l.demand), cfg, std::move(rlds), &warnings);
  for (const auto& w : warnings) log(c, "warning: " + w);
  if (cfg.flow_mode != FlowMode::None) {
    const auto sw = inst.switchable_lines();
    const auto rep = analyze(inst.net, inst.demand, cfg.flow_mode, sw, cfg.threads);
    inst.flow_mask = rep.to_mask(inst.net, inst.horizon(), inst.hours(), sw);
    log(c, "flow analysis: " + std::to_string(rep.count_redundant()) + " of " + std::to_string(rep.entries.size()) +
               " scoped bounds redundant");
  }
  std::string hp;
  for (const auto& s : inst.maintainable_labels()) hp += (hp.empty() ? "" : ",") + s;
  log(c, "maintainable components: " + (hp.empty() ? std::string("none") : hp));
  return inst;
}

fs::path out_path(const Common& c, const std::string& name) {
  fs::create_directories(c.out_dir);
  return fs::path(c.out_dir) / name;
}

int cmd_preprocess(const Common& c, const std::string& mode) {
  auto cfg = load_cfg(c);
  cfg.flow_mode = parse_flow_mode(mode);
  if (cfg.flow_mode == FlowMode::None) throw UsageError("--flow-mode must be I, II or III");
  validate_usage(cfg);
  const auto l = load_network(c, cfg);
  std::vector<std::uint8_t> sw;
  if (!c.rld_path.empty() || !cfg.rld_file.empty()) {
    const Instance inst = load_instance(c, cfg);
    sw = inst.switchable_lines();
  }
  const auto rep = analyze(l.net, l.demand, cfg.flow_mode, sw, cfg.threads);
  const auto p = out_path(c, "flow_redundancy.csv");
  write_text_file(p.string(), rep.to_csv(l.net, config_hash(cfg)));
  log(c, std::to_string(rep.count_redundant()) + " of " + std::to_string(rep.entries.size()) +
             " scoped bounds redundant; wrote " + p.string());
  return kOk;
}

int cmd_plan(const Common& c, const std::optional<std::string>& chance, const std::optional<std::string>& cuts,
             const std::optional<int>& scenarios, const std::string& scenario_file, bool single_cut) {
  auto cfg = load_cfg(c);
  if (chance) cfg.chance = parse_chance_mode(*chance);
  if (cuts) cfg.cuts = parse_cut_family(*cuts);
  if (scenarios) cfg.saa_n = *scenarios;
  if (single_cut) cfg.single_cut = true;
  validate_usage(cfg);
  const auto inst = load_instance(c, cfg);
  ScenarioSet sc;
  if (!scenario_file.empty()) {
    sc = scenarios_from_csv(read_text_file(scenario_file), inst.net, inst.horizon());
    if (sc.components != inst.maintainable())
      throw ValidationError("scenario file columns do not match the maintainable components");
  } else {
    sc = sample_training_scenarios(inst, cfg.saa_n, derive_seed(cfg.seed, 1));
  }
  Decomposition d(inst, sc);
  if (!c.quiet) d.progress = [](const std::string& s) { std::cerr << s << '\n'; };
  const auto rep = d.solve();
  const auto hash = config_hash(cfg);
  write_text_file(out_path(c, "scenarios.csv").string(), scenarios_to_csv(sc, inst.net));
  write_text_file(out_path(c, "plan_report.json").string(), rep.to_json(hash));
  std::string cut_log;
  const auto labels = inst.maintainable_labels();
  for (const auto& cut : d.master().chance.cuts()) cut_log += "chance: " + cut.to_string(labels) + "\n";
  for (const auto& cut : d.master().optimality.cuts()) cut_log += "optimality: " + cut.to_string(labels) + "\n";
  write_text_file(out_path(c, "cuts.log").string(), cut_log);
  if (rep.has_incumbent)
    write_text_file(out_path(c, "schedule.csv").string(), "# config_hash " + hash + "\n" + rep.schedule_csv());
  log(c, std::string("status ") + to_string(rep.status) + " ub " + std::to_string(rep.ub) + " lb " +
             std::to_string(rep.lb));
  return rep.status == RunStatus::Optimal ? kOk : kLimit;
}

int cmd_evaluate(const Common& c, const std::string& schedule_file, const std::optional<int>& nprime, bool baseline) {
  auto cfg = load_cfg(c);
  if (nprime) cfg.saa_nprime = *nprime;
  validate_usage(cfg);
  const auto inst = load_instance(c, cfg);
  const auto text = read_text_file(schedule_file);
  bool any = false;
  for (size_t p = 0, q; p < text.size(); p = q + 1) {
    q = text.find('\n', p);
    if (q == std::string::npos) q = text.size();
    const auto line = text.substr(p, q - p);
    if (!line.empty() && line[0] != '#' && line.rfind("component", 0) != 0 && line != "\r") any = true;
  }
  if (!any && inst.num_maintainable() > 0) throw ValidationError("schedule file is empty");
  const auto v = schedule_from_csv(text, inst.maintainable_labels());
  const auto test = sample_test_scenarios(inst, cfg.saa_nprime, derive_seed(cfg.seed, 0));
  EvalCache cache;
  const auto ev = evaluate_schedule(inst, v, test, &cache);
  const auto hash = config_hash(cfg);
  write_text_file(out_path(c, "evaluation.json").string(), ev.to_json(hash));
  std::vector<std::pair<std::string, EvalReport>> rows{{"schedule", ev}};
  if (baseline) {
    const auto dm = deterministic_baseline(inst);
    rows.insert(rows.begin(), {"deterministic", evaluate_schedule(inst, dm.incumbent, test, &cache)});
    write_text_file(out_path(c, "deterministic_schedule.csv").string(), dm.schedule_csv());
  }
  write_text_file(out_path(c, "comparison.csv").string(), "# config_hash " + hash + "\n" + comparison_csv(rows, 0));
  log(c, "violation frequency " + std::to_string(ev.violation_freq) + ", expected total cost " + std::to_string(ev.total));
  return kOk;
}

int cmd_saa(const Common& c, const std::optional<int>& m, const std::optional<int>& n, const std::optional<int>& np) {
  auto cfg = load_cfg(c);
  if (m) cfg.saa_m = *m;
  if (n) cfg.saa_n = *n;
  if (np) cfg.saa_nprime = *np;
  validate_usage(cfg);
  if (cfg.saa_m < 2) throw UsageError("SAA needs --M >= 2");
  if (cfg.saa_nprime < cfg.saa_n) throw UsageError("SAA needs --Nprime >= --N");
  const auto inst = load_instance(c, cfg);
  const auto rep = run_saa(inst, cfg.seed, [&](const std::string& s) { log(c, s); });
  const auto hash = config_hash(cfg);
  write_text_file(out_path(c, "saa_report.json").string(), rep.to_json(hash));
  write_text_file(out_path(c, "saa_replicates.csv").string(), "# config_hash " + hash + "\n" + rep.replicates_csv());
  write_text_file(out_path(c, "best_schedule.csv").string(),
                  "# config_hash " + hash + "\n" + schedule_to_csv(rep.best_v, rep.labels));
  log(c, "LB CI [" + std::to_string(rep.stats.lb_lo) + ", " + std::to_string(rep.stats.lb_hi) + "], UB CI [" +
             std::to_string(rep.stats.ub_lo) + ", " + std::to_string(rep.stats.ub_hi) + "], gap " +
             std::to_string(rep.stats.gap));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Condition-based maintenance planning with unit commitment"};
  app.require_subcommand(1);

  Common pre_c, plan_c, eval_c, saa_c;
  std::string flow_mode;
  auto* pre = app.add_subcommand("preprocess", "flow-limit redundancy analysis");
  add_common(pre, pre_c);
  pre->add_option("--flow-mode", flow_mode, "I, II or III")->required()->check(CLI::IsMember({"I", "II", "III"}));

  std::optional<std::string> chance, cuts;
  std::optional<int> nscen;
  std::string scen_file;
  bool single_cut = false;
  auto* plan = app.add_subcommand("plan", "solve the maintenance planning problem");
  add_common(plan, plan_c);
  plan->add_option("--chance", chance, "exact or safe")->check(CLI::IsMember({"exact", "safe"}));
  plan->add_option("--cuts", cuts, "intLS, optK, optK+ or optKT++")
      ->check(CLI::IsMember({"intLS", "optK", "optK+", "optKT++"}));
  plan->add_option("--scenarios", nscen, "number of sampled failure scenarios");
  plan->add_option("--scenario-file", scen_file, "scenario CSV (component,k,xi)")->check(CLI::ExistingFile);
  plan->add_flag("--single-cut", single_cut, "aggregate optimality cuts over scenarios");

  std::string sched_file;
  std::optional<int> ntest;
  bool no_baseline = false;
  auto* eval = app.add_subcommand("evaluate", "evaluate a schedule over sampled failures of all components");
  add_common(eval, eval_c);
  eval->add_option("--schedule", sched_file, "schedule CSV (component,period)")->required()->check(CLI::ExistingFile);
  eval->add_option("--test-scenarios", ntest, "number of test scenarios");
  eval->add_flag("--no-baseline", no_baseline, "skip the deterministic comparison");

  std::optional<int> m, n, np;
  auto* saa = app.add_subcommand("saa", "sample average approximation with statistical bounds");
  add_common(saa, saa_c);
  saa->add_option("--M", m, "replicates");
  saa->add_option("--N", n, "training scenarios per replicate");
  saa->add_option("--Nprime", np, "test scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  try {
    if (*pre) return cmd_preprocess(pre_c, flow_mode);
    if (*plan) return cmd_plan(plan_c, chance, cuts, nscen, scen_file, single_cut);
    if (*eval) return cmd_evaluate(eval_c, sched_file, ntest, !no_baseline);
    if (*saa) return cmd_saa(saa_c, m, n, np);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const LimitReached& e) {
    std::cerr << "limit reached: " << e.what() << '\n';
    return kLimit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kUsage;
}
