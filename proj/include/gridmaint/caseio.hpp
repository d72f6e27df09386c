#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gridmaint/error.hpp"

namespace gridmaint {

struct Bus {
  int id = 0;
  double delta_min = -0.7853981633974483;
  double delta_max = 0.7853981633974483;
  double curtail_cost = 0.0;  // $/MWh
  double pd = 0.0;            // nominal demand from the case file, MW

  bool operator==(const Bus&) const = default;
};

struct Generator {
  int id = 0;
  int bus = 0;  // index into Network::buses
  double p_min = 0.0;
  double p_max = 0.0;
  double ramp_up = 0.0;
  double ramp_down = 0.0;
  int min_up = 1;
  int min_down = 1;
  double gen_cost = 0.0;
  double noload_cost = 0.0;
  double startup_cost = 0.0;
  double maint_cost_pred = 0.0;
  double maint_cost_corr = 0.0;

  bool operator==(const Generator&) const = default;
};

struct Line {
  int id = 0;
  int from = 0;  // index into Network::buses
  int to = 0;
  double susceptance = 0.0;  // p.u., 1/x
  double flow_limit = 0.0;   // MW
  double big_m = 0.0;        // MW
  double maint_cost_pred = 0.0;
  double maint_cost_corr = 0.0;

  bool operator==(const Line&) const = default;
};

struct Network {
  double base_mva = 100.0;
  std::vector<Bus> buses;
  std::vector<Generator> generators;
  std::vector<Line> lines;

  int bus_index(int id) const;  // -1 when absent
  // Flow in MW per radian of angle difference.
  double flow_coeff(const Line& l) const { return base_mva * l.susceptance; }
  double max_gen_cost() const;

  bool operator==(const Network&) const = default;
};

struct ParseOptions {
  int hours_per_day = 24;
  double curtail_multiplier = 10.0;  // default C^d = multiplier * max generation cost
};

// Throws ParseError (with line number) or ValidationError.
Network parse_case(const std::string& text, const ParseOptions& opt = {},
                   std::vector<std::string>* warnings = nullptr);
Network load_case_file(const std::string& path, const ParseOptions& opt = {},
                       std::vector<std::string>* warnings = nullptr);
std::string serialize_case(const Network& net);

// Checks the structural invariants (references, connectivity, parameter ranges).
void validate_network(const Network& net);

// Returns human-readable notes for lines where the auto big-M does not cover the
// full angle range or does not dominate the flow limit.
std::vector<std::string> check_big_m(const Network& net);

class DemandGrid {
 public:
  DemandGrid() = default;
  DemandGrid(int buses, int days, int hours, double fill = 0.0);

  int buses() const { return buses_; }
  int days() const { return days_; }
  int hours() const { return hours_; }

  // All indices 0-based.
  double& at(int bus, int day, int hour) { return d_[flat(bus, day, hour)]; }
  double at(int bus, int day, int hour) const { return d_[flat(bus, day, hour)]; }

  double peak(int bus) const;
  double peak(int bus, int day) const;
  const std::vector<double>& data() const { return d_; }

  bool operator==(const DemandGrid&) const = default;

 private:
  size_t flat(int bus, int day, int hour) const {
    return (static_cast<size_t>(bus) * days_ + day) * hours_ + hour;
  }
  int buses_ = 0, days_ = 0, hours_ = 0;
  std::vector<double> d_;
};

struct DegradationPriors {
  double mu0 = 0.0;
  double kappa0 = 0.0;
  double mu1 = 0.0;
  double kappa1 = 0.0;
  double sigma = 0.0;
  double lambda = 100.0;  // failure threshold

  bool operator==(const DegradationPriors&) const = default;
};

enum class ChanceMode { Exact, Safe };
enum class SocHandling { OuterApprox, ConicBackend };
enum class CutFamily { IntLS, OptK, OptKPlus, OptKTPlusPlus };
enum class FlowMode { None, I, II, III };

const char* to_string(CutFamily f);
const char* to_string(ChanceMode m);
const char* to_string(FlowMode m);
CutFamily parse_cut_family(const std::string& s);
ChanceMode parse_chance_mode(const std::string& s);
FlowMode parse_flow_mode(const std::string& s);

struct RunConfig {
  int horizon_days = 7;
  int hours_per_day = 24;
  int tau_p_gen = 1, tau_c_gen = 2, tau_p_line = 1, tau_c_line = 2;
  double alpha = 0.1;
  int rho_gen = 1;
  std::optional<int> rho_line;  // default max(1, floor(|L|/20))
  double pfail_gen = 0.1;
  double pfail_line = 0.2;
  double epsilon = 1e-4;
  CutFamily cuts = CutFamily::OptKTPlusPlus;
  bool single_cut = false;
  ChanceMode chance = ChanceMode::Exact;
  SocHandling soc = SocHandling::OuterApprox;
  FlowMode flow_mode = FlowMode::None;
  int saa_m = 5;
  int saa_n = 50;
  int saa_nprime = 1000;
  double saa_alpha = 0.05;
  std::uint64_t seed = 1;
  int threads = 1;
  int max_iterations = 100000;
  double time_limit = 3600.0;
  double curtail_multiplier = 10.0;
  double subproblem_gap = 1e-9;
  double master_gap = 1e-9;
  DegradationPriors gen_priors{20.0, 10.0, 5.0, 0.3, 3.0, 100.0};
  DegradationPriors line_priors{15.0, 5.0, 3.0, 0.3, 1.0, 100.0};
  std::string rld_file;  // optional per-component RLD parameters (JSON)

  int resolved_rho_line(int num_lines) const {
    return rho_line ? *rho_line : std::max(1, num_lines / 20);
  }
  void validate() const;
  bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::string& path);
std::string serialize_config(const RunConfig& cfg);
// Stable FNV-1a hash of the canonical serialized config, hex encoded.
std::string config_hash(const RunConfig& cfg);

DemandGrid parse_demand_csv(const std::string& text, const Network& net, const RunConfig& cfg);
DemandGrid load_demand(const std::string& path, const Network& net, const RunConfig& cfg);
std::string serialize_demand_csv(const DemandGrid& d, const Network& net);

// shape is |T| x |S| multipliers. noise_sd > 0 applies seeded multiplicative noise
// exp(noise_sd * z) per entry; with noise_sd = 0 the seed has no effect.
DemandGrid synth_demand(const Network& net, const RunConfig& cfg,
                        const std::vector<std::vector<double>>& shape, std::uint64_t seed,
                        double noise_sd = 0.0);
// Typical weekly load curve: evening peak, night valley, lighter weekend.
std::vector<std::vector<double>> default_weekly_shape(int days, int hours);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace gridmaint
