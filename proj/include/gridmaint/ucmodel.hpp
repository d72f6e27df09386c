#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "gridmaint/flowmask.hpp"
#include "gridmaint/instance.hpp"
#include "gridmaint/solver.hpp"

namespace gridmaint {

// Availability of every network component on one day (1 = in service).
struct Availability {
  std::vector<std::uint8_t> gen;
  std::vector<std::uint8_t> line;

  static Availability all_on(const Network& net) {
    return {std::vector<std::uint8_t>(net.generators.size(), 1), std::vector<std::uint8_t>(net.lines.size(), 1)};
  }
  bool operator==(const Availability&) const = default;
  std::uint64_t hash() const;
};

// Availability bits of the H' components on day t.
struct StatusVector {
  int day = 0;  // 1..T
  std::vector<std::uint8_t> bits;

  bool operator==(const StatusVector&) const = default;
  std::uint64_t hash() const;
  std::string to_string() const;
};

struct StatusVectorHash {
  size_t operator()(const StatusVector& s) const { return static_cast<size_t>(s.hash()); }
};

// xi[i] is the failure period of H' component i (1..T+1).
StatusVector status_vector(const Schedule& v, const std::vector<int>& xi, int t, const std::vector<Durations>& dur,
                           int horizon);
StatusVector status_vector(const Instance& inst, const Schedule& v, const std::vector<int>& xi, int t);

// Network availability implied by an H' status (H'' components in service).
Availability availability_from_status(const Instance& inst, const StatusVector& s);

// Network availability on day t when every component of H has a failure period
// (xi_all over H) and H' follows v; H'' components are out after failing.
Availability availability_full(const Instance& inst, const Schedule& v, const std::vector<int>& xi_all, int t);

struct SubproblemOptions {
  // Lines of L' (their outages also carry the big-M angle row).
  std::vector<std::uint8_t> switchable;
  // Static flow bounds that may be left out; ignored when an eligible line is out.
  const FlowBoundMask* mask = nullptr;
};

// Day model with column maps; all [unit][hour] with 0-based hours.
struct DayModel {
  ModelSpec spec;
  int day = 0;  // 1..T
  int hours = 0;
  std::vector<std::vector<int>> p, x, su, sd, q, f, delta;
  int dropped_bounds = 0;
};

DayModel build_subproblem(const Network& net, const DemandGrid& demand, const Availability& avail, int t,
                          const SubproblemOptions& opt = {});
DayModel build_subproblem(const Instance& inst, const Availability& avail, int t);

struct OperationalSolution {
  std::vector<std::vector<double>> p, x, su, sd, q, f, delta;
};

struct SubproblemResult {
  double objective = 0.0;
  double bound = 0.0;
  double gap = 0.0;
  SolveStatus status = SolveStatus::Error;
  OperationalSolution sol;
};

// Throws SolverError carrying `context` when the backend does not return an optimum.
SubproblemResult solve_subproblem(const DayModel& m, double eps, Backend& backend, const std::string& context = {});
SubproblemResult solve_subproblem(const DayModel& m, double eps = 1e-9);

// Day-t LP relaxation with continuous schedule columns (lower bound on Q_t for
// every schedule given the H' failure periods xi).
ModelSpec lower_bound_model(const Instance& inst, const std::vector<int>& xi, int t);
double lp_lower_bound(const Instance& inst, const std::vector<int>& xi, int t, Backend& backend);
double lp_lower_bound(const Instance& inst, const std::vector<int>& xi, int t);

// Thread-safe memo of lower bounds keyed by (t, xi).
class LowerBoundMemo {
 public:
  double get(const Instance& inst, const std::vector<int>& xi, int t, Backend& backend);
  size_t size() const;

 private:
  mutable std::mutex mu_;
  std::map<std::pair<int, std::vector<int>>, double> memo_;
};

std::string export_lp(const DayModel& m);

}  // namespace gridmaint
