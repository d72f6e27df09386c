#pragma once

#include <span>
#include <string>
#include <vector>

#include "gridmaint/components.hpp"

namespace gridmaint {

struct BernoulliProfile {
  std::vector<double> probs;
  std::vector<int> components;  // entry i of probs belongs to component components[i] of H
};

std::vector<double> pb_pmf(std::span<const double> probs);
// P(X <= k); k < 0 gives 0 and k >= n gives 1.
double pb_cdf(std::span<const double> probs, int k);

// First-stage decision: maintenance period (1..T+1) per H' component, in the
// order of SuccessProbTable::maintainable.
struct Schedule {
  std::vector<int> period;

  bool operator==(const Schedule&) const = default;
};

// Validates the binary matrix form (one 1 per row over T+1 columns).
Schedule schedule_from_binary(const std::vector<std::vector<int>>& v);
std::vector<std::vector<int>> schedule_to_binary(const Schedule& s, int horizon);

struct SuccessProbTable {
  int horizon = 0;
  std::vector<ComponentKind> kind;       // per component of H
  std::vector<std::vector<double>> q;    // q[h][m-1] = P(xi_h <= m), m = 1..T+1, q[T+1] = q[T]
  std::vector<int> maintainable;         // H'
  std::vector<int> unmaintained;         // H''

  // cdf[h] holds F_h(1..T).
  static SuccessProbTable from_cdfs(const std::vector<ComponentKind>& kinds,
                                    const std::vector<std::vector<double>>& cdf, std::vector<int> maintainable,
                                    std::vector<int> unmaintained);

  double at(int h, int m) const { return q[h][m - 1]; }
  int num_maintainable() const { return static_cast<int>(maintainable.size()); }
  std::string to_csv(const std::vector<std::string>& labels) const;
};

std::pair<BernoulliProfile, BernoulliProfile> success_probs(const Schedule& v, const SuccessProbTable& table);

double joint_oracle(const Schedule& v, const SuccessProbTable& table, int rho_gen, int rho_line);

// All schedules in lexicographic order (period of H' component 0 varies slowest).
std::vector<Schedule> enumerate_schedules(int num_components, int horizon);

}  // namespace gridmaint
