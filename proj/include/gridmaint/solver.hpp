#pragma once

#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "gridmaint/error.hpp"

namespace gridmaint {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class ObjSense { Minimize, Maximize };

struct Variable {
  double lb = 0.0;
  double ub = kInf;
  double obj = 0.0;
  bool integer = false;
  std::string name;
};

// lb <= sum coef*x <= ub; use -kInf / kInf for one-sided rows.
struct Row {
  std::vector<int> idx;
  std::vector<double> coef;
  double lb = -kInf;
  double ub = kInf;
  std::string name;
};

// 2 * x[a] * x[b] >= sum_i x[rest_i]^2, x[a], x[b] >= 0.
struct RotatedCone {
  int a = -1;
  int b = -1;
  std::vector<int> rest;
};

class ModelSpec {
 public:
  ObjSense sense = ObjSense::Minimize;
  double obj_offset = 0.0;
  std::vector<Variable> vars;
  std::vector<Row> rows;
  std::vector<RotatedCone> cones;

  int add_var(double lb, double ub, double obj, bool integer = false, std::string name = {});
  int add_row(std::vector<int> idx, std::vector<double> coef, double lb, double ub,
              std::string name = {});

  int num_vars() const { return static_cast<int>(vars.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }
  bool has_integers() const;

  // Throws ValidationError on out-of-range indices or inverted bounds.
  void validate() const;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, Limit, Error };

const char* to_string(SolveStatus s);

struct SolveParams {
  double mip_rel_gap = 1e-9;
  double mip_abs_gap = 1e-9;
  double time_limit = kInf;
  int threads = 1;
  unsigned seed = 0;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::Error;
  std::vector<double> x;
  double objective = 0.0;
  double bound = 0.0;
  double gap = 0.0;
  std::string message;

  bool ok() const { return status == SolveStatus::Optimal; }
};

class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string name() const = 0;
  virtual bool supports_cones() const = 0;
  virtual SolveOutcome solve(const ModelSpec& model, const SolveParams& params) = 0;
};

// In-process HiGHS backend. Each instance owns its own solver context.
std::unique_ptr<Backend> make_default_backend();

// Convenience: fresh default backend per call.
SolveOutcome solve(const ModelSpec& model, const SolveParams& params = {});

// CPLEX-LP text for any ModelSpec (cones are written as comments).
std::string to_lp_format(const ModelSpec& model);

}  // namespace gridmaint
