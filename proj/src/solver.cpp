#include "gridmaint/solver.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "Highs.h"

namespace gridmaint {

int ModelSpec::add_var(double lb, double ub, double obj, bool integer, std::string name) {
  vars.push_back(Variable{lb, ub, obj, integer, std::move(name)});
  return static_cast<int>(vars.size()) - 1;
}

int ModelSpec::add_row(std::vector<int> idx, std::vector<double> coef, double lb, double ub,
                       std::string name) {
  rows.push_back(Row{std::move(idx), std::move(coef), lb, ub, std::move(name)});
  return static_cast<int>(rows.size()) - 1;
}

bool ModelSpec::has_integers() const {
  for (const auto& v : vars)
    if (v.integer) return true;
  return false;
}

void ModelSpec::validate() const {
  const int n = num_vars();
  for (int j = 0; j < n; ++j) {
    const auto& v = vars[j];
    if (std::isnan(v.lb) || std::isnan(v.ub) || v.lb > v.ub)
      throw ValidationError("variable " + std::to_string(j) + " has inverted bounds");
    if (!std::isfinite(v.obj)) throw ValidationError("variable " + std::to_string(j) + " has non-finite cost");
  }
  for (int r = 0; r < num_rows(); ++r) {
    const auto& row = rows[r];
    if (row.idx.size() != row.coef.size())
      throw ValidationError("row " + std::to_string(r) + " index/coef size mismatch");
    if (std::isnan(row.lb) || std::isnan(row.ub) || row.lb > row.ub)
      throw ValidationError("row " + std::to_string(r) + " has inverted bounds");
    for (size_t k = 0; k < row.idx.size(); ++k) {
      if (row.idx[k] < 0 || row.idx[k] >= n)
        throw ValidationError("row " + std::to_string(r) + " references unknown column");
      if (!std::isfinite(row.coef[k]))
        throw ValidationError("row " + std::to_string(r) + " has non-finite coefficient");
    }
  }
  for (const auto& c : cones) {
    if (c.a < 0 || c.a >= n || c.b < 0 || c.b >= n)
      throw ValidationError("cone references unknown column");
    for (int i : c.rest)
      if (i < 0 || i >= n) throw ValidationError("cone references unknown column");
  }
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::Limit: return "limit";
    case SolveStatus::Error: return "error";
  }
  return "error";
}

namespace {

class HighsBackend final : public Backend {
 public:
  std::string name() const override { return "highs"; }
  bool supports_cones() const override { return false; }

  SolveOutcome solve(const ModelSpec& model, const SolveParams& params) override {
    model.validate();
    if (!model.cones.empty())
      throw CapabilityError("backend 'highs' does not support rotated-cone rows");

    HighsLp lp;
    const int n = model.num_vars();
    const int m = model.num_rows();
    lp.num_col_ = n;
    lp.num_row_ = m;
    lp.sense_ = model.sense == ObjSense::Minimize ? ::ObjSense::kMinimize : ::ObjSense::kMaximize;
    lp.offset_ = model.obj_offset;
    lp.col_cost_.resize(n);
    lp.col_lower_.resize(n);
    lp.col_upper_.resize(n);
    bool mip = false;
    lp.integrality_.assign(n, HighsVarType::kContinuous);
    for (int j = 0; j < n; ++j) {
      const auto& v = model.vars[j];
      lp.col_cost_[j] = v.obj;
      lp.col_lower_[j] = v.lb;
      lp.col_upper_[j] = v.ub;
      if (v.integer) {
        lp.integrality_[j] = HighsVarType::kInteger;
        mip = true;
      }
    }
    if (!mip) lp.integrality_.clear();

    lp.row_lower_.resize(m);
    lp.row_upper_.resize(m);
    auto& a = lp.a_matrix_;
    a.format_ = MatrixFormat::kRowwise;
    a.num_col_ = n;
    a.num_row_ = m;
    a.start_.assign(1, 0);
    for (int r = 0; r < m; ++r) {
      const auto& row = model.rows[r];
      lp.row_lower_[r] = row.lb;
      lp.row_upper_[r] = row.ub;
      for (size_t k = 0; k < row.idx.size(); ++k) {
        if (row.coef[k] == 0.0) continue;
        a.index_.push_back(row.idx[k]);
        a.value_.push_back(row.coef[k]);
      }
      a.start_.push_back(static_cast<HighsInt>(a.index_.size()));
    }
    // HiGHS rejects duplicate column entries within a row; merge them.
    merge_duplicates(a);

    Highs h;
    h.setOptionValue("output_flag", false);
    h.setOptionValue("threads", 1);
    h.setOptionValue("mip_rel_gap", params.mip_rel_gap);
    h.setOptionValue("mip_abs_gap", params.mip_abs_gap);
    h.setOptionValue("random_seed", static_cast<HighsInt>(params.seed));
    if (std::isfinite(params.time_limit)) h.setOptionValue("time_limit", params.time_limit);

    SolveOutcome out;
    if (h.passModel(std::move(lp)) == HighsStatus::kError) {
      out.status = SolveStatus::Error;
      out.message = "model rejected by backend";
      return out;
    }
    const HighsStatus rs = h.run();
    const HighsModelStatus ms = h.getModelStatus();
    const HighsInfo& info = h.getInfo();

    switch (ms) {
      case HighsModelStatus::kOptimal:
        out.status = SolveStatus::Optimal;
        break;
      case HighsModelStatus::kInfeasible:
        out.status = SolveStatus::Infeasible;
        break;
      case HighsModelStatus::kUnbounded:
      case HighsModelStatus::kUnboundedOrInfeasible:
        out.status = SolveStatus::Unbounded;
        break;
      case HighsModelStatus::kTimeLimit:
      case HighsModelStatus::kIterationLimit:
      case HighsModelStatus::kSolutionLimit:
      case HighsModelStatus::kInterrupt:
        out.status = SolveStatus::Limit;
        break;
      default:
        out.status = SolveStatus::Error;
        break;
    }
    out.message = h.modelStatusToString(ms);
    if (rs == HighsStatus::kError && out.status == SolveStatus::Optimal) out.status = SolveStatus::Error;

    if (out.status == SolveStatus::Optimal || out.status == SolveStatus::Limit) {
      const auto& sol = h.getSolution();
      if (sol.value_valid) {
        out.x = sol.col_value;
        out.objective = info.objective_function_value;
      } else if (out.status == SolveStatus::Limit) {
        out.x.clear();
      }
      if (mip) {
        out.bound = info.mip_dual_bound;
        out.gap = info.mip_gap;
        if (!std::isfinite(out.gap)) out.gap = 0.0;
      } else {
        out.bound = out.objective;
        out.gap = 0.0;
      }
    }
    return out;
  }

 private:
  static void merge_duplicates(HighsSparseMatrix& a) {
    std::vector<HighsInt> start{0};
    std::vector<HighsInt> index;
    std::vector<double> value;
    std::vector<HighsInt> pos(a.num_col_, -1);
    for (HighsInt r = 0; r < a.num_row_; ++r) {
      const HighsInt first = static_cast<HighsInt>(index.size());
      for (HighsInt k = a.start_[r]; k < a.start_[r + 1]; ++k) {
        const HighsInt c = a.index_[k];
        if (pos[c] >= first) {
          value[pos[c]] += a.value_[k];
        } else {
          pos[c] = static_cast<HighsInt>(index.size());
          index.push_back(c);
          value.push_back(a.value_[k]);
        }
      }
      start.push_back(static_cast<HighsInt>(index.size()));
    }
    a.start_ = std::move(start);
    a.index_ = std::move(index);
    a.value_ = std::move(value);
  }
};

std::string lp_name(const ModelSpec& m, int j) {
  const auto& n = m.vars[j].name;
  if (n.empty()) return "x" + std::to_string(j);
  std::string s;
  for (char c : n) s += (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.') ? c : '_';
  if (!s.empty() && std::isdigit(static_cast<unsigned char>(s[0]))) s = "v" + s;
  return s + "#" + std::to_string(j);
}

void write_num(std::ostringstream& os, double v) {
  os.precision(17);
  os << v;
}

void write_expr(std::ostringstream& os, const ModelSpec& m, const std::vector<int>& idx,
                const std::vector<double>& coef) {
  bool first = true;
  for (size_t k = 0; k < idx.size(); ++k) {
    double c = coef[k];
    if (c == 0.0) continue;
    os << (c < 0 ? " - " : (first ? " " : " + "));
    write_num(os, std::abs(c));
    os << ' ' << lp_name(m, idx[k]);
    first = false;
  }
  if (first) os << " 0 " << (m.vars.empty() ? "x0" : lp_name(m, 0));
}

}  // namespace

std::unique_ptr<Backend> make_default_backend() { return std::make_unique<HighsBackend>(); }

SolveOutcome solve(const ModelSpec& model, const SolveParams& params) {
  HighsBackend b;
  return b.solve(model, params);
}

std::string to_lp_format(const ModelSpec& model) {
  std::ostringstream os;
  os << (model.sense == ObjSense::Minimize ? "Minimize\n" : "Maximize\n") << " obj:";
  std::vector<int> idx;
  std::vector<double> coef;
  for (int j = 0; j < model.num_vars(); ++j) {
    if (model.vars[j].obj != 0.0) {
      idx.push_back(j);
      coef.push_back(model.vars[j].obj);
    }
  }
  write_expr(os, model, idx, coef);
  if (model.obj_offset != 0.0) {
    os << (model.obj_offset < 0 ? " - " : " + ");
    write_num(os, std::abs(model.obj_offset));
  }
  os << "\nSubject To\n";
  for (int r = 0; r < model.num_rows(); ++r) {
    const auto& row = model.rows[r];
    const std::string base = row.name.empty() ? "r" + std::to_string(r) : row.name + "#" + std::to_string(r);
    auto emit = [&](const std::string& nm, const char* op, double rhs) {
      os << ' ' << nm << ':';
      write_expr(os, model, row.idx, row.coef);
      os << ' ' << op << ' ';
      write_num(os, rhs);
      os << '\n';
    };
    if (row.lb == row.ub) {
      emit(base, "=", row.lb);
    } else {
      if (std::isfinite(row.lb)) emit(std::isfinite(row.ub) ? base + "_lo" : base, ">=", row.lb);
      if (std::isfinite(row.ub)) emit(std::isfinite(row.lb) ? base + "_hi" : base, "<=", row.ub);
    }
  }
  for (size_t c = 0; c < model.cones.size(); ++c) {
    const auto& cone = model.cones[c];
    os << "\\ cone" << c << ": 2 " << lp_name(model, cone.a) << ' ' << lp_name(model, cone.b) << " >= sum of squares of";
    for (int i : cone.rest) os << ' ' << lp_name(model, i);
    os << '\n';
  }
  os << "Bounds\n";
  for (int j = 0; j < model.num_vars(); ++j) {
    const auto& v = model.vars[j];
    const std::string nm = lp_name(model, j);
    if (!std::isfinite(v.lb) && !std::isfinite(v.ub)) {
      os << ' ' << nm << " free\n";
      continue;
    }
    os << ' ';
    if (std::isfinite(v.lb)) write_num(os, v.lb);
    else os << "-inf";
    os << " <= " << nm << " <= ";
    if (std::isfinite(v.ub)) write_num(os, v.ub);
    else os << "+inf";
    os << '\n';
  }
  bool any_int = false;
  for (int j = 0; j < model.num_vars(); ++j) {
    if (!model.vars[j].integer) continue;
    if (!any_int) os << "General\n";
    any_int = true;
    os << ' ' << lp_name(model, j) << '\n';
  }
  os << "End\n";
  return os.str();
}

}  // namespace gridmaint
