#pragma once

#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "gridmaint/pboracle.hpp"

namespace gridmaint {

// Variables a cut may reference. V: (a = H' position, b = period 1..T+1).
// Theta: (a = scenario or -1 when aggregated, b = day or 0 when not per day).
// LoadGen / LoadLine: normalized expected failure loads x and y of the safe block.
enum class CutVar { V, Theta, LoadGen, LoadLine };
enum class Sense { LessEq, GreaterEq };

struct CutTerm {
  CutVar var = CutVar::V;
  int a = 0;
  int b = 0;
  double coef = 0.0;
};

struct LinearCut {
  std::vector<CutTerm> terms;
  Sense sense = Sense::LessEq;
  double rhs = 0.0;

  // Value of the V-part of the left-hand side at a schedule.
  double v_lhs(const Schedule& v) const;
  std::string to_string(const std::vector<std::string>& maintainable_labels = {}) const;
};

// Canonical key over sorted terms, sense and rhs (deduplication).
std::string canonical_key(const LinearCut& cut);

class CutPool {
 public:
  // False when an identical cut is already pooled.
  bool add(const LinearCut& cut);
  const std::vector<LinearCut>& cuts() const { return cuts_; }
  size_t size() const { return cuts_.size(); }

 private:
  std::vector<LinearCut> cuts_;
  std::unordered_set<std::string> keys_;
};

struct Cover {
  std::vector<std::pair<int, int>> pairs;  // (H' position, period)
};

using IndexSet = std::vector<std::pair<int, int>>;

Cover cover_from_schedule(const Schedule& v);
IndexSet extend_cover(const Cover& c, int tbar);
LinearCut cover_cut(const IndexSet& set, int num_maintainable);

struct Separation {
  bool feasible = true;
  double probability = 1.0;
  std::optional<LinearCut> cut;
};

using ChanceOracle = std::function<double(const Schedule&)>;

// Accepts P(v) >= 1 - alpha; otherwise returns the extended-cover cut of v.
Separation separate(const Schedule& v, const ChanceOracle& oracle, double alpha, int tbar);

struct LoadTerm {
  int pos = 0;     // H' position
  int period = 0;  // 1..T+1
  double coef = 0.0;
};

// Rows: sum E[zeta] w + const_G <= rho_G (1 - abar_G), same for lines, abar_G abar_L >= 1 - alpha.
struct SafeApproxBlock {
  std::vector<LoadTerm> gen_terms, line_terms;
  double gen_const = 0.0, line_const = 0.0;
  int rho_gen = 1, rho_line = 1;
  double alpha = 0.1;
  bool product_row = true;  // handled by cone or tangent cuts

  // Normalized loads x = (sum E[zeta]w + const)/rho.
  double x(const Schedule& v) const;
  double y(const Schedule& v) const;
  // Feasibility with the bivariate product handled exactly.
  bool accepts(const Schedule& v) const;
};

SafeApproxBlock safe_block(const SuccessProbTable& table, int rho_gen, int rho_line, double alpha);

// True when (1-x)(1-y) >= 1-alpha with x, y <= 1.
bool in_product_region(double x, double y, double alpha);

// Tangent cut a x + b y <= c at the projection of (x, y) onto the boundary of
// (1-x)(1-y) >= 1-alpha; empty when the point is inside.
std::vector<LinearCut> soc_outer_cuts(double x, double y, double alpha);

}  // namespace gridmaint
