#include "gridmaint/chance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "gridmaint/error.hpp"

namespace gridmaint {

double LinearCut::v_lhs(const Schedule& v) const {
  double s = 0.0;
  for (const auto& t : terms)
    if (t.var == CutVar::V && t.a < static_cast<int>(v.period.size()) && v.period[t.a] == t.b) s += t.coef;
  return s;
}

std::string LinearCut::to_string(const std::vector<std::string>& labels) const {
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  for (const auto& t : terms) {
    os << (first ? (t.coef < 0 ? "-" : "") : (t.coef < 0 ? " - " : " + "));
    first = false;
    const double c = std::abs(t.coef);
    if (c != 1.0) os << c << ' ';
    switch (t.var) {
      case CutVar::V:
        os << "v[" << (t.a < static_cast<int>(labels.size()) ? labels[t.a] : std::to_string(t.a)) << ',' << t.b << ']';
        break;
      case CutVar::Theta:
        os << "theta";
        if (t.a >= 0) os << '[' << t.a + 1 << (t.b > 0 ? "," + std::to_string(t.b) : "") << ']';
        break;
      case CutVar::LoadGen: os << "xG"; break;
      case CutVar::LoadLine: os << "xL"; break;
    }
  }
  if (first) os << '0';
  os << (sense == Sense::LessEq ? " <= " : " >= ") << rhs;
  return os.str();
}

std::string canonical_key(const LinearCut& cut) {
  auto terms = cut.terms;
  std::sort(terms.begin(), terms.end(), [](const CutTerm& x, const CutTerm& y) {
    return std::tie(x.var, x.a, x.b) < std::tie(y.var, y.a, y.b);
  });
  std::string key;
  char buf[96];
  for (const auto& t : terms) {
    std::snprintf(buf, sizeof buf, "%d:%d:%d:%.17g;", static_cast<int>(t.var), t.a, t.b, t.coef);
    key += buf;
  }
  std::snprintf(buf, sizeof buf, "%c%.17g", cut.sense == Sense::LessEq ? '<' : '>', cut.rhs);
  key += buf;
  return key;
}

bool CutPool::add(const LinearCut& cut) {
  if (!keys_.insert(canonical_key(cut)).second) return false;
  cuts_.push_back(cut);
  return true;
}

Cover cover_from_schedule(const Schedule& v) {
  Cover c;
  for (size_t h = 0; h < v.period.size(); ++h) c.pairs.emplace_back(static_cast<int>(h), v.period[h]);
  return c;
}

IndexSet extend_cover(const Cover& c, int tbar) {
  IndexSet e;
  for (auto [h, t] : c.pairs)
    for (int s = t; s <= tbar; ++s) e.emplace_back(h, s);
  return e;
}

LinearCut cover_cut(const IndexSet& set, int num_maintainable) {
  if (set.empty()) throw ValidationError("cover index set is empty");
  LinearCut cut;
  auto sorted = set;
  std::sort(sorted.begin(), sorted.end());
  for (auto [h, t] : sorted) cut.terms.push_back({CutVar::V, h, t, 1.0});
  cut.sense = Sense::LessEq;
  cut.rhs = num_maintainable - 1;
  return cut;
}

Separation separate(const Schedule& v, const ChanceOracle& oracle, double alpha, int tbar) {
  Separation s;
  s.probability = oracle(v);
  s.feasible = s.probability >= 1.0 - alpha - 1e-12;
  if (!s.feasible) {
    if (v.period.empty()) throw Error("chance constraint is infeasible with no maintainable components");
    s.cut = cover_cut(extend_cover(cover_from_schedule(v), tbar), static_cast<int>(v.period.size()));
  }
  return s;
}

double SafeApproxBlock::x(const Schedule& v) const {
  double s = gen_const;
  for (const auto& t : gen_terms)
    if (v.period[t.pos] == t.period) s += t.coef;
  return s / rho_gen;
}

double SafeApproxBlock::y(const Schedule& v) const {
  double s = line_const;
  for (const auto& t : line_terms)
    if (v.period[t.pos] == t.period) s += t.coef;
  return s / rho_line;
}

bool in_product_region(double x, double y, double alpha) {
  if (x > 1.0 || y > 1.0) return false;
  return (1.0 - x) * (1.0 - y) >= 1.0 - alpha - 1e-12;
}

bool SafeApproxBlock::accepts(const Schedule& v) const { return in_product_region(x(v), y(v), alpha); }

SafeApproxBlock safe_block(const SuccessProbTable& table, int rho_gen, int rho_line, double alpha) {
  SafeApproxBlock b;
  b.rho_gen = rho_gen;
  b.rho_line = rho_line;
  b.alpha = alpha;
  const int tbar = table.horizon + 1;
  for (int i = 0; i < table.num_maintainable(); ++i) {
    const int h = table.maintainable[i];
    auto& terms = table.kind[h] == ComponentKind::Generator ? b.gen_terms : b.line_terms;
    for (int t = 1; t <= tbar; ++t) terms.push_back({i, t, table.at(h, t)});
  }
  for (int h : table.unmaintained) {
    (table.kind[h] == ComponentKind::Generator ? b.gen_const : b.line_const) += table.at(h, table.horizon);
  }
  return b;
}

std::vector<LinearCut> soc_outer_cuts(double x, double y, double alpha) {
  if (!(alpha < 1.0)) throw ValidationError("alpha >= 1 leaves the product constraint void");
  if (in_product_region(x, y, alpha)) return {};
  const double c = 1.0 - alpha;
  const double ub = 1.0 - x, vb = 1.0 - y;
  // Nearest point (u, c/u) on the hyperbola u v = c, u > 0; it lies up and to the right of (ub, vb).
  double lo = std::max(ub, 0.0) + 1e-15;
  double hi = vb > 0 ? c / vb : std::max(1.0, std::abs(ub)) + 10.0 + std::abs(vb);
  if (hi <= lo) hi = lo + 1.0;
  auto dist = [&](double u) {
    const double dv = c / u - vb;
    return (u - ub) * (u - ub) + dv * dv;
  };
  const int grid = 4000;
  double best_u = lo, best_d = dist(lo);
  int best_i = 0;
  for (int i = 1; i <= grid; ++i) {
    const double u = lo * std::pow(hi / lo, static_cast<double>(i) / grid);
    const double d = dist(u);
    if (d < best_d) {
      best_d = d;
      best_u = u;
      best_i = i;
    }
  }
  double a = lo * std::pow(hi / lo, static_cast<double>(std::max(0, best_i - 1)) / grid);
  double b = lo * std::pow(hi / lo, static_cast<double>(std::min(grid, best_i + 1)) / grid);
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200; ++it) {
    const double m1 = b - gr * (b - a), m2 = a + gr * (b - a);
    if (dist(m1) < dist(m2)) b = m2;
    else a = m1;
  }
  best_u = 0.5 * (a + b);
  const double us = best_u, vs = c / best_u;
  // Gradient of u v at (us, vs) is (vs, us): vs(1-x) + us(1-y) >= 2c.
  LinearCut cut;
  cut.terms = {{CutVar::LoadGen, 0, 0, vs}, {CutVar::LoadLine, 0, 0, us}};
  cut.sense = Sense::LessEq;
  cut.rhs = vs + us - 2.0 * c;
  return {cut};
}

}  // namespace gridmaint
