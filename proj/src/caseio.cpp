#include "gridmaint/caseio.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"

namespace gridmaint {

int Network::bus_index(int id) const {
  for (size_t i = 0; i < buses.size(); ++i)
    if (buses[i].id == id) return static_cast<int>(i);
  return -1;
}

double Network::max_gen_cost() const {
  double m = 0.0;
  for (const auto& g : generators) m = std::max(m, g.gen_cost);
  return m;
}

namespace {

struct Matrix {
  std::vector<std::vector<double>> rows;
  int line = 0;
};

class CaseLexer {
 public:
  explicit CaseLexer(const std::string& text) : text_(text) {}

  // Parses top-level "mpc.<name> = <value>;" assignments.
  void run(std::map<std::string, Matrix>& tables, std::map<std::string, double>& scalars,
           std::vector<std::string>* warnings) {
    while (true) {
      skip_space_and_comments(true);
      if (eof()) break;
      const int stmt_line = line_;
      std::string word = read_word();
      if (word.empty()) throw ParseError(std::string("unexpected character '") + peek() + "'", line_);
      if (word == "function") {
        skip_to_eol();
        continue;
      }
      if (word.rfind("mpc.", 0) != 0) {
        if (word == "end" || word == "return") {
          skip_to_eol();
          continue;
        }
        throw ParseError("expected 'mpc.<field> =', found '" + word + "'", stmt_line);
      }
      const std::string field = word.substr(4);
      skip_space_and_comments(false);
      if (peek() != '=') throw ParseError("expected '=' after " + word, line_);
      ++pos_;
      skip_space_and_comments(false);
      if (peek() == '[') {
        ++pos_;
        Matrix m;
        m.line = stmt_line;
        m.rows = read_matrix();
        tables[field] = std::move(m);
      } else if (peek() == '\'' || peek() == '"') {
        const char q = peek();
        ++pos_;
        while (!eof() && peek() != q && peek() != '\n') ++pos_;
        if (peek() != q) throw ParseError("unterminated string", line_);
        ++pos_;
      } else if (peek() == '{') {
        if (warnings) warnings->push_back("ignoring cell field mpc." + field);
        int depth = 0;
        do {
          if (peek() == '{') ++depth;
          if (peek() == '}') --depth;
          if (peek() == '\n') ++line_;
          ++pos_;
        } while (!eof() && depth > 0);
      } else {
        scalars[field] = read_number();
      }
      skip_space_and_comments(false);
      if (peek() == ';') ++pos_;
    }
  }

 private:
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return eof() ? '\0' : text_[pos_]; }

  void skip_to_eol() {
    while (!eof() && text_[pos_] != '\n') ++pos_;
  }

  void skip_space_and_comments(bool newlines) {
    while (!eof()) {
      char c = text_[pos_];
      if (c == '%') {
        skip_to_eol();
      } else if (c == '\n') {
        if (!newlines) return;
        ++line_;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
      } else if (c == '.' && text_.compare(pos_, 3, "...") == 0) {
        skip_to_eol();
        if (!eof()) {
          ++line_;
          ++pos_;
        }
      } else {
        return;
      }
    }
  }

  std::string read_word() {
    std::string w;
    while (!eof()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.') {
        w += c;
        ++pos_;
      } else {
        break;
      }
    }
    return w;
  }

  double read_number() {
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin) {
      std::string tok;
      size_t p = pos_;
      while (p < text_.size() && !std::isspace(static_cast<unsigned char>(text_[p])) && text_[p] != ';' &&
             text_[p] != ']')
        tok += text_[p++];
      throw ParseError("invalid number '" + tok + "'", line_);
    }
    pos_ += static_cast<size_t>(end - begin);
    return v;
  }

  std::vector<std::vector<double>> read_matrix() {
    std::vector<std::vector<double>> rows;
    std::vector<double> cur;
    while (true) {
      if (eof()) throw ParseError("unterminated matrix", line_);
      char c = peek();
      if (c == ']') {
        ++pos_;
        break;
      }
      if (c == '%') {
        skip_to_eol();
        continue;
      }
      if (c == ';' || c == '\n') {
        if (c == '\n') ++line_;
        ++pos_;
        if (!cur.empty()) rows.push_back(std::move(cur));
        cur.clear();
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r' || c == ',') {
        ++pos_;
        continue;
      }
      if (c == '.' && text_.compare(pos_, 3, "...") == 0) {
        skip_to_eol();
        if (!eof()) {
          ++line_;
          ++pos_;
        }
        continue;
      }
      cur.push_back(read_number());
    }
    if (!cur.empty()) rows.push_back(std::move(cur));
    return rows;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
};

double col(const std::vector<double>& row, size_t i, int line, const char* table) {
  if (i >= row.size())
    throw ParseError(std::string(table) + " row has too few columns (need " + std::to_string(i + 1) + ")", line);
  return row[i];
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void validate_network(const Network& net) {
  if (!(net.base_mva > 0)) throw ValidationError("baseMVA must be positive");
  if (net.buses.empty()) throw ValidationError("network has no buses");
  std::set<int> ids;
  for (const auto& b : net.buses) {
    if (!ids.insert(b.id).second) throw ValidationError("duplicate bus id " + std::to_string(b.id));
    if (b.delta_min > b.delta_max) throw ValidationError("bus " + std::to_string(b.id) + ": delta_min > delta_max");
    if (b.delta_min > 0 || b.delta_max < 0)
      throw ValidationError("bus " + std::to_string(b.id) + ": angle range must contain 0");
    if (b.curtail_cost < 0) throw ValidationError("bus " + std::to_string(b.id) + ": negative curtailment cost");
    if (b.pd < 0) throw ValidationError("bus " + std::to_string(b.id) + ": negative demand");
  }
  const int nb = static_cast<int>(net.buses.size());
  for (const auto& g : net.generators) {
    const std::string tag = "generator " + std::to_string(g.id);
    if (g.bus < 0 || g.bus >= nb) throw ValidationError(tag + " references an unknown bus");
    if (g.p_min < 0 || g.p_min > g.p_max) throw ValidationError(tag + ": need 0 <= p_min <= p_max");
    if (g.ramp_up < 0 || g.ramp_down < 0) throw ValidationError(tag + ": negative ramp limit");
    if (g.min_up < 1 || g.min_down < 1) throw ValidationError(tag + ": min up/down must be >= 1");
    if (g.maint_cost_pred < 0 || g.maint_cost_corr < g.maint_cost_pred)
      throw ValidationError(tag + ": need C^c >= C^p >= 0");
    if (g.gen_cost < 0 || g.noload_cost < 0 || g.startup_cost < 0) throw ValidationError(tag + ": negative cost");
  }
  for (const auto& l : net.lines) {
    const std::string tag = "line " + std::to_string(l.id);
    if (l.from < 0 || l.from >= nb || l.to < 0 || l.to >= nb) throw ValidationError(tag + " references an unknown bus");
    if (l.from == l.to) throw ValidationError(tag + " connects a bus to itself");
    if (!(l.flow_limit > 0)) throw ValidationError(tag + ": flow limit must be positive");
    if (!(l.susceptance > 0)) throw ValidationError(tag + ": susceptance must be positive");
    if (l.big_m < 0) throw ValidationError(tag + ": negative big-M");
    if (l.maint_cost_pred < 0 || l.maint_cost_corr < l.maint_cost_pred)
      throw ValidationError(tag + ": need C^c >= C^p >= 0");
  }
  std::vector<std::vector<int>> adj(nb);
  for (const auto& l : net.lines) {
    adj[l.from].push_back(l.to);
    adj[l.to].push_back(l.from);
  }
  std::vector<char> seen(nb, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int w : adj[u])
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
  }
  if (count != nb) throw ValidationError("network graph is disconnected");
}

std::vector<std::string> check_big_m(const Network& net) {
  std::vector<std::string> notes;
  for (const auto& l : net.lines) {
    const auto& a = net.buses[l.from];
    const auto& b = net.buses[l.to];
    const double k = net.flow_coeff(l);
    const double need = k * std::max(a.delta_max - b.delta_min, b.delta_max - a.delta_min);
    if (l.big_m < need * (1 - 1e-12))
      notes.push_back("line " + std::to_string(l.id) + ": big-M " + fmt(l.big_m) +
                      " is below the angle-range bound " + fmt(need) + "; switching rows may bind when y=0");
    if (l.big_m < l.flow_limit)
      notes.push_back("line " + std::to_string(l.id) + ": big-M " + fmt(l.big_m) + " is below the flow limit " +
                      fmt(l.flow_limit));
  }
  return notes;
}

Network parse_case(const std::string& text, const ParseOptions& opt, std::vector<std::string>* warnings) {
  std::map<std::string, Matrix> tables;
  std::map<std::string, double> scalars;
  CaseLexer(text).run(tables, scalars, warnings);

  static const std::set<std::string> known = {"bus", "gen", "branch", "gencost", "gen_uc",
                                              "gen_maint", "branch_ext", "bus_ext"};
  for (const auto& [name, m] : tables)
    if (!known.count(name) && warnings) warnings->push_back("ignoring unsupported field mpc." + name);
  for (const auto& [name, v] : scalars)
    if (name != "baseMVA" && warnings) warnings->push_back("ignoring unsupported field mpc." + name);

  for (const char* req : {"bus", "gen", "branch", "gencost"})
    if (!tables.count(req)) throw ParseError(std::string("missing required table mpc.") + req, 0);

  Network net;
  if (scalars.count("baseMVA")) net.base_mva = scalars["baseMVA"];

  const auto& bus_t = tables["bus"];
  for (size_t r = 0; r < bus_t.rows.size(); ++r) {
    const auto& row = bus_t.rows[r];
    Bus b;
    b.id = static_cast<int>(col(row, 0, bus_t.line, "bus"));
    b.pd = col(row, 2, bus_t.line, "bus");
    net.buses.push_back(b);
  }
  if (tables.count("bus_ext")) {
    const auto& t = tables["bus_ext"];
    if (t.rows.size() != net.buses.size()) throw ParseError("mpc.bus_ext row count differs from mpc.bus", t.line);
    for (size_t r = 0; r < t.rows.size(); ++r) {
      net.buses[r].delta_min = col(t.rows[r], 0, t.line, "bus_ext");
      net.buses[r].delta_max = col(t.rows[r], 1, t.line, "bus_ext");
      net.buses[r].curtail_cost = col(t.rows[r], 2, t.line, "bus_ext");
    }
  }

  const auto& gen_t = tables["gen"];
  const auto& cost_t = tables["gencost"];
  if (cost_t.rows.size() < gen_t.rows.size()) throw ParseError("mpc.gencost has fewer rows than mpc.gen", cost_t.line);
  std::vector<size_t> gen_rows;
  for (size_t r = 0; r < gen_t.rows.size(); ++r) {
    const auto& row = gen_t.rows[r];
    const int bus_id = static_cast<int>(col(row, 0, gen_t.line, "gen"));
    if (col(row, 7, gen_t.line, "gen") <= 0) {
      if (warnings) warnings->push_back("skipping out-of-service generator row " + std::to_string(r + 1));
      continue;
    }
    Generator g;
    g.id = static_cast<int>(r + 1);
    g.bus = net.bus_index(bus_id);
    if (g.bus < 0)
      throw ValidationError("generator " + std::to_string(g.id) + " references unknown bus " + std::to_string(bus_id));
    g.p_max = col(row, 8, gen_t.line, "gen");
    g.p_min = col(row, 9, gen_t.line, "gen");
    const double ramp30 = row.size() > 18 ? row[18] : 0.0;
    g.ramp_up = g.ramp_down = ramp30 > 0 ? 2.0 * ramp30 : g.p_max;

    const auto& c = cost_t.rows[r];
    const int model = static_cast<int>(col(c, 0, cost_t.line, "gencost"));
    if (model != 2) throw ParseError("gencost row " + std::to_string(r + 1) + ": only polynomial costs supported", cost_t.line);
    g.startup_cost = col(c, 1, cost_t.line, "gencost");
    const int ncost = static_cast<int>(col(c, 3, cost_t.line, "gencost"));
    if (ncost < 1) throw ParseError("gencost row " + std::to_string(r + 1) + ": NCOST must be >= 1", cost_t.line);
    std::vector<double> coeffs;  // highest degree first
    for (int k = 0; k < ncost; ++k) coeffs.push_back(col(c, 4 + k, cost_t.line, "gencost"));
    for (int k = 0; k + 2 < ncost; ++k)
      if (coeffs[k] != 0.0)
        throw ParseError("gencost row " + std::to_string(r + 1) + ": polynomial degree above 1 not supported",
                         cost_t.line);
    g.noload_cost = coeffs.back();
    g.gen_cost = ncost >= 2 ? coeffs[ncost - 2] : 0.0;
    net.generators.push_back(g);
    gen_rows.push_back(r);
  }
  if (tables.count("gen_uc")) {
    const auto& t = tables["gen_uc"];
    if (t.rows.size() != gen_t.rows.size()) throw ParseError("mpc.gen_uc row count differs from mpc.gen", t.line);
    for (size_t i = 0; i < net.generators.size(); ++i) {
      const auto& row = t.rows[gen_rows[i]];
      auto& g = net.generators[i];
      g.ramp_up = col(row, 0, t.line, "gen_uc");
      g.ramp_down = col(row, 1, t.line, "gen_uc");
      g.min_up = static_cast<int>(col(row, 2, t.line, "gen_uc"));
      g.min_down = static_cast<int>(col(row, 3, t.line, "gen_uc"));
    }
  }
  if (tables.count("gen_maint")) {
    const auto& t = tables["gen_maint"];
    if (t.rows.size() != gen_t.rows.size()) throw ParseError("mpc.gen_maint row count differs from mpc.gen", t.line);
    for (size_t i = 0; i < net.generators.size(); ++i) {
      net.generators[i].maint_cost_pred = col(t.rows[gen_rows[i]], 0, t.line, "gen_maint");
      net.generators[i].maint_cost_corr = col(t.rows[gen_rows[i]], 1, t.line, "gen_maint");
    }
  } else {
    for (auto& g : net.generators) {
      g.maint_cost_pred = g.p_max * g.gen_cost * opt.hours_per_day;
      g.maint_cost_corr = 3.0 * g.maint_cost_pred;
    }
  }

  const auto& br_t = tables["branch"];
  std::vector<size_t> br_rows;
  for (size_t r = 0; r < br_t.rows.size(); ++r) {
    const auto& row = br_t.rows[r];
    if (row.size() > 10 && row[10] <= 0) {
      if (warnings) warnings->push_back("skipping out-of-service branch row " + std::to_string(r + 1));
      continue;
    }
    Line l;
    l.id = static_cast<int>(r + 1);
    const int f = static_cast<int>(col(row, 0, br_t.line, "branch"));
    const int t = static_cast<int>(col(row, 1, br_t.line, "branch"));
    l.from = net.bus_index(f);
    l.to = net.bus_index(t);
    if (l.from < 0 || l.to < 0)
      throw ValidationError("branch " + std::to_string(l.id) + " references unknown bus " +
                            std::to_string(l.from < 0 ? f : t));
    const double x = col(row, 3, br_t.line, "branch");
    if (x == 0.0) throw ValidationError("branch " + std::to_string(l.id) + " has zero reactance");
    l.susceptance = 1.0 / std::abs(x);
    l.flow_limit = col(row, 5, br_t.line, "branch");
    net.lines.push_back(l);
    br_rows.push_back(r);
  }

  bool have_big_m = false;
  if (tables.count("branch_ext")) {
    const auto& t = tables["branch_ext"];
    if (t.rows.size() != br_t.rows.size()) throw ParseError("mpc.branch_ext row count differs from mpc.branch", t.line);
    have_big_m = true;
    for (size_t i = 0; i < net.lines.size(); ++i) {
      const auto& row = t.rows[br_rows[i]];
      auto& l = net.lines[i];
      l.maint_cost_pred = col(row, 0, t.line, "branch_ext");
      l.maint_cost_corr = col(row, 1, t.line, "branch_ext");
      l.big_m = col(row, 2, t.line, "branch_ext");
      if (row.size() > 3) l.susceptance = row[3];
    }
  } else {
    double mean_cp = 0.0;
    for (const auto& g : net.generators) mean_cp += g.maint_cost_pred;
    if (!net.generators.empty()) mean_cp /= static_cast<double>(net.generators.size());
    for (auto& l : net.lines) {
      l.maint_cost_pred = 0.1 * mean_cp;
      l.maint_cost_corr = 3.0 * l.maint_cost_pred;
    }
  }
  if (!tables.count("bus_ext")) {
    double cd = opt.curtail_multiplier * net.max_gen_cost();
    if (cd <= 0) cd = opt.curtail_multiplier;
    for (auto& b : net.buses) b.curtail_cost = cd;
  }
  if (!have_big_m) {
    for (auto& l : net.lines)
      l.big_m = net.flow_coeff(l) * (net.buses[l.from].delta_max - net.buses[l.to].delta_min);
  }

  validate_network(net);
  if (warnings)
    for (auto& n : check_big_m(net)) warnings->push_back(n);
  return net;
}

std::string serialize_case(const Network& net) {
  std::ostringstream os;
  os << "function mpc = gridmaint_case\n";
  os << "mpc.version = '2';\n";
  os << "mpc.baseMVA = " << fmt(net.base_mva) << ";\n\n";
  os << "%% bus_i type Pd Qd Gs Bs area Vm Va baseKV zone Vmax Vmin\n";
  os << "mpc.bus = [\n";
  for (size_t i = 0; i < net.buses.size(); ++i) {
    const auto& b = net.buses[i];
    os << '\t' << b.id << '\t' << (i == 0 ? 3 : 1) << '\t' << fmt(b.pd) << "\t0\t0\t0\t1\t1\t0\t345\t1\t1.1\t0.9;\n";
  }
  os << "];\n\n";
  os << "%% bus gen rows: bus Pg Qg Qmax Qmin Vg mBase status Pmax Pmin\n";
  os << "mpc.gen = [\n";
  for (const auto& g : net.generators)
    os << '\t' << net.buses[g.bus].id << "\t0\t0\t0\t0\t1\t100\t1\t" << fmt(g.p_max) << '\t' << fmt(g.p_min) << ";\n";
  os << "];\n\n";
  os << "%% fbus tbus r x b rateA rateB rateC ratio angle status angmin angmax\n";
  os << "mpc.branch = [\n";
  for (const auto& l : net.lines)
    os << '\t' << net.buses[l.from].id << '\t' << net.buses[l.to].id << "\t0\t" << fmt(1.0 / l.susceptance) << "\t0\t"
       << fmt(l.flow_limit) << "\t0\t0\t0\t0\t1\t-360\t360;\n";
  os << "];\n\n";
  os << "%% model startup shutdown ncost c1 c0\n";
  os << "mpc.gencost = [\n";
  for (const auto& g : net.generators)
    os << "\t2\t" << fmt(g.startup_cost) << "\t0\t2\t" << fmt(g.gen_cost) << '\t' << fmt(g.noload_cost) << ";\n";
  os << "];\n\n";
  os << "%% RU RD MU MD\nmpc.gen_uc = [\n";
  for (const auto& g : net.generators)
    os << '\t' << fmt(g.ramp_up) << '\t' << fmt(g.ramp_down) << '\t' << g.min_up << '\t' << g.min_down << ";\n";
  os << "];\n\n";
  os << "%% Cp Cc\nmpc.gen_maint = [\n";
  for (const auto& g : net.generators) os << '\t' << fmt(g.maint_cost_pred) << '\t' << fmt(g.maint_cost_corr) << ";\n";
  os << "];\n\n";
  os << "%% Cp Cc bigM susceptance\nmpc.branch_ext = [\n";
  for (const auto& l : net.lines)
    os << '\t' << fmt(l.maint_cost_pred) << '\t' << fmt(l.maint_cost_corr) << '\t' << fmt(l.big_m) << '\t'
       << fmt(l.susceptance) << ";\n";
  os << "];\n\n";
  os << "%% delta_min delta_max curtail_cost\nmpc.bus_ext = [\n";
  for (const auto& b : net.buses)
    os << '\t' << fmt(b.delta_min) << '\t' << fmt(b.delta_max) << '\t' << fmt(b.curtail_cost) << ";\n";
  os << "];\n";
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

Network load_case_file(const std::string& path, const ParseOptions& opt, std::vector<std::string>* warnings) {
  return parse_case(read_text_file(path), opt, warnings);
}

// ---------------------------------------------------------------- demand

DemandGrid::DemandGrid(int buses, int days, int hours, double fill)
    : buses_(buses), days_(days), hours_(hours),
      d_(static_cast<size_t>(buses) * days * hours, fill) {}

double DemandGrid::peak(int bus) const {
  double m = 0.0;
  for (int t = 0; t < days_; ++t) m = std::max(m, peak(bus, t));
  return m;
}

double DemandGrid::peak(int bus, int day) const {
  double m = 0.0;
  for (int s = 0; s < hours_; ++s) m = std::max(m, at(bus, day, s));
  return m;
}

DemandGrid parse_demand_csv(const std::string& text, const Network& net, const RunConfig& cfg) {
  const int nb = static_cast<int>(net.buses.size());
  DemandGrid grid(nb, cfg.horizon_days, cfg.hours_per_day);
  std::vector<char> seen(grid.data().size(), 0);
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  size_t filled = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (lineno == 1 && line.find_first_not_of("0123456789.,-+eE \t") != std::string::npos) continue;  // header
    std::vector<std::string> f;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) f.push_back(cell);
    if (f.size() != 4) throw ParseError("expected 4 fields bus,t,s,mw", lineno);
    int bus_id, t, s;
    double mw;
    try {
      bus_id = std::stoi(f[0]);
      t = std::stoi(f[1]);
      s = std::stoi(f[2]);
      mw = std::stod(f[3]);
    } catch (const std::exception&) {
      throw ParseError("malformed demand row", lineno);
    }
    const int b = net.bus_index(bus_id);
    if (b < 0) throw ParseError("unknown bus " + std::to_string(bus_id), lineno);
    if (t < 1 || t > cfg.horizon_days || s < 1 || s > cfg.hours_per_day)
      throw ParseError("period/subperiod out of range (dimension mismatch)", lineno);
    if (mw < 0 || !std::isfinite(mw)) throw ParseError("negative demand", lineno);
    const size_t k = (static_cast<size_t>(b) * cfg.horizon_days + (t - 1)) * cfg.hours_per_day + (s - 1);
    if (seen[k]) throw ParseError("duplicate entry for bus " + std::to_string(bus_id), lineno);
    seen[k] = 1;
    grid.at(b, t - 1, s - 1) = mw;
    ++filled;
  }
  if (filled != seen.size())
    throw ParseError("demand CSV has " + std::to_string(filled) + " entries, expected " + std::to_string(seen.size()),
                     0);
  return grid;
}

DemandGrid load_demand(const std::string& path, const Network& net, const RunConfig& cfg) {
  return parse_demand_csv(read_text_file(path), net, cfg);
}

std::string serialize_demand_csv(const DemandGrid& d, const Network& net) {
  std::ostringstream os;
  os << "bus,t,s,mw\n";
  for (int b = 0; b < d.buses(); ++b)
    for (int t = 0; t < d.days(); ++t)
      for (int s = 0; s < d.hours(); ++s)
        os << net.buses[b].id << ',' << t + 1 << ',' << s + 1 << ',' << fmt(d.at(b, t, s)) << '\n';
  return os.str();
}

DemandGrid synth_demand(const Network& net, const RunConfig& cfg, const std::vector<std::vector<double>>& shape,
                        std::uint64_t seed, double noise_sd) {
  if (static_cast<int>(shape.size()) != cfg.horizon_days)
    throw ValidationError("shape has " + std::to_string(shape.size()) + " days, expected " +
                          std::to_string(cfg.horizon_days));
  for (const auto& day : shape) {
    if (static_cast<int>(day.size()) != cfg.hours_per_day) throw ValidationError("shape hour dimension mismatch");
    for (double v : day)
      if (v < 0 || !std::isfinite(v)) throw ValidationError("shape multipliers must be nonnegative");
  }
  const int nb = static_cast<int>(net.buses.size());
  DemandGrid grid(nb, cfg.horizon_days, cfg.hours_per_day);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  for (int b = 0; b < nb; ++b)
    for (int t = 0; t < cfg.horizon_days; ++t)
      for (int s = 0; s < cfg.hours_per_day; ++s) {
        double v = net.buses[b].pd * shape[t][s];
        if (noise_sd > 0) v *= std::exp(noise_sd * z(rng));
        grid.at(b, t, s) = v;
      }
  return grid;
}

std::vector<std::vector<double>> default_weekly_shape(int days, int hours) {
  std::vector<std::vector<double>> shape(days, std::vector<double>(hours));
  for (int t = 0; t < days; ++t) {
    const double weekday = (t % 7 == 5 || t % 7 == 6) ? 0.9 : 1.0;
    for (int s = 0; s < hours; ++s) {
      const double hour = (s + 0.5) * 24.0 / hours;
      shape[t][s] = weekday * (0.8 + 0.2 * std::cos(2.0 * std::numbers::pi * (hour - 18.0) / 24.0));
    }
  }
  return shape;
}

// ---------------------------------------------------------------- config

const char* to_string(CutFamily f) {
  switch (f) {
    case CutFamily::IntLS: return "intLS";
    case CutFamily::OptK: return "optK";
    case CutFamily::OptKPlus: return "optK+";
    case CutFamily::OptKTPlusPlus: return "optKT++";
  }
  return "?";
}

const char* to_string(ChanceMode m) { return m == ChanceMode::Exact ? "exact" : "safe"; }

const char* to_string(FlowMode m) {
  switch (m) {
    case FlowMode::None: return "none";
    case FlowMode::I: return "I";
    case FlowMode::II: return "II";
    case FlowMode::III: return "III";
  }
  return "?";
}

CutFamily parse_cut_family(const std::string& s) {
  if (s == "intLS") return CutFamily::IntLS;
  if (s == "optK") return CutFamily::OptK;
  if (s == "optK+") return CutFamily::OptKPlus;
  if (s == "optKT++") return CutFamily::OptKTPlusPlus;
  throw ValidationError("unknown cut family '" + s + "'");
}

ChanceMode parse_chance_mode(const std::string& s) {
  if (s == "exact") return ChanceMode::Exact;
  if (s == "safe") return ChanceMode::Safe;
  throw ValidationError("unknown chance mode '" + s + "'");
}

FlowMode parse_flow_mode(const std::string& s) {
  if (s == "none") return FlowMode::None;
  if (s == "I") return FlowMode::I;
  if (s == "II") return FlowMode::II;
  if (s == "III") return FlowMode::III;
  throw ValidationError("unknown flow mode '" + s + "'");
}

void RunConfig::validate() const {
  if (horizon_days < 1 || hours_per_day < 1) throw ValidationError("horizon and hours per day must be >= 1");
  if (tau_p_gen < 1 || tau_c_gen < 1 || tau_p_line < 1 || tau_c_line < 1)
    throw ValidationError("maintenance durations must be >= 1");
  if (tau_c_gen < tau_p_gen || tau_c_line < tau_p_line)
    throw ValidationError("corrective duration must be >= predictive duration");
  if (!(alpha > 0 && alpha < 1)) throw ValidationError("alpha must lie in (0,1)");
  if (rho_gen < 1 || (rho_line && *rho_line < 1)) throw ValidationError("rho must be >= 1");
  if (pfail_gen < 0 || pfail_gen > 1 || pfail_line < 0 || pfail_line > 1)
    throw ValidationError("failure-probability thresholds must lie in [0,1]");
  if (!(epsilon > 0)) throw ValidationError("epsilon must be positive");
  if (cuts == CutFamily::OptKTPlusPlus && single_cut)
    throw ValidationError("optKT++ requires per-(scenario,day) cuts; it cannot be combined with single-cut aggregation");
  if (saa_m < 1 || saa_n < 1 || saa_nprime < 1) throw ValidationError("SAA sizes must be >= 1");
  if (!(saa_alpha > 0 && saa_alpha < 1)) throw ValidationError("SAA significance level must lie in (0,1)");
  if (threads < 1) throw ValidationError("thread budget must be >= 1");
  for (const auto* p : {&gen_priors, &line_priors})
    if (p->kappa0 < 0 || p->kappa1 < 0 || p->sigma < 0 || !(p->lambda > 0))
      throw ValidationError("invalid degradation priors");
}

namespace {

using nlohmann::json;

json priors_json(const DegradationPriors& p) {
  return json{{"mu0", p.mu0}, {"kappa0", p.kappa0}, {"mu1", p.mu1},
              {"kappa1", p.kappa1}, {"sigma", p.sigma}, {"lambda", p.lambda}};
}

DegradationPriors priors_from(const json& j, DegradationPriors p) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const double v = it.value().get<double>();
    if (it.key() == "mu0") p.mu0 = v;
    else if (it.key() == "kappa0") p.kappa0 = v;
    else if (it.key() == "mu1") p.mu1 = v;
    else if (it.key() == "kappa1") p.kappa1 = v;
    else if (it.key() == "sigma") p.sigma = v;
    else if (it.key() == "lambda") p.lambda = v;
    else throw ValidationError("unknown prior key '" + it.key() + "'");
  }
  return p;
}

json config_json(const RunConfig& c) {
  json j;
  j["horizon_days"] = c.horizon_days;
  j["hours_per_day"] = c.hours_per_day;
  j["tau_p_gen"] = c.tau_p_gen;
  j["tau_c_gen"] = c.tau_c_gen;
  j["tau_p_line"] = c.tau_p_line;
  j["tau_c_line"] = c.tau_c_line;
  j["alpha"] = c.alpha;
  j["rho_gen"] = c.rho_gen;
  if (c.rho_line) j["rho_line"] = *c.rho_line;
  j["pfail_gen"] = c.pfail_gen;
  j["pfail_line"] = c.pfail_line;
  j["epsilon"] = c.epsilon;
  j["cuts"] = to_string(c.cuts);
  j["single_cut"] = c.single_cut;
  j["chance"] = to_string(c.chance);
  j["soc"] = c.soc == SocHandling::OuterApprox ? "outer-approx" : "conic-backend";
  j["flow_mode"] = to_string(c.flow_mode);
  j["saa_m"] = c.saa_m;
  j["saa_n"] = c.saa_n;
  j["saa_nprime"] = c.saa_nprime;
  j["saa_alpha"] = c.saa_alpha;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["max_iterations"] = c.max_iterations;
  j["time_limit"] = c.time_limit;
  j["curtail_multiplier"] = c.curtail_multiplier;
  j["subproblem_gap"] = c.subproblem_gap;
  j["master_gap"] = c.master_gap;
  j["gen_priors"] = priors_json(c.gen_priors);
  j["line_priors"] = priors_json(c.line_priors);
  if (!c.rld_file.empty()) j["rld_file"] = c.rld_file;
  return j;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what(), 0);
  }
  if (!j.is_object()) throw ParseError("config must be a JSON object", 0);
  RunConfig c;
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& k = it.key();
      const json& v = it.value();
      if (k == "horizon_days") c.horizon_days = v.get<int>();
      else if (k == "hours_per_day") c.hours_per_day = v.get<int>();
      else if (k == "tau_p_gen") c.tau_p_gen = v.get<int>();
      else if (k == "tau_c_gen") c.tau_c_gen = v.get<int>();
      else if (k == "tau_p_line") c.tau_p_line = v.get<int>();
      else if (k == "tau_c_line") c.tau_c_line = v.get<int>();
      else if (k == "alpha") c.alpha = v.get<double>();
      else if (k == "rho_gen") c.rho_gen = v.get<int>();
      else if (k == "rho_line") c.rho_line = v.get<int>();
      else if (k == "pfail_gen") c.pfail_gen = v.get<double>();
      else if (k == "pfail_line") c.pfail_line = v.get<double>();
      else if (k == "epsilon") c.epsilon = v.get<double>();
      else if (k == "cuts") c.cuts = parse_cut_family(v.get<std::string>());
      else if (k == "single_cut") c.single_cut = v.get<bool>();
      else if (k == "chance") c.chance = parse_chance_mode(v.get<std::string>());
      else if (k == "soc") {
        const auto s = v.get<std::string>();
        if (s == "outer-approx") c.soc = SocHandling::OuterApprox;
        else if (s == "conic-backend") c.soc = SocHandling::ConicBackend;
        else throw ValidationError("unknown soc handling '" + s + "'");
      } else if (k == "flow_mode") c.flow_mode = parse_flow_mode(v.get<std::string>());
      else if (k == "saa_m") c.saa_m = v.get<int>();
      else if (k == "saa_n") c.saa_n = v.get<int>();
      else if (k == "saa_nprime") c.saa_nprime = v.get<int>();
      else if (k == "saa_alpha") c.saa_alpha = v.get<double>();
      else if (k == "seed") c.seed = v.get<std::uint64_t>();
      else if (k == "threads") c.threads = v.get<int>();
      else if (k == "max_iterations") c.max_iterations = v.get<int>();
      else if (k == "time_limit") c.time_limit = v.get<double>();
      else if (k == "curtail_multiplier") c.curtail_multiplier = v.get<double>();
      else if (k == "subproblem_gap") c.subproblem_gap = v.get<double>();
      else if (k == "master_gap") c.master_gap = v.get<double>();
      else if (k == "gen_priors") c.gen_priors = priors_from(v, c.gen_priors);
      else if (k == "line_priors") c.line_priors = priors_from(v, c.line_priors);
      else if (k == "rld_file") c.rld_file = v.get<std::string>();
      else throw ValidationError("unknown config key '" + k + "'");
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what(), 0);
  }
  c.validate();
  return c;
}

RunConfig load_config_file(const std::string& path) { return parse_config(read_text_file(path)); }

std::string serialize_config(const RunConfig& cfg) { return config_json(cfg).dump(2) + "\n"; }

std::string config_hash(const RunConfig& cfg) {
  const std::string s = config_json(cfg).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace gridmaint
