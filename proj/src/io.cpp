#include "survrel/io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "json_util.hpp"

namespace survrel {

using namespace detail;

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

std::optional<double> parse_budget(std::string_view text) {
  if (text == "inf" || text == "infinity" || text == "Infinity") return unlimited_budget;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !(value > 0.0) || std::isnan(value)) {
    return std::nullopt;
  }
  return value;
}

namespace {

json budget_json(double b) { return std::isinf(b) ? json("inf") : json(b); }

double read_budget(const json& value, const std::string& ptr) {
  if (value.is_number()) {
    const double b = value.get<double>();
    if (!(b > 0.0)) throw Error(ErrorCode::invalid_attribute, "budgets must be > 0", ptr);
    return b;
  }
  if (value.is_string()) {
    if (auto b = parse_budget(value.get<std::string>())) return *b;
  }
  throw Error(ErrorCode::schema_error, "budget must be a positive number or \"inf\"", ptr);
}

}  // namespace

AnalysisInput parse_network_file(std::string_view text) {
  const json root = parse_json(text);
  require_object(root, "");

  std::vector<std::string> nodes;
  const json& jnodes = require_array(root, "nodes", "");
  for (std::size_t i = 0; i < jnodes.size(); ++i) {
    const std::string ptr = child("/nodes", i);
    require_object(jnodes[i], ptr);
    nodes.push_back(require_string(jnodes[i], "label", ptr));
  }

  std::vector<EdgeSpec> edges;
  const json& jedges = require_array(root, "edges", "");
  for (std::size_t i = 0; i < jedges.size(); ++i) {
    const std::string ptr = child("/edges", i);
    const json& je = jedges[i];
    require_object(je, ptr);
    EdgeSpec e;
    e.from = require_string(je, "from", ptr);
    e.to = require_string(je, "to", ptr);
    e.quality = number_or(je, "quality", 1.0, ptr);
    e.monitor_bits = number_or(je, "monitor_bits", 0.0, ptr);
    e.sensor_failure_prob = number_or(je, "sensor_failure_prob", 0.0, ptr);
    e.access_failure_prob = number_or(je, "access_failure_prob", 0.0, ptr);
    if (auto mode = optional_string(je, "access_failure_mode", ptr)) {
      auto parsed = parse_failure_mode(*mode);
      if (!parsed) {
        throw Error(ErrorCode::schema_error, "access_failure_mode must be 'failopen' or 'failclosed'",
                    child(ptr, "access_failure_mode"));
      }
      e.access_failure_mode = *parsed;
    }
    e.pair = optional_string(je, "pair", ptr);
    if (je.contains("sensors")) {
      const json& js = require_array(je, "sensors", ptr);
      for (std::size_t k = 0; k < js.size(); ++k) {
        const std::string sptr = child(child(ptr, "sensors"), k);
        require_object(js[k], sptr);
        e.sensors.push_back({number_or(js[k], "bits", 0.0, sptr), number_or(js[k], "failure_prob", 0.0, sptr)});
      }
    }
    edges.push_back(std::move(e));
  }

  AnalysisInput input{build_network(std::move(nodes), std::move(edges)), {}, BudgetPolicy(1.0)};
  const SurveillanceNetwork& net = input.network;

  auto node_at = [&](const json& obj, std::string_view key, const std::string& ptr) {
    const std::string label = require_string(obj, key, ptr);
    if (auto idx = net.find(label)) return *idx;
    throw Error(ErrorCode::unknown_endpoint, "unknown node '" + label + "'", child(ptr, key));
  };

  input.demand = DemandMatrix(net.node_count(), number_or(root, "default_weight", 1.0, ""));
  if (root.contains("demand")) {
    const json& jd = require_array(root, "demand", "");
    for (std::size_t i = 0; i < jd.size(); ++i) {
      const std::string ptr = child("/demand", i);
      require_object(jd[i], ptr);
      const NodeIndex o = node_at(jd[i], "from", ptr);
      const NodeIndex d = node_at(jd[i], "to", ptr);
      const double w = number_or(jd[i], "weight", 1.0, ptr);
      if (!std::isfinite(w) || w < 0.0) {
        throw Error(ErrorCode::invalid_attribute, "demand weight must be finite and >= 0", child(ptr, "weight"));
      }
      input.demand.set(o, d, w);
    }
  }

  if (auto it = root.find("budgets"); it != root.end()) {
    require_object(*it, "/budgets");
    if (auto def = it->find("default"); def != it->end()) {
      input.budgets = BudgetPolicy(read_budget(*def, "/budgets/default"));
    }
    if (it->contains("overrides")) {
      const json& jo = require_array(*it, "overrides", "/budgets");
      for (std::size_t i = 0; i < jo.size(); ++i) {
        const std::string ptr = child("/budgets/overrides", i);
        require_object(jo[i], ptr);
        const NodeIndex o = node_at(jo[i], "from", ptr);
        const NodeIndex d = node_at(jo[i], "to", ptr);
        auto b = jo[i].find("budget");
        if (b == jo[i].end()) throw Error(ErrorCode::schema_error, "missing field 'budget'", ptr);
        input.budgets.set(o, d, read_budget(*b, child(ptr, "budget")));
      }
    }
  }
  return input;
}

std::string write_network_file(const AnalysisInput& input) {
  const SurveillanceNetwork& net = input.network;
  json root;
  root["nodes"] = json::array();
  for (const std::string& label : net.labels()) root["nodes"].push_back({{"label", label}});
  root["edges"] = json::array();
  for (const Edge& e : net.edges()) {
    json je = {{"from", net.label(e.from)},
               {"to", net.label(e.to)},
               {"quality", e.quality},
               {"monitor_bits", e.monitor_bits},
               {"sensor_failure_prob", e.sensor_failure_prob},
               {"access_failure_prob", e.access_failure_prob},
               {"access_failure_mode", to_string(e.access_failure_mode)},
               {"pair", net.pair_labels()[e.pair]}};
    if (!e.sensors.empty()) {
      je["sensors"] = json::array();
      for (const Sensor& s : e.sensors) je["sensors"].push_back({{"bits", s.bits}, {"failure_prob", s.failure_prob}});
    }
    root["edges"].push_back(std::move(je));
  }
  root["default_weight"] = input.demand.default_weight();
  root["demand"] = json::array();
  for (const auto& [od, w] : input.demand.overrides()) {
    root["demand"].push_back({{"from", net.label(od.first)}, {"to", net.label(od.second)}, {"weight", w}});
  }
  json budgets = {{"default", budget_json(input.budgets.default_budget())}, {"overrides", json::array()}};
  for (const auto& [od, b] : input.budgets.overrides()) {
    budgets["overrides"].push_back(
        {{"from", net.label(od.first)}, {"to", net.label(od.second)}, {"budget", budget_json(b)}});
  }
  root["budgets"] = std::move(budgets);
  return root.dump(2) + "\n";
}

std::string report_to_json(const ReliabilityReport& report) {
  json root = {{"schema", report_schema},
               {"model", to_string(report.model)},
               {"seed", report.seed},
               {"replicates", report.replicates},
               {"budget", budget_json(report.budget)},
               {"rho_points", report.ud_curve.size()},
               {"alpha", report.alpha}};
  json curve = json::array();
  for (const UdPoint& p : report.ud_curve) {
    curve.push_back({{"rho", p.rho}, {"ud_mean", p.mean}, {"ud_stderr", p.std_error}});
  }
  root["ud_curve"] = std::move(curve);
  if (!report.sweep.empty()) {
    json sweep = json::array();
    for (const SweepPoint& s : report.sweep) sweep.push_back({{"budget", budget_json(s.budget)}, {"alpha", s.alpha}});
    root["sweep"] = std::move(sweep);
  }
  return root.dump(2) + "\n";
}

ReliabilityReport report_from_json(std::string_view text) {
  const json root = parse_json(text);
  require_object(root, "");
  if (require_string(root, "schema", "") != report_schema) {
    throw Error(ErrorCode::schema_error, "not a reliability report", "/schema");
  }
  ReliabilityReport r;
  const auto model = parse_cost_model(require_string(root, "model", ""));
  if (!model) throw Error(ErrorCode::schema_error, "unknown cost model", "/model");
  r.model = *model;
  try {
    r.seed = root.at("seed").get<std::uint64_t>();
    r.replicates = root.at("replicates").get<std::size_t>();
    r.budget = read_budget(root.at("budget"), "/budget");
    r.alpha = root.at("alpha").get<double>();
    for (const json& p : root.at("ud_curve")) {
      r.ud_curve.push_back({p.at("rho").get<double>(), p.at("ud_mean").get<double>(), p.at("ud_stderr").get<double>()});
    }
    if (auto it = root.find("sweep"); it != root.end()) {
      for (const json& s : *it) r.sweep.push_back({read_budget(s.at("budget"), "/sweep"), s.at("alpha").get<double>()});
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::schema_error, std::string("malformed report: ") + e.what());
  }
  return r;
}

std::string report_to_csv(const ReliabilityReport& report) {
  std::string out = "rho,ud_mean,ud_stderr\n";
  for (const UdPoint& p : report.ud_curve) {
    out += format_number(p.rho) + "," + format_number(p.mean) + "," + format_number(p.std_error) + "\n";
  }
  return out;
}

std::string sweep_to_csv(const std::vector<SweepPoint>& sweep) {
  std::string out = "budget,alpha\n";
  for (const SweepPoint& s : sweep) out += format_number(s.budget) + "," + format_number(s.alpha) + "\n";
  return out;
}

std::string sweep_to_json(const std::vector<SweepPoint>& sweep, const AnalysisConfig& config) {
  json root = {{"schema", "surveillance-sweep/1"},
               {"model", to_string(config.model)},
               {"seed", config.seed},
               {"replicates", config.replicates},
               {"rho_points", config.rho_grid.size()}};
  json rows = json::array();
  for (const SweepPoint& s : sweep) rows.push_back({{"budget", budget_json(s.budget)}, {"alpha", s.alpha}});
  root["sweep"] = std::move(rows);
  return root.dump(2) + "\n";
}

std::string criticality_to_csv(const std::vector<EdgeCriticality>& rows) {
  std::string out = "edge,budget,alpha_base,alpha_without,delta_alpha\n";
  for (const EdgeCriticality& r : rows) {
    out += r.label + "," + format_number(r.budget) + "," + format_number(r.alpha_base) + "," +
           format_number(r.alpha_without) + "," + format_number(r.delta) + "\n";
  }
  return out;
}

std::string criticality_to_json(const std::vector<EdgeCriticality>& rows, const AnalysisConfig& config) {
  json root = {{"schema", "surveillance-criticality/1"},
               {"model", to_string(config.model)},
               {"seed", config.seed},
               {"replicates", config.replicates},
               {"rho_points", config.rho_grid.size()}};
  json items = json::array();
  for (const EdgeCriticality& r : rows) {
    items.push_back({{"edge", r.label},
                     {"budget", budget_json(r.budget)},
                     {"alpha_base", r.alpha_base},
                     {"alpha_without", r.alpha_without},
                     {"delta_alpha", r.delta}});
  }
  root["edges"] = std::move(items);
  return root.dump(2) + "\n";
}

TextPosition position_of_offset(std::string_view text, std::size_t offset) {
  TextPosition pos;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
  }
  return pos;
}

namespace {

// Minimal scanner over text that is already known to be valid JSON.
class PointerScanner {
 public:
  explicit PointerScanner(std::string_view text) : text_(text) {}

  // Offset of the value at `tokens`, or npos.
  std::size_t find(const std::vector<std::string>& tokens) {
    skip_ws();
    for (const std::string& token : tokens) {
      if (i_ >= text_.size()) return std::string_view::npos;
      if (text_[i_] == '{') {
        if (!enter_member(token)) return std::string_view::npos;
      } else if (text_[i_] == '[') {
        std::size_t index = 0;
        const auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), index);
        if (ec != std::errc() || p != token.data() + token.size() || !enter_element(index)) {
          return std::string_view::npos;
        }
      } else {
        return std::string_view::npos;
      }
      skip_ws();
    }
    return i_;
  }

 private:
  void skip_ws() {
    while (i_ < text_.size() && (text_[i_] == ' ' || text_[i_] == '\n' || text_[i_] == '\r' || text_[i_] == '\t'))
      ++i_;
  }

  std::string read_string() {
    std::string out;
    ++i_;  // opening quote
    while (i_ < text_.size() && text_[i_] != '"') {
      if (text_[i_] == '\\' && i_ + 1 < text_.size()) {
        out += text_[i_ + 1];
        i_ += 2;
      } else {
        out += text_[i_++];
      }
    }
    ++i_;
    return out;
  }

  void skip_value() {
    skip_ws();
    if (i_ >= text_.size()) return;
    const char c = text_[i_];
    if (c == '"') {
      read_string();
    } else if (c == '{' || c == '[') {
      int depth = 0;
      while (i_ < text_.size()) {
        const char d = text_[i_];
        if (d == '"') {
          read_string();
          continue;
        }
        if (d == '{' || d == '[') ++depth;
        if (d == '}' || d == ']') --depth;
        ++i_;
        if (depth == 0) break;
      }
    } else {
      while (i_ < text_.size() && text_[i_] != ',' && text_[i_] != '}' && text_[i_] != ']') ++i_;
    }
  }

  bool enter_member(const std::string& key) {
    ++i_;  // '{'
    for (;;) {
      skip_ws();
      if (i_ >= text_.size() || text_[i_] == '}') return false;
      const std::string name = read_string();
      skip_ws();
      ++i_;  // ':'
      skip_ws();
      if (name == key) return true;
      skip_value();
      skip_ws();
      if (i_ < text_.size() && text_[i_] == ',') ++i_;
    }
  }

  bool enter_element(std::size_t index) {
    ++i_;  // '['
    for (std::size_t k = 0;; ++k) {
      skip_ws();
      if (i_ >= text_.size() || text_[i_] == ']') return false;
      if (k == index) return true;
      skip_value();
      skip_ws();
      if (i_ < text_.size() && text_[i_] == ',') ++i_;
    }
  }

  std::string_view text_;
  std::size_t i_ = 0;
};

}  // namespace

std::optional<TextPosition> locate_json_pointer(std::string_view text, std::string_view pointer) {
  if (!pointer.empty() && pointer.front() == '@') {
    std::size_t offset = 0;
    std::from_chars(pointer.data() + 1, pointer.data() + pointer.size(), offset);
    return position_of_offset(text, offset);
  }
  std::vector<std::string> tokens;
  std::size_t start = 0;
  while (start < pointer.size()) {
    if (pointer[start] != '/') return std::nullopt;
    const std::size_t next = pointer.find('/', start + 1);
    const std::size_t stop = next == std::string_view::npos ? pointer.size() : next;
    std::string token;
    for (std::size_t i = start + 1; i < stop; ++i) {
      if (pointer[i] == '~' && i + 1 < stop && (pointer[i + 1] == '0' || pointer[i + 1] == '1')) {
        token += pointer[++i] == '0' ? '~' : '/';
      } else {
        token += pointer[i];
      }
    }
    tokens.push_back(std::move(token));
    start = stop;
  }
  PointerScanner scanner(text);
  const std::size_t offset = scanner.find(tokens);
  if (offset == std::string_view::npos) return std::nullopt;
  return position_of_offset(text, offset);
}

}  // namespace survrel
