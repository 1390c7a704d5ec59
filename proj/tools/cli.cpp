#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "survrel/analysis.hpp"
#include "survrel/error.hpp"
#include "survrel/io.hpp"
#include "survrel/paths.hpp"
#include "survrel/sampling.hpp"
#include "survrel/twin.hpp"

namespace survrel::cli {

namespace {

struct Options {
  std::string input;
  std::string output;
  std::string format;
  bool no_reverse = false;
  bool reverse_requires_access = false;
  bool one_way_sensors = false;

  std::string model = "failure+access-faults";
  std::string budget;
  std::string budgets;
  std::size_t rho_points = 101;
  std::size_t replicates = 200;
  std::uint64_t seed = 0;

  std::string from;
  std::string to;
  double rho = 0.0;
  std::uint64_t replicate = 0;
};

struct Loaded {
  std::string text;
  bool is_twin = false;
  TwinDocument twin;
  AnalysisInput input;
};

// Usage problems found after CLI11 has accepted the command line.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Loaded load(const Options& opt) {
  Loaded l;
  l.text = read_file(opt.input);
  const auto root = nlohmann::json::parse(l.text, nullptr, false);
  l.is_twin = root.is_object() && root.contains("spaces");
  if (l.is_twin) {
    l.twin = parse_twin(l.text);
    ExtractionPolicy policy;
    policy.reverse_traversal = !opt.no_reverse;
    policy.reverse_requires_access = opt.reverse_requires_access;
    policy.sensors_bidirectional = !opt.one_way_sensors;
    SurveillanceNetwork net = extract_network(l.twin, policy);
    const std::size_t n = net.node_count();
    l.input = AnalysisInput{std::move(net), DemandMatrix(n), BudgetPolicy(1.0)};
  } else {
    l.input = parse_network_file(l.text);
  }
  return l;
}

std::vector<double> parse_budget_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    auto b = parse_budget(item);
    if (!b) throw UsageError("invalid budget '" + item + "'");
    out.push_back(*b);
  }
  if (out.empty()) throw UsageError("--budgets needs at least one value");
  return out;
}

AnalysisConfig make_config(const Options& opt, const AnalysisInput& input) {
  AnalysisConfig config;
  const auto model = parse_cost_model(opt.model);
  if (!model) throw UsageError("unknown model '" + opt.model + "'");
  config.model = *model;
  if (opt.rho_points < 2) throw UsageError("--rho-points must be at least 2");
  config.rho_grid = uniform_grid(opt.rho_points);
  if (opt.replicates < 1) throw UsageError("--replicates must be at least 1");
  config.replicates = opt.replicates;
  config.seed = opt.seed;
  config.budgets = input.budgets;
  if (!opt.budget.empty()) {
    auto b = parse_budget(opt.budget);
    if (!b) throw UsageError("invalid budget '" + opt.budget + "'");
    config.budgets = config.budgets.with_default(*b);
  }
  if (!opt.budgets.empty()) config.budget_sweep = parse_budget_list(opt.budgets);
  return config;
}

void emit(const Options& opt, const std::string& content, std::ostream& out) {
  if (opt.output.empty()) {
    out << content;
    return;
  }
  std::ofstream file(opt.output, std::ios::binary | std::ios::trunc);
  if (!file || !(file << content)) throw std::runtime_error("cannot write '" + opt.output + "'");
}

std::string explain(const Options& opt, const Loaded& loaded) {
  const SurveillanceNetwork& net = loaded.input.network;
  const AnalysisConfig config = make_config(opt, loaded.input);
  if (!(opt.rho >= 0.0 && opt.rho <= 1.0)) throw UsageError("--rho must lie in [0, 1]");
  const NodeIndex o = net.index_of(opt.from);
  const NodeIndex d = net.index_of(opt.to);
  const FailureSample sample = draw_sample(net, config.seed, opt.replicate);
  const CostAssignment costs = assign_costs(net, config.model, opt.rho, sample);
  const PathResult path = cheapest_path(net, costs, o, d);
  const double budget = config.budgets(o, d);
  const bool ok = reachable(path.min_cost, budget);

  if (opt.format == "json") {
    nlohmann::json root = {{"from", opt.from},
                           {"to", opt.to},
                           {"model", to_string(config.model)},
                           {"rho", opt.rho},
                           {"seed", config.seed},
                           {"replicate", opt.replicate},
                           {"budget", format_number(budget)},
                           {"reachable", ok}};
    root["min_cost"] = path.min_cost.is_finite() ? nlohmann::json(path.min_cost.bits()) : nlohmann::json("inf");
    nlohmann::json steps = nlohmann::json::array();
    if (path.path) {
      for (EdgeIndex e : *path.path) {
        const Edge& edge = net.edge(e);
        steps.push_back({{"from", net.label(edge.from)},
                         {"to", net.label(edge.to)},
                         {"bits", costs[e].bits()},
                         {"link", net.pair_labels()[edge.pair]}});
      }
    }
    root["path"] = std::move(steps);
    return root.dump(2) + "\n";
  }

  std::ostringstream s;
  s << opt.from << " -> " << opt.to << ": ";
  if (!path.min_cost.is_finite()) {
    s << "no open path\n";
  } else {
    s << format_number(path.min_cost.bits()) << " bits, " << (ok ? "within" : "not within") << " budget "
      << format_number(budget) << "\n";
    std::size_t step = 1;
    for (EdgeIndex e : *path.path) {
      const Edge& edge = net.edge(e);
      s << "  " << step++ << ". " << net.label(edge.from) << " -> " << net.label(edge.to) << "  "
        << format_number(costs[e].bits()) << " bits  [" << net.pair_labels()[edge.pair] << "]\n";
    }
  }
  s << "model " << to_string(config.model) << ", rho " << format_number(opt.rho) << ", seed " << config.seed
    << ", replicate " << opt.replicate << "\n";
  return s.str();
}

void add_input(CLI::App* cmd, Options& opt) {
  cmd->add_option("input", opt.input, "Twin (.twin.json) or network JSON file")->required()->check(CLI::ExistingFile);
  cmd->add_flag("--no-reverse", opt.no_reverse, "Twin: doors are crossed forwards only");
  cmd->add_flag("--reverse-requires-access", opt.reverse_requires_access,
                "Twin: crossing a door backwards needs the same access level");
  cmd->add_flag("--one-way-sensors", opt.one_way_sensors, "Twin: sensors only see forward crossings");
}

// The first format listed is the default.
void add_output(CLI::App* cmd, Options& opt, std::vector<std::string> formats) {
  cmd->add_option("-o,--output", opt.output, "Write to this file instead of stdout");
  const std::string description = "Output format (default " + formats.front() + ")";
  cmd->add_option("--format", opt.format, description)->check(CLI::IsMember(std::move(formats)));
}

void add_analysis(CLI::App* cmd, Options& opt) {
  cmd->add_option("--model", opt.model, "bernoulli | access | monitoring | failure | failure+access-faults")
      ->capture_default_str();
  cmd->add_option("--budget", opt.budget, "Default privacy budget in bits (number or inf)");
  cmd->add_option("--rho-points", opt.rho_points, "Points in the uniform rho grid")->capture_default_str();
  cmd->add_option("--replicates", opt.replicates, "Monte Carlo replicates")->capture_default_str();
  cmd->add_option("--seed", opt.seed, "Random seed")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reliability index of surveillance networks"};
  app.name("survrel");
  app.require_subcommand(1);
  Options opt;

  auto* validate_cmd = app.add_subcommand("validate", "Check a twin or network file");
  add_input(validate_cmd, opt);

  auto* extract_cmd = app.add_subcommand("extract", "Convert a twin into a network file");
  add_input(extract_cmd, opt);
  extract_cmd->add_option("-o,--output", opt.output, "Write to this file instead of stdout");

  auto* analyze_cmd = app.add_subcommand("analyze", "UD curve and reliability index alpha");
  add_input(analyze_cmd, opt);
  add_analysis(analyze_cmd, opt);
  analyze_cmd->add_option("--budgets", opt.budgets, "Comma-separated budgets to sweep as well");
  add_output(analyze_cmd, opt, {"json", "csv"});

  auto* sweep_cmd = app.add_subcommand("sweep", "Alpha for each of several budgets");
  add_input(sweep_cmd, opt);
  add_analysis(sweep_cmd, opt);
  sweep_cmd->add_option("--budgets", opt.budgets, "Comma-separated budgets")->required();
  add_output(sweep_cmd, opt, {"csv", "json"});

  auto* crit_cmd = app.add_subcommand("criticality", "Change in alpha when each link's sensors are removed");
  add_input(crit_cmd, opt);
  add_analysis(crit_cmd, opt);
  crit_cmd->add_option("--budgets", opt.budgets, "Comma-separated budgets");
  add_output(crit_cmd, opt, {"csv", "json"});

  auto* explain_cmd = app.add_subcommand("explain", "Cheapest path for one origin and destination");
  add_input(explain_cmd, opt);
  add_analysis(explain_cmd, opt);
  explain_cmd->add_option("--from", opt.from, "Origin label")->required();
  explain_cmd->add_option("--to", opt.to, "Destination label")->required();
  explain_cmd->add_option("--rho", opt.rho, "Restriction level in [0, 1]")->capture_default_str();
  explain_cmd->add_option("--replicate", opt.replicate, "Replicate index of the failure sample")
      ->capture_default_str();
  add_output(explain_cmd, opt, {"text", "json"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const Loaded loaded = load(opt);
    const AnalysisInput& input = loaded.input;
    const SurveillanceNetwork& net = input.network;

    if (validate_cmd->parsed()) {
      out << opt.input << ": ok: ";
      if (loaded.is_twin) {
        out << loaded.twin.spaces.size() << " spaces, " << loaded.twin.doors.size() << " doors, "
            << loaded.twin.assets.size() << " assets -> ";
      }
      out << net.node_count() << " nodes, " << net.edge_count() << " directed edges, " << net.pair_count()
          << " physical links\n";
    } else if (extract_cmd->parsed()) {
      emit(opt, write_network_file(input), out);
    } else if (analyze_cmd->parsed()) {
      const AnalysisConfig config = make_config(opt, input);
      const ReliabilityReport report = compute_alpha(net, input.demand, config);
      emit(opt, opt.format == "csv" ? report_to_csv(report) : report_to_json(report), out);
    } else if (sweep_cmd->parsed()) {
      const AnalysisConfig config = make_config(opt, input);
      const auto sweep = budget_sweep(net, input.demand, config);
      emit(opt, opt.format == "json" ? sweep_to_json(sweep, config) : sweep_to_csv(sweep), out);
    } else if (crit_cmd->parsed()) {
      const AnalysisConfig config = make_config(opt, input);
      const auto rows = edge_criticality(net, input.demand, config);
      emit(opt, opt.format == "json" ? criticality_to_json(rows, config) : criticality_to_csv(rows), out);
    } else if (explain_cmd->parsed()) {
      emit(opt, explain(opt, loaded), out);
    }
  } catch (const UsageError& e) {
    err << "survrel: usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << opt.input;
    if (!e.pointer().empty()) {
      std::string text;
      try {
        text = read_file(opt.input);
      } catch (const UsageError&) {
      }
      if (auto pos = locate_json_pointer(text, e.pointer())) err << ":" << pos->line << ":" << pos->column;
    }
    err << ": error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "survrel: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace survrel::cli
