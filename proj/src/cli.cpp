#include "irrigation/cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "irrigation/constructive.hpp"
#include "irrigation/graph_analysis.hpp"
#include "irrigation/harness.hpp"
#include "irrigation/irrigation_graph.hpp"
#include "irrigation/random.hpp"
#include "irrigation/rgg.hpp"
#include "irrigation/theory.hpp"

namespace irr {

namespace {

constexpr int kUsageError = 2;

struct Options {
  std::size_t n = 1000;
  int d = 2;
  double delta = 0.5;
  double gamma = 1.0;
  double eps = 0.1;
  double r = 0.0;
  int c = 1;
  std::vector<int> c_list;
  std::vector<double> r_list;
  std::vector<double> r_mult_list;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::string out_path;
  std::string format;
};

struct Given {
  CLI::App* app;
  bool operator()(const char* flag) const { return app->count(flag) > 0; }
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--n", o.n, "number of points")->check(CLI::PositiveNumber);
  sub->add_option("--d", o.d, "dimension of the torus")->check(CLI::PositiveNumber);
  sub->add_option("--delta", o.delta, "radius exponent: r = gamma n^{-(1-delta)/d}");
  sub->add_option("--gamma", o.gamma, "radius prefactor");
  sub->add_option("--eps", o.eps, "slack parameter");
  sub->add_option("--r", o.r, "explicit visibility radius");
  sub->add_option("--c", o.c, "connections per vertex")->check(CLI::PositiveNumber);
  sub->add_option("--c-list", o.c_list, "comma-separated budgets")->delimiter(',');
  sub->add_option("--trials", o.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
  sub->add_option("--seed", o.seed, "base seed");
  sub->add_option("--out", o.out_path, "output file (default: stdout)");
  sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}));
}

RadiusSpec radius_spec(const Options& o, Given given) {
  if (given("--r")) return RadiusSpec::explicit_radius(o.r);
  if (given("--delta")) return RadiusSpec::from_delta(o.delta, o.gamma);
  throw std::invalid_argument("a radius is required: pass --r or --delta");
}

ExperimentConfig base_config(const Options& o, Mode mode) {
  ExperimentConfig config;
  config.n = o.n;
  config.d = o.d;
  config.trials = o.trials;
  config.seed = o.seed;
  config.eps = o.eps;
  config.mode = mode;
  return config;
}

std::vector<int> budgets_from(const Options& o, Given given) {
  if (given("--c-list")) return o.c_list;
  if (given("--c")) return {o.c};
  throw std::invalid_argument("budgets are required: pass --c or --c-list");
}

// Flat JSON objects also render as `key,value` CSV.
std::string render(const nlohmann::json& doc, const std::string& format) {
  if (format != "csv") return doc.dump(2) + "\n";
  std::ostringstream out;
  out << "key,value\n";
  for (const auto& [key, value] : doc.items()) out << key << ',' << value.dump() << '\n';
  return out.str();
}

nlohmann::json theory_json(const Options& o) {
  TheoryParams params;
  params.delta = o.delta;
  params.eps = o.eps;
  params.d = o.d;
  params.gamma = o.gamma;
  params.n = o.n;
  const BudgetPlan plan = budget_plan(params);
  const double n = static_cast<double>(o.n);
  const double r = radius_from_delta(n, o.d, o.delta, o.gamma);

  nlohmann::json doc = {{"delta", o.delta},   {"eps", o.eps},         {"d", o.d},          {"n", o.n},
                        {"gamma", o.gamma},   {"k1", plan.k1},        {"k2", plan.k2},     {"k3", plan.k3},
                        {"c_total", plan.c_total}, {"alpha_d", plan.alpha_d}, {"p_d", plan.p_d}, {"eta_d", plan.eta_d},
                        {"radius", r}};
  doc["cstar"] = std::log(std::log(n)) > 0.0 ? nlohmann::json(cstar(n)) : nlohmann::json();
  doc["penrose_radius"] = o.n >= 3 ? nlohmann::json(penrose_radius(o.n, o.d)) : nlohmann::json();
  std::optional<double> lb;
  if (o.n >= 3 && std::log(n) + o.d * std::log(r) > 0.0) lb = lower_bound_c(n, r, o.d, o.eps);
  doc["lower_bound_c"] = lb ? nlohmann::json(*lb) : nlohmann::json();
  return doc;
}

std::string connect_output(const Options& o, Given given) {
  const std::string format = o.format.empty() ? "json" : o.format;
  const PointSet points = sample_points(o.n, o.d, o.seed);
  if (given("--c")) {
    const double r = radius_spec(o, given).resolve(o.n, o.d);
    if (!(r > 0.0)) throw std::invalid_argument("connect: radius must be > 0");
    const NeighborIndex index(points, r);
    const int budget[] = {o.c};
    const auto graph = sample_irrigation(index, budget, derive_seed(o.seed, 1));
    const auto labeling = components(full_view(graph));
    const std::size_t largest = *std::max_element(labeling.sizes.begin(), labeling.sizes.end());
    nlohmann::json doc = {{"n", o.n},
                          {"d", o.d},
                          {"r", r},
                          {"c", o.c},
                          {"seed", o.seed},
                          {"connected", labeling.connected()},
                          {"components", labeling.count},
                          {"largest_component", largest},
                          {"edges", undirected_edges(full_view(graph)).size()}};
    return render(doc, format);
  }
  if (!given("--delta")) throw std::invalid_argument("connect: pass --c (single connectivity trial) or --delta (protocol)");
  TheoryParams params;
  params.delta = o.delta;
  params.gamma = o.gamma;
  params.eps = o.eps;
  params.d = o.d;
  params.n = o.n;
  const auto report = run_protocol(points, params, derive_seed(o.seed, 1));
  if (format == "json") return protocol_report_to_json(report);
  return render(nlohmann::json::parse(protocol_report_to_json(report)), format);
}

std::string record_output(const ExperimentRecord& record, const Options& o) {
  return o.format == "json" ? record_to_json(record) : record_to_csv(record);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random irrigation (Bluetooth) graphs on the unit torus"};
  app.require_subcommand(1);
  Options o;

  auto* theory = app.add_subcommand("theory", "print the budget constants and thresholds as JSON");
  auto* connect = app.add_subcommand("connect", "single trial: connectivity of one sample, or one protocol run");
  auto* sweep_c_cmd = app.add_subcommand("sweep-c", "connectivity frequency against the budget c");
  auto* sweep_r_cmd = app.add_subcommand("sweep-r", "connectivity frequency against the radius");
  auto* clique_cmd = app.add_subcommand("clique-scan", "frequency of isolated (c+1)-cliques");
  auto* regularity = app.add_subcommand("regularity", "frequency of the discretized regularity event");
  auto* protocol = app.add_subcommand("protocol", "batch runs of the four-phase growth protocol");
  for (auto* sub : {theory, connect, sweep_c_cmd, sweep_r_cmd, clique_cmd, regularity, protocol}) add_common(sub, o);
  sweep_r_cmd->add_option("--r-list", o.r_list, "comma-separated radii")->delimiter(',');
  sweep_r_cmd->add_option("--r-mult-list", o.r_mult_list, "comma-separated multiples of the Penrose radius")
      ->delimiter(',');
  theory->get_option("--n")->default_val(10000);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsageError;
  }

  try {
    std::string text;
    if (theory->parsed()) {
      text = render(theory_json(o), o.format.empty() ? "json" : o.format);
    } else if (connect->parsed()) {
      text = connect_output(o, Given{connect});
    } else if (sweep_c_cmd->parsed()) {
      Given given{sweep_c_cmd};
      auto config = base_config(o, Mode::kSweepC);
      config.radius = radius_spec(o, given);
      config.c_values = budgets_from(o, given);
      text = record_output(sweep_c(config), o);
    } else if (sweep_r_cmd->parsed()) {
      Given given{sweep_r_cmd};
      auto config = base_config(o, Mode::kSweepR);
      if (given("--r-list") == given("--r-mult-list")) {
        throw std::invalid_argument("sweep-r: pass exactly one of --r-list or --r-mult-list");
      }
      config.r_values_are_multiples = given("--r-mult-list");
      config.r_values = config.r_values_are_multiples ? o.r_mult_list : o.r_list;
      if (given("--c")) config.c_values = {o.c};
      text = record_output(sweep_r(config), o);
    } else if (clique_cmd->parsed()) {
      Given given{clique_cmd};
      auto config = base_config(o, Mode::kCliqueScan);
      config.radius = radius_spec(o, given);
      config.c_values = budgets_from(o, given);
      text = record_output(clique_scan(config), o);
    } else if (regularity->parsed()) {
      Given given{regularity};
      auto config = base_config(o, Mode::kRegularity);
      config.radius = radius_spec(o, given);
      text = record_output(regularity_audit(config), o);
    } else if (protocol->parsed()) {
      Given given{protocol};
      if (!given("--delta")) throw std::invalid_argument("protocol: --delta is required");
      auto config = base_config(o, Mode::kProtocol);
      config.radius = RadiusSpec::from_delta(o.delta, o.gamma);
      text = record_output(protocol_batch(config), o);
    }

    if (o.out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(o.out_path, std::ios::binary);
      if (!file) throw std::runtime_error("cannot open output file " + o.out_path);
      file << text;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace irr
