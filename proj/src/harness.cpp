#include "irrigation/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "irrigation/constructive.hpp"
#include "irrigation/graph_analysis.hpp"
#include "irrigation/irrigation_graph.hpp"
#include "irrigation/random.hpp"
#include "irrigation/rgg.hpp"

namespace irr {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Stream 0 draws points (the trial seed itself), stream 1 + k draws choices.
std::uint64_t choice_seed(std::uint64_t seed, std::size_t trial, std::size_t k = 0) {
  return derive_seed(trial_seed(seed, trial), 1 + k);
}

void validate(const ExperimentConfig& config) {
  if (config.n < 1) throw std::invalid_argument("experiment: n must be >= 1");
  if (config.d < 1) throw std::invalid_argument("experiment: d must be >= 1");
  if (config.trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
}

// Stage budgets (c_1, c_2 - c_1, ...) for ascending distinct budgets.
std::vector<int> staged_budgets(const std::vector<int>& ascending) {
  std::vector<int> budgets;
  int prev = 0;
  for (int c : ascending) {
    budgets.push_back(c - prev);
    prev = c;
  }
  return budgets;
}

// Per-trial connectivity indicator for each budget in `ascending`.
std::vector<char> coupled_connectivity(const ExperimentConfig& config, const std::vector<int>& ascending, double r,
                                       std::size_t trial) {
  std::vector<char> out(ascending.size(), 0);
  if (config.n == 1) {
    std::fill(out.begin(), out.end(), 1);
    return out;
  }
  const PointSet points = sample_points(config.n, config.d, trial_seed(config.seed, trial));
  const NeighborIndex index(points, r);
  std::size_t first_bounded_end = ascending.size();
  if (!ascending.empty() && ascending.back() == kAllNeighbors) {
    first_bounded_end = static_cast<std::size_t>(
        std::find(ascending.begin(), ascending.end(), kAllNeighbors) - ascending.begin());
    const bool rgg_connected = rgg_components(index).connected();
    for (std::size_t k = first_bounded_end; k < ascending.size(); ++k) out[k] = rgg_connected;
  }
  if (first_bounded_end == 0) return out;
  const std::vector<int> bounded(ascending.begin(), ascending.begin() + static_cast<std::ptrdiff_t>(first_bounded_end));
  const auto budgets = staged_budgets(bounded);
  const IrrigationGraph graph = sample_irrigation(index, budgets, choice_seed(config.seed, trial));
  for (std::size_t s = 0; s < bounded.size(); ++s) out[s] = is_connected(StageView(graph, s + 1));
  return out;
}

ExperimentRecord connectivity_record(const ExperimentConfig& config, std::vector<int> ascending, double r) {
  ExperimentRecord record;
  record.config = config;
  const auto outcomes = run_trials(config.trials, [&](std::size_t t) { return coupled_connectivity(config, ascending, r, t); });
  for (std::size_t k = 0; k < ascending.size(); ++k) {
    std::size_t successes = 0;
    for (const auto& o : outcomes) successes += o[k] ? 1 : 0;
    record.rows.push_back(make_row("c", static_cast<double>(ascending[k]), successes, config.trials));
  }
  return record;
}

std::vector<int> sorted_unique_budgets(const std::vector<int>& values) {
  if (values.empty()) throw std::invalid_argument("experiment: c_values must be non-empty");
  std::vector<int> out(values);
  for (int c : out) {
    if (c < 1) throw std::invalid_argument("experiment: every c must be >= 1");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::kConnectivity: return "connectivity";
    case Mode::kSweepC: return "sweep_c";
    case Mode::kSweepR: return "sweep_r";
    case Mode::kCliqueScan: return "clique_scan";
    case Mode::kRegularity: return "regularity";
    case Mode::kProtocol: return "protocol";
  }
  return "connectivity";
}

Mode mode_from_string(const std::string& name) {
  for (Mode m : {Mode::kConnectivity, Mode::kSweepC, Mode::kSweepR, Mode::kCliqueScan, Mode::kRegularity,
                 Mode::kProtocol}) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown experiment mode: " + name);
}

double RadiusSpec::resolve(std::size_t n, int d) const {
  switch (kind) {
    case Kind::kExplicit: return value;
    case Kind::kDelta: return radius_from_delta(static_cast<double>(n), d, delta, gamma);
    case Kind::kPenroseMultiple: return value * penrose_radius(n, d);
  }
  return value;
}

WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::clamp(center - half, 0.0, p), std::clamp(center + half, p, 1.0)};
}

ExperimentRow make_row(std::string param, double value, std::size_t successes, std::size_t trials) {
  ExperimentRow row;
  row.param = std::move(param);
  row.value = value;
  row.successes = successes;
  row.trials = trials;
  row.p_hat = trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0;
  const auto ci = wilson_interval(successes, trials);
  row.ci_low = ci.low;
  row.ci_high = ci.high;
  return row;
}

ExperimentRecord estimate_connectivity(const ExperimentConfig& config) {
  const auto start = Clock::now();
  validate(config);
  const double r = config.radius.resolve(config.n, config.d);
  if (!(r > 0.0)) throw std::invalid_argument("estimate_connectivity: radius must be > 0");
  auto record = connectivity_record(config, sorted_unique_budgets(config.c_values), r);
  record.wall_time = seconds_since(start);
  return record;
}

ExperimentRecord sweep_c(const ExperimentConfig& config) {
  const auto start = Clock::now();
  validate(config);
  if (!std::is_sorted(config.c_values.begin(), config.c_values.end())) {
    throw std::invalid_argument("sweep_c: c_values must be ascending");
  }
  const double r = config.radius.resolve(config.n, config.d);
  if (!(r > 0.0)) throw std::invalid_argument("sweep_c: radius must be > 0");
  auto record = connectivity_record(config, sorted_unique_budgets(config.c_values), r);
  for (const auto& row : record.rows) {
    if (row.p_hat >= 0.5) {
      record.empirical_threshold = static_cast<int>(row.value);
      break;
    }
  }
  record.wall_time = seconds_since(start);
  return record;
}

ExperimentRecord sweep_r(const ExperimentConfig& config) {
  const auto start = Clock::now();
  validate(config);
  if (config.r_values.empty()) throw std::invalid_argument("sweep_r: radius list must be non-empty");
  if (!std::is_sorted(config.r_values.begin(), config.r_values.end())) {
    throw std::invalid_argument("sweep_r: radii must be ascending");
  }
  const int c = config.c_values.empty() ? kAllNeighbors : config.c_values.front();
  if (c < 1) throw std::invalid_argument("sweep_r: c must be >= 1");
  std::vector<double> radii;
  for (double v : config.r_values) {
    const double r = config.r_values_are_multiples ? v * penrose_radius(config.n, config.d) : v;
    if (r < 0.0) throw std::invalid_argument("sweep_r: radii must be >= 0");
    radii.push_back(r);
  }

  const auto outcomes = run_trials(config.trials, [&](std::size_t t) {
    std::vector<char> out(radii.size(), 0);
    const PointSet points = sample_points(config.n, config.d, trial_seed(config.seed, t));
    for (std::size_t k = 0; k < radii.size(); ++k) {
      if (config.n == 1) {
        out[k] = 1;
        continue;
      }
      if (radii[k] == 0.0) continue;
      const NeighborIndex index(points, radii[k]);
      if (c == kAllNeighbors) {
        out[k] = rgg_components(index).connected();
      } else {
        const int budget[] = {c};
        const auto graph = sample_irrigation(index, budget, choice_seed(config.seed, t, k));
        out[k] = is_connected(full_view(graph));
      }
    }
    return out;
  });

  ExperimentRecord record;
  record.config = config;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    std::size_t successes = 0;
    for (const auto& o : outcomes) successes += o[k] ? 1 : 0;
    record.rows.push_back(make_row("r", radii[k], successes, config.trials));
  }
  record.wall_time = seconds_since(start);
  return record;
}

ExperimentRecord clique_scan(const ExperimentConfig& config) {
  const auto start = Clock::now();
  validate(config);
  const auto ascending = sorted_unique_budgets(config.c_values);
  if (ascending.back() == kAllNeighbors) throw std::invalid_argument("clique_scan: c must be finite");
  const double r = config.radius.resolve(config.n, config.d);
  if (!(r > 0.0)) throw std::invalid_argument("clique_scan: radius must be > 0");
  const auto budgets = staged_budgets(ascending);

  const auto counts = run_trials(config.trials, [&](std::size_t t) {
    const PointSet points = sample_points(config.n, config.d, trial_seed(config.seed, t));
    const NeighborIndex index(points, r);
    const auto graph = sample_irrigation(index, budgets, choice_seed(config.seed, t));
    std::vector<std::size_t> out(ascending.size());
    for (std::size_t s = 0; s < ascending.size(); ++s) {
      out[s] = find_isolated_cliques(StageView(graph, s + 1), ascending[s]).cliques.size();
    }
    return out;
  });

  ExperimentRecord record;
  record.config = config;
  for (std::size_t s = 0; s < ascending.size(); ++s) {
    std::size_t with_clique = 0;
    double total = 0.0;
    for (const auto& o : counts) {
      with_clique += o[s] > 0 ? 1 : 0;
      total += static_cast<double>(o[s]);
    }
    auto row = make_row("c", ascending[s], with_clique, config.trials);
    row.mean = total / static_cast<double>(config.trials);
    record.rows.push_back(std::move(row));
  }
  record.wall_time = seconds_since(start);
  return record;
}

ExperimentRecord regularity_audit(const ExperimentConfig& config) {
  const auto start = Clock::now();
  validate(config);
  const double r = config.radius.resolve(config.n, config.d);
  const auto holds = run_trials(config.trials, [&](std::size_t t) -> char {
    const PointSet points = sample_points(config.n, config.d, trial_seed(config.seed, t));
    return check_regularity(points, r, config.eps).holds;
  });
  ExperimentRecord record;
  record.config = config;
  const auto successes = static_cast<std::size_t>(std::count(holds.begin(), holds.end(), 1));
  record.rows.push_back(make_row("eps", config.eps, successes, config.trials));
  record.wall_time = seconds_since(start);
  return record;
}

ExperimentRecord protocol_batch(const ExperimentConfig& config) {
  const auto start = Clock::now();
  validate(config);
  if (config.radius.kind != RadiusSpec::Kind::kDelta) {
    throw std::invalid_argument("protocol: radius must be given by delta and gamma");
  }
  TheoryParams params;
  params.delta = config.radius.delta;
  params.gamma = config.radius.gamma;
  params.eps = config.eps;
  params.d = config.d;
  params.n = config.n;
  params.validate();

  struct Outcome {
    char phase1 = 0, phase2 = 0, phase3 = 0, stitched = 0, connected = 0;
  };
  const auto outcomes = run_trials(config.trials, [&](std::size_t t) {
    const PointSet points = sample_points(config.n, config.d, trial_seed(config.seed, t));
    const auto report = run_protocol(points, params, choice_seed(config.seed, t));
    Outcome o;
    o.phase1 = report.phase1.success;
    o.phase2 = report.phase2_run && report.phase2.success;
    o.phase3 = report.phase3_run && report.phase3.success;
    o.stitched = report.stitched;
    o.connected = report.connected;
    return o;
  });

  ExperimentRecord record;
  record.config = config;
  auto tally = [&](const char* name, char Outcome::*field) {
    std::size_t s = 0;
    for (const auto& o : outcomes) s += (o.*field) ? 1 : 0;
    record.rows.push_back(make_row(name, params.delta, s, config.trials));
  };
  tally("phase1", &Outcome::phase1);
  tally("phase2", &Outcome::phase2);
  tally("phase3", &Outcome::phase3);
  tally("stitched", &Outcome::stitched);
  tally("connected", &Outcome::connected);
  record.wall_time = seconds_since(start);
  return record;
}

std::size_t worker_count() {
  if (const char* env = std::getenv("IRRIGATION_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json radius = {{"value", c.radius.value}, {"delta", c.radius.delta}, {"gamma", c.radius.gamma}};
  switch (c.radius.kind) {
    case RadiusSpec::Kind::kExplicit: radius["kind"] = "explicit"; break;
    case RadiusSpec::Kind::kDelta: radius["kind"] = "delta"; break;
    case RadiusSpec::Kind::kPenroseMultiple: radius["kind"] = "penrose_multiple"; break;
  }
  return {{"mode", to_string(c.mode)},
          {"n", c.n},
          {"d", c.d},
          {"radius", radius},
          {"c_values", c.c_values},
          {"r_values", c.r_values},
          {"r_values_are_multiples", c.r_values_are_multiples},
          {"trials", c.trials},
          {"seed", c.seed},
          {"eps", c.eps}};
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  c.mode = mode_from_string(j.at("mode").get<std::string>());
  c.n = j.at("n").get<std::size_t>();
  c.d = j.at("d").get<int>();
  const auto& radius = j.at("radius");
  const auto kind = radius.at("kind").get<std::string>();
  c.radius.kind = kind == "delta"              ? RadiusSpec::Kind::kDelta
                  : kind == "penrose_multiple" ? RadiusSpec::Kind::kPenroseMultiple
                                               : RadiusSpec::Kind::kExplicit;
  c.radius.value = radius.at("value").get<double>();
  c.radius.delta = radius.at("delta").get<double>();
  c.radius.gamma = radius.at("gamma").get<double>();
  c.c_values = j.at("c_values").get<std::vector<int>>();
  c.r_values = j.at("r_values").get<std::vector<double>>();
  c.r_values_are_multiples = j.at("r_values_are_multiples").get<bool>();
  c.trials = j.at("trials").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.eps = j.at("eps").get<double>();
  return c;
}

}  // namespace

std::string record_to_csv(const ExperimentRecord& record) {
  const bool with_mean = std::any_of(record.rows.begin(), record.rows.end(), [](const auto& r) { return r.mean.has_value(); });
  std::ostringstream out;
  out << "param,value,successes,trials,p_hat,ci_low,ci_high" << (with_mean ? ",mean" : "") << '\n';
  for (const auto& row : record.rows) {
    out << row.param << ',' << format_double(row.value) << ',' << row.successes << ',' << row.trials << ','
        << format_double(row.p_hat) << ',' << format_double(row.ci_low) << ',' << format_double(row.ci_high);
    if (with_mean) out << ',' << (row.mean ? format_double(*row.mean) : "");
    out << '\n';
  }
  return out.str();
}

std::vector<ExperimentRow> rows_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("param,value,successes,trials,p_hat,ci_low,ci_high", 0) != 0) {
    throw std::runtime_error("rows_from_csv: bad header");
  }
  const bool with_mean = line.ends_with(",mean");
  std::vector<ExperimentRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    if (line.back() == ',') fields.emplace_back();
    if (fields.size() != (with_mean ? 8u : 7u)) throw std::runtime_error("rows_from_csv: wrong field count");
    ExperimentRow row;
    row.param = fields[0];
    row.value = std::stod(fields[1]);
    row.successes = std::stoull(fields[2]);
    row.trials = std::stoull(fields[3]);
    row.p_hat = std::stod(fields[4]);
    row.ci_low = std::stod(fields[5]);
    row.ci_high = std::stod(fields[6]);
    if (with_mean && !fields[7].empty()) row.mean = std::stod(fields[7]);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string record_to_json(const ExperimentRecord& record) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : record.rows) {
    nlohmann::json row = {{"param", r.param},   {"value", r.value},   {"successes", r.successes},
                          {"trials", r.trials}, {"p_hat", r.p_hat},   {"ci_low", r.ci_low},
                          {"ci_high", r.ci_high}};
    if (r.mean) row["mean"] = *r.mean;
    rows.push_back(std::move(row));
  }
  nlohmann::json j = {{"config", config_to_json(record.config)}, {"rows", rows}};
  j["empirical_threshold"] = record.empirical_threshold ? nlohmann::json(*record.empirical_threshold) : nlohmann::json();
  return j.dump(2) + "\n";
}

ExperimentRecord record_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ExperimentRecord record;
  record.config = config_from_json(j.at("config"));
  for (const auto& r : j.at("rows")) {
    ExperimentRow row;
    row.param = r.at("param").get<std::string>();
    row.value = r.at("value").get<double>();
    row.successes = r.at("successes").get<std::size_t>();
    row.trials = r.at("trials").get<std::size_t>();
    row.p_hat = r.at("p_hat").get<double>();
    row.ci_low = r.at("ci_low").get<double>();
    row.ci_high = r.at("ci_high").get<double>();
    if (r.contains("mean")) row.mean = r.at("mean").get<double>();
    record.rows.push_back(std::move(row));
  }
  if (!j.at("empirical_threshold").is_null()) record.empirical_threshold = j.at("empirical_threshold").get<int>();
  return record;
}

}  // namespace irr
