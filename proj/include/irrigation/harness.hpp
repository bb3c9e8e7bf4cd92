#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "irrigation/theory.hpp"

namespace irr {

/// Budget value meaning "keep every RGG edge" (unsparsified G_n(r)).
inline constexpr int kAllNeighbors = std::numeric_limits<int>::max();

enum class Mode { kConnectivity, kSweepC, kSweepR, kCliqueScan, kRegularity, kProtocol };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string& name);

struct RadiusSpec {
  enum class Kind { kExplicit, kDelta, kPenroseMultiple };
  Kind kind = Kind::kExplicit;
  double value = 0.0;  // r, or the multiple of the Penrose radius
  double delta = 0.5;
  double gamma = 1.0;

  static RadiusSpec explicit_radius(double r) { return {Kind::kExplicit, r, 0.5, 1.0}; }
  static RadiusSpec from_delta(double delta, double gamma) { return {Kind::kDelta, 0.0, delta, gamma}; }
  static RadiusSpec penrose_multiple(double m) { return {Kind::kPenroseMultiple, m, 0.5, 1.0}; }

  double resolve(std::size_t n, int d) const;
  friend bool operator==(const RadiusSpec&, const RadiusSpec&) = default;
};

struct ExperimentConfig {
  std::size_t n = 1000;
  int d = 2;
  RadiusSpec radius;
  std::vector<int> c_values;
  /// sweep_r only: radii (explicit) or Penrose multiples, ascending.
  std::vector<double> r_values;
  bool r_values_are_multiples = false;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  double eps = 0.1;
  Mode mode = Mode::kConnectivity;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct ExperimentRow {
  std::string param;
  double value = 0.0;
  std::size_t successes = 0;
  std::size_t trials = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::optional<double> mean;  // clique scan: mean isolated-clique count

  friend bool operator==(const ExperimentRow&, const ExperimentRow&) = default;
};

struct ExperimentRecord {
  ExperimentConfig config;
  std::vector<ExperimentRow> rows;
  std::optional<int> empirical_threshold;  // smallest c with p_hat >= 0.5
  double wall_time = 0.0;                  // seconds; not serialized
};

struct WilsonInterval {
  double low = 0.0;
  double high = 1.0;
};

/// Wilson score interval for a Bernoulli proportion (95% by default).
WilsonInterval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

ExperimentRow make_row(std::string param, double value, std::size_t successes, std::size_t trials);

/// Connectivity frequency of Γ_n(r, c) for every c in config.c_values. Every
/// trial draws one point set and one choice sample for max(c); smaller budgets
/// are revealed prefixes of the same sample.
ExperimentRecord estimate_connectivity(const ExperimentConfig& config);

/// estimate_connectivity over ascending c_values, plus the empirical threshold.
ExperimentRecord sweep_c(const ExperimentConfig& config);

/// Connectivity frequency against the radius at fixed c (c_values[0], or
/// unsparsified when c_values is empty). Point sets are shared across radii.
ExperimentRecord sweep_r(const ExperimentConfig& config);

/// Frequency of at least one isolated (c+1)-clique, and the mean count.
ExperimentRecord clique_scan(const ExperimentConfig& config);

/// Frequency of the discretized regularity event.
ExperimentRecord regularity_audit(const ExperimentConfig& config);

/// Per-phase and overall success frequencies of the four-phase protocol.
ExperimentRecord protocol_batch(const ExperimentConfig& config);

/// Worker count: IRRIGATION_WORKERS if set, else hardware concurrency.
std::size_t worker_count();

/// Runs task(trial) for trial in [0, trials) on a worker pool; results are
/// returned in trial order regardless of scheduling.
template <typename Task>
auto run_trials(std::size_t trials, Task&& task) -> std::vector<decltype(task(std::size_t{}))> {
  using Result = decltype(task(std::size_t{}));
  std::vector<Result> results(trials);
  const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(trials, 1));
  if (workers <= 1) {
    for (std::size_t t = 0; t < trials; ++t) results[t] = task(t);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t t = next++; t < trials && !failed; t = next++) {
        try {
          results[t] = task(t);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

std::string record_to_csv(const ExperimentRecord& record);
std::string record_to_json(const ExperimentRecord& record);
/// Parses the rows of record_to_csv output.
std::vector<ExperimentRow> rows_from_csv(const std::string& text);
ExperimentRecord record_from_json(const std::string& text);

}  // namespace irr
