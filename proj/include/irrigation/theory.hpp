#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "irrigation/geometry.hpp"

namespace irr {

struct TheoryParams {
  double delta = 0.5;
  double eps = 0.1;
  int d = 2;
  double gamma = 1.0;
  std::size_t n = 10000;

  /// Throws std::invalid_argument unless delta, eps in (0,1), d >= 1, gamma > 0, n >= 1.
  void validate() const;
};

/// Per-vertex connection budgets of the four growth phases.
struct BudgetPlan {
  int k1 = 0;
  int k2 = 0;
  int k3 = 0;
  int c_total = 0;  // k1 + k2 + k3 + 1
  double alpha_d = 0.0;
  double p_d = 0.0;
  double eta_d = 0.0;  // reported only

  /// Budget groups (k1, k2, k3, 1) in reveal order.
  std::vector<int> budgets() const { return {k1, k2, k3, 1}; }
};

/// (ln n / (n v_d))^{1/d}. Requires n >= 3.
double penrose_radius(std::size_t n, int d);

/// sqrt(2 ln n / ln ln n). Requires ln ln n > 0.
double cstar(double n);

/// ceil(sqrt((1 + x^2 + 8 sqrt(x) + eps) / (x - 2 x^2 log2(1/x)))).
/// Throws std::domain_error when the denominator is not positive.
int f_of(double x, double eps);

BudgetPlan budget_plan(const TheoryParams& params);

/// Largest budget for which an isolated (c+1)-clique is expected,
/// sqrt((1-eps) (lambda / (lambda - 1/2)) ln n / ln(n r^d)).
/// lambda defaults to the finite-n estimate ln(n r^d) / ln ln n; pass
/// +infinity for the polynomial-radius limit. Returns nullopt when
/// lambda <= 1/2. Throws std::domain_error when n r^d <= 1.
std::optional<double> lower_bound_c(double n, double r, int d, double eps,
                                    std::optional<double> lambda = std::nullopt);

/// gamma * n^{-(1 - delta)/d}; not clipped to the torus diameter.
double radius_from_delta(double n, int d, double delta, double gamma);

/// min(delta^2, 1/25).
double growth_exponent(double delta);

/// Exploration depth floor(min(delta^2, 1/25) log2 n).
int exploration_depth(double n, double delta);

/// Dense-cell threshold n^{min(delta^2, 1/25)/3}.
double dense_cell_target(double n, double delta);

/// Finite-center audit of the regularity event: ball and cube occupancy
/// ratios are evaluated only at the data points and the analysis-grid cell
/// centers, so `holds` approximates a supremum over all centers.
struct RegularityReport {
  double eps = 0.0;
  double ball_ratio_min = 0.0;
  double ball_ratio_max = 0.0;
  double ball_ratio_mean = 0.0;
  double cube_ratio_min = 0.0;
  double cube_ratio_max = 0.0;
  bool holds = false;
  std::size_t centers_checked = 0;
  bool discretized = true;
};

RegularityReport check_regularity(const PointSet& points, double r, double eps);

}  // namespace irr
