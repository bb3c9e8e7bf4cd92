#include "irrigation/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "irrigation/rgg.hpp"

namespace irr {

void TheoryParams::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("TheoryParams: delta must lie in (0,1)");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("TheoryParams: eps must lie in (0,1)");
  if (d < 1) throw std::invalid_argument("TheoryParams: d must be >= 1");
  if (!(gamma > 0.0)) throw std::invalid_argument("TheoryParams: gamma must be > 0");
  if (n < 1) throw std::invalid_argument("TheoryParams: n must be >= 1");
}

double penrose_radius(std::size_t n, int d) {
  if (n < 3) throw std::invalid_argument("penrose_radius: n must be >= 3");
  const double nn = static_cast<double>(n);
  return std::pow(std::log(nn) / (nn * ball_volume(d)), 1.0 / d);
}

double cstar(double n) {
  if (!(n > 1.0)) throw std::invalid_argument("cstar: n must exceed e");
  const double loglog = std::log(std::log(n));
  if (!(loglog > 0.0)) throw std::invalid_argument("cstar: ln ln n must be > 0");
  return std::sqrt(2.0 * std::log(n) / loglog);
}

int f_of(double x, double eps) {
  if (!(x > 0.0 && x < 1.0)) throw std::domain_error("f_of: x must lie in (0,1)");
  const double denom = x - 2.0 * x * x * std::log2(1.0 / x);
  if (!(denom > 0.0)) throw std::domain_error("f_of: non-positive denominator");
  const double numer = 1.0 + x * x + 8.0 * std::sqrt(x) + eps;
  return static_cast<int>(std::ceil(std::sqrt(numer / denom)));
}

BudgetPlan budget_plan(const TheoryParams& params) {
  params.validate();
  const double eps = params.eps;
  const double vd = ball_volume(params.d);
  const double cube_scale = std::pow(2.0 * std::sqrt(static_cast<double>(params.d)), params.d);

  BudgetPlan plan;
  plan.alpha_d = (1.0 - eps) / (2.0 * cube_scale);
  plan.k1 = f_of(params.delta < 0.2 ? params.delta : 0.2, eps);
  plan.k2 = static_cast<int>(std::ceil(8.0 * (1.0 + eps) * vd * cube_scale / (1.0 - eps)));
  plan.k3 = static_cast<int>(std::ceil(std::sqrt(4.0 * (1.0 + eps) * vd / plan.alpha_d)));
  plan.c_total = plan.k1 + plan.k2 + plan.k3 + 1;
  plan.p_d = plan.alpha_d / ((1.0 + eps) * vd);
  plan.eta_d = std::pow(plan.alpha_d, 3) / (12.0 * plan.k3 * (1.0 + eps) * (1.0 + eps) * vd * vd);
  return plan;
}

std::optional<double> lower_bound_c(double n, double r, int d, double eps, std::optional<double> lambda) {
  if (d < 1) throw std::invalid_argument("lower_bound_c: d must be >= 1");
  const double log_n = std::log(n);
  const double log_nrd = log_n + d * std::log(r);
  if (!(log_nrd > 0.0)) throw std::domain_error("lower_bound_c: requires n r^d > 1");
  const double lam = lambda ? *lambda : log_nrd / std::log(log_n);
  if (!(lam > 0.5)) return std::nullopt;
  const double factor = std::isinf(lam) ? 1.0 : lam / (lam - 0.5);
  return std::sqrt((1.0 - eps) * factor * log_n / log_nrd);
}

double radius_from_delta(double n, int d, double delta, double gamma) {
  if (d < 1) throw std::invalid_argument("radius_from_delta: d must be >= 1");
  return gamma * std::pow(n, -(1.0 - delta) / d);
}

double growth_exponent(double delta) { return std::min(delta * delta, 1.0 / 25.0); }

int exploration_depth(double n, double delta) {
  return static_cast<int>(std::floor(growth_exponent(delta) * std::log2(n)));
}

double dense_cell_target(double n, double delta) { return std::pow(n, growth_exponent(delta) / 3.0); }

RegularityReport check_regularity(const PointSet& points, double r, double eps) {
  const int d = points.dim();
  if (!(r > 0.0) || r > std::sqrt(static_cast<double>(d)) / 2.0) {
    throw std::invalid_argument("check_regularity: r must lie in (0, sqrt(d)/2]");
  }
  const NeighborIndex index(points, r);
  const Grid grid = grid_for_radius(r, d);
  const double n = static_cast<double>(points.size());
  const double ball_expect = n * torus_ball_volume(r, d);
  const double cube_side = r / (2.0 * std::sqrt(static_cast<double>(d)));
  const double cube_expect = n * std::pow(cube_side, d);
  const double cube_reach = cube_side * std::sqrt(static_cast<double>(d)) / 2.0;

  RegularityReport report;
  report.eps = eps;
  report.ball_ratio_min = report.cube_ratio_min = std::numeric_limits<double>::infinity();
  report.ball_ratio_max = report.cube_ratio_max = -std::numeric_limits<double>::infinity();
  double ball_sum = 0.0;

  auto audit = [&](const Eigen::VectorXd& center) {
    std::size_t in_ball = 0;
    index.for_each_within(center, r, [&](VertexId) { ++in_ball; });
    std::size_t in_cube = 0;
    index.for_each_within(center, cube_reach, [&](VertexId j) {
      if ((wrapped_difference(center, points.point(j)) <= cube_side / 2.0).all()) ++in_cube;
    });
    const double ball_ratio = static_cast<double>(in_ball) / ball_expect;
    const double cube_ratio = static_cast<double>(in_cube) / cube_expect;
    report.ball_ratio_min = std::min(report.ball_ratio_min, ball_ratio);
    report.ball_ratio_max = std::max(report.ball_ratio_max, ball_ratio);
    report.cube_ratio_min = std::min(report.cube_ratio_min, cube_ratio);
    report.cube_ratio_max = std::max(report.cube_ratio_max, cube_ratio);
    ball_sum += ball_ratio;
    ++report.centers_checked;
  };

  Eigen::VectorXd center(d);
  for (std::size_t i = 0; i < points.size(); ++i) {
    center = points.point(i);
    audit(center);
  }
  for (std::int64_t flat = 0; flat < grid.cell_count(); ++flat) {
    center = (cell_from_flat(flat, grid).cast<double>().array() + 0.5) * grid.side;
    audit(center);
  }
  report.ball_ratio_mean = ball_sum / static_cast<double>(report.centers_checked);
  auto inside = [&](double v) { return v > 1.0 - eps && v < 1.0 + eps; };
  report.holds = inside(report.ball_ratio_min) && inside(report.ball_ratio_max) && inside(report.cube_ratio_min) &&
                 inside(report.cube_ratio_max);
  return report;
}

}  // namespace irr
