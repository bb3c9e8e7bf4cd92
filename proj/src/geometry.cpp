#include "irrigation/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "irrigation/random.hpp"

namespace irr {

PointSet::PointSet(Eigen::MatrixXd coords, std::uint64_t seed) : coords_(std::move(coords)), seed_(seed) {
  if (coords_.rows() < 1) throw std::invalid_argument("PointSet: dimension must be >= 1");
  if (coords_.size() > 0 && ((coords_.array() < 0.0).any() || (coords_.array() >= 1.0).any())) {
    throw std::invalid_argument("PointSet: coordinates must lie in [0,1)");
  }
}

PointSet sample_points(std::size_t n, int d, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("sample_points: n must be >= 1");
  if (d < 1) throw std::invalid_argument("sample_points: d must be >= 1");
  SplitMix64 rng(seed);
  Eigen::MatrixXd coords(d, static_cast<Eigen::Index>(n));
  double* data = coords.data();
  for (Eigen::Index k = 0; k < coords.size(); ++k) data[k] = rng.uniform01();
  return PointSet(std::move(coords), seed);
}

double ball_volume(int d) {
  if (d < 1) throw std::invalid_argument("ball_volume: d must be >= 1");
  const double half = 0.5 * d;
  return std::pow(std::numbers::pi, half) / std::tgamma(half + 1.0);
}

namespace {

// Measure of {y in [-1/2,1/2]^d : |y| <= r}, integrated one coordinate at a
// time. The integrand is smooth between the points where the remaining
// radius crosses sqrt(k)/2, so each slab is split there.
double cube_ball_measure(double r, int d) {
  if (r <= 0.0) return 0.0;
  if (d == 1) return std::min(2.0 * r, 1.0);
  if (4.0 * r * r >= d) return 1.0;
  if (r <= 0.5) return ball_volume(d) * std::pow(r, d);

  const double t_max = std::min(r, 0.5);
  std::vector<double> knots{0.0};
  for (int k = 1; k < d; ++k) {
    const double s = r * r - 0.25 * k;
    if (s > 0.0 && std::sqrt(s) < t_max) knots.push_back(std::sqrt(s));
  }
  knots.push_back(t_max);
  std::sort(knots.begin(), knots.end());

  auto slab = [&](double t) { return cube_ball_measure(std::sqrt(std::max(0.0, r * r - t * t)), d - 1); };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    if (knots[i + 1] <= knots[i]) continue;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(slab, knots[i], knots[i + 1], 8, 1e-12);
  }
  return 2.0 * total;
}

}  // namespace

double torus_ball_volume(double r, int d) {
  if (d < 1) throw std::invalid_argument("torus_ball_volume: d must be >= 1");
  if (r < 0.0) throw std::invalid_argument("torus_ball_volume: r must be >= 0");
  return cube_ball_measure(r, d);
}

std::int64_t Grid::cell_count() const {
  std::int64_t count = 1;
  for (int i = 0; i < dim; ++i) count *= cells_per_side;
  return count;
}

Grid grid_for_radius(double r, int d) {
  if (!(r > 0.0)) throw std::invalid_argument("grid_for_radius: r must be > 0");
  if (d < 1) throw std::invalid_argument("grid_for_radius: d must be >= 1");
  const double m_real = std::ceil(2.0 * std::sqrt(static_cast<double>(d)) / r);
  if (std::pow(m_real, d) > static_cast<double>(std::numeric_limits<std::int32_t>::max())) {
    throw std::invalid_argument("grid_for_radius: grid has too many cells for this radius");
  }
  Grid grid;
  grid.dim = d;
  grid.cells_per_side = static_cast<int>(m_real);
  grid.side = 1.0 / grid.cells_per_side;
  grid.radius = r;
  return grid;
}

std::int64_t flat_index(const CellId& cell, const Grid& grid) {
  if (cell.size() != grid.dim) throw std::invalid_argument("flat_index: dimension mismatch");
  std::int64_t flat = 0;
  for (int i = grid.dim - 1; i >= 0; --i) {
    if (cell(i) < 0 || cell(i) >= grid.cells_per_side) throw std::out_of_range("flat_index: cell outside grid");
    flat = flat * grid.cells_per_side + cell(i);
  }
  return flat;
}

CellId cell_from_flat(std::int64_t flat, const Grid& grid) {
  if (flat < 0 || flat >= grid.cell_count()) throw std::out_of_range("cell_from_flat: index outside grid");
  CellId cell(grid.dim);
  for (int i = 0; i < grid.dim; ++i) {
    cell(i) = static_cast<int>(flat % grid.cells_per_side);
    flat /= grid.cells_per_side;
  }
  return cell;
}

std::vector<CellId> snake_order(const Grid& grid) {
  const std::int64_t m = grid.cells_per_side;
  const std::int64_t total = grid.cell_count();
  std::vector<CellId> order;
  order.reserve(static_cast<std::size_t>(total));
  // Reflected m-ary Gray code: digit i runs backwards whenever the number
  // formed by the digits above it is odd.
  for (std::int64_t k = 0; k < total; ++k) {
    CellId cell(grid.dim);
    std::int64_t rest = k;
    for (int i = 0; i < grid.dim; ++i) {
      const std::int64_t digit = rest % m;
      rest /= m;
      cell(i) = static_cast<int>((rest % 2 == 0) ? digit : m - 1 - digit);
    }
    order.push_back(std::move(cell));
  }
  return order;
}

std::vector<std::int64_t> snake_order_flat(const Grid& grid) {
  std::vector<std::int64_t> flat;
  const auto order = snake_order(grid);
  flat.reserve(order.size());
  for (const auto& cell : order) flat.push_back(flat_index(cell, grid));
  return flat;
}

void write_points_csv(std::ostream& out, const PointSet& points) {
  std::ostringstream buf;
  buf.precision(17);
  buf << "n,d,seed\n" << points.size() << ',' << points.dim() << ',' << points.seed() << '\n';
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (int k = 0; k < points.dim(); ++k) {
      if (k) buf << ',';
      buf << points.point(i)(k);
    }
    buf << '\n';
  }
  out << buf.str();
}

PointSet read_points_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "n,d,seed") throw std::runtime_error("read_points_csv: bad header");
  if (!std::getline(in, line)) throw std::runtime_error("read_points_csv: missing header values");
  std::size_t n = 0;
  int d = 0;
  std::uint64_t seed = 0;
  char c1 = 0, c2 = 0;
  std::istringstream head(line);
  if (!(head >> n >> c1 >> d >> c2 >> seed) || c1 != ',' || c2 != ',' || d < 1) {
    throw std::runtime_error("read_points_csv: malformed header values");
  }
  Eigen::MatrixXd coords(d, static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw std::runtime_error("read_points_csv: truncated point rows");
    std::istringstream row(line);
    for (int k = 0; k < d; ++k) {
      std::string field;
      if (!std::getline(row, field, ',')) throw std::runtime_error("read_points_csv: short row");
      coords(k, static_cast<Eigen::Index>(i)) = std::stod(field);
    }
  }
  return PointSet(std::move(coords), seed);
}

}  // namespace irr
