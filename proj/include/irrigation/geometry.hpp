#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

namespace irr {

using VertexId = std::uint32_t;
using CellId = Eigen::VectorXi;

/// n points of the d-dimensional unit torus, stored column-wise (d x n) so
/// that every point is a contiguous column.
class PointSet {
 public:
  PointSet(Eigen::MatrixXd coords, std::uint64_t seed);

  int dim() const { return static_cast<int>(coords_.rows()); }
  std::size_t size() const { return static_cast<std::size_t>(coords_.cols()); }
  std::uint64_t seed() const { return seed_; }

  const Eigen::MatrixXd& coords() const { return coords_; }
  auto point(std::size_t i) const { return coords_.col(static_cast<Eigen::Index>(i)); }

  friend bool operator==(const PointSet& a, const PointSet& b) {
    return a.seed_ == b.seed_ && a.coords_.rows() == b.coords_.rows() &&
           a.coords_.cols() == b.coords_.cols() && a.coords_ == b.coords_;
  }

 private:
  Eigen::MatrixXd coords_;
  std::uint64_t seed_;
};

/// Per-coordinate wrapped differences min(|x_i - y_i|, 1 - |x_i - y_i|).
template <typename DerivedA, typename DerivedB>
auto wrapped_difference(const Eigen::MatrixBase<DerivedA>& x, const Eigen::MatrixBase<DerivedB>& y) {
  using Scalar = typename DerivedA::Scalar;
  if (x.size() != y.size()) throw std::invalid_argument("torus_distance: dimension mismatch");
  const auto diff = (x.derived() - y.derived()).array().abs().eval();
  return diff.min(Scalar(1) - diff).eval();
}

template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar torus_distance_squared(const Eigen::MatrixBase<DerivedA>& x,
                                                  const Eigen::MatrixBase<DerivedB>& y) {
  return wrapped_difference(x, y).square().sum();
}

/// Euclidean distance on the unit torus.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar torus_distance(const Eigen::MatrixBase<DerivedA>& x,
                                         const Eigen::MatrixBase<DerivedB>& y) {
  using std::sqrt;
  return sqrt(torus_distance_squared(x, y));
}

/// Uniform i.i.d. points in [0,1)^d, deterministic in (n, d, seed).
PointSet sample_points(std::size_t n, int d, std::uint64_t seed);

/// Volume of the Euclidean unit ball in R^d.
double ball_volume(int d);

/// Lebesgue measure of a radius-r ball of the d-dimensional unit torus. Equals
/// ball_volume(d) * r^d for r <= 1/2; beyond that the ball overlaps itself and
/// the measure is integrated numerically.
double torus_ball_volume(double r, int d);

/// Analysis partition of the torus into m^d congruent cubes, m = ceil(2 sqrt(d) / r).
struct Grid {
  int dim = 1;
  int cells_per_side = 1;
  double side = 1.0;
  double radius = 1.0;

  std::int64_t cell_count() const;
};

Grid grid_for_radius(double r, int d);

/// Row-major flattening with coordinate 0 varying fastest.
std::int64_t flat_index(const CellId& cell, const Grid& grid);
CellId cell_from_flat(std::int64_t flat, const Grid& grid);

template <typename Derived>
CellId cell_of(const Eigen::MatrixBase<Derived>& point, const Grid& grid) {
  if (point.size() != grid.dim) throw std::invalid_argument("cell_of: dimension mismatch");
  CellId cell(grid.dim);
  for (int i = 0; i < grid.dim; ++i) {
    const auto c = static_cast<int>(point(i) * grid.cells_per_side);
    cell(i) = c < 0 ? 0 : (c >= grid.cells_per_side ? grid.cells_per_side - 1 : c);
  }
  return cell;
}

template <typename Derived>
std::int64_t flat_cell_of(const Eigen::MatrixBase<Derived>& point, const Grid& grid) {
  return flat_index(cell_of(point, grid), grid);
}

/// Boustrophedon enumeration of all cells: consecutive cells share a face
/// (differ by one in exactly one coordinate, without torus wrap).
std::vector<CellId> snake_order(const Grid& grid);

/// Flat indices of snake_order(grid).
std::vector<std::int64_t> snake_order_flat(const Grid& grid);

/// CSV form: a `n,d,seed` header line, its values, then one row per point.
void write_points_csv(std::ostream& out, const PointSet& points);
PointSet read_points_csv(std::istream& in);

}  // namespace irr
