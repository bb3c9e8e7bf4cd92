#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "irrigation/geometry.hpp"

namespace irr {

/// Cell-list index over a PointSet answering closed-ball radius queries
/// (D(x, y) <= r) under the torus metric. Bucket side is at least r, so a
/// query only touches the 3^d buckets around the query point (fewer when the
/// bucket grid has fewer than three buckets per side). Adjacency is never
/// materialized; every query scans candidate buckets.
class NeighborIndex {
 public:
  NeighborIndex(PointSet points, double radius);

  const PointSet& points() const { return points_; }
  double radius() const { return radius_; }
  std::size_t size() const { return points_.size(); }
  int dim() const { return points_.dim(); }
  int buckets_per_side() const { return buckets_per_side_; }
  std::int64_t bucket_count() const { return static_cast<std::int64_t>(bucket_start_.size()) - 1; }
  std::span<const VertexId> bucket(std::int64_t b) const {
    return {bucket_ids_.data() + bucket_start_[b], bucket_ids_.data() + bucket_start_[b + 1]};
  }

  /// Calls f(j) for every vertex j with D(x, X_j) <= query_radius, in bucket
  /// order. query_radius must not exceed radius().
  template <typename Derived, typename F>
  void for_each_within(const Eigen::MatrixBase<Derived>& x, double query_radius, F&& f) const;

  /// Calls f(j) for every neighbor j != i of vertex i, in bucket order.
  template <typename F>
  void for_each_neighbor(VertexId i, F&& f) const {
    check_vertex(i);
    for_each_within(points_.point(i), radius_, [&](VertexId j) {
      if (j != i) f(j);
    });
  }

  /// Sorted neighbor list of vertex i (self excluded).
  std::vector<VertexId> neighbors_of(VertexId i) const;
  /// Same as neighbors_of, reusing `out`.
  void neighbors_of(VertexId i, std::vector<VertexId>& out) const;
  std::size_t degree(VertexId i) const;

 private:
  void check_vertex(VertexId i) const {
    if (i >= points_.size()) throw std::invalid_argument("NeighborIndex: vertex id out of range");
  }
  int bucket_coord(double x) const {
    const auto c = static_cast<int>(x * buckets_per_side_);
    return c < 0 ? 0 : (c >= buckets_per_side_ ? buckets_per_side_ - 1 : c);
  }

  PointSet points_;
  double radius_;
  int buckets_per_side_;
  std::vector<std::size_t> bucket_start_;
  std::vector<VertexId> bucket_ids_;
  Eigen::MatrixXd sorted_coords_;
};

NeighborIndex build_index(const PointSet& points, double r);

std::vector<VertexId> neighbors_of(const NeighborIndex& index, VertexId i);

struct DegreeStats {
  std::vector<std::size_t> histogram;  // histogram[k] = number of vertices of degree k
  std::size_t min = 0;
  std::size_t max = 0;
  double mean = 0.0;
};

DegreeStats degree_stats(const NeighborIndex& index);

/// Edge list of G_n(r) as CSV rows `i,j` with i < j, sorted.
void write_edge_list_csv(std::ostream& out, const NeighborIndex& index);

template <typename Derived, typename F>
void NeighborIndex::for_each_within(const Eigen::MatrixBase<Derived>& x, double query_radius, F&& f) const {
  const int d = dim();
  if (x.size() != d) throw std::invalid_argument("NeighborIndex: dimension mismatch");
  if (query_radius > radius_) throw std::invalid_argument("NeighborIndex: query radius exceeds index radius");
  const int b = buckets_per_side_;
  const double r2 = query_radius * query_radius;

  // Candidate bucket coordinates per axis, deduplicated when b < 3.
  constexpr int kMaxDim = 16;
  if (d > kMaxDim) throw std::invalid_argument("NeighborIndex: dimension too large");
  int span_len = b < 3 ? b : 3;
  int first[kMaxDim];
  double q[kMaxDim];
  for (int k = 0; k < d; ++k) {
    q[k] = x(k);
    first[k] = b < 3 ? 0 : bucket_coord(q[k]) - 1 + b;
  }
  int offset[kMaxDim] = {};
  const double* coords = sorted_coords_.data();
  while (true) {
    std::int64_t flat = 0;
    for (int k = d - 1; k >= 0; --k) flat = flat * b + (first[k] + offset[k]) % b;
    for (std::size_t s = bucket_start_[flat]; s < bucket_start_[flat + 1]; ++s) {
      const double* p = coords + static_cast<std::size_t>(d) * s;
      double dist2 = 0.0;
      for (int k = 0; k < d; ++k) {
        double diff = std::abs(p[k] - q[k]);
        if (diff > 0.5) diff = 1.0 - diff;
        dist2 += diff * diff;
      }
      if (dist2 <= r2) f(bucket_ids_[s]);
    }
    int k = 0;
    while (k < d && ++offset[k] == span_len) offset[k++] = 0;
    if (k == d) break;
  }
}

}  // namespace irr
