#include "irrigation/rgg.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace irr {

namespace {

// Bucket grid: floor(1/r) per side, reduced so the bucket count stays O(n).
int choose_buckets_per_side(double r, std::size_t n, int d) {
  const double by_radius = std::floor(1.0 / r);
  const double by_size = std::floor(std::pow(4.0 * static_cast<double>(n) + 16.0, 1.0 / d));
  const double b = std::max(1.0, std::min(by_radius, by_size));
  return static_cast<int>(b);
}

}  // namespace

NeighborIndex::NeighborIndex(PointSet points, double radius)
    : points_(std::move(points)), radius_(radius), buckets_per_side_(1) {
  if (!(radius > 0.0)) throw std::invalid_argument("build_index: r must be > 0");
  const int d = points_.dim();
  const std::size_t n = points_.size();
  buckets_per_side_ = choose_buckets_per_side(radius, n, d);

  std::int64_t buckets = 1;
  for (int k = 0; k < d; ++k) buckets *= buckets_per_side_;

  std::vector<std::int64_t> bucket_of(n);
  bucket_start_.assign(static_cast<std::size_t>(buckets) + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t flat = 0;
    for (int k = d - 1; k >= 0; --k) flat = flat * buckets_per_side_ + bucket_coord(points_.point(i)(k));
    bucket_of[i] = flat;
    ++bucket_start_[static_cast<std::size_t>(flat) + 1];
  }
  for (std::size_t b = 1; b < bucket_start_.size(); ++b) bucket_start_[b] += bucket_start_[b - 1];

  bucket_ids_.resize(n);
  sorted_coords_.resize(d, static_cast<Eigen::Index>(n));
  std::vector<std::size_t> cursor(bucket_start_.begin(), bucket_start_.end() - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t slot = cursor[static_cast<std::size_t>(bucket_of[i])]++;
    bucket_ids_[slot] = static_cast<VertexId>(i);
    sorted_coords_.col(static_cast<Eigen::Index>(slot)) = points_.point(i);
  }
}

NeighborIndex build_index(const PointSet& points, double r) { return NeighborIndex(points, r); }

void NeighborIndex::neighbors_of(VertexId i, std::vector<VertexId>& out) const {
  out.clear();
  for_each_neighbor(i, [&](VertexId j) { out.push_back(j); });
  std::sort(out.begin(), out.end());
}

std::vector<VertexId> NeighborIndex::neighbors_of(VertexId i) const {
  std::vector<VertexId> out;
  neighbors_of(i, out);
  return out;
}

std::size_t NeighborIndex::degree(VertexId i) const {
  std::size_t deg = 0;
  for_each_neighbor(i, [&](VertexId) { ++deg; });
  return deg;
}

std::vector<VertexId> neighbors_of(const NeighborIndex& index, VertexId i) { return index.neighbors_of(i); }

DegreeStats degree_stats(const NeighborIndex& index) {
  DegreeStats stats;
  const std::size_t n = index.size();
  stats.min = n;
  double total = 0.0;
  for (VertexId i = 0; i < n; ++i) {
    const std::size_t deg = index.degree(i);
    if (deg >= stats.histogram.size()) stats.histogram.resize(deg + 1, 0);
    ++stats.histogram[deg];
    stats.min = std::min(stats.min, deg);
    stats.max = std::max(stats.max, deg);
    total += static_cast<double>(deg);
  }
  stats.mean = n ? total / static_cast<double>(n) : 0.0;
  return stats;
}

void write_edge_list_csv(std::ostream& out, const NeighborIndex& index) {
  std::ostringstream buf;
  buf << "i,j\n";
  std::vector<VertexId> nbrs;
  for (VertexId i = 0; i < index.size(); ++i) {
    index.neighbors_of(i, nbrs);
    for (VertexId j : nbrs) {
      if (j > i) buf << i << ',' << j << '\n';
    }
  }
  out << buf.str();
}

}  // namespace irr
