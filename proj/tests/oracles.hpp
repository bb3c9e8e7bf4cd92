// Brute-force reference implementations used only by the tests. None of
// them call into the index, union-find, or wrapped-difference code paths.
#pragma once

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <vector>

#include <Eigen/Core>

#include "irrigation/geometry.hpp"
#include "irrigation/irrigation_graph.hpp"

namespace irr::oracle {

/// Torus distance as the minimum Euclidean distance over all 3^d integer
/// shifts of y.
inline double shifted_distance(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const int d = static_cast<int>(x.size());
  int total = 1;
  for (int k = 0; k < d; ++k) total *= 3;
  double best = std::numeric_limits<double>::infinity();
  for (int code = 0; code < total; ++code) {
    int rest = code;
    double sum = 0.0;
    for (int k = 0; k < d; ++k) {
      const double shift = static_cast<double>(rest % 3) - 1.0;
      rest /= 3;
      const double diff = x(k) - (y(k) + shift);
      sum += diff * diff;
    }
    best = std::min(best, std::sqrt(sum));
  }
  return best;
}

/// All-pairs neighbor lists of G_n(r), O(n^2).
inline std::vector<std::vector<VertexId>> all_pairs_neighbors(const PointSet& points, double r) {
  const std::size_t n = points.size();
  std::vector<std::vector<VertexId>> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (shifted_distance(points.point(i), points.point(j)) <= r) {
        out[i].push_back(static_cast<VertexId>(j));
        out[j].push_back(static_cast<VertexId>(i));
      }
    }
  }
  for (auto& list : out) std::sort(list.begin(), list.end());
  return out;
}

/// Undirected adjacency sets of the revealed graph, built from the raw
/// choice lists.
inline std::vector<std::vector<VertexId>> undirected_adjacency(const StageView& view) {
  const std::size_t n = view.size();
  const std::size_t budget = view.revealed_budget();
  std::vector<std::vector<VertexId>> adj(n);
  for (VertexId v = 0; v < n; ++v) {
    const auto all = view.graph().choices(v);
    for (std::size_t k = 0; k < all.size() && k < budget; ++k) {
      adj[v].push_back(all[k]);
      adj[all[k]].push_back(v);
    }
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adj;
}

/// Breadth-first flood fill; labels numbered by smallest member.
inline std::vector<std::uint32_t> bfs_labels(const std::vector<std::vector<VertexId>>& adj) {
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> label(adj.size(), kUnset);
  std::uint32_t next = 0;
  for (std::size_t s = 0; s < adj.size(); ++s) {
    if (label[s] != kUnset) continue;
    std::deque<std::size_t> queue{s};
    label[s] = next;
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      for (auto u : adj[v]) {
        if (label[u] == kUnset) {
          label[u] = next;
          queue.push_back(u);
        }
      }
    }
    ++next;
  }
  return label;
}

/// Isolated (c+1)-cliques by exhaustive inspection of every component.
inline std::vector<std::vector<VertexId>> brute_isolated_cliques(const StageView& view, int c) {
  const auto adj = undirected_adjacency(view);
  const auto label = bfs_labels(adj);
  const std::uint32_t count = label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
  std::vector<std::vector<VertexId>> groups(count);
  for (VertexId v = 0; v < label.size(); ++v) groups[label[v]].push_back(v);
  std::vector<std::vector<VertexId>> out;
  for (const auto& g : groups) {
    if (g.size() != static_cast<std::size_t>(c) + 1) continue;
    bool complete = true;
    for (auto a : g) {
      for (auto b : g) {
        if (a != b && !std::binary_search(adj[a].begin(), adj[a].end(), b)) complete = false;
      }
    }
    if (complete) out.push_back(g);
  }
  return out;
}

}  // namespace irr::oracle
