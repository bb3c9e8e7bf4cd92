#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "irrigation/irrigation_graph.hpp"
#include "irrigation/rgg.hpp"

namespace irr {

/// Union-find with path halving and union by size.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n);

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  /// Returns true when x and y were in different sets.
  bool unite(std::size_t x, std::size_t y);
  std::size_t set_size(std::size_t x) { return size_[find(x)]; }
  std::size_t set_count() const { return sets_; }
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
  std::size_t sets_;
};

/// Component labels are numbered in order of each component's smallest vertex.
struct ComponentLabeling {
  std::vector<std::uint32_t> labels;
  std::vector<std::size_t> sizes;
  std::size_t count = 0;

  bool connected() const { return count == 1; }
};

ComponentLabeling labeling_from(DisjointSets& sets);

/// Connected components of the undirected graph revealed by `view`.
ComponentLabeling components(const StageView& view);

/// Components of the unsparsified G_n(r).
ComponentLabeling rgg_components(const NeighborIndex& index);

bool is_connected(const StageView& view);

struct CliqueReport {
  std::vector<std::vector<VertexId>> cliques;  // each sorted ascending
};

/// Components of size exactly c + 1 that are complete in the revealed graph.
CliqueReport find_isolated_cliques(const StageView& view, int c);

/// (size, count) pairs sorted by size.
std::vector<std::pair<std::size_t, std::size_t>> component_size_histogram(const ComponentLabeling& labeling);

void write_component_histogram_csv(std::ostream& out, const ComponentLabeling& labeling);

}  // namespace irr
