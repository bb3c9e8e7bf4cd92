#include "irrigation/graph_analysis.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace irr {

DisjointSets::DisjointSets(std::size_t n) : parent_(n), size_(n, 1), sets_(n) {
  std::iota(parent_.begin(), parent_.end(), std::size_t{0});
}

bool DisjointSets::unite(std::size_t x, std::size_t y) {
  x = find(x);
  y = find(y);
  if (x == y) return false;
  if (size_[x] < size_[y]) std::swap(x, y);
  parent_[y] = x;
  size_[x] += size_[y];
  --sets_;
  return true;
}

ComponentLabeling labeling_from(DisjointSets& sets) {
  const std::size_t n = sets.size();
  ComponentLabeling out;
  out.labels.assign(n, 0);
  constexpr auto kUnset = static_cast<std::uint32_t>(-1);
  std::vector<std::uint32_t> root_label(n, kUnset);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t root = sets.find(v);
    if (root_label[root] == kUnset) {
      root_label[root] = static_cast<std::uint32_t>(out.sizes.size());
      out.sizes.push_back(0);
    }
    out.labels[v] = root_label[root];
    ++out.sizes[root_label[root]];
  }
  out.count = out.sizes.size();
  return out;
}

ComponentLabeling components(const StageView& view) {
  DisjointSets sets(view.size());
  for (VertexId v = 0; v < view.size(); ++v) {
    for (VertexId u : view.out_neighbors(v)) sets.unite(v, u);
  }
  return labeling_from(sets);
}

ComponentLabeling rgg_components(const NeighborIndex& index) {
  DisjointSets sets(index.size());
  for (VertexId v = 0; v < index.size(); ++v) {
    index.for_each_neighbor(v, [&](VertexId u) {
      if (u > v) sets.unite(v, u);
    });
  }
  return labeling_from(sets);
}

bool is_connected(const StageView& view) {
  if (view.size() <= 1) return true;
  DisjointSets sets(view.size());
  for (VertexId v = 0; v < view.size(); ++v) {
    for (VertexId u : view.out_neighbors(v)) {
      if (sets.unite(v, u) && sets.set_count() == 1) return true;
    }
  }
  return sets.set_count() == 1;
}

CliqueReport find_isolated_cliques(const StageView& view, int c) {
  CliqueReport report;
  if (c < 0) return report;
  const auto target = static_cast<std::size_t>(c) + 1;
  const auto labeling = components(view);
  std::vector<std::vector<VertexId>> members(labeling.count);
  for (VertexId v = 0; v < view.size(); ++v) {
    if (labeling.sizes[labeling.labels[v]] == target) members[labeling.labels[v]].push_back(v);
  }
  auto chooses = [&](VertexId a, VertexId b) {
    const auto out = view.out_neighbors(a);
    return std::find(out.begin(), out.end(), b) != out.end();
  };
  for (auto& comp : members) {
    if (comp.size() != target) continue;
    bool complete = true;
    for (std::size_t a = 0; a < comp.size() && complete; ++a) {
      for (std::size_t b = a + 1; b < comp.size() && complete; ++b) {
        complete = chooses(comp[a], comp[b]) || chooses(comp[b], comp[a]);
      }
    }
    if (complete) report.cliques.push_back(std::move(comp));
  }
  return report;
}

std::vector<std::pair<std::size_t, std::size_t>> component_size_histogram(const ComponentLabeling& labeling) {
  std::map<std::size_t, std::size_t> counts;
  for (std::size_t s : labeling.sizes) ++counts[s];
  return {counts.begin(), counts.end()};
}

void write_component_histogram_csv(std::ostream& out, const ComponentLabeling& labeling) {
  std::ostringstream buf;
  buf << "size,count\n";
  for (const auto& [size, count] : component_size_histogram(labeling)) buf << size << ',' << count << '\n';
  out << buf.str();
}

}  // namespace irr
