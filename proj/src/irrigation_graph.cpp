#include "irrigation/irrigation_graph.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "irrigation/random.hpp"

namespace irr {

IrrigationGraph::IrrigationGraph(std::vector<std::size_t> offsets, std::vector<VertexId> choices,
                                 std::vector<int> budgets, double radius, std::uint64_t seed)
    : offsets_(std::move(offsets)),
      choices_(std::move(choices)),
      budgets_(std::move(budgets)),
      radius_(radius),
      seed_(seed) {
  if (budgets_.empty()) throw std::invalid_argument("IrrigationGraph: budgets must be non-empty");
  if (offsets_.empty() || offsets_.back() != choices_.size()) {
    throw std::invalid_argument("IrrigationGraph: offsets do not match choices");
  }
  stage_end_.assign(1, 0);
  for (int b : budgets_) {
    if (b < 0) throw std::invalid_argument("IrrigationGraph: budgets must be >= 0");
    stage_end_.push_back(stage_end_.back() + static_cast<std::size_t>(b));
  }
  if (stage_end_.back() < 1) throw std::invalid_argument("IrrigationGraph: total budget must be >= 1");
}

std::span<const VertexId> IrrigationGraph::stage_choices(VertexId v, std::size_t stage) const {
  const auto all = choices(v);
  const std::size_t lo = std::min(all.size(), stage_end_.at(stage));
  const std::size_t hi = std::min(all.size(), stage_end_.at(stage + 1));
  return all.subspan(lo, hi - lo);
}

StageView::StageView(const IrrigationGraph& graph, std::size_t stage_count) : graph_(&graph), stages_(stage_count) {
  if (stage_count > graph.stage_count()) throw std::invalid_argument("StageView: more stages than budgets");
}

IrrigationGraph sample_irrigation(const NeighborIndex& index, std::span<const int> budgets, std::uint64_t seed) {
  if (budgets.empty()) throw std::invalid_argument("sample_irrigation: budgets must be non-empty");
  long long total = 0;
  for (int b : budgets) {
    if (b < 0) throw std::invalid_argument("sample_irrigation: budgets must be >= 0");
    total += b;
  }
  if (total < 1) throw std::invalid_argument("sample_irrigation: total budget must be >= 1");
  const auto c = static_cast<std::size_t>(total);

  const std::size_t n = index.size();
  std::vector<std::size_t> offsets(n + 1, 0);
  std::vector<VertexId> choices;
  choices.reserve(std::min(n * c, n * 64));
  std::vector<VertexId> nbrs;
  for (VertexId v = 0; v < n; ++v) {
    index.neighbors_of(v, nbrs);
    const std::size_t deg = nbrs.size();
    const std::size_t k = std::min(c, deg);
    SplitMix64 rng(derive_seed(seed, v));
    // Partial Fisher-Yates: the first k slots become an ordered uniform sample.
    for (std::size_t t = 0; t < k; ++t) {
      const std::size_t j = t + static_cast<std::size_t>(rng.below(deg - t));
      std::swap(nbrs[t], nbrs[j]);
      choices.push_back(nbrs[t]);
    }
    offsets[v + 1] = choices.size();
  }
  return IrrigationGraph(std::move(offsets), std::move(choices), std::vector<int>(budgets.begin(), budgets.end()),
                         index.radius(), seed);
}

std::span<const VertexId> out_neighbors(const StageView& view, VertexId i) {
  if (i >= view.size()) throw std::invalid_argument("out_neighbors: vertex id out of range");
  return view.out_neighbors(i);
}

std::vector<Edge> undirected_edges(const StageView& view) {
  std::vector<Edge> edges;
  for (VertexId i = 0; i < view.size(); ++i) {
    for (VertexId j : view.out_neighbors(i)) edges.emplace_back(std::min(i, j), std::max(i, j));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

void write_choices_csv(std::ostream& out, const IrrigationGraph& graph) {
  std::ostringstream buf;
  buf << "vertex,rank,chosen\n";
  for (VertexId v = 0; v < graph.size(); ++v) {
    const auto list = graph.choices(v);
    for (std::size_t rank = 0; rank < list.size(); ++rank) buf << v << ',' << rank << ',' << list[rank] << '\n';
  }
  out << buf.str();
}

}  // namespace irr
