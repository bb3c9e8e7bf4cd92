#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "irrigation/geometry.hpp"
#include "irrigation/rgg.hpp"

namespace irr {

/// Irrigation (Bluetooth) graph: every vertex holds an ordered uniform
/// without-replacement sample of min(c, deg) of its G_n(r) neighbors. The
/// sample is split into consecutive budget groups; revealing the first s
/// groups yields a Γ_n(r, b_1 + ... + b_s) sample, all coupled on one draw.
class IrrigationGraph {
 public:
  IrrigationGraph(std::vector<std::size_t> offsets, std::vector<VertexId> choices, std::vector<int> budgets,
                  double radius, std::uint64_t seed);

  std::size_t size() const { return offsets_.size() - 1; }
  double radius() const { return radius_; }
  std::uint64_t seed() const { return seed_; }
  const std::vector<int>& budgets() const { return budgets_; }
  std::size_t stage_count() const { return budgets_.size(); }
  int total_budget() const { return static_cast<int>(stage_end_.back()); }

  /// Number of choices covered by the first `stages` budget groups.
  std::size_t budget_prefix(std::size_t stages) const { return stage_end_.at(stages); }

  /// Full ordered choice list of vertex v.
  std::span<const VertexId> choices(VertexId v) const {
    return {choices_.data() + offsets_[v], choices_.data() + offsets_[v + 1]};
  }
  /// Choices of v within budget group `stage` (0-based), truncated to min(c, deg).
  std::span<const VertexId> stage_choices(VertexId v, std::size_t stage) const;

  friend bool operator==(const IrrigationGraph&, const IrrigationGraph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> choices_;
  std::vector<int> budgets_;
  std::vector<std::size_t> stage_end_;
  double radius_;
  std::uint64_t seed_;
};

/// Read-only window exposing the first `stage_count` budget groups.
class StageView {
 public:
  StageView(const IrrigationGraph& graph, std::size_t stage_count);

  const IrrigationGraph& graph() const { return *graph_; }
  std::size_t stage_count() const { return stages_; }
  std::size_t size() const { return graph_->size(); }
  std::size_t revealed_budget() const { return graph_->budget_prefix(stages_); }

  std::span<const VertexId> out_neighbors(VertexId i) const {
    const auto all = graph_->choices(i);
    return all.first(std::min(all.size(), revealed_budget()));
  }

 private:
  const IrrigationGraph* graph_;
  std::size_t stages_;
};

inline StageView full_view(const IrrigationGraph& graph) { return StageView(graph, graph.stage_count()); }

/// Samples Γ_n(r, c) with c = sum(budgets). Vertex v draws from its own
/// stream derive_seed(seed, v), so lists do not depend on iteration order.
IrrigationGraph sample_irrigation(const NeighborIndex& index, std::span<const int> budgets, std::uint64_t seed);

/// Revealed choice prefix of vertex i.
std::span<const VertexId> out_neighbors(const StageView& view, VertexId i);

using Edge = std::pair<VertexId, VertexId>;

/// Undirected edge set {i, j} (i < j) of the revealed stages, sorted.
std::vector<Edge> undirected_edges(const StageView& view);

/// Directed choice lists as CSV rows `vertex,rank,chosen`.
void write_choices_csv(std::ostream& out, const IrrigationGraph& graph);

}  // namespace irr
