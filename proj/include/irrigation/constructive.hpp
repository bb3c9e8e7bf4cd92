#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "irrigation/geometry.hpp"
#include "irrigation/graph_analysis.hpp"
#include "irrigation/irrigation_graph.hpp"
#include "irrigation/theory.hpp"

namespace irr {

/// Budget groups used by the growth phases, in reveal order.
enum Stage : std::size_t { kExploreStage = 0, kDensifyStage = 1, kPropagateStage = 2, kStitchStage = 3 };

/// Reveal bookkeeping shared by all growth processes of one protocol run.
///
/// Choices are revealed one at a time per (vertex, stage), so no vertex ever
/// uses more than its stage budget. Every revealed choice is an edge of Γ and
/// is merged into `connections()`. A growth owns the vertices it reaches; when
/// a reveal lands on a vertex owned by an earlier growth, the current growth
/// is halted (its component has met an earlier one).
class ProtocolState {
 public:
  enum class Hit { kFresh, kOwn, kForeign };
  struct Reveal {
    VertexId target;
    Hit hit;
  };

  ProtocolState(const IrrigationGraph& graph, const PointSet& points, const Grid& grid);

  const IrrigationGraph& graph() const { return *graph_; }
  const Grid& grid() const { return grid_; }
  std::size_t size() const { return cell_.size(); }
  std::int64_t cell(VertexId v) const { return cell_[v]; }
  const PointSet& points() const { return *points_; }

  /// Starts a new growth owning `start`. `start` must not be owned yet.
  void begin_growth(VertexId start);
  std::size_t growth_count() const { return growths_; }
  bool halted() const { return halted_; }

  bool owned(VertexId v) const { return owner_[v] != kNoOwner; }
  bool owned_by_current(VertexId v) const { return owner_[v] == growths_; }

  /// Reveals the next unrevealed choice of v in `stage`; nullopt once the
  /// stage slice of v is exhausted.
  std::optional<Reveal> reveal_next(VertexId v, std::size_t stage);
  std::size_t revealed(VertexId v, std::size_t stage) const { return cursor_[v * stages_ + stage]; }
  std::size_t total_reveals() const { return total_reveals_; }

  /// Members of the current growth, in discovery order.
  const std::vector<VertexId>& members() const { return members_; }
  /// Up to `limit` lowest-id members of the current growth in `cell` whose
  /// `stage` choices are still unrevealed.
  std::vector<VertexId> fresh_members(std::int64_t cell, std::size_t stage, std::size_t limit) const;
  std::size_t members_in_cell(std::int64_t cell) const;
  /// Member counts of the current growth per cell.
  std::vector<std::size_t> member_counts() const;

  DisjointSets& connections() { return connections_; }

 private:
  static constexpr std::uint32_t kNoOwner = 0;

  const IrrigationGraph* graph_;
  const PointSet* points_;
  Grid grid_;
  std::size_t stages_;
  std::vector<std::int64_t> cell_;
  std::vector<std::uint32_t> owner_;
  std::vector<std::uint32_t> cursor_;
  std::uint32_t growths_ = 0;
  bool halted_ = false;
  std::size_t total_reveals_ = 0;
  std::vector<VertexId> members_;
  std::unordered_map<std::int64_t, std::vector<VertexId>> cell_members_;
  DisjointSets connections_;
};

/// Integer quota of a real threshold: floor, never below zero.
std::size_t quota_of(double threshold);

struct Phase1Report {
  int ell = 0;
  double delta = 0.0;
  std::vector<std::size_t> generation_sizes;  // generation 0 is the start vertex
  std::vector<VertexId> reached;              // the set A, in discovery order
  std::int64_t dense_cell = 0;                // flat index in the analysis grid
  std::size_t dense_count = 0;
  double target = 0.0;  // n^{min(delta^2, 1/25)/3}
  std::size_t quota = 0;
  bool degenerate = false;
  bool halted = false;
  bool success = false;
};

struct Phase2Report {
  std::int64_t cell = 0;
  std::size_t initial_count = 0;    // N_0
  std::vector<std::size_t> rounds;  // N_1, N_2, ...
  std::size_t cell_count = 0;       // N_0 + N_1 + ...
  double target = 0.0;              // alpha_d n r^d
  std::size_t quota = 0;
  double round_base = 0.0;  // n^{min(delta^2, 1/25)/3}; round i needs floor(2^i round_base)
  int max_rounds = 0;       // L
  bool degenerate = false;
  bool halted = false;
  bool success = false;
};

struct Phase3Report {
  double quota_real = 0.0;  // 2 alpha_d n r^d / (3 k3)
  std::size_t quota = 0;    // M
  std::vector<std::size_t> per_cell_counts;
  std::optional<std::int64_t> failed_cell;
  std::size_t reveals = 0;
  bool degenerate = false;
  bool halted = false;
  bool success = false;
};

struct ProtocolReport {
  Phase1Report phase1;
  Phase2Report phase2;
  Phase3Report phase3;
  bool phase2_run = false;
  bool phase3_run = false;
  BudgetPlan budgets;
  double radius = 0.0;
  int cells_per_side = 0;
  std::size_t growths = 0;                    // growth processes started
  std::size_t components_before_stitch = 0;   // of the revealed graph
  std::size_t stitch_reveals = 0;             // final-stage choices used
  std::size_t total_reveals = 0;
  bool stitched = false;   // revealed graph connected after the final stage
  bool connected = false;  // full Γ(r, c) connected
  bool degenerate = false;
};

/// Directed exploration over stage-1 choices to depth ell from `start`,
/// then locates the grid cell holding most reached vertices. Starts a new
/// growth in `state`.
Phase1Report phase1_explore(ProtocolState& state, VertexId start, double delta);
/// Same with an explicit exploration depth.
Phase1Report phase1_explore(ProtocolState& state, VertexId start, double delta, int ell);

/// Doubling rounds over stage-2 choices inside the dense cell. Throws
/// std::invalid_argument when report1 did not succeed.
Phase2Report phase2_densify(ProtocolState& state, const Phase1Report& report1, const BudgetPlan& plan);

/// Cell-by-cell propagation over stage-3 choices along the snake order,
/// starting at the dense cell (forward to the end of the order, then
/// backward to its beginning). Throws std::invalid_argument when report2 did
/// not succeed.
Phase3Report phase3_propagate(ProtocolState& state, const Phase2Report& report2, const BudgetPlan& plan);

/// Grows a component from every vertex not yet covered by an earlier growth,
/// reveals one final-stage choice for every vertex outside the component of
/// `root`, and records stitching and full-graph connectivity into `report`.
void stitch(ProtocolState& state, VertexId root, const BudgetPlan& plan, double delta, ProtocolReport& report);

/// Full protocol: radius from (delta, gamma), budgets (k1, k2, k3, 1), phases
/// 1-3 from vertex 0, then stitching. Deterministic in (points, params, seed).
ProtocolReport run_protocol(const PointSet& points, const TheoryParams& params, std::uint64_t seed);

}  // namespace irr

namespace irr {

/// JSON document with every per-phase trajectory of the report.
std::string protocol_report_to_json(const ProtocolReport& report);

}  // namespace irr
