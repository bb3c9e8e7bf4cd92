#include "irrigation/constructive.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "irrigation/rgg.hpp"

namespace irr {

ProtocolState::ProtocolState(const IrrigationGraph& graph, const PointSet& points, const Grid& grid)
    : graph_(&graph),
      points_(&points),
      grid_(grid),
      stages_(graph.stage_count()),
      cell_(graph.size()),
      owner_(graph.size(), kNoOwner),
      cursor_(graph.size() * graph.stage_count(), 0),
      connections_(graph.size()) {
  if (points.size() != graph.size()) throw std::invalid_argument("ProtocolState: point/graph size mismatch");
  if (points.dim() != grid.dim) throw std::invalid_argument("ProtocolState: grid dimension mismatch");
  for (std::size_t v = 0; v < points.size(); ++v) cell_[v] = flat_cell_of(points.point(v), grid_);
}

void ProtocolState::begin_growth(VertexId start) {
  if (start >= size()) throw std::invalid_argument("begin_growth: vertex id out of range");
  if (owned(start)) throw std::invalid_argument("begin_growth: start vertex already covered");
  ++growths_;
  halted_ = false;
  members_.clear();
  cell_members_.clear();
  owner_[start] = growths_;
  members_.push_back(start);
  cell_members_[cell_[start]].push_back(start);
}

std::optional<ProtocolState::Reveal> ProtocolState::reveal_next(VertexId v, std::size_t stage) {
  if (stage >= stages_) return std::nullopt;
  const auto slice = graph_->stage_choices(v, stage);
  auto& cursor = cursor_[v * stages_ + stage];
  if (cursor >= slice.size()) return std::nullopt;
  const VertexId target = slice[cursor++];
  ++total_reveals_;
  connections_.unite(v, target);

  Hit hit = Hit::kOwn;
  if (owner_[target] == kNoOwner) {
    hit = Hit::kFresh;
    owner_[target] = growths_;
    members_.push_back(target);
    cell_members_[cell_[target]].push_back(target);
  } else if (owner_[target] != growths_) {
    hit = Hit::kForeign;
    halted_ = true;
  }
  return Reveal{target, hit};
}

std::vector<VertexId> ProtocolState::fresh_members(std::int64_t cell, std::size_t stage, std::size_t limit) const {
  std::vector<VertexId> out;
  const auto it = cell_members_.find(cell);
  if (it == cell_members_.end()) return out;
  for (VertexId v : it->second) {
    if (revealed(v, stage) == 0) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  if (out.size() > limit) out.resize(limit);
  return out;
}

std::size_t ProtocolState::members_in_cell(std::int64_t cell) const {
  const auto it = cell_members_.find(cell);
  return it == cell_members_.end() ? 0 : it->second.size();
}

std::vector<std::size_t> ProtocolState::member_counts() const {
  std::vector<std::size_t> counts(static_cast<std::size_t>(grid_.cell_count()), 0);
  for (const auto& [cell, list] : cell_members_) counts[static_cast<std::size_t>(cell)] = list.size();
  return counts;
}

std::size_t quota_of(double threshold) {
  if (!(threshold > 0.0)) return 0;
  return static_cast<std::size_t>(std::floor(threshold));
}

Phase1Report phase1_explore(ProtocolState& state, VertexId start, double delta) {
  return phase1_explore(state, start, delta, exploration_depth(static_cast<double>(state.size()), delta));
}

Phase1Report phase1_explore(ProtocolState& state, VertexId start, double delta, int ell) {
  const double n = static_cast<double>(state.size());
  Phase1Report report;
  report.delta = delta;
  report.ell = std::max(0, ell);
  report.target = dense_cell_target(n, delta);
  report.quota = quota_of(report.target);
  report.degenerate = report.target < 2.0;

  state.begin_growth(start);
  report.reached.push_back(start);
  report.generation_sizes.push_back(1);
  std::vector<VertexId> generation{start};
  for (int depth = 0; depth < report.ell && !generation.empty() && !state.halted(); ++depth) {
    std::vector<VertexId> next;
    for (VertexId v : generation) {
      while (auto rev = state.reveal_next(v, kExploreStage)) {
        if (rev->hit == ProtocolState::Hit::kFresh) next.push_back(rev->target);
        if (state.halted()) break;
      }
      if (state.halted()) break;
    }
    report.generation_sizes.push_back(next.size());
    report.reached.insert(report.reached.end(), next.begin(), next.end());
    generation = std::move(next);
  }
  report.halted = state.halted();

  // Most populated cell among reached vertices; ties go to the lowest index.
  std::unordered_map<std::int64_t, std::size_t> counts;
  for (VertexId v : report.reached) ++counts[state.cell(v)];
  report.dense_cell = state.cell(start);
  report.dense_count = 0;
  for (const auto& [cell, count] : counts) {
    if (count > report.dense_count || (count == report.dense_count && cell < report.dense_cell)) {
      report.dense_cell = cell;
      report.dense_count = count;
    }
  }
  report.success = !report.halted && report.dense_count >= report.quota;
  return report;
}

Phase2Report phase2_densify(ProtocolState& state, const Phase1Report& report1, const BudgetPlan& plan) {
  if (!report1.success) throw std::invalid_argument("phase2_densify: phase 1 did not succeed");
  const double n = static_cast<double>(state.size());
  const double r = state.graph().radius();
  const int d = state.grid().dim;

  Phase2Report report;
  report.cell = report1.dense_cell;
  report.initial_count = report1.dense_count;
  report.cell_count = report1.dense_count;
  report.target = plan.alpha_d * n * std::pow(r, d);
  report.quota = quota_of(report.target);
  report.round_base = report1.target;
  report.max_rounds = report.target > report.round_base
                          ? static_cast<int>(std::floor(std::log2(report.target / report.round_base)))
                          : 0;
  report.degenerate = report.round_base < 2.0 || report.target < 2.0;

  std::vector<VertexId> frontier;
  for (VertexId v : report1.reached) {
    if (state.cell(v) == report.cell) frontier.push_back(v);
  }
  for (int round = 1; report.cell_count < report.quota && round <= report.max_rounds; ++round) {
    std::vector<VertexId> fresh_in_cell;
    for (VertexId v : frontier) {
      while (auto rev = state.reveal_next(v, kDensifyStage)) {
        if (rev->hit == ProtocolState::Hit::kFresh && state.cell(rev->target) == report.cell) {
          fresh_in_cell.push_back(rev->target);
        }
        if (state.halted()) break;
      }
      if (state.halted()) break;
    }
    if (state.halted()) break;
    report.rounds.push_back(fresh_in_cell.size());
    report.cell_count += fresh_in_cell.size();
    if (report.cell_count >= report.quota) break;
    if (fresh_in_cell.size() < quota_of(std::ldexp(report.round_base, round))) break;
    frontier = std::move(fresh_in_cell);
  }
  report.halted = state.halted();
  report.success = !report.halted && report.cell_count >= report.quota;
  return report;
}

Phase3Report phase3_propagate(ProtocolState& state, const Phase2Report& report2, const BudgetPlan& plan) {
  if (!report2.success) throw std::invalid_argument("phase3_propagate: phase 2 did not succeed");
  const double n = static_cast<double>(state.size());
  const double r = state.graph().radius();
  const Grid& grid = state.grid();

  Phase3Report report;
  report.quota_real = 2.0 * plan.alpha_d * n * std::pow(r, grid.dim) / (3.0 * plan.k3);
  report.quota = quota_of(report.quota_real);
  report.degenerate = report.quota < 1;
  const std::size_t quota = report.quota;

  const auto order = snake_order_flat(grid);
  const auto start_pos = static_cast<std::ptrdiff_t>(std::find(order.begin(), order.end(), report2.cell) - order.begin());
  const auto last_pos = static_cast<std::ptrdiff_t>(order.size()) - 1;

  auto walk = [&](std::ptrdiff_t step) {
    for (std::ptrdiff_t pos = start_pos; pos + step >= 0 && pos + step <= last_pos; pos += step) {
      const std::int64_t source = order[static_cast<std::size_t>(pos)];
      const std::int64_t next = order[static_cast<std::size_t>(pos + step)];
      const auto enlisted = state.fresh_members(source, kPropagateStage, quota);
      std::size_t found = 0;
      for (VertexId v : enlisted) {
        while (found < quota) {
          const auto rev = state.reveal_next(v, kPropagateStage);
          if (!rev) break;
          ++report.reveals;
          if (state.halted()) return false;
          if (rev->hit == ProtocolState::Hit::kFresh && state.cell(rev->target) == next) ++found;
        }
        if (found >= quota) break;
      }
      if (found < quota) {
        report.failed_cell = next;
        return false;
      }
    }
    return true;
  };

  bool walked = true;
  if (quota > 0 && grid.cell_count() > 1) walked = walk(+1) && walk(-1);
  report.halted = state.halted();
  report.per_cell_counts = state.member_counts();
  report.success = walked && !report.halted &&
                   std::all_of(report.per_cell_counts.begin(), report.per_cell_counts.end(),
                               [&](std::size_t c) { return c >= quota; });
  return report;
}

namespace {

// Runs phases 1-3 from `start` until the growth fails, completes, or meets
// an earlier growth.
void grow_from(ProtocolState& state, VertexId start, const BudgetPlan& plan, double delta) {
  const auto r1 = phase1_explore(state, start, delta);
  if (!r1.success) return;
  const auto r2 = phase2_densify(state, r1, plan);
  if (!r2.success) return;
  phase3_propagate(state, r2, plan);
}

}  // namespace

void stitch(ProtocolState& state, VertexId root, const BudgetPlan& plan, double delta, ProtocolReport& report) {
  if (state.graph().stage_count() <= kStitchStage) {
    throw std::invalid_argument("stitch: graph needs a final budget stage");
  }
  for (VertexId v = 0; v < state.size(); ++v) {
    if (!state.owned(v)) grow_from(state, v, plan, delta);
  }
  auto& sets = state.connections();
  report.components_before_stitch = sets.set_count();
  const std::size_t before = state.total_reveals();
  if (sets.set_count() > 1) {
    const std::size_t root_set = sets.find(root);
    std::vector<VertexId> outside;
    for (VertexId v = 0; v < state.size(); ++v) {
      if (sets.find(v) != root_set) outside.push_back(v);
    }
    for (VertexId v : outside) {
      while (state.reveal_next(v, kStitchStage)) {
      }
    }
  }
  report.stitch_reveals = state.total_reveals() - before;
  report.growths = state.growth_count();
  report.total_reveals = state.total_reveals();
  report.stitched = sets.set_count() == 1;
  report.connected = is_connected(full_view(state.graph()));
}

ProtocolReport run_protocol(const PointSet& points, const TheoryParams& params, std::uint64_t seed) {
  TheoryParams effective = params;
  effective.n = points.size();
  effective.d = points.dim();
  const BudgetPlan plan = budget_plan(effective);
  const double r = radius_from_delta(static_cast<double>(points.size()), points.dim(), params.delta, params.gamma);
  const NeighborIndex index(points, r);
  const Grid grid = grid_for_radius(r, points.dim());
  const auto budgets = plan.budgets();
  const IrrigationGraph graph = sample_irrigation(index, budgets, seed);

  ProtocolReport report;
  report.budgets = plan;
  report.radius = r;
  report.cells_per_side = grid.cells_per_side;

  ProtocolState state(graph, points, grid);
  constexpr VertexId root = 0;
  report.phase1 = phase1_explore(state, root, params.delta);
  if (report.phase1.success) {
    report.phase2 = phase2_densify(state, report.phase1, plan);
    report.phase2_run = true;
    if (report.phase2.success) {
      report.phase3 = phase3_propagate(state, report.phase2, plan);
      report.phase3_run = true;
    }
  }
  stitch(state, root, plan, params.delta, report);
  report.degenerate = report.phase1.degenerate || report.phase2.degenerate || report.phase3.degenerate;
  return report;
}

}  // namespace irr

#include <json.hpp>

namespace irr {

std::string protocol_report_to_json(const ProtocolReport& report) {
  using nlohmann::json;
  const auto& p1 = report.phase1;
  const auto& p2 = report.phase2;
  const auto& p3 = report.phase3;
  json phase1 = {{"ell", p1.ell},
                 {"generation_sizes", p1.generation_sizes},
                 {"reached", p1.reached.size()},
                 {"dense_cell", p1.dense_cell},
                 {"dense_count", p1.dense_count},
                 {"target", p1.target},
                 {"quota", p1.quota},
                 {"degenerate", p1.degenerate},
                 {"success", p1.success}};
  json phase2 = {{"run", report.phase2_run}};
  if (report.phase2_run) {
    phase2.update({{"cell", p2.cell},
                   {"initial_count", p2.initial_count},
                   {"rounds", p2.rounds},
                   {"cell_count", p2.cell_count},
                   {"target", p2.target},
                   {"quota", p2.quota},
                   {"max_rounds", p2.max_rounds},
                   {"degenerate", p2.degenerate},
                   {"success", p2.success}});
  }
  json phase3 = {{"run", report.phase3_run}};
  if (report.phase3_run) {
    phase3.update({{"quota_real", p3.quota_real},
                   {"quota", p3.quota},
                   {"per_cell_counts", p3.per_cell_counts},
                   {"failed_cell", p3.failed_cell ? json(*p3.failed_cell) : json()},
                   {"reveals", p3.reveals},
                   {"degenerate", p3.degenerate},
                   {"success", p3.success}});
  }
  const auto& b = report.budgets;
  json doc = {{"budgets",
               {{"k1", b.k1}, {"k2", b.k2}, {"k3", b.k3}, {"c_total", b.c_total}, {"alpha_d", b.alpha_d}, {"p_d", b.p_d},
                {"eta_d", b.eta_d}}},
              {"radius", report.radius},
              {"cells_per_side", report.cells_per_side},
              {"phase1", phase1},
              {"phase2", phase2},
              {"phase3", phase3},
              {"growths", report.growths},
              {"components_before_stitch", report.components_before_stitch},
              {"stitch_reveals", report.stitch_reveals},
              {"total_reveals", report.total_reveals},
              {"stitched", report.stitched},
              {"connected", report.connected},
              {"degenerate", report.degenerate}};
  return doc.dump(2) + "\n";
}

}  // namespace irr
