#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "arcflow/graph.hpp"
#include "arcflow/instance.hpp"

namespace arcflow {

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RowOp { Ge, Le, Eq };

struct ModelVar {
    std::string name; // F<arcId>
    std::int64_t lb = 0;
    std::optional<std::int64_t> ub;
    bool integral = true;
};

struct ModelRow {
    std::string name;
    RowOp op = RowOp::Eq;
    std::int64_t rhs = 0;
    std::vector<std::pair<int, std::int64_t>> terms; // (var index, coef), by var index
};

// Arc-flow integer program plus the variable-to-arc sidecar used to decode
// solutions (also emitted as <model>.map.json).
struct FlowModel {
    struct ArcInfo {
        std::string u, v;
        int i = 0, j = 0;
    };

    std::vector<ModelVar> vars;
    std::vector<ModelRow> rows; // conservation rows, then demand rows
    std::vector<std::pair<int, std::int64_t>> objective; // minimize
    std::vector<ArcInfo> arc_info; // by var index; empty when read from text

    int conservation_rows = 0;
    int demand_rows = 0;
};

// Item types whose demand row is an equality; the usual choice is everything
// with unit demand.
using ExactSet = std::set<int>;
ExactSet default_exact_set(const Instance& inst);

// Full variant: equality demands for S, upper bounds b_i on item arcs and
// b_0 on loss arcs, objective over the feedback arcs.
FlowModel build_full_model(const ArcFlowGraph& g, const Instance& inst, const ExactSet& exact);
// Simplified variant: >= demands only, no variable upper bounds.
FlowModel build_simple_model(const ArcFlowGraph& g, const Instance& inst);

std::string emit_lp(const FlowModel& mdl);
std::string emit_mps(const FlowModel& mdl);
std::string emit_map_json(const FlowModel& mdl);

FlowModel read_lp(const std::string& text);
FlowModel read_mps(const std::string& text);

// Structural equality of the LP content (vars, rows, objective); ignores the
// arc sidecar, which text formats do not carry.
bool same_lp(const FlowModel& a, const FlowModel& b);

// Splits an integral circulation into (pattern, count) cycles through the
// feedback arcs. Throws ModelError on non-conserving or undecomposable input.
std::vector<std::pair<Pattern, std::int64_t>> decompose_solution(
    const ArcFlowGraph& g, const std::map<int, std::int64_t>& flows);

} // namespace arcflow
