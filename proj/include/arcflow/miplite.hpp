#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arcflow/graph.hpp"
#include "arcflow/instance.hpp"
#include "arcflow/model.hpp"

namespace arcflow {

struct SolveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded };
    Status status = Status::Optimal;
    double objective = 0.0;
    std::vector<double> x; // by variable index
};

struct IpResult {
    enum class Status { Optimal, Infeasible, NodeLimit };
    Status status = Status::Optimal;
    double objective = 0.0; // exact when costs are integral
    std::vector<double> x;  // integral within tolerance
    std::int64_t nodes = 0;
};

struct MipliteOptions {
    std::size_t max_vars = 5000;     // desk-scale guard
    std::int64_t node_limit = 100000;
    double feas_tol = 1e-9;
    double int_tol = 1e-6;
    double pivot_tol = 1e-11;
};

// Generic dense LP consumed by the simplex core; FlowModel and the pattern
// model both lower to this.
struct LinearProgram {
    struct Row {
        RowOp op = RowOp::Eq;
        double rhs = 0.0;
        std::vector<std::pair<int, double>> terms;
    };
    std::size_t num_vars = 0;
    std::vector<double> objective; // minimize
    std::vector<Row> rows;
};

LpResult solve_lp_core(const LinearProgram& lp, const MipliteOptions& opts = {});

// Continuous relaxation of an arc-flow model (variable bounds kept as rows).
// relaxed=false refuses models with integer variables instead of relaxing.
LpResult solve_lp(const FlowModel& mdl, bool relaxed = true, const MipliteOptions& opts = {});

// Best-first branch and bound over the LP relaxation; branches on the
// variable with fractional part closest to one half, floor branch first.
IpResult solve_ip(const FlowModel& mdl, const MipliteOptions& opts = {});

// LP relaxation of the pattern-based (set covering) model over an explicit
// pattern set: minimize total bin cost subject to per-item coverage.
LpResult solve_pattern_lp(const PatternSet& patterns, const Instance& inst,
                          const MipliteOptions& opts = {});

} // namespace arcflow
