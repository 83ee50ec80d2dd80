#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "arcflow/graph.hpp"
#include "arcflow/instance.hpp"
#include "arcflow/postprocess.hpp"

namespace arcflow {

struct BuildOptions {
    std::int64_t max_states = 10000000; // DP-state guard
    bool collect_states = false;        // record pre-lift (x, k, c) visits
};

struct DpState {
    WeightVec x;
    int k = 1; // 1-based index into the ordered incarnations
    int c = 0;
};

struct BuildStats {
    std::int64_t states = 0;
    std::int64_t virtual_init_count = 0; // base labels matching no single W_t
    std::size_t pre_nodes = 0, pre_arcs = 0;         // before final compression
    std::size_t compressed_nodes = 0, compressed_arcs = 0; // after it
    double build_ms = 0.0;
    std::vector<DpState> collected; // only when collect_states
};

// State lifting: per-dimension bounded-knapsack maximization over the items
// at or above level k, memoized across a whole build.
class Lifter {
public:
    Lifter(const std::vector<BinType>& bins, const OrderedIncarnations& order);

    // W_t^d minus the best achievable fill of the remaining budget
    // W_t^d - x^d using items k.. (level k limited to b_k - c copies).
    // d is 0-based, t and k are 1-based. Requires x <= W_t.
    std::int64_t highest_position(int d, int t, const WeightVec& x, int k, int c);

    // Per-dimension min of highest_position over the bin types x fits.
    WeightVec lift(const WeightVec& x, int k, int c);

    bool fits_some(const WeightVec& x) const;

private:
    // prefix-max of achievable fills, per (d, t, k, c); entry [cap] is the
    // largest sum <= cap
    const std::vector<std::int64_t>& fill_table(int d, int t, int k, int c);

    const std::vector<BinType>& bins_;
    const OrderedIncarnations& order_;
    std::map<std::tuple<int, int, int, int>, std::vector<std::int64_t>> tables_;
};

// Algorithm-1 core: memoized recursion over (x, k, c) producing the
// compressed pre-target graph for the given bin list and item order.
PreGraph build_pregraph(const std::vector<BinType>& bins, const OrderedIncarnations& order, int p,
                        const BuildOptions& opts = {}, BuildStats* stats = nullptr);

// Full pipeline: sort, build, final compression, target connection,
// parallel-arc removal. Accepts any valid instance (normalizes internally).
ArcFlowGraph build_graph(const Instance& inst, const BuildOptions& opts = {},
                         BuildStats* stats = nullptr);

// Baseline for comparison: one compressed graph per bin type (ordering keyed
// on the global capacity maxima), merged under a fresh super source. For
// q = 1 this is exactly build_graph's output.
ArcFlowGraph build_baseline_merged(const Instance& inst, const BuildOptions& opts = {},
                                   BuildStats* stats = nullptr);

} // namespace arcflow
