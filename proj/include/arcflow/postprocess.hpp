#pragma once

#include "arcflow/graph.hpp"
#include "arcflow/instance.hpp"

namespace arcflow {

// Targetless labeled multigraph, the form the builder hands to the
// compression and target-connection steps. Node set is implicit: the source
// label plus every arc endpoint.
struct LabeledArc {
    WeightVec u, v;
    int item = 0; // 0 = loss arc
    int inc = 0;
};

struct PreGraph {
    std::vector<LabeledArc> arcs; // insertion order is the arc id order
    WeightVec source;

    std::size_t node_count() const;
};

// Relabels every node by its per-dimension longest path from the source
// (loss arcs count as zero weight), drops arcs that become self-loops and
// merges duplicates keeping the first occurrence. Never grows the graph.
PreGraph final_compression(const PreGraph& g, const Instance& inst);

// Strict dominance between bin types: equal capacities break by index,
// otherwise coordinate-wise <=.
bool dominates(int t1, int t2, const std::vector<BinType>& bins);

// Connects internal nodes to the non-dominated targets they fit, chains each
// target to the targets it directly dominates, and adds the feedback arcs.
ArcFlowGraph connect_targets(const PreGraph& g, const std::vector<BinType>& bins);

// Among arcs sharing (u, v, i) keeps the lowest incarnation index; exact
// duplicate loss arcs collapse. Ids are renumbered densely.
ArcFlowGraph remove_parallel_arcs(const ArcFlowGraph& g);

} // namespace arcflow
