#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "arcflow/instance.hpp"

namespace arcflow {

struct GuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class NodeKind { Source, Internal, Target };

// Tagged node id. Internal nodes carry a capacity-vector label plus a
// namespace (0 for directly built graphs; the bin-type index for merged
// per-type baselines, where labels from different sub-graphs collide).
struct NodeId {
    NodeKind kind = NodeKind::Source;
    WeightVec label; // Internal only
    int ns = 0;      // Internal only
    int target = 0;  // Target only, 1-based bin type

    static NodeId source() { return NodeId{}; }
    static NodeId internal(WeightVec label, int ns = 0) {
        NodeId n;
        n.kind = NodeKind::Internal;
        n.label = std::move(label);
        n.ns = ns;
        return n;
    }
    static NodeId target_of(int t) {
        NodeId n;
        n.kind = NodeKind::Target;
        n.target = t;
        return n;
    }

    bool operator==(const NodeId& o) const {
        return kind == o.kind && label == o.label && ns == o.ns && target == o.target;
    }
    bool operator!=(const NodeId& o) const { return !(*this == o); }
    // canonical order: Source, Internals by (ns, label), Targets by t
    bool operator<(const NodeId& o) const {
        if (kind != o.kind) return static_cast<int>(kind) < static_cast<int>(o.kind);
        if (kind == NodeKind::Internal) {
            if (ns != o.ns) return ns < o.ns;
            return label < o.label;
        }
        return target < o.target;
    }

    // "S", "T<t>", or coords joined by ';' with "@<ns>" when namespaced
    std::string to_string() const;
    static NodeId from_string(const std::string& s);
    // row/DOT-safe form: "S", "T1", "3_2", "3_2n1"
    std::string key() const;
};

struct Arc {
    int id = 0;
    NodeId u, v;
    int item = 0; // i, 0 for loss arcs
    int inc = 0;  // j, 0 for loss arcs

    bool is_loss() const { return item == 0; }
    bool is_feedback() const {
        return is_loss() && u.kind == NodeKind::Target && v.kind == NodeKind::Source;
    }
};

struct ArcFlowGraph {
    std::vector<NodeId> nodes; // canonically sorted
    std::vector<Arc> arcs;     // ids dense 0..|A|-1 in list order
    NodeId source = NodeId::source();
    std::vector<NodeId> targets; // by bin type

    int feedback_count() const;
};

// A feasible filling of one bin: bin type plus incarnation-use counts.
struct Pattern {
    int bin = 0;                              // t, 1-based
    std::map<std::pair<int, int>, std::int64_t> uses; // (i, j) -> count, non-empty

    bool operator==(const Pattern& o) const { return bin == o.bin && uses == o.uses; }
    bool operator<(const Pattern& o) const {
        if (bin != o.bin) return bin < o.bin;
        return uses < o.uses;
    }
    std::int64_t total_items() const;
    // per-item-type counts (sums over incarnations)
    std::map<int, std::int64_t> by_item() const;
    std::string to_string() const; // "bin=1 items=(1,1)x2,(2,1)x1"
};

using PatternSet = std::set<Pattern>;

// Deterministic topological order ignoring feedback arcs; ties broken by
// canonical node order. Throws GraphError on a (non-feedback) cycle.
std::vector<NodeId> topo_order(const ArcFlowGraph& g);

// All patterns realizable as source-to-target paths. A path passing through
// several targets (via dominance chains) yields one pattern per target hit.
// Paths with no item arcs are discarded. Guarded against blow-up.
PatternSet enumerate_paths(const ArcFlowGraph& g, std::int64_t max_steps = 1000000);

// Deterministic byte-stable JSON: nodes sorted, arcs in id order.
std::string to_canonical_json(const ArcFlowGraph& g);
ArcFlowGraph from_canonical_json(const std::string& text);

// GraphViz DOT; loss arcs dashed, feedback arcs omitted unless requested
// (then dotted).
std::string to_dot(const ArcFlowGraph& g, bool include_feedback = false);

// Structural invariants: dense ids, acyclic minus feedback, q feedback arcs,
// unique internal labels, every internal node on some source->target path.
void validate_graph(const ArcFlowGraph& g);

// Patterns aggregated to item-type granularity (bin, item -> count); used by
// equivalence checks that must ignore which incarnation survived arc removal.
std::set<std::pair<int, std::map<int, std::int64_t>>> aggregate_by_item(const PatternSet& ps);

} // namespace arcflow
