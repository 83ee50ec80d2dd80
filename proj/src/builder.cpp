#include "arcflow/builder.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <set>

namespace arcflow {

Lifter::Lifter(const std::vector<BinType>& bins, const OrderedIncarnations& order)
    : bins_(bins), order_(order) {}

bool Lifter::fits_some(const WeightVec& x) const {
    for (const auto& b : bins_)
        if (x.fits_in(b.capacity)) return true;
    return false;
}

namespace {

// bounded subset-sum fold: marks sums reachable by adding up to `bound`
// copies of weight w to an existing reachability set, O(cap)
void fold_item(std::vector<char>& reach, std::int64_t w, std::int64_t bound, std::int64_t cap) {
    if (w <= 0 || bound <= 0) return;
    std::vector<std::int64_t> used(static_cast<std::size_t>(cap) + 1, -1);
    for (std::int64_t s = 0; s <= cap; ++s) {
        if (reach[static_cast<std::size_t>(s)])
            used[static_cast<std::size_t>(s)] = 0;
        else if (s >= w && used[static_cast<std::size_t>(s - w)] >= 0 &&
                 used[static_cast<std::size_t>(s - w)] < bound)
            used[static_cast<std::size_t>(s)] = used[static_cast<std::size_t>(s - w)] + 1;
    }
    for (std::int64_t s = 0; s <= cap; ++s)
        reach[static_cast<std::size_t>(s)] = used[static_cast<std::size_t>(s)] >= 0;
}

std::vector<std::int64_t> prefix_max(const std::vector<char>& reach) {
    std::vector<std::int64_t> best(reach.size(), 0);
    std::int64_t run = 0;
    for (std::size_t s = 0; s < reach.size(); ++s) {
        if (reach[s]) run = static_cast<std::int64_t>(s);
        best[s] = run;
    }
    return best;
}

} // namespace

const std::vector<std::int64_t>& Lifter::fill_table(int d, int t, int k, int c) {
    auto key = std::make_tuple(d, t, k, c);
    auto it = tables_.find(key);
    if (it != tables_.end()) return it->second;

    std::int64_t cap = bins_[static_cast<std::size_t>(t - 1)].capacity[static_cast<std::size_t>(d)];
    int n = static_cast<int>(order_.size());

    // make sure the c = 0 chain exists from the deepest level up to k
    int lo = k;
    while (lo <= n + 1 && !tables_.count({d, t, lo, 0})) ++lo;
    if (lo > n + 1) {
        std::vector<char> reach(static_cast<std::size_t>(cap) + 1, 0);
        reach[0] = 1;
        tables_[{d, t, n + 1, 0}] = prefix_max(reach);
        lo = n + 1;
    }
    for (int level = lo - 1; level >= k; --level) {
        const auto& above = tables_.at({d, t, level + 1, 0});
        std::vector<char> reach(static_cast<std::size_t>(cap) + 1, 0);
        for (std::int64_t s = 0; s <= cap; ++s)
            if (above[static_cast<std::size_t>(s)] == s) reach[static_cast<std::size_t>(s)] = 1;
        const auto& oi = order_[static_cast<std::size_t>(level - 1)];
        fold_item(reach, oi.weight[static_cast<std::size_t>(d)], oi.demand, cap);
        tables_[{d, t, level, 0}] = prefix_max(reach);
    }
    if (c == 0) return tables_.at(key);

    // c > 0: refold level k with the reduced bound on its own copies
    const auto& above = tables_.at({d, t, k + 1, 0});
    std::vector<char> reach(static_cast<std::size_t>(cap) + 1, 0);
    for (std::int64_t s = 0; s <= cap; ++s)
        if (above[static_cast<std::size_t>(s)] == s) reach[static_cast<std::size_t>(s)] = 1;
    const auto& oi = order_[static_cast<std::size_t>(k - 1)];
    fold_item(reach, oi.weight[static_cast<std::size_t>(d)], oi.demand - c, cap);
    return tables_.emplace(key, prefix_max(reach)).first->second;
}

std::int64_t Lifter::highest_position(int d, int t, const WeightVec& x, int k, int c) {
    std::int64_t cap = bins_[static_cast<std::size_t>(t - 1)].capacity[static_cast<std::size_t>(d)];
    std::int64_t budget = cap - x[static_cast<std::size_t>(d)];
    if (budget < 0) throw GraphError("highest_position called with x exceeding W_t");
    const auto& best = fill_table(d, t, k, c);
    return cap - best[static_cast<std::size_t>(budget)];
}

WeightVec Lifter::lift(const WeightVec& x, int k, int c) {
    if (!fits_some(x)) throw GraphError("lift called on a state fitting no bin type");
    WeightVec out(x.dims(), std::numeric_limits<std::int64_t>::max());
    for (int t = 1; t <= static_cast<int>(bins_.size()); ++t) {
        if (!x.fits_in(bins_[static_cast<std::size_t>(t - 1)].capacity)) continue;
        for (std::size_t d = 0; d < x.dims(); ++d)
            out[d] = std::min(out[d], highest_position(static_cast<int>(d), t, x, k, c));
    }
    return out;
}

namespace {

WeightVec min_vec(const WeightVec& a, const WeightVec& b) {
    WeightVec r = a;
    for (std::size_t d = 0; d < r.dims(); ++d) r[d] = std::min(r[d], b[d]);
    return r;
}

// base label: per-dimension min capacity over the bin types x fits
WeightVec base_label(const std::vector<BinType>& bins, const WeightVec& x) {
    WeightVec out(x.dims(), std::numeric_limits<std::int64_t>::max());
    for (const auto& b : bins) {
        if (!x.fits_in(b.capacity)) continue;
        for (std::size_t d = 0; d < x.dims(); ++d) out[d] = std::min(out[d], b.capacity[d]);
    }
    return out;
}

struct Frame {
    WeightVec x; // lifted
    int k = 1;
    int c = 0;
    int phase = 0;
    WeightVec u, up_x;
    bool has_up = false;
};

} // namespace

PreGraph build_pregraph(const std::vector<BinType>& bins, const OrderedIncarnations& order, int p,
                        const BuildOptions& opts, BuildStats* stats) {
    Lifter lifter(bins, order);
    int n = static_cast<int>(order.size());
    std::map<std::tuple<WeightVec, int, int>, WeightVec> memo;
    PreGraph g;
    std::set<std::tuple<WeightVec, WeightVec, int, int>> arc_set;
    std::int64_t states = 0;

    auto add_arc = [&](const WeightVec& u, const WeightVec& v, int i, int j) {
        if (arc_set.insert({u, v, i, j}).second) g.arcs.push_back(LabeledArc{u, v, i, j});
    };

    std::vector<Frame> stack;
    WeightVec result;

    // lift-then-memo-check; pushes a frame on a miss
    auto call = [&](const WeightVec& x, int k, int c) -> bool {
        if (stats && opts.collect_states) stats->collected.push_back(DpState{x, k, c});
        WeightVec lx = lifter.lift(x, k, c);
        auto it = memo.find({lx, k, c});
        if (it != memo.end()) {
            result = it->second;
            return true;
        }
        if (++states > opts.max_states)
            throw GuardError("instance too large: DP state guard exceeded (" +
                             std::to_string(opts.max_states) + ")");
        Frame f;
        f.x = std::move(lx);
        f.k = k;
        f.c = c;
        stack.push_back(std::move(f));
        return false;
    };

    bool immediate = call(WeightVec(static_cast<std::size_t>(p), 0), 1, 0);
    while (!stack.empty()) {
        Frame& f = stack.back();
        switch (f.phase) {
        case 0: { // base label, then option 1 (skip to the level above)
            f.u = base_label(bins, f.x);
            if (stats) {
                bool matches_bin = false;
                for (const auto& b : bins)
                    if (f.u == b.capacity) {
                        matches_bin = true;
                        break;
                    }
                if (!matches_bin) ++stats->virtual_init_count;
            }
            if (f.k < n) {
                f.phase = 1;
                if (!call(f.x, f.k + 1, 0)) continue;
            } else {
                f.phase = 2;
            }
            break;
        }
        case 1: // returned from option 1
            f.up_x = result;
            f.has_up = true;
            f.u = f.up_x;
            f.phase = 2;
            break;
        case 2: { // option 2 (use the current item)
            if (f.k <= n) {
                const auto& oi = order[static_cast<std::size_t>(f.k - 1)];
                if (f.c < oi.demand && lifter.fits_some(f.x.plus(oi.weight))) {
                    f.phase = 3;
                    if (!call(f.x.plus(oi.weight), f.k, f.c + 1)) continue;
                    break;
                }
            }
            f.phase = 4;
            break;
        }
        case 3: { // returned from option 2
            const auto& oi = order[static_cast<std::size_t>(f.k - 1)];
            WeightVec v = result;
            WeightVec shifted = v;
            for (std::size_t d = 0; d < shifted.dims(); ++d) shifted[d] -= oi.weight[d];
            f.u = min_vec(f.u, shifted);
            add_arc(f.u, v, oi.item, oi.inc);
            f.phase = 4;
            break;
        }
        case 4: // loss arc to the level above, memoize, return
            if (f.has_up && f.u != f.up_x) add_arc(f.u, f.up_x, 0, 0);
            memo[{f.x, f.k, f.c}] = f.u;
            result = f.u;
            stack.pop_back();
            break;
        }
    }
    (void)immediate;
    g.source = result;
    if (stats) {
        stats->states += states;
        stats->pre_nodes = g.node_count();
        stats->pre_arcs = g.arcs.size();
    }
    return g;
}

ArcFlowGraph build_graph(const Instance& raw, const BuildOptions& opts, BuildStats* stats) {
    auto start = std::chrono::steady_clock::now();
    Instance inst = normalize(raw);
    OrderedIncarnations order = sort_items(inst);
    PreGraph pre = build_pregraph(inst.bins, order, inst.p, opts, stats);
    PreGraph compressed = final_compression(pre, inst);
    if (stats) {
        stats->compressed_nodes = compressed.node_count();
        stats->compressed_arcs = compressed.arcs.size();
    }
    ArcFlowGraph g = connect_targets(compressed, inst.bins);
    g = remove_parallel_arcs(g);
    if (stats)
        stats->build_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
    return g;
}

ArcFlowGraph build_baseline_merged(const Instance& raw, const BuildOptions& opts,
                                   BuildStats* stats) {
    auto start = std::chrono::steady_clock::now();
    Instance inst = normalize(raw);
    WeightVec global_max = inst.max_capacity();
    OrderedIncarnations order = sort_items(inst, global_max);
    int q = inst.q();

    std::vector<ArcFlowGraph> subs;
    for (int t = 1; t <= q; ++t) {
        std::vector<BinType> bins{inst.bins[static_cast<std::size_t>(t - 1)]};
        OrderedIncarnations sub_order;
        for (const auto& oi : order)
            if (oi.weight.fits_in(bins[0].capacity)) sub_order.push_back(oi);
        PreGraph pre = build_pregraph(bins, sub_order, inst.p, opts, stats);
        PreGraph compressed = final_compression(pre, inst);
        subs.push_back(remove_parallel_arcs(connect_targets(compressed, bins)));
    }

    if (q == 1) {
        if (stats)
            stats->build_ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - start)
                                  .count();
        return subs[0];
    }

    ArcFlowGraph out;
    out.source = NodeId::source();
    std::set<NodeId> internals;
    std::vector<bool> sub_has_arcs(static_cast<std::size_t>(q), false);
    for (int t = 1; t <= q; ++t) {
        const auto& sub = subs[static_cast<std::size_t>(t - 1)];
        auto remap = [&](const NodeId& n) {
            switch (n.kind) {
            case NodeKind::Source:
                return NodeId::internal(WeightVec(static_cast<std::size_t>(inst.p), 0), t);
            case NodeKind::Internal:
                return NodeId::internal(n.label, t);
            case NodeKind::Target:
                return NodeId::target_of(t);
            }
            return n;
        };
        for (const auto& a : sub.arcs) {
            if (a.is_feedback()) continue;
            sub_has_arcs[static_cast<std::size_t>(t - 1)] = true;
            Arc na;
            na.u = remap(a.u);
            na.v = remap(a.v);
            na.item = a.item;
            na.inc = a.inc;
            internals.insert(na.u);
            if (na.v.kind == NodeKind::Internal) internals.insert(na.v);
            out.arcs.push_back(std::move(na));
        }
    }
    for (int t = 1; t <= q; ++t) {
        if (!sub_has_arcs[static_cast<std::size_t>(t - 1)]) continue;
        out.arcs.push_back(Arc{0, NodeId::source(),
                               NodeId::internal(WeightVec(static_cast<std::size_t>(inst.p), 0), t),
                               0, 0});
    }
    for (int t = 1; t <= q; ++t)
        out.arcs.push_back(Arc{0, NodeId::target_of(t), NodeId::source(), 0, 0});

    out.nodes.push_back(out.source);
    for (const auto& n : internals) out.nodes.push_back(n);
    for (int t = 1; t <= q; ++t) {
        out.targets.push_back(NodeId::target_of(t));
        out.nodes.push_back(NodeId::target_of(t));
    }
    std::sort(out.nodes.begin(), out.nodes.end());
    for (std::size_t k = 0; k < out.arcs.size(); ++k) out.arcs[k].id = static_cast<int>(k);
    if (stats)
        stats->build_ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
    return out;
}

} // namespace arcflow
