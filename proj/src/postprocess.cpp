#include "arcflow/postprocess.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace arcflow {

std::size_t PreGraph::node_count() const {
    std::set<WeightVec> labels;
    labels.insert(source);
    for (const auto& a : arcs) {
        labels.insert(a.u);
        labels.insert(a.v);
    }
    return labels.size();
}

PreGraph final_compression(const PreGraph& g, const Instance& inst) {
    // topological order over labels (Kahn, deterministic by label order)
    std::map<WeightVec, int> indegree;
    std::map<WeightVec, std::vector<const LabeledArc*>> incoming, outgoing;
    indegree[g.source] = 0;
    for (const auto& a : g.arcs) {
        indegree.emplace(a.u, 0);
        indegree.emplace(a.v, 0);
    }
    for (const auto& a : g.arcs) {
        ++indegree[a.v];
        incoming[a.v].push_back(&a);
        outgoing[a.u].push_back(&a);
    }
    std::set<WeightVec> ready;
    for (const auto& [label, deg] : indegree)
        if (deg == 0) ready.insert(label);
    if (ready.size() != 1 || *ready.begin() != g.source)
        throw GraphError("pre-target graph must have the source as its unique root");

    std::map<WeightVec, WeightVec> psi;
    std::size_t visited = 0;
    while (!ready.empty()) {
        WeightVec n = *ready.begin();
        ready.erase(ready.begin());
        ++visited;
        if (n == g.source) {
            psi[n] = WeightVec(static_cast<std::size_t>(inst.p), 0);
        } else {
            WeightVec lab(static_cast<std::size_t>(inst.p), 0);
            for (const LabeledArc* a : incoming[n]) {
                const WeightVec& pu = psi.at(a->u);
                for (int d = 0; d < inst.p; ++d) {
                    std::int64_t w = a->item == 0
                                         ? 0
                                         : incarnation_weight(inst, a->item, a->inc)[static_cast<std::size_t>(d)];
                    lab[static_cast<std::size_t>(d)] =
                        std::max(lab[static_cast<std::size_t>(d)], pu[static_cast<std::size_t>(d)] + w);
                }
            }
            psi[n] = std::move(lab);
        }
        for (const LabeledArc* a : outgoing[n])
            if (--indegree[a->v] == 0) ready.insert(a->v);
    }
    if (visited != indegree.size()) throw GraphError("cycle in pre-target graph");

    PreGraph out;
    out.source = psi.at(g.source);
    std::set<std::tuple<WeightVec, WeightVec, int, int>> seen;
    for (const auto& a : g.arcs) {
        LabeledArc na{psi.at(a.u), psi.at(a.v), a.item, a.inc};
        if (na.u == na.v) continue; // self-loop after relabeling
        if (!seen.insert({na.u, na.v, na.item, na.inc}).second) continue;
        out.arcs.push_back(std::move(na));
    }
    return out;
}

bool dominates(int t1, int t2, const std::vector<BinType>& bins) {
    if (t1 == t2) return false;
    const WeightVec& w1 = bins[static_cast<std::size_t>(t1 - 1)].capacity;
    const WeightVec& w2 = bins[static_cast<std::size_t>(t2 - 1)].capacity;
    if (w1 == w2) return t1 < t2;
    return w1.fits_in(w2);
}

ArcFlowGraph connect_targets(const PreGraph& g, const std::vector<BinType>& bins) {
    int q = static_cast<int>(bins.size());
    ArcFlowGraph out;

    auto as_node = [&](const WeightVec& label) {
        return label == g.source ? NodeId::source() : NodeId::internal(label);
    };

    std::set<WeightVec> internals;
    for (const auto& a : g.arcs) {
        Arc arc;
        arc.u = as_node(a.u);
        arc.v = as_node(a.v);
        arc.item = a.item;
        arc.inc = a.inc;
        out.arcs.push_back(std::move(arc));
        if (a.u != g.source) internals.insert(a.u);
        if (a.v != g.source) internals.insert(a.v);
    }

    for (const auto& v : internals) {
        std::set<int> tau;
        for (int t = 1; t <= q; ++t)
            if (v.fits_in(bins[static_cast<std::size_t>(t - 1)].capacity)) tau.insert(t);
        for (int t = 1; t <= q; ++t) {
            if (!tau.count(t)) continue;
            for (auto it = tau.begin(); it != tau.end();) {
                if (*it != t && dominates(t, *it, bins))
                    it = tau.erase(it);
                else
                    ++it;
            }
        }
        for (int t : tau)
            out.arcs.push_back(Arc{0, NodeId::internal(v), NodeId::target_of(t), 0, 0});
    }

    // chain each target to the targets it directly dominates
    for (int t = 1; t <= q; ++t) {
        std::set<int> tau;
        for (int t2 = 1; t2 <= q; ++t2)
            if (dominates(t, t2, bins)) tau.insert(t2);
        for (int t2 = 1; t2 <= q; ++t2) {
            if (!tau.count(t2)) continue;
            for (auto it = tau.begin(); it != tau.end();) {
                if (*it != t2 && dominates(t2, *it, bins))
                    it = tau.erase(it);
                else
                    ++it;
            }
        }
        for (int t2 : tau)
            out.arcs.push_back(Arc{0, NodeId::target_of(t), NodeId::target_of(t2), 0, 0});
    }

    for (int t = 1; t <= q; ++t)
        out.arcs.push_back(Arc{0, NodeId::target_of(t), NodeId::source(), 0, 0});

    out.source = NodeId::source();
    out.nodes.push_back(out.source);
    for (const auto& v : internals) out.nodes.push_back(NodeId::internal(v));
    for (int t = 1; t <= q; ++t) {
        out.targets.push_back(NodeId::target_of(t));
        out.nodes.push_back(NodeId::target_of(t));
    }
    std::sort(out.nodes.begin(), out.nodes.end());
    for (std::size_t k = 0; k < out.arcs.size(); ++k) out.arcs[k].id = static_cast<int>(k);
    return out;
}

ArcFlowGraph remove_parallel_arcs(const ArcFlowGraph& g) {
    ArcFlowGraph out = g;
    out.arcs.clear();
    std::map<std::tuple<NodeId, NodeId, int>, int> best_inc; // (u,v,i) -> min j seen
    for (const auto& a : g.arcs) {
        if (a.item != 0) {
            auto key = std::make_tuple(a.u, a.v, a.item);
            auto it = best_inc.find(key);
            if (it == best_inc.end())
                best_inc[key] = a.inc;
            else
                it->second = std::min(it->second, a.inc);
        }
    }
    std::set<std::pair<NodeId, NodeId>> loss_seen;
    for (const auto& a : g.arcs) {
        if (a.item == 0) {
            if (!loss_seen.insert({a.u, a.v}).second) continue;
            out.arcs.push_back(a);
        } else if (best_inc.at({a.u, a.v, a.item}) == a.inc) {
            out.arcs.push_back(a);
        }
    }
    for (std::size_t k = 0; k < out.arcs.size(); ++k) out.arcs[k].id = static_cast<int>(k);
    return out;
}

} // namespace arcflow
