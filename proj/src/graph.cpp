#include "arcflow/graph.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>

namespace arcflow {

std::string NodeId::to_string() const {
    switch (kind) {
    case NodeKind::Source:
        return "S";
    case NodeKind::Target:
        return "T" + std::to_string(target);
    case NodeKind::Internal: {
        std::string s = label.to_string(';');
        if (ns != 0) s += "@" + std::to_string(ns);
        return s;
    }
    }
    return "?";
}

NodeId NodeId::from_string(const std::string& s) {
    if (s == "S") return source();
    if (!s.empty() && s[0] == 'T') return target_of(std::stoi(s.substr(1)));
    NodeId n;
    n.kind = NodeKind::Internal;
    std::string body = s;
    auto at = s.find('@');
    if (at != std::string::npos) {
        n.ns = std::stoi(s.substr(at + 1));
        body = s.substr(0, at);
    }
    std::istringstream in(body);
    std::string part;
    while (std::getline(in, part, ';')) n.label.c.push_back(std::stoll(part));
    if (n.label.c.empty()) throw GraphError("bad node string '" + s + "'");
    return n;
}

std::string NodeId::key() const {
    switch (kind) {
    case NodeKind::Source:
        return "S";
    case NodeKind::Target:
        return "T" + std::to_string(target);
    case NodeKind::Internal: {
        std::string s = label.to_string('_');
        if (ns != 0) s += "n" + std::to_string(ns);
        return s;
    }
    }
    return "?";
}

int ArcFlowGraph::feedback_count() const {
    int n = 0;
    for (const auto& a : arcs)
        if (a.is_feedback()) ++n;
    return n;
}

std::int64_t Pattern::total_items() const {
    std::int64_t n = 0;
    for (const auto& [ij, cnt] : uses) n += cnt;
    return n;
}

std::map<int, std::int64_t> Pattern::by_item() const {
    std::map<int, std::int64_t> agg;
    for (const auto& [ij, cnt] : uses) agg[ij.first] += cnt;
    return agg;
}

std::string Pattern::to_string() const {
    std::string s = "bin=" + std::to_string(bin) + " items=";
    bool first = true;
    for (const auto& [ij, cnt] : uses) {
        if (!first) s += ",";
        first = false;
        s += "(" + std::to_string(ij.first) + "," + std::to_string(ij.second) + ")x" +
             std::to_string(cnt);
    }
    return s;
}

std::vector<NodeId> topo_order(const ArcFlowGraph& g) {
    std::map<NodeId, int> indegree;
    for (const auto& n : g.nodes) indegree[n] = 0;
    std::map<NodeId, std::vector<NodeId>> out;
    for (const auto& a : g.arcs) {
        if (a.is_feedback()) continue;
        out[a.u].push_back(a.v);
        ++indegree[a.v];
    }
    std::set<NodeId> ready;
    for (const auto& [n, deg] : indegree)
        if (deg == 0) ready.insert(n);
    std::vector<NodeId> order;
    while (!ready.empty()) {
        NodeId n = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(n);
        for (const auto& v : out[n])
            if (--indegree[v] == 0) ready.insert(v);
    }
    if (order.size() != g.nodes.size())
        throw GraphError("cycle detected outside feedback arcs");
    return order;
}

namespace {

struct PathEnum {
    const ArcFlowGraph& g;
    std::map<NodeId, std::vector<const Arc*>> out;
    std::map<std::pair<int, int>, std::int64_t> current;
    PatternSet found;
    std::int64_t steps = 0;
    std::int64_t max_steps;

    PathEnum(const ArcFlowGraph& graph, std::int64_t guard) : g(graph), max_steps(guard) {
        for (const auto& a : g.arcs) {
            if (a.is_feedback()) continue;
            out[a.u].push_back(&a);
        }
        for (auto& [n, arcs] : out)
            std::sort(arcs.begin(), arcs.end(),
                      [](const Arc* x, const Arc* y) { return x->id < y->id; });
    }

    void walk(const NodeId& n) {
        if (++steps > max_steps)
            throw GuardError("path enumeration guard exceeded (" + std::to_string(max_steps) + ")");
        if (n.kind == NodeKind::Target && !current.empty()) {
            Pattern pat;
            pat.bin = n.target;
            pat.uses = current;
            found.insert(std::move(pat));
        }
        auto it = out.find(n);
        if (it == out.end()) return;
        for (const Arc* a : it->second) {
            if (a->is_loss()) {
                walk(a->v);
            } else {
                ++current[{a->item, a->inc}];
                walk(a->v);
                auto key = std::make_pair(a->item, a->inc);
                if (--current[key] == 0) current.erase(key);
            }
        }
    }
};

} // namespace

PatternSet enumerate_paths(const ArcFlowGraph& g, std::int64_t max_steps) {
    PathEnum e(g, max_steps);
    e.walk(g.source);
    return e.found;
}

std::string to_canonical_json(const ArcFlowGraph& g) {
    nlohmann::ordered_json j;
    j["nodes"] = nlohmann::ordered_json::array();
    std::vector<NodeId> nodes = g.nodes;
    std::sort(nodes.begin(), nodes.end());
    for (const auto& n : nodes) j["nodes"].push_back(n.to_string());
    j["arcs"] = nlohmann::ordered_json::array();
    for (const auto& a : g.arcs) {
        nlohmann::ordered_json aj;
        aj["id"] = a.id;
        aj["u"] = a.u.to_string();
        aj["v"] = a.v.to_string();
        aj["i"] = a.item;
        aj["j"] = a.inc;
        j["arcs"].push_back(std::move(aj));
    }
    j["source"] = g.source.to_string();
    j["targets"] = nlohmann::ordered_json::array();
    for (const auto& t : g.targets) j["targets"].push_back(t.to_string());
    return j.dump();
}

ArcFlowGraph from_canonical_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ArcFlowGraph g;
    for (const auto& n : j.at("nodes")) g.nodes.push_back(NodeId::from_string(n.get<std::string>()));
    for (const auto& aj : j.at("arcs")) {
        Arc a;
        a.id = aj.at("id").get<int>();
        a.u = NodeId::from_string(aj.at("u").get<std::string>());
        a.v = NodeId::from_string(aj.at("v").get<std::string>());
        a.item = aj.at("i").get<int>();
        a.inc = aj.at("j").get<int>();
        g.arcs.push_back(std::move(a));
    }
    g.source = NodeId::from_string(j.at("source").get<std::string>());
    for (const auto& t : j.at("targets")) g.targets.push_back(NodeId::from_string(t.get<std::string>()));
    return g;
}

std::string to_dot(const ArcFlowGraph& g, bool include_feedback) {
    std::ostringstream out;
    out << "digraph arcflow {\n  rankdir=LR;\n";
    std::vector<NodeId> nodes = g.nodes;
    std::sort(nodes.begin(), nodes.end());
    for (const auto& n : nodes) out << "  \"" << n.to_string() << "\";\n";
    for (const auto& a : g.arcs) {
        if (a.is_feedback() && !include_feedback) continue;
        out << "  \"" << a.u.to_string() << "\" -> \"" << a.v.to_string() << "\"";
        if (a.is_feedback())
            out << " [style=dotted]";
        else if (a.is_loss())
            out << " [style=dashed]";
        else
            out << " [label=\"" << a.item << "," << a.inc << "\"]";
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

void validate_graph(const ArcFlowGraph& g) {
    for (std::size_t k = 0; k < g.arcs.size(); ++k)
        if (g.arcs[k].id != static_cast<int>(k)) throw GraphError("arc ids not dense");
    std::set<NodeId> nodeset(g.nodes.begin(), g.nodes.end());
    if (nodeset.size() != g.nodes.size()) throw GraphError("duplicate nodes");
    if (!nodeset.count(g.source)) throw GraphError("source not in node set");
    for (const auto& t : g.targets)
        if (!nodeset.count(t)) throw GraphError("target not in node set");
    for (const auto& a : g.arcs)
        if (!nodeset.count(a.u) || !nodeset.count(a.v)) throw GraphError("arc endpoint not in node set");
    topo_order(g); // throws on non-feedback cycles

    // every internal node must reach a target and be reachable from source
    std::map<NodeId, std::vector<NodeId>> fwd, bwd;
    for (const auto& a : g.arcs) {
        if (a.is_feedback()) continue;
        fwd[a.u].push_back(a.v);
        bwd[a.v].push_back(a.u);
    }
    auto reach = [&](const std::vector<NodeId>& roots, std::map<NodeId, std::vector<NodeId>>& adj) {
        std::set<NodeId> seen(roots.begin(), roots.end());
        std::vector<NodeId> stack = roots;
        while (!stack.empty()) {
            NodeId n = stack.back();
            stack.pop_back();
            for (const auto& v : adj[n])
                if (seen.insert(v).second) stack.push_back(v);
        }
        return seen;
    };
    auto from_source = reach({g.source}, fwd);
    auto to_target = reach(g.targets, bwd);
    for (const auto& n : g.nodes) {
        if (n.kind != NodeKind::Internal) continue;
        if (!from_source.count(n) || !to_target.count(n))
            throw GraphError("dead internal node " + n.to_string());
    }
}

std::set<std::pair<int, std::map<int, std::int64_t>>> aggregate_by_item(const PatternSet& ps) {
    std::set<std::pair<int, std::map<int, std::int64_t>>> out;
    for (const auto& p : ps) out.insert({p.bin, p.by_item()});
    return out;
}

} // namespace arcflow
