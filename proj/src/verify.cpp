#include "arcflow/verify.hpp"

#include <algorithm>
#include <cmath>

#include "arcflow/model.hpp"
#include "arcflow/oracle.hpp"

namespace arcflow {

bool VerifyReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

VerifyReport::Check& VerifyReport::named(const std::string& name) {
    for (auto& c : checks)
        if (c.name == name) return c;
    checks.push_back({name, true, ""});
    return checks.back();
}

std::set<std::map<std::pair<int, int>, std::int64_t>> pregraph_path_multisets(
    const PreGraph& g, std::int64_t max_steps) {
    std::map<WeightVec, std::vector<const LabeledArc*>> out;
    for (const auto& a : g.arcs) out[a.u].push_back(&a);
    std::set<std::map<std::pair<int, int>, std::int64_t>> found;
    std::map<std::pair<int, int>, std::int64_t> current;
    std::int64_t steps = 0;
    auto walk = [&](auto&& self, const WeightVec& n) -> void {
        if (++steps > max_steps) throw GuardError("path multiset enumeration guard exceeded");
        auto it = out.find(n);
        if (it == out.end()) return;
        for (const LabeledArc* a : it->second) {
            if (a->item == 0) {
                self(self, a->v);
            } else {
                ++current[{a->item, a->inc}];
                found.insert(current);
                self(self, a->v);
                auto key = std::make_pair(a->item, a->inc);
                if (--current[key] == 0) current.erase(key);
            }
        }
    };
    walk(walk, g.source);
    return found;
}

std::set<std::pair<int, std::map<int, std::int64_t>>> demand_capped_aggregate(
    const PatternSet& ps, const Instance& inst) {
    std::set<std::pair<int, std::map<int, std::int64_t>>> out;
    for (const auto& p : ps) {
        auto agg = p.by_item();
        bool ok = true;
        for (const auto& [item, cnt] : agg)
            if (cnt > inst.items[static_cast<std::size_t>(item - 1)].demand) ok = false;
        if (ok) out.insert({p.bin, std::move(agg)});
    }
    return out;
}

std::set<std::map<std::pair<int, int>, std::int64_t>> demand_capped_multisets(
    const std::set<std::map<std::pair<int, int>, std::int64_t>>& msets, const Instance& inst) {
    std::set<std::map<std::pair<int, int>, std::int64_t>> out;
    for (const auto& m : msets) {
        bool ok = true;
        for (const auto& [ij, cnt] : m)
            if (cnt > inst.items[static_cast<std::size_t>(ij.first - 1)].demand) ok = false;
        if (ok) out.insert(m);
    }
    return out;
}

namespace {

void record(VerifyReport::Check& check, bool ok, const std::string& detail) {
    if (!ok && check.pass) {
        check.pass = false;
        check.detail = detail;
    }
}

} // namespace

void verify_instance(const Instance& raw, VerifyReport& report, const std::string& tag,
                     const MipliteOptions& solver_opts, const BuildOptions& build_opts) {
    Instance inst = normalize(raw);

    auto& pattern_check = report.named("pattern_equivalence");
    auto& lp_check = report.named("lp_bound_equality");
    auto& ip_check = report.named("ip_matches_oracle");
    auto& comp_check = report.named("compression_safety");

    ArcFlowGraph g = build_graph(inst, build_opts);
    PatternSet path_patterns = enumerate_paths(g);

    // pattern equivalence at item-type granularity, per bin type
    PatternSet oracle_patterns;
    for (int t = 1; t <= inst.q(); ++t)
        for (const auto& p : oracle::enumerate_patterns(inst, t)) oracle_patterns.insert(p);
    record(pattern_check,
           demand_capped_aggregate(path_patterns, inst) ==
               demand_capped_aggregate(oracle_patterns, inst),
           tag + ": path patterns differ from oracle patterns");

    // LP bound: simple arc-flow model vs pattern model over the path patterns
    FlowModel simple = build_simple_model(g, inst);
    LpResult lp_flow = solve_lp(simple, true, solver_opts);
    LpResult lp_pattern = solve_pattern_lp(path_patterns, inst, solver_opts);
    bool lp_ok = lp_flow.status == LpResult::Status::Optimal &&
                 lp_pattern.status == LpResult::Status::Optimal &&
                 std::abs(lp_flow.objective - lp_pattern.objective) <= 1e-6;
    record(lp_check, lp_ok,
           tag + ": LP bounds differ (flow " + std::to_string(lp_flow.objective) + " vs pattern " +
               std::to_string(lp_pattern.objective) + ")");

    // IP optimum vs exhaustive covering, plus decomposed-solution validity
    FlowModel full = build_full_model(g, inst, default_exact_set(inst));
    IpResult ip = solve_ip(full, solver_opts);
    auto covering = oracle::solve_exact_covering(inst);
    bool ip_ok = ip.status == IpResult::Status::Optimal &&
                 std::llround(ip.objective) == covering.cost;
    if (ip_ok) {
        std::map<int, std::int64_t> flows;
        for (std::size_t k = 0; k < ip.x.size(); ++k)
            flows[static_cast<int>(k)] = std::llround(ip.x[k]);
        auto packing = decompose_solution(g, flows);
        std::map<int, std::int64_t> covered;
        for (const auto& [pat, count] : packing) {
            const WeightVec& cap = inst.bins[static_cast<std::size_t>(pat.bin - 1)].capacity;
            WeightVec used(cap.dims(), 0);
            for (const auto& [ij, cnt] : pat.uses) {
                const WeightVec& w = incarnation_weight(inst, ij.first, ij.second);
                for (std::size_t d = 0; d < cap.dims(); ++d) used[d] += cnt * w[d];
                covered[ij.first] += cnt * count;
            }
            if (!used.fits_in(cap)) ip_ok = false;
        }
        for (int i = 1; i <= inst.m(); ++i)
            if (covered[i] < inst.items[static_cast<std::size_t>(i - 1)].demand) ip_ok = false;
    }
    record(ip_check, ip_ok,
           tag + ": IP " + std::to_string(ip.objective) + " vs oracle " +
               std::to_string(covering.cost));

    // compression safety: demand-capped pattern content and size before/after
    // Algorithm 2
    OrderedIncarnations order = sort_items(inst);
    PreGraph pre = build_pregraph(inst.bins, order, inst.p, build_opts);
    PreGraph compressed = final_compression(pre, inst);
    bool sizes_ok = compressed.node_count() <= pre.node_count() &&
                    compressed.arcs.size() <= pre.arcs.size();
    bool content_ok = demand_capped_multisets(pregraph_path_multisets(pre), inst) ==
                      demand_capped_multisets(pregraph_path_multisets(compressed), inst);
    record(comp_check, sizes_ok && content_ok,
           tag + (sizes_ok ? ": compression changed the path multiset content"
                           : ": compression grew the graph"));
}

} // namespace arcflow
