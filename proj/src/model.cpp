#include "arcflow/model.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>

namespace arcflow {

ExactSet default_exact_set(const Instance& inst) {
    ExactSet s;
    for (int i = 1; i <= inst.m(); ++i)
        if (inst.items[static_cast<std::size_t>(i - 1)].demand == 1) s.insert(i);
    return s;
}

namespace {

FlowModel build_model(const ArcFlowGraph& g, const Instance& inst, const ExactSet* exact,
                      bool with_bounds) {
    if (g.feedback_count() == 0) throw ModelError("graph has no feedback arcs");
    FlowModel mdl;
    std::int64_t b0 = inst.total_demand();

    for (const auto& a : g.arcs) {
        ModelVar v;
        v.name = "F" + std::to_string(a.id);
        if (with_bounds)
            v.ub = a.is_loss() ? b0 : inst.items[static_cast<std::size_t>(a.item - 1)].demand;
        mdl.vars.push_back(std::move(v));
        mdl.arc_info.push_back({a.u.to_string(), a.v.to_string(), a.item, a.inc});
    }

    // conservation: inflow - outflow = 0 at every node, in canonical order
    std::vector<NodeId> nodes = g.nodes;
    std::sort(nodes.begin(), nodes.end());
    std::map<NodeId, std::size_t> row_of;
    for (const auto& n : nodes) {
        ModelRow r;
        r.name = "flow_" + n.key();
        r.op = RowOp::Eq;
        r.rhs = 0;
        row_of[n] = mdl.rows.size();
        mdl.rows.push_back(std::move(r));
    }
    for (const auto& a : g.arcs) {
        mdl.rows[row_of.at(a.v)].terms.push_back({a.id, 1});
        mdl.rows[row_of.at(a.u)].terms.push_back({a.id, -1});
    }
    for (auto& r : mdl.rows)
        std::sort(r.terms.begin(), r.terms.end());
    mdl.conservation_rows = static_cast<int>(mdl.rows.size());

    for (int i = 1; i <= inst.m(); ++i) {
        ModelRow r;
        r.name = "dem_" + std::to_string(i);
        r.op = exact && exact->count(i) ? RowOp::Eq : RowOp::Ge;
        r.rhs = inst.items[static_cast<std::size_t>(i - 1)].demand;
        for (const auto& a : g.arcs)
            if (a.item == i) r.terms.push_back({a.id, 1});
        mdl.rows.push_back(std::move(r));
    }
    mdl.demand_rows = inst.m();

    for (const auto& a : g.arcs)
        if (a.is_feedback())
            mdl.objective.push_back({a.id, inst.bins[static_cast<std::size_t>(a.u.target - 1)].cost});
    return mdl;
}

std::string term_list(const std::vector<std::pair<int, std::int64_t>>& terms,
                      const std::vector<ModelVar>& vars, bool always_coef) {
    std::string out;
    bool first = true;
    for (const auto& [var, coef] : terms) {
        std::int64_t mag = coef < 0 ? -coef : coef;
        if (first) {
            if (coef < 0) out += "- ";
        } else {
            out += coef < 0 ? " - " : " + ";
        }
        first = false;
        if (mag != 1 || always_coef) out += std::to_string(mag) + " ";
        out += vars[static_cast<std::size_t>(var)].name;
    }
    return out;
}

const char* op_text(RowOp op) {
    switch (op) {
    case RowOp::Ge:
        return ">=";
    case RowOp::Le:
        return "<=";
    case RowOp::Eq:
        return "=";
    }
    return "?";
}

} // namespace

FlowModel build_full_model(const ArcFlowGraph& g, const Instance& inst, const ExactSet& exact) {
    return build_model(g, inst, &exact, true);
}

FlowModel build_simple_model(const ArcFlowGraph& g, const Instance& inst) {
    return build_model(g, inst, nullptr, false);
}

std::string emit_lp(const FlowModel& mdl) {
    std::ostringstream out;
    out << "Minimize\n";
    out << "obj: " << term_list(mdl.objective, mdl.vars, true) << "\n";
    out << "Subject To\n";
    for (const auto& r : mdl.rows)
        out << r.name << ": " << term_list(r.terms, mdl.vars, false) << " " << op_text(r.op) << " "
            << r.rhs << "\n";
    out << "Bounds\n";
    for (const auto& v : mdl.vars)
        if (v.ub) out << v.lb << " <= " << v.name << " <= " << *v.ub << "\n";
    out << "Generals\n";
    std::string gen;
    for (const auto& v : mdl.vars) {
        if (!v.integral) continue;
        if (!gen.empty()) gen += " ";
        gen += v.name;
    }
    if (!gen.empty()) out << gen << "\n";
    out << "End\n";
    return out.str();
}

std::string emit_mps(const FlowModel& mdl) {
    std::ostringstream out;
    out << "NAME arcflow\n";
    out << "ROWS\n N obj\n";
    for (const auto& r : mdl.rows) {
        char t = r.op == RowOp::Eq ? 'E' : (r.op == RowOp::Ge ? 'G' : 'L');
        out << " " << t << " " << r.name << "\n";
    }
    out << "COLUMNS\n";
    // column-major entries; integer marker pair brackets the integer block
    std::map<int, std::int64_t> obj_of;
    for (const auto& [var, coef] : mdl.objective) obj_of[var] = coef;
    std::map<int, std::vector<std::pair<std::string, std::int64_t>>> col_entries;
    for (const auto& r : mdl.rows)
        for (const auto& [var, coef] : r.terms) col_entries[var].push_back({r.name, coef});
    bool in_int = false;
    int marker = 0;
    for (std::size_t vi = 0; vi < mdl.vars.size(); ++vi) {
        const auto& v = mdl.vars[vi];
        if (v.integral != in_int) {
            out << " M" << ++marker << " 'MARKER' '" << (v.integral ? "INTORG" : "INTEND")
                << "'\n";
            in_int = v.integral;
        }
        if (auto it = obj_of.find(static_cast<int>(vi)); it != obj_of.end())
            out << " " << v.name << " obj " << it->second << "\n";
        for (const auto& [row, coef] : col_entries[static_cast<int>(vi)])
            out << " " << v.name << " " << row << " " << coef << "\n";
    }
    if (in_int) out << " M" << ++marker << " 'MARKER' 'INTEND'\n";
    out << "RHS\n";
    for (const auto& r : mdl.rows)
        if (r.rhs != 0) out << " RHS " << r.name << " " << r.rhs << "\n";
    out << "BOUNDS\n";
    for (const auto& v : mdl.vars)
        if (v.ub) out << " UP BND " << v.name << " " << *v.ub << "\n";
    out << "ENDATA\n";
    return out.str();
}

std::string emit_map_json(const FlowModel& mdl) {
    nlohmann::ordered_json j;
    j["vars"] = nlohmann::ordered_json::array();
    for (std::size_t vi = 0; vi < mdl.vars.size(); ++vi) {
        nlohmann::ordered_json e;
        e["name"] = mdl.vars[vi].name;
        e["u"] = mdl.arc_info[vi].u;
        e["v"] = mdl.arc_info[vi].v;
        e["i"] = mdl.arc_info[vi].i;
        e["j"] = mdl.arc_info[vi].j;
        j["vars"].push_back(std::move(e));
    }
    return j.dump();
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream in(line);
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

// orders variables numerically by their F<k> suffix
void finalize_vars(FlowModel& mdl, std::map<std::string, int>& index,
                   const std::vector<std::string>& names) {
    std::vector<std::string> sorted = names;
    std::sort(sorted.begin(), sorted.end(), [](const std::string& a, const std::string& b) {
        if (a.size() > 1 && b.size() > 1 && a[0] == 'F' && b[0] == 'F') {
            long ia = std::strtol(a.c_str() + 1, nullptr, 10);
            long ib = std::strtol(b.c_str() + 1, nullptr, 10);
            if (ia != ib) return ia < ib;
        }
        return a < b;
    });
    for (const auto& n : sorted) {
        index[n] = static_cast<int>(mdl.vars.size());
        ModelVar v;
        v.name = n;
        v.integral = false;
        mdl.vars.push_back(std::move(v));
    }
}

// "name: [-] [coef] var [+|- [coef] var ...] op rhs"
void parse_terms(const std::vector<std::string>& toks, std::size_t begin, std::size_t end,
                 const std::map<std::string, int>& index,
                 std::vector<std::pair<int, std::int64_t>>& out) {
    std::int64_t sign = 1, coef = 1;
    bool have_coef = false;
    for (std::size_t k = begin; k < end; ++k) {
        const std::string& t = toks[k];
        if (t == "+") {
            sign = 1;
        } else if (t == "-") {
            sign = -1;
        } else if (std::isdigit(static_cast<unsigned char>(t[0])) ||
                   (t.size() > 1 && (t[0] == '-' || t[0] == '+'))) {
            coef = std::stoll(t);
            have_coef = true;
        } else {
            auto it = index.find(t);
            if (it == index.end()) throw ModelError("unknown variable '" + t + "'");
            out.push_back({it->second, sign * (have_coef ? coef : 1)});
            sign = 1;
            coef = 1;
            have_coef = false;
        }
    }
    std::sort(out.begin(), out.end());
}

} // namespace

FlowModel read_lp(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    enum Section { None, Objective, Rows, Bounds, Generals, Done } section = None;

    // first pass: collect variable names to build a stable numeric order
    std::set<std::string> names;
    {
        std::istringstream scan(text);
        while (std::getline(scan, line)) {
            auto toks = tokenize(line);
            for (const auto& t : toks)
                if (t[0] == 'F' && t.size() > 1 &&
                    std::isdigit(static_cast<unsigned char>(t[1])))
                    names.insert(t);
        }
    }
    FlowModel mdl;
    std::map<std::string, int> index;
    finalize_vars(mdl, index, {names.begin(), names.end()});

    while (std::getline(in, line)) {
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks[0] == "Minimize") {
            section = Objective;
            continue;
        }
        if (toks[0] == "Subject" ) {
            section = Rows;
            continue;
        }
        if (toks[0] == "Bounds") {
            section = Bounds;
            continue;
        }
        if (toks[0] == "Generals") {
            section = Generals;
            continue;
        }
        if (toks[0] == "End") {
            section = Done;
            continue;
        }
        switch (section) {
        case Objective:
            parse_terms(toks, 1, toks.size(), index, mdl.objective);
            break;
        case Rows: {
            ModelRow r;
            r.name = toks[0].substr(0, toks[0].size() - 1); // strip ':'
            std::size_t op_at = toks.size() - 2;
            std::string op = toks[op_at];
            r.op = op == ">=" ? RowOp::Ge : (op == "<=" ? RowOp::Le : RowOp::Eq);
            r.rhs = std::stoll(toks.back());
            parse_terms(toks, 1, op_at, index, r.terms);
            if (r.name.rfind("flow_", 0) == 0)
                ++mdl.conservation_rows;
            else
                ++mdl.demand_rows;
            mdl.rows.push_back(std::move(r));
            break;
        }
        case Bounds: {
            // "<lb> <= <var> <= <ub>"
            if (toks.size() != 5) throw ModelError("bad bounds line: " + line);
            auto& v = mdl.vars[static_cast<std::size_t>(index.at(toks[2]))];
            v.lb = std::stoll(toks[0]);
            v.ub = std::stoll(toks[4]);
            break;
        }
        case Generals:
            for (const auto& t : toks) mdl.vars[static_cast<std::size_t>(index.at(t))].integral = true;
            break;
        default:
            throw ModelError("unexpected content outside sections: " + line);
        }
    }
    return mdl;
}

FlowModel read_mps(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    enum Section { None, Rows, Columns, Rhs, BoundsSec, Done } section = None;
    struct RowInfo {
        RowOp op;
        std::int64_t rhs = 0;
        std::vector<std::pair<std::string, std::int64_t>> terms; // var name, coef
    };
    std::vector<std::pair<std::string, RowInfo>> rows;
    std::map<std::string, std::size_t> row_index;
    std::vector<std::pair<std::string, std::int64_t>> objective;
    std::set<std::string> names;
    std::set<std::string> integers;
    std::map<std::string, std::int64_t> ubs;
    bool in_int = false;

    while (std::getline(in, line)) {
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (toks[0] == "NAME") continue;
        if (toks[0] == "ROWS") { section = Rows; continue; }
        if (toks[0] == "COLUMNS") { section = Columns; continue; }
        if (toks[0] == "RHS") { section = Rhs; continue; }
        if (toks[0] == "BOUNDS") { section = BoundsSec; continue; }
        if (toks[0] == "ENDATA") { section = Done; continue; }
        switch (section) {
        case Rows: {
            if (toks[1] == "obj") continue;
            RowInfo r;
            r.op = toks[0] == "E" ? RowOp::Eq : (toks[0] == "G" ? RowOp::Ge : RowOp::Le);
            row_index[toks[1]] = rows.size();
            rows.push_back({toks[1], std::move(r)});
            break;
        }
        case Columns: {
            if (toks.size() >= 3 && toks[1] == "'MARKER'") {
                in_int = toks[2] == "'INTORG'";
                continue;
            }
            const std::string& var = toks[0];
            names.insert(var);
            if (in_int) integers.insert(var);
            for (std::size_t k = 1; k + 1 < toks.size(); k += 2) {
                std::int64_t coef = std::stoll(toks[k + 1]);
                if (toks[k] == "obj")
                    objective.push_back({var, coef});
                else
                    rows[row_index.at(toks[k])].second.terms.push_back({var, coef});
            }
            break;
        }
        case Rhs:
            rows[row_index.at(toks[1])].second.rhs = std::stoll(toks[2]);
            break;
        case BoundsSec:
            if (toks[0] == "UP") ubs[toks[2]] = std::stoll(toks[3]);
            break;
        default:
            break;
        }
    }

    FlowModel mdl;
    std::map<std::string, int> index;
    finalize_vars(mdl, index, {names.begin(), names.end()});
    for (const auto& n : names) {
        auto& v = mdl.vars[static_cast<std::size_t>(index.at(n))];
        v.integral = integers.count(n) > 0;
        if (auto it = ubs.find(n); it != ubs.end()) v.ub = it->second;
    }
    for (const auto& [name, info] : rows) {
        ModelRow r;
        r.name = name;
        r.op = info.op;
        r.rhs = info.rhs;
        for (const auto& [var, coef] : info.terms) r.terms.push_back({index.at(var), coef});
        std::sort(r.terms.begin(), r.terms.end());
        if (name.rfind("flow_", 0) == 0)
            ++mdl.conservation_rows;
        else
            ++mdl.demand_rows;
        mdl.rows.push_back(std::move(r));
    }
    for (const auto& [var, coef] : objective) mdl.objective.push_back({index.at(var), coef});
    std::sort(mdl.objective.begin(), mdl.objective.end());
    return mdl;
}

bool same_lp(const FlowModel& a, const FlowModel& b) {
    if (a.vars.size() != b.vars.size() || a.rows.size() != b.rows.size()) return false;
    for (std::size_t k = 0; k < a.vars.size(); ++k) {
        const auto& va = a.vars[k];
        const auto& vb = b.vars[k];
        if (va.name != vb.name || va.lb != vb.lb || va.ub != vb.ub || va.integral != vb.integral)
            return false;
    }
    for (std::size_t k = 0; k < a.rows.size(); ++k) {
        const auto& ra = a.rows[k];
        const auto& rb = b.rows[k];
        if (ra.name != rb.name || ra.op != rb.op || ra.rhs != rb.rhs || ra.terms != rb.terms)
            return false;
    }
    auto oa = a.objective;
    auto ob = b.objective;
    std::sort(oa.begin(), oa.end());
    std::sort(ob.begin(), ob.end());
    return oa == ob;
}

std::vector<std::pair<Pattern, std::int64_t>> decompose_solution(
    const ArcFlowGraph& g, const std::map<int, std::int64_t>& flows) {
    std::vector<std::int64_t> f(g.arcs.size(), 0);
    for (const auto& [id, v] : flows) {
        if (id < 0 || id >= static_cast<int>(g.arcs.size()))
            throw ModelError("flow on unknown arc " + std::to_string(id));
        if (v < 0) throw ModelError("negative flow");
        f[static_cast<std::size_t>(id)] = v;
    }
    // conservation check
    std::map<NodeId, std::int64_t> net;
    for (const auto& a : g.arcs) {
        net[a.v] += f[static_cast<std::size_t>(a.id)];
        net[a.u] -= f[static_cast<std::size_t>(a.id)];
    }
    for (const auto& [node, x] : net)
        if (x != 0)
            throw ModelError("flow not conserved at node " + node.to_string());

    std::map<NodeId, std::vector<const Arc*>> out;
    for (const auto& a : g.arcs)
        if (!a.is_feedback()) out[a.u].push_back(&a);
    for (auto& [n, arcs] : out)
        std::sort(arcs.begin(), arcs.end(), [](const Arc* x, const Arc* y) { return x->id < y->id; });

    std::map<Pattern, std::int64_t> counts;
    while (true) {
        const Arc* feedback = nullptr;
        for (const auto& a : g.arcs)
            if (a.is_feedback() && f[static_cast<std::size_t>(a.id)] > 0) {
                feedback = &a;
                break;
            }
        if (!feedback) break;
        int bin = feedback->u.target;

        // positive-flow path source -> Target(bin), lowest arc ids first
        std::vector<const Arc*> path;
        std::set<NodeId> visiting;
        auto dfs = [&](auto&& self, const NodeId& n) -> bool {
            if (n == feedback->u) return true;
            if (!visiting.insert(n).second) return false;
            for (const Arc* a : out[n]) {
                if (f[static_cast<std::size_t>(a->id)] <= 0) continue;
                path.push_back(a);
                if (self(self, a->v)) return true;
                path.pop_back();
            }
            visiting.erase(n);
            return false;
        };
        if (!dfs(dfs, g.source))
            throw ModelError("residual flow admits no cycle through target " + std::to_string(bin));

        std::int64_t delta = f[static_cast<std::size_t>(feedback->id)];
        for (const Arc* a : path) delta = std::min(delta, f[static_cast<std::size_t>(a->id)]);
        f[static_cast<std::size_t>(feedback->id)] -= delta;
        for (const Arc* a : path) f[static_cast<std::size_t>(a->id)] -= delta;

        Pattern pat;
        pat.bin = bin;
        for (const Arc* a : path)
            if (!a->is_loss()) ++pat.uses[{a->item, a->inc}];
        if (!pat.uses.empty()) counts[pat] += delta;
    }
    for (std::size_t k = 0; k < f.size(); ++k)
        if (f[k] != 0)
            throw ModelError("residual non-feedback flow remains on arc " + std::to_string(k));
    return {counts.begin(), counts.end()};
}

} // namespace arcflow
