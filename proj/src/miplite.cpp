#include "arcflow/miplite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>

#include "arcflow/kernels/rowops.hpp"

namespace arcflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense two-phase primal simplex with Bland's rule. Determinism: entering
// variable is the lowest eligible index, leaving row breaks ratio ties by
// lowest basic variable index, and all row arithmetic goes through the
// dispatched kernels (bit-identical across variants).
class Simplex {
public:
    Simplex(const LinearProgram& lp, const MipliteOptions& opts) : lp_(lp), opts_(opts) {}

    LpResult solve() {
        build();
        if (!phase1()) {
            LpResult r;
            r.status = LpResult::Status::Infeasible;
            return r;
        }
        return phase2();
    }

private:
    const LinearProgram& lp_;
    const MipliteOptions& opts_;

    std::size_t n_ = 0;     // structural variables
    std::size_t total_ = 0; // structural + slack/surplus + artificial
    std::size_t first_artificial_ = 0;
    std::vector<std::vector<double>> tab_; // m rows, total_+1 cols (rhs last)
    std::vector<int> basis_;
    std::vector<char> active_;

    void build() {
        n_ = lp_.num_vars;
        std::size_t m = lp_.rows.size();
        std::size_t slack = 0;
        for (const auto& r : lp_.rows)
            if (r.op != RowOp::Eq) ++slack;
        // one artificial per row keeps the construction uniform; unused ones
        // are never basic after phase 1
        first_artificial_ = n_ + slack;
        total_ = first_artificial_ + m;
        tab_.assign(m, std::vector<double>(total_ + 1, 0.0));
        basis_.assign(m, -1);
        active_.assign(m, 1);

        std::size_t next_slack = n_;
        for (std::size_t i = 0; i < m; ++i) {
            const auto& r = lp_.rows[i];
            double sign = r.rhs < 0 ? -1.0 : 1.0;
            for (const auto& [var, coef] : r.terms)
                tab_[i][static_cast<std::size_t>(var)] += sign * coef;
            tab_[i][total_] = sign * r.rhs;
            RowOp op = r.op;
            if (sign < 0) {
                if (op == RowOp::Ge)
                    op = RowOp::Le;
                else if (op == RowOp::Le)
                    op = RowOp::Ge;
            }
            if (op == RowOp::Le) {
                tab_[i][next_slack] = 1.0;
                basis_[i] = static_cast<int>(next_slack);
                ++next_slack;
            } else if (op == RowOp::Ge) {
                tab_[i][next_slack] = -1.0;
                ++next_slack;
            }
            if (basis_[i] < 0) {
                tab_[i][first_artificial_ + i] = 1.0;
                basis_[i] = static_cast<int>(first_artificial_ + i);
            }
        }
    }

    // reduced costs for the cost vector c over the current basis
    std::vector<double> reduced_costs(const std::vector<double>& c) const {
        std::vector<double> rc(total_ + 1, 0.0);
        for (std::size_t j = 0; j < total_; ++j) rc[j] = j < c.size() ? c[j] : 0.0;
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            if (!active_[i]) continue;
            double cb = basis_[i] < static_cast<int>(c.size()) ? c[static_cast<std::size_t>(basis_[i])] : 0.0;
            if (cb != 0.0)
                kernels::eliminate_row(rc.data(), tab_[i].data(), cb, total_ + 1);
        }
        return rc;
    }

    void pivot(std::size_t row, std::size_t col, std::vector<double>& rc) {
        double p = tab_[row][col];
        if (std::abs(p) < opts_.pivot_tol)
            throw SolveError("numerical instability: pivot below tolerance");
        kernels::divide_row(tab_[row].data(), p, total_ + 1);
        tab_[row][col] = 1.0; // remove roundoff on the pivot itself
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            if (i == row || !active_[i]) continue;
            double f = tab_[i][col];
            if (f != 0.0) {
                kernels::eliminate_row(tab_[i].data(), tab_[row].data(), f, total_ + 1);
                tab_[i][col] = 0.0;
            }
        }
        double f = rc[col];
        if (f != 0.0) {
            kernels::eliminate_row(rc.data(), tab_[row].data(), f, total_ + 1);
            rc[col] = 0.0;
        }
        basis_[row] = static_cast<int>(col);
    }

    // Bland: lowest eligible entering index, ratio ties by lowest basic index.
    // allow(j) filters candidate entering columns. Returns false when optimal,
    // throws on unbounded.
    template <typename Allow>
    bool iterate(std::vector<double>& rc, Allow allow, bool* unbounded) {
        std::size_t enter = total_;
        for (std::size_t j = 0; j < total_; ++j) {
            if (!allow(j)) continue;
            if (rc[j] < -opts_.feas_tol) {
                enter = j;
                break;
            }
        }
        if (enter == total_) return false;
        std::size_t leave = tab_.size();
        double best_ratio = kInf;
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            if (!active_[i]) continue;
            double a = tab_[i][enter];
            if (a <= opts_.pivot_tol) continue;
            double ratio = tab_[i][total_] / a;
            if (ratio < best_ratio - opts_.feas_tol ||
                (ratio < best_ratio + opts_.feas_tol &&
                 (leave == tab_.size() || basis_[i] < basis_[leave]))) {
                best_ratio = ratio;
                leave = i;
            }
        }
        if (leave == tab_.size()) {
            *unbounded = true;
            return false;
        }
        pivot(leave, enter, rc);
        return true;
    }

    bool phase1() {
        bool need = false;
        for (std::size_t i = 0; i < tab_.size(); ++i)
            if (basis_[i] >= static_cast<int>(first_artificial_)) need = true;
        if (!need) return true;

        std::vector<double> c(total_, 0.0);
        for (std::size_t j = first_artificial_; j < total_; ++j) c[j] = 1.0;
        auto rc = reduced_costs(c);
        bool unbounded = false;
        while (iterate(rc, [](std::size_t) { return true; }, &unbounded)) {
        }
        double w = -rc[total_]; // phase-1 objective value
        if (w > 1e-7) return false;

        // drive artificials out of the basis; rows that cannot pivot are
        // redundant and get deactivated
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            if (!active_[i] || basis_[i] < static_cast<int>(first_artificial_)) continue;
            std::size_t col = total_;
            for (std::size_t j = 0; j < first_artificial_; ++j)
                if (std::abs(tab_[i][j]) > opts_.pivot_tol) {
                    col = j;
                    break;
                }
            if (col == total_) {
                active_[i] = 0;
                continue;
            }
            pivot(i, col, rc);
        }
        return true;
    }

    LpResult phase2() {
        std::vector<double> c(total_, 0.0);
        for (std::size_t j = 0; j < n_ && j < lp_.objective.size(); ++j) c[j] = lp_.objective[j];
        auto rc = reduced_costs(c);
        bool unbounded = false;
        auto allow = [&](std::size_t j) { return j < first_artificial_; };
        while (iterate(rc, allow, &unbounded)) {
        }
        LpResult r;
        if (unbounded) {
            r.status = LpResult::Status::Unbounded;
            return r;
        }
        r.status = LpResult::Status::Optimal;
        r.x.assign(n_, 0.0);
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            if (!active_[i]) continue;
            if (basis_[i] >= 0 && basis_[i] < static_cast<int>(n_))
                r.x[static_cast<std::size_t>(basis_[i])] = tab_[i][total_];
        }
        r.objective = 0.0;
        for (std::size_t j = 0; j < n_ && j < lp_.objective.size(); ++j)
            r.objective += lp_.objective[j] * r.x[j];
        return r;
    }
};

LinearProgram lower_model(const FlowModel& mdl,
                          const std::map<int, std::pair<double, double>>* branch_bounds) {
    LinearProgram lp;
    lp.num_vars = mdl.vars.size();
    lp.objective.assign(lp.num_vars, 0.0);
    for (const auto& [var, coef] : mdl.objective)
        lp.objective[static_cast<std::size_t>(var)] = static_cast<double>(coef);
    for (const auto& r : mdl.rows) {
        LinearProgram::Row row;
        row.op = r.op;
        row.rhs = static_cast<double>(r.rhs);
        for (const auto& [var, coef] : r.terms) row.terms.push_back({var, static_cast<double>(coef)});
        lp.rows.push_back(std::move(row));
    }
    for (std::size_t j = 0; j < mdl.vars.size(); ++j) {
        const auto& v = mdl.vars[j];
        double lb = static_cast<double>(v.lb);
        double ub = v.ub ? static_cast<double>(*v.ub) : kInf;
        if (branch_bounds) {
            if (auto it = branch_bounds->find(static_cast<int>(j)); it != branch_bounds->end()) {
                lb = std::max(lb, it->second.first);
                ub = std::min(ub, it->second.second);
            }
        }
        if (lb > 0.0)
            lp.rows.push_back({RowOp::Ge, lb, {{static_cast<int>(j), 1.0}}});
        if (ub < kInf)
            lp.rows.push_back({RowOp::Le, ub, {{static_cast<int>(j), 1.0}}});
    }
    return lp;
}

} // namespace

LpResult solve_lp_core(const LinearProgram& lp, const MipliteOptions& opts) {
    if (lp.num_vars > opts.max_vars)
        throw GuardError("model exceeds the desk-scale variable guard (" +
                         std::to_string(opts.max_vars) + ")");
    Simplex s(lp, opts);
    return s.solve();
}

LpResult solve_lp(const FlowModel& mdl, bool relaxed, const MipliteOptions& opts) {
    if (!relaxed) {
        for (const auto& v : mdl.vars)
            if (v.integral)
                throw SolveError("model declares integer variables; pass relaxed=true");
    }
    return solve_lp_core(lower_model(mdl, nullptr), opts);
}

IpResult solve_ip(const FlowModel& mdl, const MipliteOptions& opts) {
    struct Node {
        double bound;
        std::int64_t seq;
        std::map<int, std::pair<double, double>> bounds;
        bool operator>(const Node& o) const {
            if (bound != o.bound) return bound > o.bound;
            return seq > o.seq;
        }
    };

    IpResult best;
    best.status = IpResult::Status::Infeasible;
    best.objective = kInf;
    bool have_incumbent = false;

    std::priority_queue<Node, std::vector<Node>, std::greater<Node>> open;
    std::int64_t seq = 0;
    open.push(Node{-kInf, seq++, {}});
    std::int64_t nodes = 0;
    bool hit_limit = false;

    while (!open.empty()) {
        Node node = open.top();
        open.pop();
        if (have_incumbent && node.bound > best.objective - 1.0 + opts.int_tol) continue;
        if (nodes >= opts.node_limit) {
            hit_limit = true;
            break;
        }
        ++nodes;

        LpResult rel = solve_lp_core(lower_model(mdl, &node.bounds), opts);
        if (rel.status == LpResult::Status::Infeasible) continue;
        if (rel.status == LpResult::Status::Unbounded)
            throw SolveError("relaxation unbounded; check model costs");
        // costs are integral, so the bound can be tightened to the next integer
        if (have_incumbent && rel.objective > best.objective - 1.0 + opts.int_tol) continue;

        // fractional part closest to one half, lowest index on ties
        int branch_var = -1;
        double best_dist = kInf;
        for (std::size_t j = 0; j < rel.x.size(); ++j) {
            double frac = rel.x[j] - std::floor(rel.x[j]);
            if (frac < opts.int_tol || frac > 1.0 - opts.int_tol) continue;
            double dist = std::abs(frac - 0.5);
            if (dist < best_dist - 1e-12) {
                best_dist = dist;
                branch_var = static_cast<int>(j);
            }
        }
        if (branch_var < 0) {
            // integral: recompute the objective exactly from rounded values
            double obj = 0.0;
            {
                std::int64_t exact = 0;
                for (const auto& [var, coef] : mdl.objective)
                    exact += coef * static_cast<std::int64_t>(std::llround(rel.x[static_cast<std::size_t>(var)]));
                obj = static_cast<double>(exact);
            }
            if (!have_incumbent || obj < best.objective) {
                best.status = IpResult::Status::Optimal;
                best.objective = obj;
                best.x = rel.x;
                for (auto& v : best.x) v = std::llround(v);
                have_incumbent = true;
            }
            continue;
        }

        auto range_of = [](std::map<int, std::pair<double, double>>& m,
                           int v) -> std::pair<double, double>& {
            auto it = m.find(v);
            if (it == m.end()) it = m.emplace(v, std::make_pair(0.0, kInf)).first;
            return it->second;
        };
        double val = rel.x[static_cast<std::size_t>(branch_var)];

        Node down = node; // floor branch, pushed first so equal bounds pop it first
        down.bound = rel.objective;
        down.seq = seq++;
        auto& dr = range_of(down.bounds, branch_var);
        dr.second = std::min(dr.second, std::floor(val));
        open.push(std::move(down));

        Node up = node;
        up.bound = rel.objective;
        up.seq = seq++;
        auto& ur = range_of(up.bounds, branch_var);
        ur.first = std::max(ur.first, std::ceil(val));
        open.push(std::move(up));
    }

    best.nodes = nodes;
    if (hit_limit)
        best.status = IpResult::Status::NodeLimit;
    else
        best.status = have_incumbent ? IpResult::Status::Optimal : IpResult::Status::Infeasible;
    return best;
}

LpResult solve_pattern_lp(const PatternSet& patterns, const Instance& inst,
                          const MipliteOptions& opts) {
    LinearProgram lp;
    lp.num_vars = patterns.size();
    lp.objective.reserve(patterns.size());
    for (const auto& p : patterns)
        lp.objective.push_back(
            static_cast<double>(inst.bins[static_cast<std::size_t>(p.bin - 1)].cost));
    std::vector<LinearProgram::Row> rows(static_cast<std::size_t>(inst.m()));
    for (int i = 1; i <= inst.m(); ++i) {
        rows[static_cast<std::size_t>(i - 1)].op = RowOp::Ge;
        rows[static_cast<std::size_t>(i - 1)].rhs =
            static_cast<double>(inst.items[static_cast<std::size_t>(i - 1)].demand);
    }
    int col = 0;
    for (const auto& p : patterns) {
        for (const auto& [item, cnt] : p.by_item())
            rows[static_cast<std::size_t>(item - 1)].terms.push_back(
                {col, static_cast<double>(cnt)});
        ++col;
    }
    lp.rows = std::move(rows);
    return solve_lp_core(lp, opts);
}

} // namespace arcflow
