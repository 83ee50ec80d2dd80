#include "arcflow/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace arcflow::oracle {

namespace {

struct IncRef {
    int item, inc;
    WeightVec weight;
    std::int64_t demand;
};

std::vector<IncRef> incarnation_list(const Instance& inst) {
    std::vector<IncRef> incs;
    for (int i = 1; i <= inst.m(); ++i) {
        const auto& it = inst.items[static_cast<std::size_t>(i - 1)];
        for (std::size_t k = 0; k < it.incarnations.size(); ++k)
            incs.push_back({i, it.incarnation_j[k], it.incarnations[k], it.demand});
    }
    return incs;
}

} // namespace

PatternSet enumerate_patterns(const Instance& inst, int t, std::int64_t max_patterns) {
    if (t < 1 || t > inst.q()) throw ValidationError("bad bin type " + std::to_string(t));
    const WeightVec& cap = inst.bins[static_cast<std::size_t>(t - 1)].capacity;
    auto incs = incarnation_list(inst);
    PatternSet out;
    WeightVec used(cap.dims(), 0);
    Pattern current;
    current.bin = t;

    auto fits_more = [&](const WeightVec& w) {
        for (std::size_t d = 0; d < cap.dims(); ++d)
            if (used[d] + w[d] > cap[d]) return false;
        return true;
    };

    auto rec = [&](auto&& self, std::size_t idx) -> void {
        if (idx == incs.size()) {
            if (!current.uses.empty()) {
                if (static_cast<std::int64_t>(out.size()) >= max_patterns)
                    throw GuardError("pattern enumeration guard exceeded (" +
                                     std::to_string(max_patterns) + ")");
                out.insert(current);
            }
            return;
        }
        const auto& inc = incs[idx];
        self(self, idx + 1); // count 0
        std::int64_t count = 0;
        while (count < inc.demand && fits_more(inc.weight)) {
            for (std::size_t d = 0; d < cap.dims(); ++d) used[d] += inc.weight[d];
            ++count;
            current.uses[{inc.item, inc.inc}] = count;
            self(self, idx + 1);
        }
        if (count > 0) {
            for (std::size_t d = 0; d < cap.dims(); ++d) used[d] -= count * inc.weight[d];
            current.uses.erase({inc.item, inc.inc});
        }
    };
    rec(rec, 0);
    return out;
}

CoveringResult solve_exact_covering(const Instance& inst, std::int64_t max_states) {
    std::int64_t space = 1;
    for (const auto& it : inst.items) {
        space *= it.demand + 1;
        if (space > max_states)
            throw GuardError("covering state space exceeds guard (" + std::to_string(max_states) +
                             ")");
    }

    struct Move {
        int t;
        Pattern pattern;
        std::map<int, std::int64_t> reduces;
    };
    std::vector<Move> moves;
    for (int t = 1; t <= inst.q(); ++t)
        for (const auto& pat : enumerate_patterns(inst, t))
            moves.push_back({t, pat, pat.by_item()});

    constexpr std::int64_t kUnset = -1;
    constexpr std::int64_t kInfCost = INT64_MAX / 4;
    std::map<std::vector<std::int64_t>, std::pair<std::int64_t, int>> memo; // cost, move index

    auto rec = [&](auto&& self, const std::vector<std::int64_t>& remaining) -> std::int64_t {
        bool done = true;
        for (auto r : remaining)
            if (r > 0) done = false;
        if (done) return 0;
        auto it = memo.find(remaining);
        if (it != memo.end()) {
            if (it->second.first == kUnset) throw GuardError("covering recursion re-entered a state");
            return it->second.first;
        }
        if (static_cast<std::int64_t>(memo.size()) > max_states)
            throw GuardError("covering memo exceeds guard");
        memo[remaining] = {kUnset, -1};
        std::int64_t best = kInfCost;
        int best_move = -1;
        for (std::size_t mi = 0; mi < moves.size(); ++mi) {
            const auto& mv = moves[mi];
            std::vector<std::int64_t> next = remaining;
            bool reduces = false;
            for (const auto& [item, cnt] : mv.reduces) {
                auto& r = next[static_cast<std::size_t>(item - 1)];
                if (r > 0) reduces = true;
                r = std::max<std::int64_t>(0, r - cnt);
            }
            if (!reduces) continue;
            std::int64_t cost =
                inst.bins[static_cast<std::size_t>(mv.t - 1)].cost + self(self, next);
            if (cost < best) {
                best = cost;
                best_move = static_cast<int>(mi);
            }
        }
        if (best_move < 0)
            throw ValidationError("covering infeasible: some demand admits no pattern");
        memo[remaining] = {best, best_move};
        return best;
    };

    std::vector<std::int64_t> demands;
    for (const auto& it : inst.items) demands.push_back(it.demand);
    CoveringResult result;
    result.cost = rec(rec, demands);

    // traceback, merging repeated patterns
    std::map<Pattern, std::int64_t> counts;
    std::vector<std::int64_t> state = demands;
    while (true) {
        bool done = true;
        for (auto r : state)
            if (r > 0) done = false;
        if (done) break;
        const auto& [cost, mi] = memo.at(state);
        (void)cost;
        const auto& mv = moves[static_cast<std::size_t>(mi)];
        ++counts[mv.pattern];
        for (const auto& [item, cnt] : mv.reduces) {
            auto& r = state[static_cast<std::size_t>(item - 1)];
            r = std::max<std::int64_t>(0, r - cnt);
        }
    }
    result.packing.assign(counts.begin(), counts.end());
    return result;
}

namespace {

using Scaled = __int128;

struct PriceDp {
    const Instance& inst;
    const OrderedIncarnations& order;
    std::vector<Scaled> pi;     // scaled duals, by item index 0..m-1
    std::vector<Scaled> cost;   // scaled bin costs
    std::map<std::tuple<WeightVec, int, int>, std::pair<Scaled, char>> memo; // value, choice
    // choice: 'u' use, 's' skip, 'b' base

    Scaled solve(const WeightVec& x, int k, int c) {
        int n = static_cast<int>(order.size());
        if (k > n) {
            Scaled best = 0;
            bool any = false;
            for (int t = 1; t <= inst.q(); ++t) {
                if (!x.fits_in(inst.bins[static_cast<std::size_t>(t - 1)].capacity)) continue;
                if (!any || cost[static_cast<std::size_t>(t - 1)] < best) {
                    best = cost[static_cast<std::size_t>(t - 1)];
                    any = true;
                }
            }
            if (!any) throw GraphError("pricing reached a state fitting no bin");
            return best;
        }
        auto key = std::make_tuple(x, k, c);
        if (auto it = memo.find(key); it != memo.end()) return it->second.first;
        const auto& oi = order[static_cast<std::size_t>(k - 1)];
        Scaled skip = solve(x, k + 1, 0);
        Scaled value = skip;
        char choice = 's';
        if (c + 1 <= oi.demand) {
            WeightVec nx = x.plus(oi.weight);
            bool fits = false;
            for (const auto& b : inst.bins)
                if (nx.fits_in(b.capacity)) {
                    fits = true;
                    break;
                }
            if (fits) {
                Scaled use = solve(nx, k, c + 1) - pi[static_cast<std::size_t>(oi.item - 1)];
                if (use < skip) {
                    value = use;
                    choice = 'u';
                }
            }
        }
        memo[key] = {value, choice};
        return value;
    }

    int base_bin(const WeightVec& x) const {
        int best_t = 0;
        Scaled best = 0;
        for (int t = 1; t <= inst.q(); ++t) {
            if (!x.fits_in(inst.bins[static_cast<std::size_t>(t - 1)].capacity)) continue;
            if (best_t == 0 || cost[static_cast<std::size_t>(t - 1)] < best) {
                best = cost[static_cast<std::size_t>(t - 1)];
                best_t = t;
            }
        }
        return best_t;
    }
};

} // namespace

PriceResult price_pattern(const Instance& raw, const std::vector<Rational>& duals) {
    Instance inst = normalize(raw);
    if (static_cast<int>(duals.size()) != inst.m())
        throw ValidationError("expected " + std::to_string(inst.m()) + " duals, got " +
                              std::to_string(duals.size()));
    OrderedIncarnations order = sort_items(inst);

    std::uint64_t den = 1;
    for (const auto& d : duals) {
        unsigned __int128 l = static_cast<unsigned __int128>(den) / std::gcd(den, d.den) * d.den;
        if (l > 1000000000000ULL) throw ValidationError("duals too precise to price exactly");
        den = static_cast<std::uint64_t>(l);
    }

    PriceDp dp{inst, order, {}, {}, {}};
    for (const auto& d : duals) {
        Scaled v = static_cast<Scaled>(d.num) * static_cast<Scaled>(den / d.den);
        dp.pi.push_back(d.negative ? -v : v);
    }
    for (const auto& b : inst.bins)
        dp.cost.push_back(static_cast<Scaled>(b.cost) * static_cast<Scaled>(den));

    WeightVec zero(static_cast<std::size_t>(inst.p), 0);
    Scaled value = dp.solve(zero, 1, 0);

    // traceback for the minimizing pattern
    Pattern pat;
    WeightVec x = zero;
    int k = 1, c = 0;
    int n = static_cast<int>(order.size());
    while (k <= n) {
        char choice = dp.memo.at({x, k, c}).second;
        if (choice == 'u') {
            const auto& oi = order[static_cast<std::size_t>(k - 1)];
            ++pat.uses[{oi.item, oi.inc}];
            x = x.plus(oi.weight);
            ++c;
        } else {
            ++k;
            c = 0;
        }
    }
    pat.bin = dp.base_bin(x);

    PriceResult out;
    Rational rc;
    rc.negative = value < 0;
    rc.num = value < 0 ? static_cast<unsigned __int128>(-value) : static_cast<unsigned __int128>(value);
    rc.den = den;
    rc.reduce();
    out.reduced_cost = rc;
    if (!pat.uses.empty()) out.pattern = pat;
    return out;
}

std::vector<Rational> parse_duals(const std::string& text, int m) {
    std::vector<Rational> duals(static_cast<std::size_t>(m));
    std::vector<bool> seen(static_cast<std::size_t>(m), false);
    std::istringstream in(text);
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string i_tok, v_tok, extra;
        if (!(ls >> i_tok)) continue;
        if (!(ls >> v_tok) || (ls >> extra))
            throw ParseError("duals line " + std::to_string(line_no) + ": expected 'i pi_i'");
        int i = 0;
        try {
            i = std::stoi(i_tok);
        } catch (const std::exception&) {
            throw ParseError("duals line " + std::to_string(line_no) + ": bad item index '" +
                             i_tok + "'");
        }
        if (i < 1 || i > m)
            throw ParseError("duals line " + std::to_string(line_no) + ": item " +
                             std::to_string(i) + " out of range");
        if (seen[static_cast<std::size_t>(i - 1)])
            throw ParseError("duals line " + std::to_string(line_no) + ": duplicate item " +
                             std::to_string(i));
        try {
            duals[static_cast<std::size_t>(i - 1)] = Rational::from_decimal_string(v_tok);
        } catch (const std::exception& e) {
            throw ParseError("duals line " + std::to_string(line_no) + ": " + e.what());
        }
        seen[static_cast<std::size_t>(i - 1)] = true;
    }
    for (int i = 1; i <= m; ++i)
        if (!seen[static_cast<std::size_t>(i - 1)])
            throw ParseError("missing dual for item " + std::to_string(i));
    return duals;
}

} // namespace arcflow::oracle
