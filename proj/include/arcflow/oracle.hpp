#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arcflow/graph.hpp"
#include "arcflow/instance.hpp"
#include "arcflow/rational.hpp"

// Brute-force ground truth, deliberately sharing no code with the graph
// builder or the simplex: bounded backtracking for patterns, memoized search
// over demand vectors for the exact optimum, and the knapsack pricing
// recursion. Desk-scale only, guarded.
namespace arcflow::oracle {

// Every non-empty feasible filling of a type-t bin; each incarnation (i, j)
// used at most b_i times.
PatternSet enumerate_patterns(const Instance& inst, int t, std::int64_t max_patterns = 1000000);

struct CoveringResult {
    std::int64_t cost = 0;
    std::vector<std::pair<Pattern, std::int64_t>> packing;
};

// Exact minimum-cost covering of all demands (over-covering allowed).
CoveringResult solve_exact_covering(const Instance& inst, std::int64_t max_states = 1000000);

struct PriceResult {
    Rational reduced_cost;
    std::optional<Pattern> pattern; // none when the best column uses no items
};

// Most attractive column for duals pi (one per item type): the minimum of
// C_t - sum pi over all patterns, computed by the dynamic programming
// recursion over (used capacity, level, copies) in exact arithmetic.
PriceResult price_pattern(const Instance& inst, const std::vector<Rational>& duals);

// Duals file: one "i pi_i" line per item, decimal values, '#' comments.
std::vector<Rational> parse_duals(const std::string& text, int m);

} // namespace arcflow::oracle
