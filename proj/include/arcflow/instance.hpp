#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "arcflow/rational.hpp"

namespace arcflow {

// Raised on malformed instance text; message carries token index and line.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Capacity-units vector, one entry per dimension.
struct WeightVec {
    std::vector<std::int64_t> c;

    WeightVec() = default;
    explicit WeightVec(std::size_t p, std::int64_t fill = 0) : c(p, fill) {}
    WeightVec(std::initializer_list<std::int64_t> init) : c(init) {}

    std::size_t dims() const { return c.size(); }
    std::int64_t& operator[](std::size_t d) { return c[d]; }
    std::int64_t operator[](std::size_t d) const { return c[d]; }

    bool operator==(const WeightVec& o) const { return c == o.c; }
    bool operator!=(const WeightVec& o) const { return c != o.c; }
    // lexicographic; used for deterministic tie-breaks and node ordering
    bool operator<(const WeightVec& o) const { return c < o.c; }

    // coordinate-wise comparison (partial order)
    bool fits_in(const WeightVec& cap) const {
        for (std::size_t d = 0; d < c.size(); ++d)
            if (c[d] > cap.c[d]) return false;
        return true;
    }
    bool is_zero() const {
        for (auto v : c)
            if (v != 0) return false;
        return true;
    }
    WeightVec plus(const WeightVec& o) const {
        WeightVec r = *this;
        for (std::size_t d = 0; d < c.size(); ++d) r.c[d] += o.c[d];
        return r;
    }
    std::string to_string(char sep = ',') const;
};

struct BinType {
    WeightVec capacity;
    std::int64_t cost = 1;
};

struct ItemType {
    std::int64_t demand = 1;
    // indexed by original 1-based j via incarnation_j; holes appear after
    // normalization removes infeasible or duplicate incarnations
    std::vector<WeightVec> incarnations;
    std::vector<int> incarnation_j; // original j of each retained incarnation
};

struct Instance {
    int p = 0; // dimensions
    std::vector<BinType> bins;
    std::vector<ItemType> items;

    int q() const { return static_cast<int>(bins.size()); }
    int m() const { return static_cast<int>(items.size()); }
    std::int64_t total_demand() const; // b0

    // per-dimension max over bin capacities (the Definition-1 denominators)
    WeightVec max_capacity() const;

    // structural checks shared by the parsers and programmatic construction
    void validate() const;
};

// One incarnation reference with its ordering key; item/inc are 1-based.
struct OrderedIncarnation {
    int item = 0; // i
    int inc = 0;  // j
    WeightVec weight;
    std::int64_t demand = 0; // b_i, shared by all incarnations of the item
    Rational alpha;          // sum of normalized weights, exact
};

using OrderedIncarnations = std::vector<OrderedIncarnation>;

struct Diagnostics {
    std::vector<std::string> messages;
};

// .mvp stream: p q, then q x (p capacities, cost), then m, then per item
// b_i J_i and J_i weight vectors. '#' starts a line comment.
Instance parse_mvp(std::istream& in);
Instance parse_mvp(const std::string& text);

// .vbp stream: p, p capacities, m, then per item p weights and b_i.
// One bin type of cost 1, single-incarnation items.
Instance parse_vbp(std::istream& in);
Instance parse_vbp(const std::string& text);

// Drops incarnations that fit no bin and duplicate incarnations within an
// item (keeping the lowest j). Errors if an item loses every incarnation.
Instance normalize(const Instance& inst, Diagnostics* diag = nullptr);

// Definition-1 order: non-increasing alpha, then decreasing lexicographic
// weight, then ascending (i, j). Requires a normalized instance.
OrderedIncarnations sort_items(const Instance& inst);
// Same order, but alpha denominators taken from `global_max` (used when
// ordering a per-bin-type sub-instance consistently with the full one).
OrderedIncarnations sort_items(const Instance& inst, const WeightVec& global_max);

// Canonical .mvp text; parse(to_canonical_mvp(inst)) reproduces inst.
std::string to_canonical_mvp(const Instance& inst);

// Weight of incarnation j of item i (both 1-based; j is the original index,
// which normalization preserves). Throws on unknown references.
const WeightVec& incarnation_weight(const Instance& inst, int i, int j);

} // namespace arcflow
