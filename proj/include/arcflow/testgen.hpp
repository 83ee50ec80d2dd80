#pragma once

#include <cstdint>

#include "arcflow/instance.hpp"

namespace arcflow {

// Knobs for the seeded random instances driven by `verify --seeds` and the
// test suites. Defaults match the desk-scale verification envelope.
struct GenParams {
    int max_p = 3;
    int max_q = 3;
    int max_m = 5;
    int max_incarnations = 2;
    std::int64_t max_demand = 3;
    std::int64_t max_capacity = 12;
    std::int64_t max_cost = 5;
};

// Deterministic across platforms for a given seed; every item is feasible
// for at least one bin type and no incarnation is all-zero.
Instance random_instance(std::uint64_t seed, const GenParams& params = {});

} // namespace arcflow
