#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arcflow/builder.hpp"
#include "arcflow/graph.hpp"
#include "arcflow/instance.hpp"
#include "arcflow/miplite.hpp"
#include "arcflow/postprocess.hpp"

namespace arcflow {

// Cross-checks between the builder, the models, the mini-solver and the
// brute-force oracle; the CLI's verify command and the acceptance suite both
// run these.
struct VerifyReport {
    struct Check {
        std::string name;
        bool pass = true;
        std::string detail; // first failure
    };
    std::vector<Check> checks;
    bool all_pass() const;
    Check& named(const std::string& name);
};

// item multisets over all directed paths leaving the source of a targetless
// graph; the compression-safety check compares these before/after Algorithm 2
std::set<std::map<std::pair<int, int>, std::int64_t>> pregraph_path_multisets(
    const PreGraph& g, std::int64_t max_steps = 1000000);

// Label merging during compression can splice same-item chains together, so
// raw path content exceeds the demand bounds while staying capacity-valid.
// Equivalence checks therefore compare demand-capped content: patterns whose
// per-item totals stay within b_i, aggregated at item granularity.
std::set<std::pair<int, std::map<int, std::int64_t>>> demand_capped_aggregate(
    const PatternSet& ps, const Instance& inst);

// per-incarnation demand filter for targetless path multisets
std::set<std::map<std::pair<int, int>, std::int64_t>> demand_capped_multisets(
    const std::set<std::map<std::pair<int, int>, std::int64_t>>& msets, const Instance& inst);

// Runs pattern equivalence, LP bound equality, IP-vs-oracle and compression
// safety on one instance, appending to `report`.
void verify_instance(const Instance& inst, VerifyReport& report, const std::string& tag,
                     const MipliteOptions& solver_opts = {}, const BuildOptions& build_opts = {});

} // namespace arcflow
