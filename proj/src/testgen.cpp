#include "arcflow/testgen.hpp"

#include <random>

namespace arcflow {

namespace {

// modulo draws keep the stream identical across standard libraries
std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

} // namespace

Instance random_instance(std::uint64_t seed, const GenParams& params) {
    std::mt19937_64 rng(seed * 2654435761ULL + 1);
    Instance inst;
    inst.p = static_cast<int>(draw(rng, 1, params.max_p));
    int q = static_cast<int>(draw(rng, 1, params.max_q));
    int m = static_cast<int>(draw(rng, 1, params.max_m));

    for (int t = 0; t < q; ++t) {
        BinType b;
        b.capacity = WeightVec(static_cast<std::size_t>(inst.p));
        for (int d = 0; d < inst.p; ++d)
            b.capacity[static_cast<std::size_t>(d)] = draw(rng, 0, params.max_capacity);
        bool positive = false;
        for (auto v : b.capacity.c)
            if (v > 0) positive = true;
        if (!positive)
            b.capacity[static_cast<std::size_t>(draw(rng, 0, inst.p - 1))] =
                draw(rng, 1, params.max_capacity);
        b.cost = draw(rng, 0, params.max_cost);
        inst.bins.push_back(std::move(b));
    }

    for (int i = 0; i < m; ++i) {
        ItemType it;
        it.demand = draw(rng, 1, params.max_demand);
        int ji = static_cast<int>(draw(rng, 1, params.max_incarnations));
        for (int j = 1; j <= ji; ++j) {
            // anchor each incarnation inside a random bin so it stays feasible
            const WeightVec& cap =
                inst.bins[static_cast<std::size_t>(draw(rng, 0, q - 1))].capacity;
            WeightVec w(static_cast<std::size_t>(inst.p));
            for (int d = 0; d < inst.p; ++d)
                w[static_cast<std::size_t>(d)] = draw(rng, 0, cap[static_cast<std::size_t>(d)]);
            if (w.is_zero()) {
                std::vector<int> dims;
                for (int d = 0; d < inst.p; ++d)
                    if (cap[static_cast<std::size_t>(d)] > 0) dims.push_back(d);
                int d = dims[static_cast<std::size_t>(draw(rng, 0, static_cast<int>(dims.size()) - 1))];
                w[static_cast<std::size_t>(d)] = draw(rng, 1, cap[static_cast<std::size_t>(d)]);
            }
            it.incarnations.push_back(std::move(w));
            it.incarnation_j.push_back(j);
        }
        inst.items.push_back(std::move(it));
    }
    inst.validate();
    return inst;
}

} // namespace arcflow
