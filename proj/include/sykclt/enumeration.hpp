#pragma once

// Exact sums over tuples (R_1, ..., R_k) in I_n^k grouped by which positions
// share a coupling. Tuples where some R appears once have zero expectation,
// so only set partitions of the positions without singleton blocks survive.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sykclt/clifford.hpp"

namespace sykclt {

/// A set partition of positions {0..k-1}; block_of[p] is the block of p.
struct PositionPartition {
    std::vector<int> block_of;
    int blocks = 0;

    std::vector<int> block_sizes() const;
    /// Block sizes restricted to positions in [begin, end).
    std::vector<int> block_sizes(int begin, int end) const;
};

/// All set partitions of {0..k-1} in which every block has at least two
/// positions, in restricted-growth-string order.
std::vector<PositionPartition> partitions_without_singletons(int k);

/// m (m-1) ... (m-blocks+1), saturating at UINT64_MAX.
std::uint64_t falling_factorial(std::uint64_t m, int blocks);

/// Exact accumulator for sums of values in {0, +-1, +-i}.
struct GaussianIntegerSum {
    std::int64_t re = 0;
    std::int64_t im = 0;

    void add(Phase p) {
        switch (p.exponent()) {
        case 0: ++re; break;
        case 1: ++im; break;
        case 2: --re; break;
        default: --im; break;
        }
    }
};

/// Visits every injective map blocks -> sets, writing the induced position
/// sequence into `tuple` before each call to visit(tuple).
template <typename Visit>
void for_each_injective_assignment(const PositionPartition& partition, std::span<const IndexSet> sets,
                                   std::vector<IndexSet>& tuple, Visit&& visit) {
    const int blocks = partition.blocks;
    std::vector<std::size_t> choice(static_cast<std::size_t>(blocks));
    std::vector<std::vector<std::size_t>> positions(static_cast<std::size_t>(blocks));
    for (std::size_t p = 0; p < partition.block_of.size(); ++p) positions[partition.block_of[p]].push_back(p);
    tuple.assign(partition.block_of.size(), IndexSet());

    auto recurse = [&](auto&& self, int block) -> void {
        if (block == blocks) {
            visit(std::as_const(tuple));
            return;
        }
        for (std::size_t s = 0; s < sets.size(); ++s) {
            bool taken = false;
            for (int prev = 0; prev < block && !taken; ++prev) taken = choice[prev] == s;
            if (taken) continue;
            choice[block] = s;
            for (std::size_t p : positions[block]) tuple[p] = sets[s];
            self(self, block + 1);
        }
    };
    recurse(recurse, 0);
}

} // namespace sykclt
