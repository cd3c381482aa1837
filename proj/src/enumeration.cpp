#include "sykclt/enumeration.hpp"

#include <limits>

namespace sykclt {

std::vector<int> PositionPartition::block_sizes() const {
    return block_sizes(0, static_cast<int>(block_of.size()));
}

std::vector<int> PositionPartition::block_sizes(int begin, int end) const {
    std::vector<int> sizes(static_cast<std::size_t>(blocks), 0);
    for (int p = begin; p < end; ++p) ++sizes[block_of[p]];
    return sizes;
}

std::vector<PositionPartition> partitions_without_singletons(int k) {
    std::vector<PositionPartition> out;
    if (k < 0) return out;
    std::vector<int> rgs(static_cast<std::size_t>(k), 0);
    std::vector<int> sizes;

    auto recurse = [&](auto&& self, int pos, int blocks) -> void {
        if (pos == k) {
            for (int s : sizes) {
                if (s < 2) return;
            }
            out.push_back(PositionPartition{rgs, blocks});
            return;
        }
        // prune: open singletons must still be fillable by remaining positions
        int deficit = 0;
        for (int s : sizes) deficit += s < 2 ? 2 - s : 0;
        if (deficit > k - pos) return;
        for (int b = 0; b <= blocks; ++b) {
            rgs[pos] = b;
            if (b == blocks) sizes.push_back(0);
            ++sizes[b];
            self(self, pos + 1, b == blocks ? blocks + 1 : blocks);
            --sizes[b];
            if (b == blocks) sizes.pop_back();
        }
    };
    recurse(recurse, 0, 0);
    return out;
}

std::uint64_t falling_factorial(std::uint64_t m, int blocks) {
    constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t out = 1;
    for (int i = 0; i < blocks; ++i) {
        if (static_cast<std::uint64_t>(i) >= m) return 0;
        const std::uint64_t factor = m - static_cast<std::uint64_t>(i);
        if (out > cap / factor) return cap;
        out *= factor;
    }
    return out;
}

} // namespace sykclt
