#include "sykclt/pair_partition.hpp"

#include <algorithm>

#include "sykclt/errors.hpp"

namespace sykclt {

PairPartition::PairPartition(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
    const int k = order();
    std::vector<bool> seen(static_cast<std::size_t>(k) + 1, false);
    for (auto& [a, b] : blocks_) {
        if (a > b) std::swap(a, b);
        if (a < 1 || b > k || a == b || seen[a] || seen[b]) {
            throw ArgumentError("pair partition blocks must partition {1.." + std::to_string(k) + "} into pairs");
        }
        seen[a] = seen[b] = true;
    }
    std::sort(blocks_.begin(), blocks_.end());
}

std::vector<int> PairPartition::labels() const {
    std::vector<int> out(static_cast<std::size_t>(order()));
    for (std::size_t r = 0; r < blocks_.size(); ++r) {
        out[blocks_[r].first - 1] = static_cast<int>(r);
        out[blocks_[r].second - 1] = static_cast<int>(r);
    }
    return out;
}

std::vector<std::pair<int, int>> PairPartition::crossings() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t r = 0; r < blocks_.size(); ++r) {
        for (std::size_t s = r + 1; s < blocks_.size(); ++s) {
            // blocks are sorted by opener, so blocks_[r].first < blocks_[s].first
            const auto [a, c] = blocks_[r];
            const auto [b, d] = blocks_[s];
            if (a < b && b < c && c < d) out.emplace_back(static_cast<int>(r), static_cast<int>(s));
        }
    }
    return out;
}

} // namespace sykclt
