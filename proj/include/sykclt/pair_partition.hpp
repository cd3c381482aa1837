#pragma once

#include <utility>
#include <vector>

namespace sykclt {

/// A perfect matching of the positions {1..k}. Blocks are stored with
/// first < second and sorted by first element, so block r is the r-th
/// block to open when scanning positions left to right.
class PairPartition {
public:
    using Block = std::pair<int, int>;

    PairPartition() = default;
    /// Validates and canonicalizes; throws ArgumentError on a malformed list.
    explicit PairPartition(std::vector<Block> blocks);

    const std::vector<Block>& blocks() const { return blocks_; }
    int order() const { return static_cast<int>(2 * blocks_.size()); }

    /// The 2-to-1 map from positions to block labels, 0-based on both sides.
    std::vector<int> labels() const;

    /// Block pairs {r, s} (r < s) with a < b < c < d, a,c in one block and
    /// b,d in the other.
    std::vector<std::pair<int, int>> crossings() const;

    friend bool operator==(const PairPartition&, const PairPartition&) = default;

private:
    std::vector<Block> blocks_;
};

} // namespace sykclt
