#pragma once

#include <cstdint>
#include <random>

namespace sykclt {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Independent generator for (master seed, stream id). Streams depend only on
/// the pair, never on scheduling order.
inline Rng substream(std::uint64_t master_seed, std::uint64_t stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(mix64(master_seed)), static_cast<std::uint32_t>(mix64(master_seed) >> 32),
                      static_cast<std::uint32_t>(mix64(stream_id ^ 0xd1b54a32d192ed03ULL)),
                      static_cast<std::uint32_t>(mix64(stream_id ^ 0xd1b54a32d192ed03ULL) >> 32)};
    return Rng(seq);
}

} // namespace sykclt
