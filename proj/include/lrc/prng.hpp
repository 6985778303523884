#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

namespace lrc {

/// Counter-based deterministic PRNG: Philox4x32-10 (Salmon et al., SC'11).
///
/// Stream-splitting scheme (the only source of randomness in the toolkit):
/// every consumer derives an independent stream from the single run seed as
///
///   h     = fnv1a64(label)                      // label: "subcommand/purpose"
///   key   = splitmix64(seed ^ h)
///   nonce = splitmix64(key + GOLDEN * (index + 1))
///
/// with GOLDEN = 0x9E3779B97F4A7C15. The Philox key is the two 32-bit halves
/// of `key`; counter words 2..3 are the halves of `nonce`; counter words 0..1
/// run over the 64-bit block index. Identical (seed, label, index) triples
/// always reproduce the same stream.
class RngStream {
public:
    RngStream(std::uint64_t key, std::uint64_t nonce);

    static RngStream derive(std::uint64_t seed, std::string_view label,
                            std::uint64_t index = 0);

    std::uint64_t next_u64();

    /// Uniform in [0, bound), bound > 0. Unbiased (rejection sampling).
    std::uint64_t below(std::uint64_t bound);

    /// Uniform k-subset of [0, n), sorted. k <= n.
    std::vector<std::size_t> sample_subset(std::size_t n, std::size_t k);

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }

    /// One raw Philox4x32-10 block (exposed for known-answer tests).
    static std::array<std::uint32_t, 4> philox_block(std::array<std::uint32_t, 4> ctr,
                                                     std::array<std::uint32_t, 2> key);

private:
    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 2> nonce_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int avail_ = 0;

    void refill();
};

std::uint64_t fnv1a64(std::string_view s);
std::uint64_t splitmix64(std::uint64_t x);

} // namespace lrc
