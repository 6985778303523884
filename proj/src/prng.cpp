#include "lrc/prng.hpp"

#include <algorithm>
#include <stdexcept>

namespace lrc {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kBump0 = 0x9E3779B9u;
constexpr std::uint32_t kBump1 = 0xBB67AE85u;

inline void round_once(std::array<std::uint32_t, 4>& x, const std::array<std::uint32_t, 2>& k) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * x[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * x[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    x = {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
}

} // namespace

std::array<std::uint32_t, 4> RngStream::philox_block(std::array<std::uint32_t, 4> ctr,
                                                     std::array<std::uint32_t, 2> key) {
    for (int r = 0; r < 10; ++r) {
        round_once(ctr, key);
        key[0] += kBump0;
        key[1] += kBump1;
    }
    return ctr;
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (const char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t key, std::uint64_t nonce)
    : key_{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)},
      nonce_{static_cast<std::uint32_t>(nonce), static_cast<std::uint32_t>(nonce >> 32)} {}

RngStream RngStream::derive(std::uint64_t seed, std::string_view label, std::uint64_t index) {
    const std::uint64_t key = splitmix64(seed ^ fnv1a64(label));
    const std::uint64_t nonce = splitmix64(key + 0x9E3779B97F4A7C15ull * (index + 1));
    return RngStream(key, nonce);
}

void RngStream::refill() {
    const std::array<std::uint32_t, 4> ctr = {static_cast<std::uint32_t>(block_),
                                              static_cast<std::uint32_t>(block_ >> 32),
                                              nonce_[0], nonce_[1]};
    buf_ = philox_block(ctr, key_);
    ++block_;
    avail_ = 4;
}

std::uint64_t RngStream::next_u64() {
    if (avail_ < 2) refill();
    const std::uint64_t lo = buf_[4 - avail_];
    const std::uint64_t hi = buf_[5 - avail_];
    avail_ -= 2;
    return lo | (hi << 32);
}

std::uint64_t RngStream::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("RngStream::below: zero bound");
    const std::uint64_t lim = (-bound) % bound; // 2^64 mod bound
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x < lim);
    return x % bound;
}

std::vector<std::size_t> RngStream::sample_subset(std::size_t n, std::size_t k) {
    if (k > n) throw std::invalid_argument("sample_subset: k > n");
    // Partial Fisher-Yates over an index vector.
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(below(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

} // namespace lrc
