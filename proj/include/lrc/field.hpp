#pragma once

#include <array>
#include <cstdint>

#include "lrc/errors.hpp"

namespace lrc {

/// Canonical residue in [0, p). All operations below keep this invariant.
using Fe = std::uint64_t;

/// Arithmetic context for F_p, p prime, 2 <= p < 2^62.
/// Products fit in 128-bit intermediates at this size. Immutable; safe to
/// share across threads.
class FieldCtx {
public:
    explicit FieldCtx(std::uint64_t p);

    std::uint64_t p() const { return p_; }

    Fe add(Fe a, Fe b) const {
        const Fe s = a + b; // no overflow: a, b < 2^62
        return s >= p_ ? s - p_ : s;
    }
    Fe sub(Fe a, Fe b) const { return a >= b ? a - b : a + p_ - b; }
    Fe neg(Fe a) const { return a == 0 ? 0 : p_ - a; }
    Fe mul(Fe a, Fe b) const {
        return static_cast<Fe>(static_cast<unsigned __int128>(a) * b % p_);
    }
    Fe pow(Fe base, std::uint64_t e) const;

    /// Multiplicative inverse; throws InputError("DivisionByZero") on 0.
    Fe inv(Fe a) const;

    /// Reduce an arbitrary signed integer to its canonical residue.
    Fe from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += static_cast<long long>(p_);
        return static_cast<Fe>(r);
    }

    bool operator==(const FieldCtx& o) const { return p_ == o.p_; }

private:
    std::uint64_t p_;
};

/// Deterministic Miller-Rabin, valid for all n < 2^64 with the fixed
/// witness set {2,3,5,7,11,13,17,19,23,29,31,37}.
bool is_prime_u64(std::uint64_t n);

} // namespace lrc
