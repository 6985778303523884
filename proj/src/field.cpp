#include "lrc/field.hpp"

#include <string>

namespace lrc {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (e) {
        if (e & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return r;
}

} // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (const std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                                  23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (const std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                                  23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

FieldCtx::FieldCtx(std::uint64_t p) : p_(p) {
    if (p >= (1ull << 62))
        throw InputError("FieldCtx: p must be < 2^62, got " + std::to_string(p));
    if (!is_prime_u64(p))
        throw InputError("FieldCtx: p is not prime: " + std::to_string(p));
}

Fe FieldCtx::pow(Fe base, std::uint64_t e) const { return powmod(base, e, p_); }

Fe FieldCtx::inv(Fe a) const {
    if (a == 0) throw InputError("DivisionByZero: inverse of 0 mod p");
    return powmod(a, p_ - 2, p_);
}

} // namespace lrc
