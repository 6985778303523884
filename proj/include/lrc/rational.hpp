#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "lrc/errors.hpp"

namespace lrc {

using Big = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Parse "a/b" (or a plain integer "a") into an exact rational.
/// Decimal notation is rejected: derived constants must stay exact.
inline Rat parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
                s.find('E') != std::string::npos)
                throw InputError("rational must be \"a/b\" or an integer, got: " + s);
            return Rat(Big(s));
        }
        const Big num(s.substr(0, slash));
        const Big den(s.substr(slash + 1));
        if (den == 0) throw InputError("rational with zero denominator: " + s);
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        throw InputError("cannot parse rational: " + s);
    }
}

inline std::string format_rational(const Rat& r) {
    const Big num = boost::multiprecision::numerator(r);
    const Big den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline Big floor_rat(const Rat& r) {
    const Big num = boost::multiprecision::numerator(r);
    const Big den = boost::multiprecision::denominator(r);
    Big q = num / den;
    if (num < 0 && q * den != num) --q;
    return q;
}

inline Big ceil_rat(const Rat& r) { return -floor_rat(-r); }

/// floor(r * n) for nonnegative r, exact.
inline std::uint64_t floor_mul(const Rat& r, std::uint64_t n) {
    const Big v = floor_rat(r * Rat(n));
    if (v < 0) throw InputError("floor_mul: negative result");
    return static_cast<std::uint64_t>(v);
}

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

} // namespace lrc
