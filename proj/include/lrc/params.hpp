#pragma once

#include <cstdint>

#include "lrc/rational.hpp"

namespace lrc {

/// Exact rational constants derived from (alpha, epsilon, d):
/// K = (1+e)/(1-a), mu = (1-a)e/(2(1+e)), beta = mu/2, theta = mu/(1-mu).
struct RecoveryParams {
    Rat alpha;
    Rat epsilon;
    std::size_t d = 0;
    Rat K;
    Rat mu;
    Rat beta;
    Rat theta;
};

RecoveryParams derive_params(const Rat& alpha, const Rat& epsilon, std::size_t d);

/// Lambda(b) = max{1, ln b * ln ln(4b)}, b >= 2. Nondecreasing.
double lambda_fn(double b);

/// T(s) = ceil((4 ln s / beta)(ln ln(4s) + ln(2d) + 1)), s >= 2.
std::uint64_t tree_budget(std::uint64_t s, const Rat& beta, std::size_t d);

struct CgrResult {
    std::uint64_t value = 0;      // max(d, ceil(max ratio))
    std::uint64_t argmax_s = 0;
    double max_ratio = 0.0;
    bool tail_decreasing = false; // ratio nonincreasing over the scan's final decade
};

/// Numerical scan for the smallest constant with d*T(s) <= C_gr * Lambda(s)
/// over s in [2, s_max].
CgrResult cgr_estimate(const Rat& beta, std::size_t d, std::uint64_t s_max = 1'000'000);

/// Plan for the fixed-dimension regime: delta = c/C_gr,
/// B_N = ceil(K * 2^(delta*N/ln N)) + 1, f(N) = ceil(2d B_N^2 (B_N^2 N)^(d B_N) / eps).
/// The power 2^x is evaluated with long-double mantissa precision; the rest is
/// exact big-integer arithmetic.
struct MainThmPlan {
    RecoveryParams params;
    std::uint64_t C_gr = 0;
    double C0 = 0.0;       // scanned substitute for the Lambda-growth constant
    double c = 0.0;        // free constant, defaults to min(1, theta/(2 C0))
    double delta = 0.0;    // c / C_gr
    std::uint64_t n0 = 0;  // smallest N with N >= (C_gr/theta) Lambda(B_N) onward
    std::uint64_t scan_cap = 0;

    Big B_of(std::uint64_t N) const;
    Big f_of(std::uint64_t N) const;
};

/// c_opt <= 0 selects the default c. Throws BudgetError("ScanFailed") if no
/// admissible n0 exists within scan_cap.
MainThmPlan main_thm_plan(const Rat& alpha, const Rat& epsilon, std::size_t d,
                          double c_opt = 0.0, std::uint64_t s_max = 1'000'000,
                          std::uint64_t scan_cap = 200'000);

/// Lower-bound construction constants: T = floor(K)+3 (smallest integer
/// > K+2), delta = log2 T, f(n) = ceil(max{T^n, 2^(2n+2)(K+1)}).
struct LowerBoundParams {
    Rat K;
    std::uint64_t T = 0;
    double delta = 0.0;
    Big f;
};

LowerBoundParams lower_bound_params(const Rat& alpha, const Rat& epsilon, std::uint64_t n);

} // namespace lrc
