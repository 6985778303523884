#include "lrc/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace lrc {

RecoveryParams derive_params(const Rat& alpha, const Rat& epsilon, std::size_t d) {
    if (alpha <= 0 || alpha >= 1 || epsilon <= 0 || epsilon >= 1)
        throw InputError("OutOfRange: alpha and epsilon must lie in the open interval (0,1)");
    if (d == 0) throw InputError("OutOfRange: d >= 1 required");
    RecoveryParams p;
    p.alpha = alpha;
    p.epsilon = epsilon;
    p.d = d;
    p.K = (1 + epsilon) / (1 - alpha);
    p.mu = (1 - alpha) * epsilon / (2 * (1 + epsilon));
    p.beta = p.mu / 2;
    p.theta = p.mu / (1 - p.mu);
    return p;
}

double lambda_fn(double b) {
    if (b < 2) throw InputError("OutOfRange: Lambda needs b >= 2");
    return std::max(1.0, std::log(b) * std::log(std::log(4.0 * b)));
}

std::uint64_t tree_budget(std::uint64_t s, const Rat& beta, std::size_t d) {
    if (s < 2) throw InputError("OutOfRange: tree_budget needs s >= 2");
    if (beta <= 0) throw InputError("OutOfRange: tree_budget needs beta > 0");
    if (d == 0) throw InputError("OutOfRange: tree_budget needs d >= 1");
    const double sb = static_cast<double>(s);
    const double val = (4.0 * std::log(sb) / to_double(beta)) *
                       (std::log(std::log(4.0 * sb)) + std::log(2.0 * d) + 1.0);
    return static_cast<std::uint64_t>(std::ceil(val));
}

CgrResult cgr_estimate(const Rat& beta, std::size_t d, std::uint64_t s_max) {
    if (s_max < 2) throw InputError("OutOfRange: cgr_estimate needs s_max >= 2");
    CgrResult res;
    for (std::uint64_t s = 2; s <= s_max; ++s) {
        const double ratio = static_cast<double>(d) *
                             static_cast<double>(tree_budget(s, beta, d)) /
                             lambda_fn(static_cast<double>(s));
        if (ratio > res.max_ratio) {
            res.max_ratio = ratio;
            res.argmax_s = s;
        }
    }
    const double ceiling = std::ceil(res.max_ratio);
    res.value = std::max<std::uint64_t>(d, static_cast<std::uint64_t>(ceiling));
    // tail diagnostic: ratio nonincreasing across the final decade of the scan
    res.tail_decreasing = true;
    const std::uint64_t tail_start = std::max<std::uint64_t>(2, s_max / 10);
    double prev = std::numeric_limits<double>::infinity();
    const std::uint64_t step = std::max<std::uint64_t>(1, (s_max - tail_start) / 64);
    for (std::uint64_t s = tail_start; s <= s_max; s += step) {
        const double ratio = static_cast<double>(d) *
                             static_cast<double>(tree_budget(s, beta, d)) /
                             lambda_fn(static_cast<double>(s));
        if (ratio > prev) res.tail_decreasing = false;
        prev = ratio;
    }
    return res;
}

namespace {

/// ceil(K * 2^x) + 1 with K exact rational and 2^x split into an exact power
/// of two times a long-double mantissa in [1, 2).
Big b_of_exponent(const Rat& K, double x) {
    const double fl = std::floor(x);
    const long double frac = std::exp2l(static_cast<long double>(x) - fl);
    // rationalize the mantissa at 18 significant digits
    const Big scale = Big(1'000'000'000'000'000'000ll);
    const Big mant = Big(static_cast<long long>(frac * 1e18L));
    Rat val = K * Rat(mant, scale);
    val *= Rat(Big(1) << static_cast<unsigned>(fl), 1);
    return ceil_rat(val) + 1;
}

Big pow_big(Big base, std::uint64_t e) {
    Big r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

} // namespace

Big MainThmPlan::B_of(std::uint64_t N) const {
    if (N < 2) throw InputError("OutOfRange: B_N needs N >= 2");
    const double x = delta * static_cast<double>(N) / std::log(static_cast<double>(N));
    return b_of_exponent(params.K, x);
}

Big MainThmPlan::f_of(std::uint64_t N) const {
    const Big B = B_of(N);
    if (B > 4096) throw BudgetError("BudgetExceeded: f(N) exponent d*B_N too large to materialize");
    const std::uint64_t Bu = static_cast<std::uint64_t>(B);
    const Big base = Big(Bu) * Bu * N;
    const Big power = pow_big(base, params.d * Bu);
    const Rat val = Rat(Big(2) * params.d * Bu * Bu * power, 1) / params.epsilon;
    return ceil_rat(val);
}

MainThmPlan main_thm_plan(const Rat& alpha, const Rat& epsilon, std::size_t d,
                          double c_opt, std::uint64_t s_max, std::uint64_t scan_cap) {
    MainThmPlan plan;
    plan.params = derive_params(alpha, epsilon, d);
    plan.C_gr = cgr_estimate(plan.params.beta, d, s_max).value;
    plan.scan_cap = scan_cap;

    // Provisional delta fixes the (x, N) range over which the Lambda-growth
    // constant C0 is scanned; the final delta then uses c <= theta/(2 C0).
    const double delta0 = 1.0 / static_cast<double>(plan.C_gr);
    double C0 = lambda_fn(static_cast<double>(b_of_exponent(plan.params.K, 0.0)));
    for (std::uint64_t N = 2; N <= scan_cap; N = N + 1 + N / 64) {
        const double x = delta0 * static_cast<double>(N) / std::log(static_cast<double>(N));
        const Big B = b_of_exponent(plan.params.K, x);
        const double lhs = lambda_fn(B.convert_to<double>());
        const double rhs = 1.0 + x * std::log(static_cast<double>(N));
        C0 = std::max(C0, lhs / rhs);
    }
    plan.C0 = C0;
    plan.c = (c_opt > 0.0 && c_opt <= 1.0)
                 ? c_opt
                 : std::min(1.0, to_double(plan.params.theta) / (2.0 * C0));
    plan.delta = plan.c / static_cast<double>(plan.C_gr);

    // n0: smallest N such that N' >= (C_gr/theta) * Lambda(B_{N'}) for every
    // scanned N' >= N.
    const double factor = static_cast<double>(plan.C_gr) / to_double(plan.params.theta);
    std::uint64_t n0 = 0;
    for (std::uint64_t N = scan_cap; N >= 2; --N) {
        const double need = factor * lambda_fn(plan.B_of(N).convert_to<double>());
        if (static_cast<double>(N) < need) break;
        n0 = N;
    }
    if (n0 == 0)
        throw BudgetError("ScanFailed: no admissible n0 within scan cap " +
                          std::to_string(scan_cap));
    plan.n0 = n0;
    return plan;
}

LowerBoundParams lower_bound_params(const Rat& alpha, const Rat& epsilon, std::uint64_t n) {
    if (alpha <= 0 || alpha >= 1 || epsilon <= 0 || epsilon >= 1)
        throw InputError("OutOfRange: alpha and epsilon must lie in the open interval (0,1)");
    if (n < 2) throw InputError("OutOfRange: lower_bound_params needs n >= 2");
    LowerBoundParams lb;
    lb.K = (1 + epsilon) / (1 - alpha);
    lb.T = static_cast<std::uint64_t>(floor_rat(lb.K)) + 3; // smallest integer > K+2
    lb.delta = std::log2(static_cast<double>(lb.T));
    const Big tn = pow_big(Big(lb.T), n);
    const Big other = ceil_rat((Big(1) << static_cast<unsigned>(2 * n + 2)) * (lb.K + 1));
    lb.f = tn > other ? tn : other;
    return lb;
}

} // namespace lrc
