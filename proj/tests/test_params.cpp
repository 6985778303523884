#include "doctest.h"

#include <cmath>

#include "lrc/params.hpp"

using namespace lrc;

TEST_CASE("derived constants at (1/2, 1/2)") {
    const RecoveryParams p = derive_params(Rat(1, 2), Rat(1, 2), 2);
    CHECK(p.K == Rat(3));
    CHECK(p.mu == Rat(1, 12));
    CHECK(p.beta == Rat(1, 24));
    CHECK(p.theta == Rat(1, 11));
}

TEST_CASE("derived constants stay exact at small epsilon") {
    const RecoveryParams p = derive_params(Rat(1, 2), Rat(1, 1000), 1);
    // K = (1001/1000) / (1/2) = 1001/500, so K - 1/(1-alpha) = 1/500 exactly
    CHECK(p.K - Rat(2) == Rat(1, 500));
}

TEST_CASE("parameter range errors") {
    CHECK_THROWS_AS(derive_params(Rat(0), Rat(1, 2), 1), InputError);
    CHECK_THROWS_AS(derive_params(Rat(1, 2), Rat(1), 1), InputError);
    CHECK_THROWS_AS(derive_params(Rat(1, 2), Rat(1, 2), 0), InputError);
    CHECK_THROWS_AS(lambda_fn(1.5), InputError);
    CHECK_THROWS_AS(tree_budget(1, Rat(1), 1), InputError);
}

TEST_CASE("Lambda values and monotonicity") {
    CHECK(lambda_fn(2) == 1.0); // ln2 * lnln8 = 0.5075 < 1, clamped
    CHECK(lambda_fn(100) == doctest::Approx(8.2448014217).epsilon(1e-9));
    double prev = lambda_fn(2);
    for (int b = 3; b <= 10'000; ++b) {
        const double cur = lambda_fn(b);
        CHECK(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("tree budget values and monotonicity") {
    CHECK(tree_budget(2, Rat(1), 1) == 7); // ceil(6.7242)
    std::uint64_t prev = tree_budget(2, Rat(1, 4), 2);
    for (std::uint64_t s = 3; s <= 10'000; s += 7) {
        const std::uint64_t cur = tree_budget(s, Rat(1, 4), 2);
        CHECK(cur >= prev);
        prev = cur;
    }
    // doubling d increases T(s) by at most ceil((4 ln s / beta) ln 2) + 1
    for (const std::uint64_t s : {2ull, 5ull, 17ull, 100ull, 4096ull}) {
        for (const std::size_t d : {1ul, 2ul, 3ul}) {
            const Rat beta(1, 4);
            const std::uint64_t bump = static_cast<std::uint64_t>(std::ceil(
                                           4.0 * std::log(static_cast<double>(s)) /
                                           to_double(beta) * std::log(2.0))) +
                                       1;
            CHECK(tree_budget(s, beta, 2 * d) - tree_budget(s, beta, d) <= bump);
        }
    }
}

TEST_CASE("C_gr scan") {
    const CgrResult c = cgr_estimate(Rat(1, 24), 2, 1'000'000);
    CHECK(c.value == 696); // the repo's reference constant for (beta=1/24, d=2)
    CHECK(c.argmax_s == 3);
    CHECK(c.tail_decreasing);
    CHECK(c.value >= 2); // >= d always

    // the ratio at s=2 is a lower bound on the result
    const double at2 = 2.0 * static_cast<double>(tree_budget(2, Rat(1, 24), 2)) / lambda_fn(2);
    CHECK(static_cast<double>(c.value) >= at2 - 1.0);

    CHECK(cgr_estimate(Rat(1, 4), 2, 1'000'000).value == 116);
}

TEST_CASE("main theorem plan at (1/2, 1/2, d=2)") {
    const MainThmPlan plan = main_thm_plan(Rat(1, 2), Rat(1, 2), 2);
    CHECK(plan.C_gr == 696);
    CHECK(plan.delta > 0);
    CHECK(plan.delta <= 1.0 / 696.0);

    // B_N >= K + 1 always (ceiling plus one)
    for (const std::uint64_t N : {2ull, 10ull, 100ull, 10'000ull})
        CHECK(Rat(plan.B_of(N)) >= plan.params.K + 1);

    // frozen exact values: B_20 = 5, f(20) = 200 * 500^10
    CHECK(plan.B_of(20) == 5);
    CHECK(plan.f_of(20) == Big("195312500000000000000000000000"));
    CHECK(plan.f_of(20) > Big("100000000000000000000")); // > 1e20

    // the hypothesis threshold holds from n0 onward on a sample of the scan
    const double factor = 696.0 / to_double(plan.params.theta);
    for (std::uint64_t N = plan.n0; N <= plan.scan_cap; N += 9973)
        CHECK(static_cast<double>(N) >=
              factor * lambda_fn(plan.B_of(N).convert_to<double>()));
    CHECK(plan.n0 >= 2);
}

TEST_CASE("f(N) is astronomically large for bigger K") {
    // K = 9 at (5/6, 1/2): B_20 = 11 and f(20) has 78 digits
    const MainThmPlan plan =
        main_thm_plan(Rat(5, 6), Rat(1, 2), 2, 0.0, 1'000'000, 350'000);
    CHECK(plan.B_of(20) == 11);
    Big bound = 1;
    for (int i = 0; i < 50; ++i) bound *= 10;
    CHECK(plan.f_of(20) > bound);
    CHECK(plan.f_of(20).str().size() == 78);
}

TEST_CASE("delta shrinks when C_gr grows at fixed c") {
    const MainThmPlan p1 = main_thm_plan(Rat(1, 2), Rat(1, 2), 1, 0.01);
    const MainThmPlan p2 = main_thm_plan(Rat(1, 2), Rat(1, 2), 2, 0.01);
    CHECK(p2.C_gr > p1.C_gr);
    CHECK(p2.delta < p1.delta);
}

TEST_CASE("inadmissibly large c fails the n0 scan") {
    // with c = 0.5 at d = 1 the threshold (C_gr/theta) Lambda(B_N) overtakes N
    // inside the scan window, so no admissible n0 exists
    CHECK_THROWS_AS(main_thm_plan(Rat(1, 2), Rat(1, 2), 1, 0.5), BudgetError);
}

TEST_CASE("lower bound parameters") {
    const LowerBoundParams lb = lower_bound_params(Rat(1, 2), Rat(1, 2), 3);
    CHECK(lb.K == Rat(3));
    CHECK(lb.T == 6);
    CHECK(lb.delta == doctest::Approx(2.5849625007).epsilon(1e-10));
    CHECK(lb.f == 1024); // max{6^3, 2^8 * 4}

    // T > K + 2 across the grid of ninths
    for (int a = 1; a <= 8; ++a)
        for (int e = 1; e <= 8; ++e) {
            const LowerBoundParams g = lower_bound_params(Rat(a, 9), Rat(e, 9), 4);
            CHECK(Rat(g.T) > g.K + 2);
        }
}

TEST_CASE("grid of ninths keeps theta and beta in range") {
    for (int a = 1; a <= 8; ++a)
        for (int e = 1; e <= 8; ++e) {
            const RecoveryParams p = derive_params(Rat(a, 9), Rat(e, 9), 2);
            CHECK(p.theta > 0);
            CHECK(p.theta < 1);
            CHECK(p.beta < Rat(1, 2));
            CHECK(p.mu > 0);
            CHECK(p.mu < 1);
        }
}
