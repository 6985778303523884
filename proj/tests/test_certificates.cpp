#include "doctest.h"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "lrc/certificates.hpp"

using namespace lrc;

namespace {

/// Independent enumerator for d=1: every (w-1)-subset of all possible colored
/// edges on [0,w) that forms a spanning tree, deduplicated canonically.
std::set<std::vector<ColoredEdge>> brute_force_colored_trees(std::size_t w, std::size_t m) {
    std::vector<ColoredEdge> all;
    for (std::size_t u = 0; u < w; ++u)
        for (std::size_t v = u + 1; v < w; ++v)
            for (std::size_t c = 0; c < m; ++c) all.push_back({u, v, c});
    std::set<std::vector<ColoredEdge>> trees;
    std::vector<std::size_t> comb(w - 1);
    for (std::size_t i = 0; i + 1 < w; ++i) comb[i] = i;
    const std::size_t k = w - 1;
    for (;;) {
        std::vector<ColoredEdge> cand;
        for (const std::size_t i : comb) cand.push_back(all[i]);
        // spanning tree check: connected, no parallel duplicates counted twice
        std::vector<std::size_t> parent(w);
        for (std::size_t i = 0; i < w; ++i) parent[i] = i;
        const std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        bool acyclic = true;
        for (const ColoredEdge& e : cand) {
            const std::size_t a = find(e.u), b = find(e.v);
            if (a == b) {
                acyclic = false;
                break;
            }
            parent[a] = b;
        }
        if (acyclic) {
            std::sort(cand.begin(), cand.end());
            trees.insert(cand);
        }
        // next combination
        bool moved = false;
        for (std::size_t i = k; i-- > 0;) {
            if (comb[i] + (k - i) < all.size()) {
                ++comb[i];
                for (std::size_t t = i + 1; t < k; ++t) comb[t] = comb[t - 1] + 1;
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    return trees;
}

std::vector<TreeCertificate> collect_certificates(std::size_t B, std::size_t m,
                                                  std::size_t d) {
    std::vector<TreeCertificate> out;
    enumerate_certificates(B, m, d, Big(1'000'000), [&](const TreeCertificate& c) {
        out.push_back(c);
        return true;
    });
    return out;
}

} // namespace

TEST_CASE("certificate validation") {
    CHECK_THROWS_AS(make_certificate(3, {{{0, 1, 0}}}), InputError); // too few edges
    CHECK_THROWS_AS(make_certificate(3, {{{0, 1, 0}, {0, 1, 1}}}),
                    InputError); // parallel edges never span
    CHECK_THROWS_AS(
        make_certificate(2, {{{0, 1, 0}}, {{0, 1, 0}}}),
        InputError); // shared color between trees
    const TreeCertificate ok = make_certificate(3, {{{1, 0, 2}, {1, 2, 2}}});
    CHECK(ok.trees[0][0].u == 0); // canonical orientation
}

TEST_CASE("R matrix examples") {
    const FieldCtx f(101);
    // w=2, d=1, one edge of color 0: R = [a_{0,0}]
    const TreeCertificate single = make_certificate(2, {{{0, 1, 0}}});
    CoefficientArray coeffs(1, 1);
    coeffs.at(0, 0) = 7;
    const Matrix R = build_R_matrix(single, coeffs, f);
    CHECK(R.rows == 1);
    CHECK(R.at(0, 0) == 7);
    CHECK(eval_certificate(single, coeffs, f) == 7);

    // w=3, d=1, path with both edges color 0 and a_{0,0} = 1: det = +-1
    const TreeCertificate path = make_certificate(3, {{{0, 1, 0}, {1, 2, 0}}});
    CoefficientArray unit(1, 1);
    unit.at(0, 0) = 1;
    const Fe det = eval_certificate(path, unit, f);
    CHECK((det == 1 || det == f.p() - 1));

    // row count is always d(w-1)
    const TreeCertificate two =
        make_certificate(3, {{{0, 1, 0}, {0, 2, 0}}, {{0, 1, 1}, {1, 2, 1}}});
    CoefficientArray c2(2, 2);
    CHECK(build_R_matrix(two, c2, f).rows == 4);

    CoefficientArray too_small(1, 2);
    CHECK_THROWS_AS(build_R_matrix(two, too_small, f), InputError);
}

TEST_CASE("specialization determinant is a unit") {
    const FieldCtx f(101);
    const TreeCertificate single = make_certificate(4, {{{0, 1, 0}, {1, 2, 0}, {1, 3, 0}}});
    Fe s = specialization_sanity(single, f);
    CHECK((s == 1 || s == 100));

    // d=2: two stars, parallel edges separated by color
    const TreeCertificate stars =
        make_certificate(3, {{{0, 1, 0}, {0, 2, 0}}, {{0, 1, 1}, {1, 2, 1}}});
    s = specialization_sanity(stars, f);
    CHECK((s == 1 || s == 100));
}

TEST_CASE("specialization is a unit on random certificates") {
    const FieldCtx f(101);
    RngStream rng = RngStream::derive(55, "test/spec-random");
    for (int i = 0; i < 100; ++i) {
        const std::size_t d = 1 + rng.below(3);
        const std::size_t m = d + rng.below(10 - d + 1);
        const TreeCertificate cert = random_certificate(6, m, d, rng);
        const Fe s = specialization_sanity(cert, f);
        CHECK((s == 1 || s == f.p() - 1));
    }
}

TEST_CASE("eval at zero coefficients vanishes; random large-p evals do not") {
    const FieldCtx f(1'000'000'007ull);
    RngStream rng = RngStream::derive(56, "test/eval-random");
    std::size_t zeros = 0;
    for (int i = 0; i < 500; ++i) {
        const std::size_t d = 1 + rng.below(3);
        const std::size_t m = d + rng.below(8);
        const TreeCertificate cert = random_certificate(6, m, d, rng);
        CoefficientArray zero(m, d);
        CHECK(eval_certificate(cert, zero, f) == 0);
        CoefficientArray coeffs(m, d);
        for (Fe& v : coeffs.a) v = rng.below(f.p());
        if (eval_certificate(cert, coeffs, f) == 0) ++zeros;
    }
    CHECK(zeros == 0); // vanishing probability <= dB/p ~ 1.8e-8 per draw
}

TEST_CASE("certificate enumeration counts") {
    CHECK(collect_certificates(2, 1, 1).size() == 1);
    CHECK(collect_certificates(2, 3, 1).size() == 3);
    CHECK(certificate_count(2, 1, 1) == 1);
    CHECK(certificate_count(2, 3, 1) == 3);
    CHECK(certificate_count(3, 2, 1) == 14);

    // against the independent subset-based enumerator
    for (const std::size_t m : {1ul, 2ul, 3ul}) {
        std::size_t brute_count = 0;
        for (std::size_t w = 2; w <= 3; ++w)
            brute_count += brute_force_colored_trees(w, m).size();
        CHECK(collect_certificates(3, m, 1).size() == brute_count);
        CHECK(certificate_count(3, m, 1) == brute_count);
    }

    // enumeration agrees with the closed count for d=2 as well
    CHECK(collect_certificates(3, 2, 2).size() ==
          certificate_count(3, 2, 2).convert_to<std::size_t>());
    CHECK(collect_certificates(3, 4, 2).size() ==
          certificate_count(3, 4, 2).convert_to<std::size_t>());

    // certificates are canonical and duplicate-free
    const auto certs = collect_certificates(3, 3, 1);
    std::set<std::vector<std::vector<ColoredEdge>>> seen;
    for (const TreeCertificate& c : certs) seen.insert(c.trees);
    CHECK(seen.size() == certs.size());
}

TEST_CASE("enumeration budget") {
    CHECK_THROWS_AS(enumerate_certificates(7, 2, 1, Big(1000),
                                           [](const TreeCertificate&) { return true; }),
                    BudgetError);
}

TEST_CASE("goodness examples") {
    const FieldCtx f(101);
    // d=1, B=2, m=1: good iff the single coefficient is nonzero
    CoefficientArray a(1, 1);
    a.at(0, 0) = 5;
    CHECK(check_good_up_to_B(a, 2, f, Big(100)).good);
    a.at(0, 0) = 0;
    const GoodnessResult bad = check_good_up_to_B(a, 2, f, Big(100));
    CHECK_FALSE(bad.good);
    REQUIRE(bad.first_failing.has_value());

    // two zero rows: the certificate on those colors has a zero matrix
    CoefficientArray zz(2, 1);
    CHECK_FALSE(check_good_up_to_B(zz, 2, f, Big(100)).good);
}

TEST_CASE("goodness nests downward in B") {
    const FieldCtx f(101);
    RngStream rng = RngStream::derive(57, "test/nesting");
    for (int i = 0; i < 30; ++i) {
        CoefficientArray coeffs(3, 1);
        for (Fe& v : coeffs.a) v = rng.below(101);
        const bool up4 = check_good_up_to_B(coeffs, 4, f, Big(100'000)).good;
        const bool up3 = check_good_up_to_B(coeffs, 3, f, Big(100'000)).good;
        const bool up2 = check_good_up_to_B(coeffs, 2, f, Big(100'000)).good;
        if (up4) CHECK(up3);
        if (up3) CHECK(up2);
    }
}

TEST_CASE("collapse points") {
    const FieldCtx f(101);
    const TreeCertificate path = make_certificate(3, {{{0, 1, 0}, {1, 2, 1}}});
    CoefficientArray coeffs(2, 1);
    coeffs.at(0, 0) = 3;
    coeffs.at(1, 0) = 4;
    REQUIRE(eval_certificate(path, coeffs, f) != 0);

    // equal points: consistent and forced
    const CollapseResult eq = collapse_points(path, coeffs, {{7}, {7}, {7}}, f);
    CHECK(eq.consistent);
    CHECK(eq.forced_equal);

    // distinct points with a nonzero determinant: never consistent
    const CollapseResult ne = collapse_points(path, coeffs, {{1}, {2}, {3}}, f);
    CHECK_FALSE(ne.consistent);
    CHECK_FALSE(ne.forced_equal);

    // a vanishing determinant admits nontrivial consistent assignments
    CoefficientArray zeros(2, 1);
    REQUIRE(eval_certificate(path, zeros, f) == 0);
    const CollapseResult z = collapse_points(path, zeros, {{1}, {2}, {3}}, f);
    CHECK(z.consistent);
    CHECK_FALSE(z.forced_equal);
}

TEST_CASE("determinant magnitude is orientation and order invariant") {
    const FieldCtx f(101);
    RngStream rng = RngStream::derive(58, "test/sign");
    for (int i = 0; i < 30; ++i) {
        const std::size_t d = 1 + rng.below(2);
        const TreeCertificate cert = random_certificate(5, 2 * d, d, rng);
        CoefficientArray coeffs(2 * d, d);
        for (Fe& v : coeffs.a) v = rng.below(101);
        Matrix R = build_R_matrix(cert, coeffs, f);
        const Fe ref = det_mod_p(R, f);
        // flip one row's orientation: negate the row
        for (std::size_t c = 0; c < R.cols; ++c) R.at(0, c) = f.neg(R.at(0, c));
        const Fe flipped = det_mod_p(R, f);
        CHECK((flipped == f.neg(ref)));
        // swap two rows: sign change only
        if (R.rows >= 2) {
            for (std::size_t c = 0; c < R.cols; ++c) std::swap(R.a[c], R.a[R.cols + c]);
            const Fe swapped = det_mod_p(R, f);
            CHECK((swapped == ref || swapped == f.neg(ref)));
        }
    }
}

TEST_CASE("schwartz-zippel bound values") {
    CHECK(sz_failure_bound(2, 1, 1, 101) == Rat(64, 101));
    CHECK(sz_failure_bound(2, 1, 1, 101) >= 0);
    CHECK(sz_failure_bound(3, 4, 1, 101) > sz_failure_bound(3, 3, 1, 101));
    CHECK(sz_failure_bound(3, 4, 1, 101) == Rat(Big(419904), Big(101)));
}

TEST_CASE("sz experiment at p=2 matches the 1/2 frequency") {
    // B=2, m=1, d=1: the only certificate evaluates to a_{0,0}
    const SzReport rep = sz_experiment(2, 1, 1, 2, 400, 77, Big(100));
    CHECK(rep.frequency > 0.35);
    CHECK(rep.frequency < 0.65);
    const SzReport again = sz_experiment(2, 1, 1, 2, 400, 77, Big(100));
    CHECK(rep.failures == again.failures);
    CHECK(rep.wilson_low <= 0.5);
    CHECK(rep.wilson_high >= rep.wilson_low);
}
