#include "doctest.h"

#include <set>
#include <vector>

#include "lrc/code.hpp"
#include "lrc/json_io.hpp"

using namespace lrc;

TEST_CASE("sampling is seed-deterministic") {
    const FieldCtx f(7);
    const GeneratorMatrix a = sample_random_matrix(3, 2, f, 5);
    const GeneratorMatrix b = sample_random_matrix(3, 2, f, 5);
    CHECK(a.m == b.m);
    const GeneratorMatrix c = sample_random_matrix(3, 2, f, 6);
    CHECK(a.m != c.m);
}

TEST_CASE("bad dimensions are rejected") {
    const FieldCtx f(7);
    CHECK_THROWS_AS(sample_random_matrix(2, 3, f, 0), InputError);
    CHECK_THROWS_AS(sample_random_matrix(2, 0, f, 0), InputError);
}

TEST_CASE("entry frequencies within 5 sigma at p=5, n=d=1") {
    const FieldCtx f(5);
    std::vector<std::size_t> counts(5, 0);
    for (std::uint64_t seed = 0; seed < 10'000; ++seed)
        ++counts[sample_random_matrix(1, 1, f, seed).m.at(0, 0)];
    // sigma = sqrt(10^4 * (1/5)(4/5)) = 40
    for (const std::size_t c : counts) {
        CHECK(c >= 1800);
        CHECK(c <= 2200);
    }
}

TEST_CASE("full-rank conditioning at a 61-bit prime accepts the first sample") {
    const FieldCtx f((1ull << 61) - 1);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const FullRankResult r = condition_full_rank(4, 2, f, seed);
        CHECK(r.tries == 1); // failure probability ~ p^(d-n) = p^-2
        CHECK(mat_rank(r.g.m, f) == 2);
    }
}

TEST_CASE("full-rank conditioning is deterministic") {
    const FieldCtx f(101);
    const FullRankResult a = condition_full_rank(4, 2, f, 9);
    const FullRankResult b = condition_full_rank(4, 2, f, 9);
    CHECK(a.g.m == b.g.m);
    CHECK(a.tries == b.tries);
}

TEST_CASE("encode examples") {
    const FieldCtx f(7);
    Matrix col(3, 1);
    col.at(0, 0) = 1;
    col.at(1, 0) = 2;
    col.at(2, 0) = 3;
    const GeneratorMatrix g(f, 3, 1, col);
    CHECK(encode(g, {2}).coords == std::vector<Fe>{2, 4, 6});
    CHECK(encode(g, {0}).coords == std::vector<Fe>{0, 0, 0});
    CHECK_THROWS_AS(encode(g, {1, 2}), InputError);
}

TEST_CASE("encode is linear") {
    const FieldCtx f(101);
    const GeneratorMatrix g = condition_full_rank(5, 3, f, 11).g;
    RngStream rng = RngStream::derive(12, "test/linearity");
    for (int i = 0; i < 100; ++i) {
        Message a(3), b(3), sum(3);
        for (std::size_t j = 0; j < 3; ++j) {
            a[j] = rng.below(101);
            b[j] = rng.below(101);
            sum[j] = f.add(a[j], b[j]);
        }
        const auto ca = encode(g, a).coords, cb = encode(g, b).coords;
        const auto cs = encode(g, sum).coords;
        for (std::size_t j = 0; j < 5; ++j) CHECK(cs[j] == f.add(ca[j], cb[j]));
    }
}

TEST_CASE("full-rank encoding is injective, exhaustively at p=5, d=2, n=3") {
    const FieldCtx f(5);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const GeneratorMatrix g = condition_full_rank(3, 2, f, seed).g;
        std::set<std::vector<Fe>> images;
        enumerate_messages(g, 100, [&](const Message& t) {
            images.insert(encode(g, t).coords);
            return true;
        });
        CHECK(images.size() == 25);
    }
}

TEST_CASE("message enumeration order and counts") {
    const FieldCtx f3(3), f5(5);
    Matrix m21(2, 1);
    m21.at(0, 0) = 1;
    const GeneratorMatrix g31(f3, 2, 1, m21);
    Matrix m22(2, 2);
    m22.at(0, 0) = m22.at(1, 1) = 1;
    const GeneratorMatrix g32(f3, 2, 2, m22);
    const GeneratorMatrix g52(f5, 2, 2, m22);

    std::vector<Message> seen;
    enumerate_messages(g32, 100, [&](const Message& t) {
        seen.push_back(t);
        return true;
    });
    CHECK(seen.size() == 9);
    CHECK(seen.front() == Message{0, 0});
    CHECK(seen.back() == Message{2, 2});

    std::size_t n31 = 0, n52 = 0;
    enumerate_messages(g31, 100, [&](const Message&) { ++n31; return true; });
    enumerate_messages(g52, 100, [&](const Message&) { ++n52; return true; });
    CHECK(n31 == 3);
    CHECK(n52 == 25);

    CHECK_THROWS_AS(enumerate_messages(g52, 10, [](const Message&) { return true; }),
                    BudgetError);

    // message_at matches the enumeration order
    std::size_t idx = 0;
    enumerate_messages(g32, 100, [&](const Message& t) {
        CHECK(message_at(g32, idx) == t);
        ++idx;
        return true;
    });
}

TEST_CASE("matrix JSON round trip") {
    const FieldCtx f(101);
    const GeneratorMatrix g = sample_random_matrix(4, 2, f, 3);
    const Json j = matrix_to_json(g);
    const GeneratorMatrix back = matrix_from_json(j);
    CHECK(back.m == g.m);
    CHECK(back.ctx.p() == 101);
    CHECK_THROWS_AS(matrix_from_json(Json{{"p", 101}}), InputError);
}
