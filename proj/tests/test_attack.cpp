#include "doctest.h"

#include <algorithm>
#include <set>
#include <vector>

#include "lrc/attack.hpp"
#include "lrc/code.hpp"

using namespace lrc;

namespace {

GeneratorMatrix make_code(std::uint64_t p, std::vector<std::vector<Fe>> rows) {
    const FieldCtx f(p);
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < m.rows; ++r)
        for (std::size_t c = 0; c < m.cols; ++c) m.at(r, c) = rows[r][c];
    return GeneratorMatrix(f, m.rows, m.cols, std::move(m));
}

} // namespace

TEST_CASE("subcode selection") {
    const GeneratorMatrix g = make_code(7, {{1, 0}, {0, 1}, {1, 1}});
    const auto [b1, b2] = pick_2d_subcode(g);
    CHECK(b1 == Message{1, 0});
    CHECK(b2 == Message{0, 1});
    // images independent
    Matrix two(3, 2);
    for (std::size_t r = 0; r < 3; ++r) {
        two.at(r, 0) = encode(g, b1).coords[r];
        two.at(r, 1) = encode(g, b2).coords[r];
    }
    CHECK(mat_rank(two, g.ctx) == 2);

    const GeneratorMatrix d1 = make_code(7, {{1}, {2}});
    CHECK_THROWS_AS(pick_2d_subcode(d1), InputError);
    const GeneratorMatrix rank1 = make_code(7, {{1, 2}, {2, 4}});
    CHECK_THROWS_AS(pick_2d_subcode(rank1), InputError);
}

TEST_CASE("distinct kernels") {
    // rows z1 and z2: kernels are the two coordinate axes
    const GeneratorMatrix g = make_code(7, {{1, 0}, {0, 1}});
    const auto [b1, b2] = pick_2d_subcode(g);
    const KernelInfo ki = distinct_kernels(g, b1, b2);
    CHECK(ki.kernels.size() == 2);
    CHECK(ki.kernels[0] == std::array<Fe, 2>{0, 1}); // ker z1
    CHECK(ki.kernels[1] == std::array<Fe, 2>{1, 0}); // ker z2

    // proportional forms share a kernel
    const GeneratorMatrix gp = make_code(7, {{1, 0}, {2, 0}, {0, 1}});
    const KernelInfo kp = distinct_kernels(gp, Message{1, 0}, Message{0, 1});
    CHECK(kp.kernels.size() == 2);
    CHECK(kp.coord_kernel[0] == kp.coord_kernel[1]);

    // all forms proportional: fewer than two kernels
    const GeneratorMatrix bad = make_code(7, {{1, 0}, {2, 0}});
    CHECK_THROWS_AS(distinct_kernels(bad, Message{1, 0}, Message{0, 1}), InputError);
}

TEST_CASE("kernel count equals projective dedup of rows") {
    const FieldCtx f(1031);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const GeneratorMatrix g = condition_full_rank(4, 2, f, seed).g;
        const auto [b1, b2] = pick_2d_subcode(g);
        const KernelInfo ki = distinct_kernels(g, b1, b2);
        // independent projective dedup of the restricted nonzero forms
        std::set<std::array<Fe, 2>> lines;
        for (std::size_t i = 0; i < 4; ++i) {
            std::array<Fe, 2> fo = {g.coord_form(i, b1), g.coord_form(i, b2)};
            if (fo[0] == 0 && fo[1] == 0) continue;
            if (fo[0] != 0) {
                const Fe inv = f.inv(fo[0]);
                lines.insert({1, f.mul(fo[1], inv)});
            } else {
                lines.insert({0, 1});
            }
        }
        CHECK(ki.kernels.size() == lines.size());
    }
}

TEST_CASE("side lengths at the worked instance") {
    const BoxSides s = side_lengths(Rat(3), 300, 6, 3);
    CHECK(s.t == std::vector<std::uint64_t>{26, 6, 6});
    CHECK(s.P == 936);
    CHECK(s.P > Big(900));                        // P > K*ell
    CHECK(Big(36) <= Big(300));                   // P/t1 = 36 <= ell
    CHECK(s.P / 6 == 156);                        // P/tj = 156 <= ell

    const BoxSides r2 = side_lengths(Rat(3), 6, 6, 2);
    CHECK(r2.t[0] == 4); // floor(K) + 1 when ell = T

    CHECK_THROWS_AS(side_lengths(Rat(3), 35, 6, 3), InputError); // ell < T^(r-1)
}

TEST_CASE("scalar choice on independent axes always works first try") {
    const FieldCtx f(1031);
    const std::vector<std::array<Fe, 2>> axes = {{1, 0}, {0, 1}};
    std::size_t total_tries = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        std::size_t tries = 0;
        const auto s = choose_scalars(axes, {26, 6}, f, seed, 16, &tries);
        CHECK(s.size() == 2);
        CHECK(s[0] != 0);
        CHECK(s[1] != 0);
        total_tries += tries;
    }
    CHECK(total_tries <= 200); // mean tries <= 2
}

TEST_CASE("scalar choice rejects oversized boxes") {
    const FieldCtx f(7);
    const std::vector<std::array<Fe, 2>> axes = {{1, 0}, {0, 1}};
    CHECK_THROWS_AS(choose_scalars(axes, {7, 2}, f, 0, 4, nullptr), InputError);
}

TEST_CASE("end-to-end attack at (1/2, 1/2), n=3, p=1031, ell=300") {
    const FieldCtx f(1031);
    const GeneratorMatrix g = condition_full_rank(3, 2, f, 17).g;
    const AttackPlan plan = build_attack(g, Rat(1, 2), Rat(1, 2), 300, 99);

    CHECK(plan.K == Rat(3));
    CHECK(plan.T == 6);
    CHECK(plan.P == 936);
    CHECK(plan.box.size() == 936);

    // all box messages distinct
    std::set<Message> uniq(plan.box.begin(), plan.box.end());
    CHECK(uniq.size() == 936);

    // projection bound |lambda_i(A)| <= ell and the exact per-kernel shape
    for (std::size_t i = 0; i < 3; ++i) {
        std::set<Fe> vals;
        for (const Message& a : plan.box) vals.insert(g.coord_form(i, a));
        CHECK(vals.size() <= 300);
        if (plan.coord_kernel[i]) {
            const std::size_t j = *plan.coord_kernel[i];
            CHECK(Big(vals.size()) <= plan.P / plan.side_lengths[j]);
        } else {
            CHECK(vals.size() == 1);
        }
    }

    // count dominance at alpha = 0, hence at every alpha
    const RecoveryReport rep = count_near_codewords(g, plan.lists, Rat(0), 2'000'000);
    CHECK(rep.count >= 936);
    CHECK(Rat(rep.count) > Rat(900));
    CHECK(verify_attack(g, plan, Rat(0)));
    CHECK(verify_attack(g, plan, Rat(1, 2)));
}

TEST_CASE("attack preconditions") {
    const FieldCtx f(1031);
    const GeneratorMatrix g = condition_full_rank(3, 2, f, 17).g;
    CHECK_THROWS_AS(build_attack(g, Rat(1, 2), Rat(1, 2), 100, 1), InputError); // ell < T^n
    CHECK_THROWS_AS(build_attack(g, Rat(1, 2), Rat(1, 2), 2000, 1), InputError); // ell > p
    const FieldCtx small(1013); // prime but below f(3) = 1024
    const GeneratorMatrix gs = condition_full_rank(3, 2, small, 17).g;
    CHECK_THROWS_AS(build_attack(gs, Rat(1, 2), Rat(1, 2), 300, 1), InputError);
}

TEST_CASE("mutating the lists away from the box weakens the attack") {
    const FieldCtx f(1031);
    const GeneratorMatrix g = condition_full_rank(3, 2, f, 23).g;
    const AttackPlan plan = build_attack(g, Rat(1, 2), Rat(1, 2), 300, 7);
    const std::uint64_t original = count_near_codewords(g, plan.lists, Rat(0), 2'000'000).count;

    // remove one value of lambda_i(A) from each list, re-pad with fresh values
    std::vector<std::vector<Fe>> mutated = plan.lists.lists;
    for (std::size_t i = 0; i < 3; ++i) {
        std::set<Fe> image;
        for (const Message& a : plan.box) image.insert(g.coord_form(i, a));
        auto& s = mutated[i];
        for (std::size_t k = 0; k < s.size(); ++k)
            if (image.count(s[k])) {
                s.erase(s.begin() + k);
                break;
            }
        for (Fe cand = 1030;; --cand) {
            if (!image.count(cand) &&
                std::find(s.begin(), s.end(), cand) == s.end()) {
                s.push_back(cand);
                break;
            }
        }
    }
    const ListFamily mut = make_list_family(1031, 300, mutated);
    const std::uint64_t mutated_count = count_near_codewords(g, mut, Rat(0), 2'000'000).count;
    CHECK(mutated_count < original);
}
