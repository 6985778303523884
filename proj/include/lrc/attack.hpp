#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "lrc/lists.hpp"
#include "lrc/params.hpp"

namespace lrc {

/// Explicit non-recoverability witness: a generalized arithmetic box inside a
/// two-dimensional subcode plus lists of size ell capturing more than K*ell
/// codewords with zero bad coordinates.
struct AttackPlan {
    Message basis1, basis2;       // ambient messages spanning the subcode D
    std::size_t r = 0;            // number of distinct kernel lines
    std::vector<std::array<Fe, 2>> kernels;               // u_j, normalized
    std::vector<std::optional<std::size_t>> coord_kernel; // per coordinate; nullopt = zero form
    std::vector<std::uint64_t> side_lengths;              // t_1..t_r
    Big P;                        // product of side lengths = |A|
    std::vector<Fe> scalars;      // s_1..s_r, all nonzero
    std::size_t scalar_tries = 0;
    std::vector<Message> box;     // A as ambient messages, |box| = P
    ListFamily lists;
    std::uint64_t ell = 0;
    Rat K;
    std::uint64_t T = 0;
};

/// First pair of standard basis messages whose encodings are independent.
/// Throws InputError("DimTooSmall") when d < 2 or rank < 2.
std::pair<Message, Message> pick_2d_subcode(const GeneratorMatrix& g);

struct KernelInfo {
    std::vector<std::array<Fe, 2>> kernels; // distinct lines, first-appearance order
    std::vector<std::optional<std::size_t>> coord_kernel;
};

/// Kernels of the coordinate forms restricted to the subcode spanned by
/// (b1, b2). Zero forms map to nullopt. Throws InputError("DegenerateCode")
/// if fewer than two distinct kernels occur.
KernelInfo distinct_kernels(const GeneratorMatrix& g, const Message& b1, const Message& b2);

struct BoxSides {
    std::vector<std::uint64_t> t; // t_1 = floor(K*ell/T^(r-1)) + 1, t_2..t_r = T
    Big P;
};

/// Verifies the construction's inequalities P > K*ell, P/t_j <= ell,
/// P <= (K+1)*ell. Throws InputError("PreconditionFailed: ...") naming the
/// violated condition.
BoxSides side_lengths(const Rat& K, std::uint64_t ell, std::uint64_t T, std::size_t r);

/// Nonzero scalars making the box map (a_1..a_r) -> sum a_j s_j u_j injective,
/// verified exactly (hash of all P sums, or the difference grid when smaller).
/// Throws BudgetError("Exhausted") after max_tries.
std::vector<Fe> choose_scalars(const std::vector<std::array<Fe, 2>>& u,
                               const std::vector<std::uint64_t>& t, const FieldCtx& ctx,
                               std::uint64_t seed, std::size_t max_tries,
                               std::size_t* tries_out = nullptr);

/// The full Theorem-1.3-style construction. Requires ell >= T^n, ell <= p,
/// p >= f(n) from lower_bound_params(alpha, epsilon, n).
AttackPlan build_attack(const GeneratorMatrix& g, const Rat& alpha, const Rat& epsilon,
                        std::uint64_t ell, std::uint64_t seed);

/// True iff count_near_codewords(g, plan.lists, alpha) exceeds K*ell.
bool verify_attack(const GeneratorMatrix& g, const AttackPlan& plan, const Rat& alpha,
                   std::uint64_t cap = 100'000'000ull);

} // namespace lrc
