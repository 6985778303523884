#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lrc/code.hpp"
#include "lrc/rational.hpp"

namespace lrc {

/// n candidate lists S_1..S_n over F_p, all of size exactly ell.
/// Lists are kept sorted and duplicate-free.
struct ListFamily {
    std::uint64_t p = 0;
    std::size_t ell = 0;
    std::vector<std::vector<Fe>> lists;
};

/// Validates sizes, range and uniqueness; sorts each list.
ListFamily make_list_family(std::uint64_t p, std::size_t ell,
                            std::vector<std::vector<Fe>> lists);

struct Witness {
    Message message;
    std::vector<std::size_t> bad; // coordinates i with x_i not in S_i
};

/// Result of counting codewords that agree with a list family in all but at
/// most floor(alpha*n) coordinates.
struct RecoveryReport {
    std::uint64_t count = 0;
    Rat alpha = 0;
    std::uint64_t bad_limit = 0; // floor(alpha * n)
    std::optional<std::uint64_t> threshold_L;
    std::vector<Witness> witnesses; // capped at kWitnessCap, count stays exact
    bool witnesses_truncated = false;
};

inline constexpr std::size_t kWitnessCap = 1'000'000;

/// Exact count (and witnesses) of messages whose codeword misses at most
/// floor(alpha*n) lists. Enumerates all p^d messages; BudgetError if p^d > cap.
RecoveryReport count_near_codewords(const GeneratorMatrix& g, const ListFamily& fam,
                                    const Rat& alpha, std::uint64_t cap);

struct OracleResult {
    bool recoverable = true;
    std::uint64_t max_count = 0;
    ListFamily worst;       // a maximizing family
    std::uint64_t families_checked = 0;
};

/// Exhaustive adversary over list families whose values are restricted to the
/// coordinate values actually taken by codewords (lossless for maximizing the
/// qualifying count), padded with fresh values to size ell. `work_budget`
/// bounds families * messages evaluations.
OracleResult is_list_recoverable_bruteforce(const GeneratorMatrix& g, const Rat& alpha,
                                            std::size_t ell, std::uint64_t L,
                                            std::uint64_t work_budget);

struct AttackSearchResult {
    RecoveryReport best;
    std::optional<ListFamily> best_family;
    std::uint64_t trials_run = 0;
};

/// Randomized adversary: per trial, pick L+1 random messages, build each list
/// from the most popular fiber values, pad to ell. Extra candidate families
/// are evaluated first, so the result count is at least theirs.
AttackSearchResult random_attack_search(const GeneratorMatrix& g, const Rat& alpha,
                                        std::size_t ell, std::uint64_t L,
                                        std::size_t trials, std::uint64_t seed,
                                        std::span<const ListFamily> extra_candidates = {},
                                        std::uint64_t cap = 100'000'000ull);

/// The violating set A and its per-coordinate membership table
/// A_i = {a in A : lambda_i(a) in S_i}.
struct PipelineInput {
    std::vector<Message> points;              // A, one entry per witness
    std::vector<std::vector<std::size_t>> members; // members[i] = indices into points
    std::vector<std::size_t> sizes;           // a_i = |A_i|
};

PipelineInput violating_set_to_pipeline_input(const RecoveryReport& report,
                                              const GeneratorMatrix& g,
                                              const ListFamily& fam);

} // namespace lrc
