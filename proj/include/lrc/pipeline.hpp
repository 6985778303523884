#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lrc/attack.hpp"
#include "lrc/certificates.hpp"
#include "lrc/graphs.hpp"
#include "lrc/lists.hpp"
#include "lrc/params.hpp"

namespace lrc {

enum class Verdict { ConsistentWithTheorem, CounterexampleFound, Inconclusive };

std::string verdict_name(Verdict v);

struct Budgets {
    std::uint64_t message_cap = 10'000'000;
    Big certificate_budget = 150'000;
    std::size_t goodness_samples = 2000;
    std::size_t attack_trials = 100;
    std::size_t candidate_sets = 1000;
    std::size_t tree_retries = 50;
    std::uint64_t cgr_scan = 1'000'000;
};

/// Outcome of running the contradiction machine on one candidate set.
struct BundleRecord {
    std::size_t set_size = 0;        // |A|
    bool genuine_violator = false;   // every point within the bad budget, |A| > K*ell
    bool bundle_found = false;
    bool via_exhaustive = false;
    std::size_t filtered_colors = 0; // |I|
    Fe cert_eval = 0;                // det at the code's coefficients
    bool consistent = false;
    bool forced_equal = false;
};

struct PipelineReport {
    // cell identity
    Rat alpha, epsilon;
    std::size_t d = 0, n = 0;
    std::uint64_t p = 0, ell = 0, seed = 0;
    // derived constants
    RecoveryParams params;
    std::uint64_t C_gr = 0;
    std::uint64_t B = 0; // floor(K*ell) + 1
    bool hypothesis_ok = false; // n >= (C_gr/theta) Lambda(B)
    bool degenerate = false;    // K*ell >= p^d: no violating set can exist
    std::size_t conditioning_tries = 0;
    // goodness of the sampled code's coordinate forms
    std::string goodness_mode; // "exact" or "sampled"
    bool goodness_holds = false;
    Big certificates_checked = 0;
    // adversarial search
    std::uint64_t attacks_tried = 0;
    std::uint64_t max_count_found = 0;
    bool violator_verified = false; // re-checked via count_near_codewords
    std::size_t candidate_sets_tried = 0;
    std::vector<BundleRecord> bundles; // only records where a bundle was found
    std::size_t bundles_extracted = 0;
    // the executable content of the contradiction: must stay zero
    std::size_t contradiction_violations = 0;
    Verdict verdict = Verdict::Inconclusive;
};

/// Color filter I = {i : |M_i| >= beta*b}.
std::vector<std::size_t> matching_color_filter(const MatchingFamily& matchings,
                                               const Rat& beta, std::size_t b);

PipelineReport run_main_experiment(const Rat& alpha, const Rat& epsilon, std::size_t d,
                                   std::size_t n, std::uint64_t p, std::uint64_t ell,
                                   std::uint64_t seed, const Budgets& budgets = {});

struct GridConfig {
    std::vector<Rat> alphas;
    std::vector<Rat> epsilons;
    std::size_t d = 1;
    std::size_t n = 2;
    std::uint64_t p = 101;
    std::vector<std::uint64_t> ells;
    std::vector<std::uint64_t> seeds;
    Budgets budgets;
};

std::vector<PipelineReport> run_grid(const GridConfig& config);

std::string grid_csv(const std::vector<PipelineReport>& reports);

} // namespace lrc
