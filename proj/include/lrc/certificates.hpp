#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "lrc/graphs.hpp"
#include "lrc/matrix.hpp"
#include "lrc/prng.hpp"
#include "lrc/rational.hpp"

namespace lrc {

/// m x d array of linear-form coefficients: row i holds the coefficients of
/// lambda_i. The rows of a generator matrix are exactly such an array.
using CoefficientArray = Matrix;

/// d colored spanning trees on [0, w) with pairwise disjoint color sets.
/// Canonical form: edges oriented u < v, edge lists sorted, trees sorted.
struct TreeCertificate {
    std::size_t w = 0;
    std::vector<std::vector<ColoredEdge>> trees;

    bool operator==(const TreeCertificate&) const = default;
};

/// Validate (spanning, acyclic, disjoint color sets) and canonicalize.
TreeCertificate make_certificate(std::size_t w, std::vector<std::vector<ColoredEdge>> trees);

/// The d(w-1) x d(w-1) matrix with rows indexed by oriented tree edges
/// e = (u,v) and columns by (s, j) in [0,w-1) x [0,d):
/// R[e][(s,j)] = (1{s=u} - 1{s=v}) * coeffs[color(e)][j]; vertex w-1 has no
/// column. Throws InputError("ColorOutOfRange") if a tree color has no row in
/// coeffs.
Matrix build_R_matrix(const TreeCertificate& cert, const CoefficientArray& coeffs,
                      const FieldCtx& ctx);

/// Determinant under the proof's specialization (a_{i,r} = 1 for colors of
/// tree r, all other entries 0). Always +-1, i.e. 1 or p-1.
Fe specialization_sanity(const TreeCertificate& cert, const FieldCtx& ctx);

/// det(R) at the given coefficients.
Fe eval_certificate(const TreeCertificate& cert, const CoefficientArray& coeffs,
                    const FieldCtx& ctx);

/// Exact number of certificates up to size B (canonical form, trees unordered).
Big certificate_count(std::size_t B, std::size_t m, std::size_t d);

/// The union-bound overcount B(B^2 m)^(dB).
Big certificate_count_bound(std::size_t B, std::size_t m, std::size_t d);

/// Visit every certificate (2 <= w <= B, colors in [0, m)) exactly once in a
/// deterministic canonical order. Throws BudgetError when the exact count (or
/// the per-size colored-tree scan) exceeds `budget`; the error message carries
/// the union-bound estimate. The visitor returns false to stop early.
void enumerate_certificates(std::size_t B, std::size_t m, std::size_t d, const Big& budget,
                            const std::function<bool(const TreeCertificate&)>& visit);

struct GoodnessResult {
    bool good = true;
    std::optional<TreeCertificate> first_failing;
    Big certificates_checked = 0;
    bool exhaustive = true; // false for the sampled partial check
};

/// True iff every certificate determinant up to size B is nonzero at coeffs.
GoodnessResult check_good_up_to_B(const CoefficientArray& coeffs, std::size_t B,
                                  const FieldCtx& ctx, const Big& budget);

/// Partial check on `samples` random certificates (labeled non-exhaustive).
GoodnessResult check_good_sampled(const CoefficientArray& coeffs, std::size_t B,
                                  const FieldCtx& ctx, std::size_t samples,
                                  std::uint64_t seed);

/// Random certificate with w in [2, B], trees from random Pruefer sequences,
/// colors drawn from disjoint random pools. Requires m >= d.
TreeCertificate random_certificate(std::size_t B, std::size_t m, std::size_t d,
                                   RngStream& rng);

struct CollapseResult {
    bool consistent = false;   // all edge equations hold at the points
    bool forced_equal = false; // all points equal
};

/// Edge equations sum_j coeffs[color][j] (q_u - q_v)_j = 0 evaluated at the
/// given w points of F_p^d. If det != 0 and consistent, forced_equal holds.
CollapseResult collapse_points(const TreeCertificate& cert, const CoefficientArray& coeffs,
                               const std::vector<Message>& points, const FieldCtx& ctx);

/// Exact value of d B^2 (B^2 m)^(dB) / p.
Rat sz_failure_bound(std::size_t B, std::size_t m, std::size_t d, std::uint64_t p);

struct SzTrialRow {
    std::size_t trial = 0;
    bool good = true;
    std::optional<TreeCertificate> failing_certificate;
};

struct SzReport {
    std::size_t B = 0, m = 0, d = 0;
    std::uint64_t p = 0;
    std::size_t trials = 0;
    std::size_t failures = 0; // coefficient arrays that are not good up to B
    double frequency = 0.0;
    double wilson_low = 0.0, wilson_high = 0.0; // 95% interval
    Rat bound;                                  // sz_failure_bound
    std::vector<SzTrialRow> rows;
};

/// Fraction of uniformly random coefficient arrays failing goodness up to B,
/// with exhaustive certificate checking per trial.
SzReport sz_experiment(std::size_t B, std::size_t m, std::size_t d, std::uint64_t p,
                       std::size_t trials, std::uint64_t seed, const Big& budget);

} // namespace lrc
