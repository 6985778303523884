#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "lrc/field.hpp"
#include "lrc/matrix.hpp"
#include "lrc/prng.hpp"

namespace lrc {

using Message = std::vector<Fe>; // length d

/// An n x d generator matrix over F_p. Row i is the coordinate form
/// lambda_i; codewords are M*t for messages t in F_p^d.
struct GeneratorMatrix {
    FieldCtx ctx;
    std::size_t n = 0;
    std::size_t d = 0;
    Matrix m; // n rows, d cols

    GeneratorMatrix(FieldCtx c, std::size_t n_, std::size_t d_, Matrix mat);

    /// Row i as a coefficient vector of length d.
    std::vector<Fe> row(std::size_t i) const;

    /// lambda_i(t) without materializing the whole codeword.
    Fe coord_form(std::size_t i, const Message& t) const;
};

struct Codeword {
    std::vector<Fe> coords; // length n, coords = M * message
    Message message;        // length d
};

/// Every entry uniform in [0, p) from the seeded stream "code/sample".
/// Throws InputError("BadDims") unless n >= d >= 1.
GeneratorMatrix sample_random_matrix(std::size_t n, std::size_t d, const FieldCtx& ctx,
                                     std::uint64_t seed);

struct FullRankResult {
    GeneratorMatrix g;
    std::size_t tries = 0; // number of samples drawn (>= 1)
};

/// Resample until rank = d. Throws BudgetError("Exhausted") after max_tries.
FullRankResult condition_full_rank(std::size_t n, std::size_t d, const FieldCtx& ctx,
                                   std::uint64_t seed, std::size_t max_tries = 64);

Codeword encode(const GeneratorMatrix& g, const Message& t);

/// p^d as a checked 64-bit count; throws BudgetError("BudgetExceeded") if it
/// exceeds cap.
std::uint64_t message_space_size(const GeneratorMatrix& g, std::uint64_t cap);

/// Visit all p^d messages in lexicographic order (most significant
/// coordinate first). The visitor returns false to stop early.
void enumerate_messages(const GeneratorMatrix& g, std::uint64_t cap,
                        const std::function<bool(const Message&)>& visit);

/// Lexicographic rank -> message, for partitioned enumeration.
Message message_at(const GeneratorMatrix& g, std::uint64_t rank);

} // namespace lrc
