#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "lrc/field.hpp"

namespace lrc {

/// Dense row-major matrix over F_p. Entries are canonical residues.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Fe> a;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    Fe& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    Fe at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

    bool operator==(const Matrix&) const = default;
};

/// Rank over F_p by Gaussian elimination.
std::size_t mat_rank(Matrix m, const FieldCtx& ctx);

/// Exact determinant mod p. Throws InputError("NonSquare") if rows != cols.
Fe det_mod_p(Matrix m, const FieldCtx& ctx);

/// Matrix-vector product mod p. Throws InputError on dimension mismatch.
std::vector<Fe> mat_vec(const Matrix& m, const std::vector<Fe>& v, const FieldCtx& ctx);

/// Kernel of a nonzero form (a, b) on F_p^2, normalized so the first nonzero
/// coordinate is 1 (one canonical representative per projective line).
/// Throws InputError("ZeroForm") if the form is zero.
std::array<Fe, 2> kernel_line(const std::array<Fe, 2>& form, const FieldCtx& ctx);

} // namespace lrc
