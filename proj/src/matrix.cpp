#include "lrc/matrix.hpp"

namespace lrc {

std::size_t mat_rank(Matrix m, const FieldCtx& ctx) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < m.rows && m.at(pivot, col) == 0) ++pivot;
        if (pivot == m.rows) continue;
        for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(rank, c), m.at(pivot, c));
        const Fe pinv = ctx.inv(m.at(rank, col));
        for (std::size_t r = rank + 1; r < m.rows; ++r) {
            const Fe f = ctx.mul(m.at(r, col), pinv);
            if (f == 0) continue;
            for (std::size_t c = col; c < m.cols; ++c)
                m.at(r, c) = ctx.sub(m.at(r, c), ctx.mul(f, m.at(rank, c)));
        }
        ++rank;
    }
    return rank;
}

Fe det_mod_p(Matrix m, const FieldCtx& ctx) {
    if (m.rows != m.cols) throw InputError("NonSquare: determinant of non-square matrix");
    const std::size_t n = m.rows;
    Fe det = 1;
    bool negate = false;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m.at(pivot, col) == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m.at(col, c), m.at(pivot, c));
            negate = !negate;
        }
        det = ctx.mul(det, m.at(col, col));
        const Fe pinv = ctx.inv(m.at(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const Fe f = ctx.mul(m.at(r, col), pinv);
            if (f == 0) continue;
            for (std::size_t c = col; c < n; ++c)
                m.at(r, c) = ctx.sub(m.at(r, c), ctx.mul(f, m.at(col, c)));
        }
    }
    return negate ? ctx.neg(det) : det;
}

std::vector<Fe> mat_vec(const Matrix& m, const std::vector<Fe>& v, const FieldCtx& ctx) {
    if (v.size() != m.cols) throw InputError("DimMismatch: mat_vec");
    std::vector<Fe> out(m.rows, 0);
    for (std::size_t r = 0; r < m.rows; ++r) {
        Fe acc = 0;
        for (std::size_t c = 0; c < m.cols; ++c)
            acc = ctx.add(acc, ctx.mul(m.at(r, c), v[c]));
        out[r] = acc;
    }
    return out;
}

std::array<Fe, 2> kernel_line(const std::array<Fe, 2>& form, const FieldCtx& ctx) {
    const Fe a = form[0], b = form[1];
    if (a == 0 && b == 0) throw InputError("ZeroForm: kernel of the zero form");
    // (b, -a) spans the kernel; normalize first nonzero coordinate to 1.
    if (b == 0) return {0, 1};
    return {1, ctx.mul(ctx.neg(a), ctx.inv(b))};
}

} // namespace lrc
