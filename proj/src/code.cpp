#include "lrc/code.hpp"

#include <string>

namespace lrc {

GeneratorMatrix::GeneratorMatrix(FieldCtx c, std::size_t n_, std::size_t d_, Matrix mat)
    : ctx(c), n(n_), d(d_), m(std::move(mat)) {
    if (d == 0 || d > n) throw InputError("BadDims: need n >= d >= 1");
    if (m.rows != n || m.cols != d) throw InputError("BadDims: matrix shape mismatch");
    for (const Fe v : m.a)
        if (v >= ctx.p()) throw InputError("BadDims: entry out of field range");
}

std::vector<Fe> GeneratorMatrix::row(std::size_t i) const {
    std::vector<Fe> r(d);
    for (std::size_t j = 0; j < d; ++j) r[j] = m.at(i, j);
    return r;
}

Fe GeneratorMatrix::coord_form(std::size_t i, const Message& t) const {
    Fe acc = 0;
    for (std::size_t j = 0; j < d; ++j) acc = ctx.add(acc, ctx.mul(m.at(i, j), t[j]));
    return acc;
}

GeneratorMatrix sample_random_matrix(std::size_t n, std::size_t d, const FieldCtx& ctx,
                                     std::uint64_t seed) {
    if (d == 0 || d > n) throw InputError("BadDims: need n >= d >= 1");
    RngStream rng = RngStream::derive(seed, "code/sample");
    Matrix m(n, d);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < d; ++c) m.at(r, c) = rng.below(ctx.p());
    return GeneratorMatrix(ctx, n, d, std::move(m));
}

FullRankResult condition_full_rank(std::size_t n, std::size_t d, const FieldCtx& ctx,
                                   std::uint64_t seed, std::size_t max_tries) {
    if (d == 0 || d > n) throw InputError("BadDims: need n >= d >= 1");
    for (std::size_t t = 0; t < max_tries; ++t) {
        RngStream rng = RngStream::derive(seed, "code/full-rank", t);
        Matrix m(n, d);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < d; ++c) m.at(r, c) = rng.below(ctx.p());
        if (mat_rank(m, ctx) == d)
            return {GeneratorMatrix(ctx, n, d, std::move(m)), t + 1};
    }
    throw BudgetError("Exhausted: no full-rank sample in " + std::to_string(max_tries) +
                      " tries");
}

Codeword encode(const GeneratorMatrix& g, const Message& t) {
    if (t.size() != g.d) throw InputError("DimMismatch: message length != d");
    return {mat_vec(g.m, t, g.ctx), t};
}

std::uint64_t message_space_size(const GeneratorMatrix& g, std::uint64_t cap) {
    unsigned __int128 total = 1;
    for (std::size_t j = 0; j < g.d; ++j) {
        total *= g.ctx.p();
        if (total > cap)
            throw BudgetError("BudgetExceeded: p^d exceeds message cap " +
                              std::to_string(cap));
    }
    return static_cast<std::uint64_t>(total);
}

void enumerate_messages(const GeneratorMatrix& g, std::uint64_t cap,
                        const std::function<bool(const Message&)>& visit) {
    message_space_size(g, cap);
    Message t(g.d, 0);
    const Fe p = g.ctx.p();
    for (;;) {
        if (!visit(t)) return;
        // lexicographic odometer, least significant coordinate last
        std::size_t j = g.d;
        while (j > 0) {
            --j;
            if (++t[j] < p) break;
            t[j] = 0;
            if (j == 0) return;
        }
    }
}

Message message_at(const GeneratorMatrix& g, std::uint64_t rank) {
    Message t(g.d, 0);
    const Fe p = g.ctx.p();
    for (std::size_t j = g.d; j-- > 0;) {
        t[j] = static_cast<Fe>(rank % p);
        rank /= p;
    }
    return t;
}

} // namespace lrc
