#include "lrc/attack.hpp"

#include <algorithm>
#include <string>

namespace lrc {

std::pair<Message, Message> pick_2d_subcode(const GeneratorMatrix& g) {
    if (g.d < 2) throw InputError("DimTooSmall: need code dimension >= 2");
    for (std::size_t i = 0; i < g.d; ++i) {
        for (std::size_t j = i + 1; j < g.d; ++j) {
            Matrix two(g.n, 2);
            for (std::size_t row = 0; row < g.n; ++row) {
                two.at(row, 0) = g.m.at(row, i);
                two.at(row, 1) = g.m.at(row, j);
            }
            if (mat_rank(two, g.ctx) == 2) {
                Message b1(g.d, 0), b2(g.d, 0);
                b1[i] = 1;
                b2[j] = 1;
                return {b1, b2};
            }
        }
    }
    throw InputError("DimTooSmall: generator matrix has rank < 2");
}

KernelInfo distinct_kernels(const GeneratorMatrix& g, const Message& b1, const Message& b2) {
    KernelInfo info;
    info.coord_kernel.resize(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
        const std::array<Fe, 2> form = {g.coord_form(i, b1), g.coord_form(i, b2)};
        if (form[0] == 0 && form[1] == 0) {
            info.coord_kernel[i] = std::nullopt;
            continue;
        }
        const std::array<Fe, 2> line = kernel_line(form, g.ctx);
        const auto it = std::find(info.kernels.begin(), info.kernels.end(), line);
        if (it == info.kernels.end()) {
            info.coord_kernel[i] = info.kernels.size();
            info.kernels.push_back(line);
        } else {
            info.coord_kernel[i] = static_cast<std::size_t>(it - info.kernels.begin());
        }
    }
    if (info.kernels.size() < 2)
        throw InputError("DegenerateCode: restricted forms do not span the dual "
                         "(fewer than two distinct kernels)");
    return info;
}

BoxSides side_lengths(const Rat& K, std::uint64_t ell, std::uint64_t T, std::size_t r) {
    if (r < 2) throw InputError("PreconditionFailed: r >= 2 required");
    Big t_pow = 1; // T^(r-1)
    for (std::size_t j = 0; j + 1 < r; ++j) t_pow *= T;
    if (Big(ell) < t_pow)
        throw InputError("PreconditionFailed: ell >= T^(r-1) violated (ell=" +
                         std::to_string(ell) + ", T^(r-1)=" + t_pow.str() + ")");
    const Big t1 = floor_rat(K * ell / Rat(t_pow)) + 1;

    BoxSides out;
    out.t.push_back(t1.convert_to<std::uint64_t>());
    for (std::size_t j = 1; j < r; ++j) out.t.push_back(T);
    out.P = t1 * t_pow;

    const Rat Kl = K * ell;
    if (!(Rat(out.P) > Kl)) throw Error("side_lengths: P > K*ell violated");
    if (!(t_pow <= Big(ell))) throw Error("side_lengths: P/t_1 <= ell violated");
    if (r >= 2) {
        const Big ratio = t1 * (t_pow / T); // t_1 * T^(r-2)
        if (!(ratio <= Big(ell))) throw Error("side_lengths: P/t_j <= ell violated");
    }
    if (!(Rat(out.P) <= (K + 1) * ell)) throw Error("side_lengths: P <= (K+1)*ell violated");
    return out;
}

namespace {

/// Exact injectivity of (a_1..a_r) -> sum a_j s_j u_j on the box grid.
bool box_injective(const std::vector<std::array<Fe, 2>>& u, const std::vector<Fe>& s,
                   const std::vector<std::uint64_t>& t, const FieldCtx& ctx,
                   const Big& P) {
    const std::size_t r = u.size();
    Big diff_grid = 1;
    for (const std::uint64_t tj : t) diff_grid *= (2 * tj - 1);

    if (P <= 10'000'000 && (P <= diff_grid || diff_grid > 10'000'000)) {
        // enumerate all P sums and look for a collision
        std::vector<std::array<Fe, 2>> scaled(r);
        for (std::size_t j = 0; j < r; ++j)
            scaled[j] = {ctx.mul(s[j], u[j][0]), ctx.mul(s[j], u[j][1])};
        std::vector<unsigned __int128> sums;
        sums.reserve(static_cast<std::size_t>(P));
        std::vector<std::uint64_t> a(r, 0);
        std::array<Fe, 2> acc = {0, 0};
        // maintain acc = sum a_j * scaled_j incrementally over the odometer
        for (;;) {
            sums.push_back((static_cast<unsigned __int128>(acc[0]) << 64) | acc[1]);
            std::size_t j = r;
            bool done = true;
            while (j > 0) {
                --j;
                if (++a[j] < t[j]) {
                    acc[0] = ctx.add(acc[0], scaled[j][0]);
                    acc[1] = ctx.add(acc[1], scaled[j][1]);
                    done = false;
                    break;
                }
                // roll a_j back from t[j]-1 to 0 in one step
                const Fe back = ctx.from_int(static_cast<long long>((t[j] - 1) % ctx.p()));
                acc[0] = ctx.sub(acc[0], ctx.mul(back, scaled[j][0]));
                acc[1] = ctx.sub(acc[1], ctx.mul(back, scaled[j][1]));
                a[j] = 0;
            }
            if (done) break;
        }
        std::sort(sums.begin(), sums.end());
        return std::adjacent_find(sums.begin(), sums.end()) == sums.end();
    }
    if (diff_grid <= 10'000'000) {
        // check every bad equation sum Delta_j s_j u_j = 0 over the grid
        std::vector<long long> delta(r);
        for (std::size_t j = 0; j < r; ++j) delta[j] = -(static_cast<long long>(t[j]) - 1);
        for (;;) {
            bool all_zero = true;
            for (const long long dj : delta)
                if (dj != 0) all_zero = false;
            if (!all_zero) {
                std::array<Fe, 2> acc = {0, 0};
                for (std::size_t j = 0; j < r; ++j) {
                    const Fe dj = ctx.from_int(delta[j]);
                    const Fe f = ctx.mul(dj, s[j]);
                    acc[0] = ctx.add(acc[0], ctx.mul(f, u[j][0]));
                    acc[1] = ctx.add(acc[1], ctx.mul(f, u[j][1]));
                }
                if (acc[0] == 0 && acc[1] == 0) return false;
            }
            std::size_t j = r;
            bool done = true;
            while (j > 0) {
                --j;
                if (++delta[j] <= static_cast<long long>(t[j]) - 1) {
                    done = false;
                    break;
                }
                delta[j] = -(static_cast<long long>(t[j]) - 1);
            }
            if (done) break;
        }
        return true;
    }
    throw BudgetError("BudgetExceeded: box too large for exact injectivity check");
}

} // namespace

std::vector<Fe> choose_scalars(const std::vector<std::array<Fe, 2>>& u,
                               const std::vector<std::uint64_t>& t, const FieldCtx& ctx,
                               std::uint64_t seed, std::size_t max_tries,
                               std::size_t* tries_out) {
    const std::size_t r = u.size();
    if (t.size() != r) throw InputError("choose_scalars: side-length count mismatch");
    for (const std::uint64_t tj : t)
        if (tj >= ctx.p())
            throw InputError("PreconditionFailed: side length " + std::to_string(tj) +
                             " must be < p");
    Big P = 1;
    for (const std::uint64_t tj : t) P *= tj;
    for (std::size_t trial = 0; trial < max_tries; ++trial) {
        RngStream rng = RngStream::derive(seed, "attack/scalars", trial);
        std::vector<Fe> s(r);
        for (Fe& x : s) x = 1 + rng.below(ctx.p() - 1);
        if (box_injective(u, s, t, ctx, P)) {
            if (tries_out) *tries_out = trial + 1;
            return s;
        }
    }
    throw BudgetError("Exhausted: no injective rescaling in " + std::to_string(max_tries) +
                      " tries");
}

AttackPlan build_attack(const GeneratorMatrix& g, const Rat& alpha, const Rat& epsilon,
                        std::uint64_t ell, std::uint64_t seed) {
    const LowerBoundParams lb = lower_bound_params(alpha, epsilon, g.n);
    const std::uint64_t p = g.ctx.p();
    Big t_pow_n = 1;
    for (std::size_t i = 0; i < g.n; ++i) t_pow_n *= lb.T;
    if (Big(ell) < t_pow_n)
        throw InputError("PreconditionFailed: ell >= T^n violated (T^n = " + t_pow_n.str() +
                         ")");
    if (ell > p) throw InputError("PreconditionFailed: ell <= p violated");
    if (Big(p) < lb.f)
        throw InputError("PreconditionFailed: p >= f(n) violated (f(n) = " + lb.f.str() +
                         ")");

    AttackPlan plan;
    plan.ell = ell;
    plan.K = lb.K;
    plan.T = lb.T;
    std::tie(plan.basis1, plan.basis2) = pick_2d_subcode(g);
    KernelInfo ki = distinct_kernels(g, plan.basis1, plan.basis2);
    plan.kernels = std::move(ki.kernels);
    plan.coord_kernel = std::move(ki.coord_kernel);
    plan.r = plan.kernels.size();

    const BoxSides sides = side_lengths(plan.K, ell, plan.T, plan.r);
    plan.side_lengths = sides.t;
    plan.P = sides.P;

    plan.scalars = choose_scalars(plan.kernels, plan.side_lengths, g.ctx, seed, 64,
                                  &plan.scalar_tries);

    // the box A in subcode coordinates, then as ambient messages
    std::vector<std::array<Fe, 2>> scaled(plan.r);
    for (std::size_t j = 0; j < plan.r; ++j)
        scaled[j] = {g.ctx.mul(plan.scalars[j], plan.kernels[j][0]),
                     g.ctx.mul(plan.scalars[j], plan.kernels[j][1])};
    std::vector<std::uint64_t> a(plan.r, 0);
    std::array<Fe, 2> acc = {0, 0};
    for (;;) {
        Message msg(g.d, 0);
        for (std::size_t k = 0; k < g.d; ++k)
            msg[k] = g.ctx.add(g.ctx.mul(acc[0], plan.basis1[k]),
                               g.ctx.mul(acc[1], plan.basis2[k]));
        plan.box.push_back(std::move(msg));
        std::size_t j = plan.r;
        bool done = true;
        while (j > 0) {
            --j;
            if (++a[j] < plan.side_lengths[j]) {
                acc[0] = g.ctx.add(acc[0], scaled[j][0]);
                acc[1] = g.ctx.add(acc[1], scaled[j][1]);
                done = false;
                break;
            }
            const Fe back =
                g.ctx.from_int(static_cast<long long>((plan.side_lengths[j] - 1) % g.ctx.p()));
            acc[0] = g.ctx.sub(acc[0], g.ctx.mul(back, scaled[j][0]));
            acc[1] = g.ctx.sub(acc[1], g.ctx.mul(back, scaled[j][1]));
            a[j] = 0;
        }
        if (done) break;
    }
    if (Big(plan.box.size()) != plan.P) throw Error("build_attack: box size != P");

    // lists: S_i = lambda_i(A) padded with the smallest unused residues
    std::vector<std::vector<Fe>> lists(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
        std::vector<Fe> vals;
        for (const Message& msg : plan.box) vals.push_back(g.coord_form(i, msg));
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        if (vals.size() > ell)
            throw Error("build_attack: |lambda_i(A)| exceeds ell at coordinate " +
                        std::to_string(i));
        Fe cand = 0;
        while (vals.size() < ell) {
            if (!std::binary_search(vals.begin(), vals.end(), cand)) {
                vals.insert(std::lower_bound(vals.begin(), vals.end(), cand), cand);
            }
            ++cand;
        }
        lists[i] = std::move(vals);
    }
    plan.lists = make_list_family(p, ell, std::move(lists));
    return plan;
}

bool verify_attack(const GeneratorMatrix& g, const AttackPlan& plan, const Rat& alpha,
                   std::uint64_t cap) {
    const RecoveryReport rep = count_near_codewords(g, plan.lists, alpha, cap);
    return Rat(rep.count) > plan.K * plan.ell;
}

} // namespace lrc
