#include "lrc/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace lrc {

namespace {

std::vector<std::size_t> tree_color_set(const std::vector<ColoredEdge>& tree) {
    std::vector<std::size_t> cs;
    for (const ColoredEdge& e : tree) cs.push_back(e.color);
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    return cs;
}

bool sets_intersect(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return true;
        a[i] < b[j] ? ++i : ++j;
    }
    return false;
}

/// Decode a Pruefer sequence over [0, w) into the edge list of the labeled
/// tree (w >= 2; empty sequence for w = 2).
std::vector<std::pair<std::size_t, std::size_t>> pruefer_decode(
    const std::vector<std::size_t>& seq, std::size_t w) {
    std::vector<std::size_t> degree(w, 1);
    for (const std::size_t x : seq) ++degree[x];
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<bool> used(w, false);
    for (const std::size_t x : seq) {
        std::size_t leaf = w;
        for (std::size_t v = 0; v < w; ++v)
            if (degree[v] == 1 && !used[v]) {
                leaf = v;
                break;
            }
        edges.push_back({std::min(leaf, x), std::max(leaf, x)});
        used[leaf] = true;
        --degree[x];
    }
    std::vector<std::size_t> last;
    for (std::size_t v = 0; v < w; ++v)
        if (!used[v] && degree[v] == 1) last.push_back(v);
    edges.push_back({last[0], last[1]});
    return edges;
}

bool is_spanning_tree(std::size_t w, const std::vector<ColoredEdge>& edges) {
    if (edges.size() + 1 != w) return false;
    std::vector<std::size_t> parent(w);
    std::iota(parent.begin(), parent.end(), 0);
    const std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const ColoredEdge& e : edges) {
        if (e.u >= w || e.v >= w || e.u == e.v) return false;
        const std::size_t a = find(e.u), b = find(e.v);
        if (a == b) return false; // cycle
        parent[a] = b;
    }
    return true;
}

} // namespace

TreeCertificate make_certificate(std::size_t w, std::vector<std::vector<ColoredEdge>> trees) {
    if (w < 2) throw InputError("certificate: w >= 2 required");
    if (trees.empty()) throw InputError("certificate: at least one tree required");
    for (auto& tree : trees) {
        for (ColoredEdge& e : tree)
            if (e.u > e.v) std::swap(e.u, e.v);
        std::sort(tree.begin(), tree.end());
        if (!is_spanning_tree(w, tree))
            throw InputError("certificate: a tree does not span [0,w)");
    }
    std::sort(trees.begin(), trees.end());
    std::vector<std::vector<std::size_t>> sets;
    for (const auto& tree : trees) sets.push_back(tree_color_set(tree));
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j)
            if (sets_intersect(sets[i], sets[j]))
                throw InputError("certificate: tree color sets are not pairwise disjoint");
    return TreeCertificate{w, std::move(trees)};
}

Matrix build_R_matrix(const TreeCertificate& cert, const CoefficientArray& coeffs,
                      const FieldCtx& ctx) {
    const std::size_t w = cert.w;
    const std::size_t d = cert.trees.size();
    const std::size_t N = d * (w - 1);
    Matrix R(N, N);
    std::size_t row = 0;
    for (const auto& tree : cert.trees) {
        for (const ColoredEdge& e : tree) {
            if (e.color >= coeffs.rows)
                throw InputError("ColorOutOfRange: certificate color " +
                                 std::to_string(e.color) + " has no coefficient row");
            for (std::size_t s = 0; s + 1 < w; ++s) {
                if (s != e.u && s != e.v) continue;
                for (std::size_t j = 0; j < d; ++j) {
                    const Fe a = coeffs.at(e.color, j);
                    R.at(row, s * d + j) = (s == e.u) ? a : ctx.neg(a);
                }
            }
            ++row;
        }
    }
    return R;
}

Fe eval_certificate(const TreeCertificate& cert, const CoefficientArray& coeffs,
                    const FieldCtx& ctx) {
    return det_mod_p(build_R_matrix(cert, coeffs, ctx), ctx);
}

Fe specialization_sanity(const TreeCertificate& cert, const FieldCtx& ctx) {
    std::size_t max_color = 0;
    for (const auto& tree : cert.trees)
        for (const ColoredEdge& e : tree) max_color = std::max(max_color, e.color);
    CoefficientArray coeffs(max_color + 1, cert.trees.size());
    for (std::size_t r = 0; r < cert.trees.size(); ++r)
        for (const ColoredEdge& e : cert.trees[r]) coeffs.at(e.color, r) = 1;
    return eval_certificate(cert, coeffs, ctx);
}

Big certificate_count_bound(std::size_t B, std::size_t m, std::size_t d) {
    Big base = Big(B) * B * m;
    Big pow = 1;
    for (std::size_t i = 0; i < d * B; ++i) pow *= base;
    return Big(B) * pow;
}

namespace {

Big surjections(std::size_t n, std::size_t k) {
    // k! * S(n,k) by inclusion-exclusion
    Big total = 0;
    Big binom = 1; // C(k, i)
    for (std::size_t i = 0; i <= k; ++i) {
        Big term = binom;
        Big powv = 1;
        for (std::size_t t = 0; t < n; ++t) powv *= (k - i);
        term *= powv;
        total += (i % 2 == 0) ? term : -term;
        binom = binom * (k - i) / (i + 1);
    }
    return total;
}

Big cayley(std::size_t w) {
    if (w == 2) return 1;
    Big r = 1;
    for (std::size_t i = 0; i + 2 < w; ++i) r *= w;
    return r;
}

Big factorial(std::size_t n) {
    Big r = 1;
    for (std::size_t i = 2; i <= n; ++i) r *= i;
    return r;
}

/// Ordered d-tuples of colorings of (w-1) edges with pairwise disjoint
/// nonempty supports inside [0, m).
Big disjoint_color_tuples(std::size_t edges, std::size_t m, std::size_t d) {
    const std::function<Big(std::size_t, std::size_t)> rec =
        [&](std::size_t avail, std::size_t left) -> Big {
        if (left == 0) return 1;
        Big total = 0;
        Big binom = 1; // C(avail, s)
        for (std::size_t s = 1; s <= std::min(edges, avail); ++s) {
            binom = binom * (avail - s + 1) / s;
            total += binom * surjections(edges, s) * rec(avail - s, left - 1);
        }
        return total;
    };
    return rec(m, d);
}

} // namespace

Big certificate_count(std::size_t B, std::size_t m, std::size_t d) {
    if (B < 2) throw InputError("certificate_count: B >= 2 required");
    Big total = 0;
    for (std::size_t w = 2; w <= B; ++w) {
        Big trees = cayley(w);
        Big per_tree = 1;
        for (std::size_t r = 0; r < d; ++r) per_tree *= trees;
        // trees in a certificate are pairwise distinct (disjoint nonempty
        // color sets), so unordered tuples = ordered / d!
        total += per_tree * disjoint_color_tuples(w - 1, m, d) / factorial(d);
    }
    return total;
}

namespace {

struct CanonTree {
    std::vector<ColoredEdge> edges; // sorted, u < v
    std::vector<std::size_t> colors;
};

/// All colored labeled trees on [0, w) with colors in [0, m), sorted by
/// canonical encoding.
std::vector<CanonTree> all_colored_trees(std::size_t w, std::size_t m) {
    std::vector<CanonTree> out;
    std::vector<std::size_t> seq(w >= 2 ? w - 2 : 0, 0);
    for (;;) {
        const auto skeleton = pruefer_decode(seq, w);
        std::vector<std::pair<std::size_t, std::size_t>> sorted_skel = skeleton;
        std::sort(sorted_skel.begin(), sorted_skel.end());
        // color assignments via odometer
        std::vector<std::size_t> color(w - 1, 0);
        for (;;) {
            CanonTree t;
            for (std::size_t i = 0; i + 1 < w; ++i)
                t.edges.push_back({sorted_skel[i].first, sorted_skel[i].second, color[i]});
            std::sort(t.edges.begin(), t.edges.end());
            t.colors = tree_color_set(t.edges);
            out.push_back(std::move(t));
            std::size_t i = w - 1;
            bool done = true;
            while (i > 0) {
                --i;
                if (++color[i] < m) {
                    done = false;
                    break;
                }
                color[i] = 0;
            }
            if (done) break;
        }
        // next Pruefer sequence
        std::size_t i = seq.size();
        bool done = true;
        while (i > 0) {
            --i;
            if (++seq[i] < w) {
                done = false;
                break;
            }
            seq[i] = 0;
        }
        if (done) break;
    }
    std::sort(out.begin(), out.end(),
              [](const CanonTree& a, const CanonTree& b) { return a.edges < b.edges; });
    return out;
}

} // namespace

void enumerate_certificates(std::size_t B, std::size_t m, std::size_t d, const Big& budget,
                            const std::function<bool(const TreeCertificate&)>& visit) {
    if (B < 2) throw InputError("enumerate_certificates: B >= 2 required");
    if (m == 0 || d == 0) throw InputError("enumerate_certificates: m, d >= 1 required");
    const Big count = certificate_count(B, m, d);
    if (count > budget)
        throw BudgetError("BudgetExceeded: " + count.str() + " certificates (union bound " +
                          certificate_count_bound(B, m, d).str() + ") exceed budget " +
                          budget.str());
    for (std::size_t w = 2; w <= B; ++w) {
        // the per-size colored-tree scan is also work; keep it within budget
        Big scan = cayley(w);
        for (std::size_t i = 0; i + 1 < w; ++i) scan *= m;
        if (scan > budget)
            throw BudgetError("BudgetExceeded: colored-tree scan for w=" +
                              std::to_string(w) + " has " + scan.str() +
                              " trees, budget " + budget.str());
        const std::vector<CanonTree> trees = all_colored_trees(w, m);

        std::vector<std::size_t> pick(d);
        std::vector<const CanonTree*> chosen(d);
        const std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t level,
                                                                      std::size_t start) {
            if (level == d) {
                TreeCertificate cert;
                cert.w = w;
                for (const CanonTree* t : chosen) cert.trees.push_back(t->edges);
                return visit(cert);
            }
            for (std::size_t i = start; i < trees.size(); ++i) {
                bool ok = true;
                for (std::size_t l = 0; l < level && ok; ++l)
                    if (sets_intersect(chosen[l]->colors, trees[i].colors)) ok = false;
                if (!ok) continue;
                chosen[level] = &trees[i];
                if (!rec(level + 1, i + 1)) return false;
            }
            return true;
        };
        if (!rec(0, 0)) return;
    }
}

GoodnessResult check_good_up_to_B(const CoefficientArray& coeffs, std::size_t B,
                                  const FieldCtx& ctx, const Big& budget) {
    GoodnessResult res;
    enumerate_certificates(B, coeffs.rows, coeffs.cols, budget,
                           [&](const TreeCertificate& cert) {
                               res.certificates_checked += 1;
                               if (eval_certificate(cert, coeffs, ctx) == 0) {
                                   res.good = false;
                                   res.first_failing = cert;
                                   return false;
                               }
                               return true;
                           });
    res.exhaustive = true;
    return res;
}

TreeCertificate random_certificate(std::size_t B, std::size_t m, std::size_t d,
                                   RngStream& rng) {
    if (m < d) throw InputError("random_certificate: m >= d required");
    const std::size_t w = 2 + static_cast<std::size_t>(rng.below(B - 1));
    // disjoint color pools: a random permutation of colors split into d blocks
    std::vector<std::size_t> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    const std::size_t pool = m / d;
    std::vector<std::vector<ColoredEdge>> trees(d);
    for (std::size_t r = 0; r < d; ++r) {
        std::vector<std::size_t> seq(w >= 2 ? w - 2 : 0);
        for (std::size_t& x : seq) x = rng.below(w);
        const auto skel = pruefer_decode(seq, w);
        for (const auto& [u, v] : skel) {
            const std::size_t c = perm[r * pool + rng.below(pool)];
            trees[r].push_back({u, v, c});
        }
    }
    return make_certificate(w, std::move(trees));
}

GoodnessResult check_good_sampled(const CoefficientArray& coeffs, std::size_t B,
                                  const FieldCtx& ctx, std::size_t samples,
                                  std::uint64_t seed) {
    GoodnessResult res;
    res.exhaustive = false;
    for (std::size_t s = 0; s < samples; ++s) {
        RngStream rng = RngStream::derive(seed, "certificates/sampled-goodness", s);
        const TreeCertificate cert = random_certificate(B, coeffs.rows, coeffs.cols, rng);
        res.certificates_checked += 1;
        if (eval_certificate(cert, coeffs, ctx) == 0) {
            res.good = false;
            res.first_failing = cert;
            return res;
        }
    }
    return res;
}

CollapseResult collapse_points(const TreeCertificate& cert, const CoefficientArray& coeffs,
                               const std::vector<Message>& points, const FieldCtx& ctx) {
    if (points.size() != cert.w) throw InputError("collapse_points: need one point per vertex");
    const std::size_t d = cert.trees.size();
    for (const Message& q : points)
        if (q.size() != d) throw InputError("collapse_points: point dimension mismatch");
    CollapseResult res;
    res.consistent = true;
    for (const auto& tree : cert.trees) {
        for (const ColoredEdge& e : tree) {
            if (e.color >= coeffs.rows)
                throw InputError("ColorOutOfRange: certificate color " +
                                 std::to_string(e.color) + " has no coefficient row");
            Fe acc = 0;
            for (std::size_t j = 0; j < d; ++j) {
                const Fe diff = ctx.sub(points[e.u][j], points[e.v][j]);
                acc = ctx.add(acc, ctx.mul(coeffs.at(e.color, j), diff));
            }
            if (acc != 0) res.consistent = false;
        }
    }
    res.forced_equal = true;
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i] != points[0]) res.forced_equal = false;
    return res;
}

Rat sz_failure_bound(std::size_t B, std::size_t m, std::size_t d, std::uint64_t p) {
    Big base = Big(B) * B * m;
    Big pow = 1;
    for (std::size_t i = 0; i < d * B; ++i) pow *= base;
    return Rat(Big(d) * B * B * pow, Big(p));
}

SzReport sz_experiment(std::size_t B, std::size_t m, std::size_t d, std::uint64_t p,
                       std::size_t trials, std::uint64_t seed, const Big& budget) {
    const FieldCtx ctx(p);
    SzReport rep;
    rep.B = B;
    rep.m = m;
    rep.d = d;
    rep.p = p;
    rep.trials = trials;
    rep.bound = sz_failure_bound(B, m, d, p);
    for (std::size_t t = 0; t < trials; ++t) {
        RngStream rng = RngStream::derive(seed, "certificates/sz-trial", t);
        CoefficientArray coeffs(m, d);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < d; ++j) coeffs.at(i, j) = rng.below(p);
        const GoodnessResult g = check_good_up_to_B(coeffs, B, ctx, budget);
        if (!g.good) ++rep.failures;
        rep.rows.push_back({t, g.good, g.first_failing});
    }
    rep.frequency = trials ? static_cast<double>(rep.failures) / trials : 0.0;
    // Wilson 95% interval
    if (trials) {
        const double z = 1.959963984540054;
        const double n = static_cast<double>(trials);
        const double ph = rep.frequency;
        const double denom = 1.0 + z * z / n;
        const double center = (ph + z * z / (2 * n)) / denom;
        const double half =
            z * std::sqrt(ph * (1 - ph) / n + z * z / (4 * n * n)) / denom;
        rep.wilson_low = std::max(0.0, center - half);
        rep.wilson_high = std::min(1.0, center + half);
    }
    return rep;
}

} // namespace lrc
