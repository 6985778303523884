#include "lrc/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <string>

#include "lrc/params.hpp"

namespace lrc {

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

double rho_of(std::size_t edge_count, std::size_t size) {
    if (size < 2) return 0.0;
    return static_cast<double>(edge_count) / (static_cast<double>(size) * std::log(size));
}

} // namespace

ColoredMultigraph make_graph(std::size_t w, std::size_t m, std::vector<ColoredEdge> edges) {
    for (const ColoredEdge& e : edges) {
        if (e.u == e.v) throw InputError("graph: loop edge");
        if (e.u >= w || e.v >= w) throw InputError("graph: vertex out of range");
        if (e.color >= m) throw InputError("graph: color out of range");
    }
    return ColoredMultigraph{w, m, std::move(edges)};
}

MatchingFamily make_matching_family(std::size_t w,
                                    std::vector<std::vector<ColoredEdge>> per_color) {
    for (std::size_t c = 0; c < per_color.size(); ++c) {
        std::vector<bool> used(w, false);
        for (const ColoredEdge& e : per_color[c]) {
            if (e.u == e.v) throw InputError("matching family: loop edge");
            if (e.u >= w || e.v >= w) throw InputError("matching family: vertex out of range");
            if (e.color != c) throw InputError("matching family: color tag mismatch");
            if (used[e.u] || used[e.v])
                throw InputError("matching family: color class " + std::to_string(c) +
                                 " is not a matching");
            used[e.u] = used[e.v] = true;
        }
    }
    return MatchingFamily{w, std::move(per_color)};
}

ColoredMultigraph to_graph(const MatchingFamily& mf) {
    std::vector<ColoredEdge> edges;
    for (const auto& cls : mf.per_color)
        edges.insert(edges.end(), cls.begin(), cls.end());
    return make_graph(mf.vertex_count, mf.per_color.size(), std::move(edges));
}

MatchingFamily to_matching_family(const ColoredMultigraph& g) {
    std::vector<std::vector<ColoredEdge>> per_color(g.color_count);
    for (const ColoredEdge& e : g.edges) per_color[e.color].push_back(e);
    return make_matching_family(g.vertex_count, std::move(per_color));
}

std::size_t cc_count(const ColoredMultigraph& h, std::span<const std::size_t> colors) {
    std::vector<bool> active(h.color_count, false);
    for (const std::size_t c : colors) {
        if (c >= h.color_count) throw InputError("cc_count: color out of range");
        active[c] = true;
    }
    UnionFind uf(h.vertex_count);
    std::size_t components = h.vertex_count;
    for (const ColoredEdge& e : h.edges)
        if (active[e.color] && uf.unite(e.u, e.v)) --components;
    return components;
}

MatchingFamily fibers_to_matchings(const std::vector<Message>& A, const GeneratorMatrix& g,
                                   const ListFamily& fam) {
    if (fam.lists.size() != g.n) throw InputError("fibers_to_matchings: family size mismatch");
    std::vector<std::vector<ColoredEdge>> per_color(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
        // fibers of lambda_i over A_i, keyed by value (deterministic order)
        std::map<Fe, std::vector<std::size_t>> fibers;
        for (std::size_t a = 0; a < A.size(); ++a) {
            const Fe x = g.coord_form(i, A[a]);
            if (std::binary_search(fam.lists[i].begin(), fam.lists[i].end(), x))
                fibers[x].push_back(a);
        }
        for (const auto& [value, pts] : fibers) {
            (void)value;
            for (std::size_t j = 0; j + 1 < pts.size(); j += 2)
                per_color[i].push_back({pts[j], pts[j + 1], i});
        }
    }
    return make_matching_family(A.size(), std::move(per_color));
}

std::vector<std::size_t> colors_crossing_cut(const ColoredMultigraph& h,
                                             std::span<const std::size_t> cut) {
    if (cut.empty() || cut.size() >= h.vertex_count)
        throw InputError("BadCut: cut must be a nonempty proper vertex subset");
    std::vector<bool> in_cut(h.vertex_count, false);
    for (const std::size_t v : cut) {
        if (v >= h.vertex_count) throw InputError("BadCut: vertex out of range");
        in_cut[v] = true;
    }
    std::vector<std::size_t> colors;
    for (const ColoredEdge& e : h.edges)
        if (in_cut[e.u] != in_cut[e.v]) colors.push_back(e.color);
    std::sort(colors.begin(), colors.end());
    colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
    return colors;
}

DensityResult max_density_subgraph(const ColoredMultigraph& g) {
    const std::size_t w = g.vertex_count;
    if (w < 2) throw InputError("TooSmall: density subgraph needs >= 2 vertices");

    const auto lex_less = [](const std::vector<std::size_t>& a,
                             const std::vector<std::size_t>& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    };

    DensityResult best;
    if (w <= 20) {
        for (std::uint32_t mask = 1; mask < (1u << w); ++mask) {
            const int size = __builtin_popcount(mask);
            if (size < 2) continue;
            std::size_t e = 0;
            for (const ColoredEdge& ed : g.edges)
                if (((mask >> ed.u) & 1u) && ((mask >> ed.v) & 1u)) ++e;
            const double rho = rho_of(e, size);
            if (best.W.empty() || rho > best.rho) {
                best.rho = rho;
                best.W.clear();
                for (std::size_t v = 0; v < w; ++v)
                    if ((mask >> v) & 1u) best.W.push_back(v);
            } else if (rho == best.rho) {
                std::vector<std::size_t> cand;
                for (std::size_t v = 0; v < w; ++v)
                    if ((mask >> v) & 1u) cand.push_back(v);
                if (lex_less(cand, best.W)) best.W = std::move(cand);
            }
        }
        best.exact = true;
        return best;
    }

    // Peeling: repeatedly drop the vertex of minimum (multiplicity) degree,
    // evaluating rho on every surviving prefix.
    std::vector<bool> alive(w, true);
    std::vector<std::size_t> degree(w, 0);
    std::size_t edges_left = g.edges.size();
    for (const ColoredEdge& e : g.edges) {
        ++degree[e.u];
        ++degree[e.v];
    }
    std::size_t alive_count = w;
    best.exact = false;
    while (alive_count >= 2) {
        const double rho = rho_of(edges_left, alive_count);
        if (best.W.empty() || rho > best.rho) {
            best.rho = rho;
            best.W.clear();
            for (std::size_t v = 0; v < w; ++v)
                if (alive[v]) best.W.push_back(v);
        }
        std::size_t victim = w;
        for (std::size_t v = 0; v < w; ++v)
            if (alive[v] && (victim == w || degree[v] < degree[victim])) victim = v;
        alive[victim] = false;
        --alive_count;
        // recompute degrees and edge count among survivors
        std::fill(degree.begin(), degree.end(), 0);
        edges_left = 0;
        for (const ColoredEdge& e : g.edges) {
            if (alive[e.u] && alive[e.v]) {
                ++degree[e.u];
                ++degree[e.v];
                ++edges_left;
            }
        }
    }
    return best;
}

ExpansionResult verify_expansion(const ColoredMultigraph& h, double gamma) {
    const std::size_t w = h.vertex_count;
    if (w > 20) throw BudgetError("BudgetExceeded: verify_expansion needs w <= 20");
    if (w < 2) throw InputError("verify_expansion: need >= 2 vertices");
    // distinct crossing colors per cut, exhaustively
    for (std::uint32_t mask = 1; mask + 1 < (1u << w); ++mask) {
        const std::size_t a = static_cast<std::size_t>(__builtin_popcount(mask));
        if (2 * a > w) continue;
        std::vector<bool> seen(h.color_count, false);
        std::size_t crossing = 0;
        for (const ColoredEdge& e : h.edges) {
            if ((((mask >> e.u) ^ (mask >> e.v)) & 1u) && !seen[e.color]) {
                seen[e.color] = true;
                ++crossing;
            }
        }
        const double required =
            gamma * static_cast<double>(h.color_count) * std::log(static_cast<double>(w) / a);
        if (static_cast<double>(crossing) < required) {
            ExpansionResult res;
            res.ok = false;
            for (std::size_t v = 0; v < w; ++v)
                if ((mask >> v) & 1u) res.violating_cut.push_back(v);
            return res;
        }
    }
    return {true, {}};
}

double expansion_gamma(const ColoredMultigraph& h) {
    const std::size_t w = h.vertex_count;
    if (w > 20) throw BudgetError("BudgetExceeded: expansion_gamma needs w <= 20");
    if (w < 2) throw InputError("expansion_gamma: need >= 2 vertices");
    double gamma = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 1; mask + 1 < (1u << w); ++mask) {
        const std::size_t a = static_cast<std::size_t>(__builtin_popcount(mask));
        if (2 * a > w) continue;
        std::vector<bool> seen(h.color_count, false);
        std::size_t crossing = 0;
        for (const ColoredEdge& e : h.edges) {
            if ((((mask >> e.u) ^ (mask >> e.v)) & 1u) && !seen[e.color]) {
                seen[e.color] = true;
                ++crossing;
            }
        }
        const double denom =
            static_cast<double>(h.color_count) * std::log(static_cast<double>(w) / a);
        gamma = std::min(gamma, static_cast<double>(crossing) / denom);
    }
    return gamma;
}

std::size_t connectivity_trial_budget(double gamma, std::size_t w, double eta) {
    if (gamma <= 0 || eta <= 0 || eta >= 1 || w < 2)
        throw InputError("OutOfRange: connectivity_trial_budget");
    const double val =
        (4.0 / gamma) * (std::log(std::log(4.0 * static_cast<double>(w))) +
                         std::log(1.0 / eta) + 1.0);
    return static_cast<std::size_t>(std::ceil(val));
}

bool random_color_connectivity_trial(const ColoredMultigraph& h, std::size_t T,
                                     std::uint64_t seed, std::uint64_t trial_index) {
    if (T > h.color_count) throw InputError("BadT: T exceeds the number of colors");
    RngStream rng = RngStream::derive(seed, "graphs/connectivity-trial", trial_index);
    const std::vector<std::size_t> colors = rng.sample_subset(h.color_count, T);
    return cc_count(h, colors) == 1;
}

namespace {

/// BFS spanning tree of the subgraph (W, edges); edges must connect W.
std::vector<ColoredEdge> extract_tree(const std::vector<std::size_t>& W,
                                      const std::vector<ColoredEdge>& edges) {
    std::vector<std::size_t> local(*std::max_element(W.begin(), W.end()) + 1, SIZE_MAX);
    for (std::size_t i = 0; i < W.size(); ++i) local[W[i]] = i;
    std::vector<std::vector<std::pair<std::size_t, ColoredEdge>>> adj(W.size());
    std::vector<ColoredEdge> sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    for (const ColoredEdge& e : sorted) {
        adj[local[e.u]].push_back({local[e.v], e});
        adj[local[e.v]].push_back({local[e.u], e});
    }
    std::vector<bool> visited(W.size(), false);
    std::vector<ColoredEdge> tree;
    std::queue<std::size_t> q;
    q.push(0); // smallest vertex of W
    visited[0] = true;
    while (!q.empty()) {
        const std::size_t x = q.front();
        q.pop();
        for (const auto& [y, e] : adj[x]) {
            if (visited[y]) continue;
            visited[y] = true;
            tree.push_back(e);
            q.push(y);
        }
    }
    if (tree.size() + 1 != W.size())
        throw Error("extract_tree: subgraph not connected on W");
    return tree;
}

std::vector<std::size_t> distinct_colors(const std::vector<ColoredEdge>& edges) {
    std::vector<std::size_t> cs;
    for (const ColoredEdge& e : edges) cs.push_back(e.color);
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    return cs;
}

} // namespace

std::optional<DisjointTreeBundle> find_disjoint_spanning_trees(const MatchingFamily& mf,
                                                               std::size_t d,
                                                               const Rat& beta,
                                                               std::uint64_t seed,
                                                               std::size_t retries) {
    if (d == 0) throw InputError("find_disjoint_spanning_trees: d >= 1 required");
    const ColoredMultigraph g = to_graph(mf); // validates matchings
    const std::size_t m = mf.per_color.size();
    const std::size_t b = mf.vertex_count;
    if (b < 2 || m < d) return std::nullopt;

    const DensityResult density = max_density_subgraph(g);
    const std::vector<std::size_t>& W = density.W;
    std::vector<bool> in_W(b, false);
    for (const std::size_t v : W) in_W[v] = true;

    // edges of G[W], grouped by color
    std::vector<std::vector<ColoredEdge>> on_W(m);
    for (const ColoredEdge& e : g.edges)
        if (in_W[e.u] && in_W[e.v]) on_W[e.color].push_back(e);

    const std::size_t lemma_block = tree_budget(b < 2 ? 2 : b, beta, d);
    const std::size_t block = std::min(lemma_block, m / d);
    if (block == 0) return std::nullopt;

    const auto try_blocks =
        [&](const std::vector<std::vector<std::size_t>>& blocks) -> std::optional<std::vector<std::vector<ColoredEdge>>> {
        std::vector<std::vector<ColoredEdge>> trees;
        for (const auto& colors : blocks) {
            std::vector<ColoredEdge> sub;
            for (const std::size_t c : colors)
                sub.insert(sub.end(), on_W[c].begin(), on_W[c].end());
            // connectivity of the block's subgraph on W
            UnionFind uf(W.size());
            std::vector<std::size_t> local(b, SIZE_MAX);
            for (std::size_t i = 0; i < W.size(); ++i) local[W[i]] = i;
            std::size_t comps = W.size();
            for (const ColoredEdge& e : sub)
                if (uf.unite(local[e.u], local[e.v])) --comps;
            if (comps != 1) return std::nullopt;
            trees.push_back(extract_tree(W, sub));
        }
        return trees;
    };

    for (std::size_t r = 0; r < retries; ++r) {
        RngStream rng = RngStream::derive(seed, "graphs/tree-blocks", r);
        std::vector<std::size_t> perm(m);
        std::iota(perm.begin(), perm.end(), 0);
        rng.shuffle(perm);
        std::vector<std::vector<std::size_t>> blocks(d);
        for (std::size_t q = 0; q < d; ++q)
            blocks[q].assign(perm.begin() + q * block, perm.begin() + (q + 1) * block);
        if (auto trees = try_blocks(blocks)) {
            DisjointTreeBundle bundle;
            bundle.W = W;
            bundle.trees = std::move(*trees);
            for (const auto& t : bundle.trees) bundle.color_sets.push_back(distinct_colors(t));
            bundle.retries_used = r + 1;
            bundle.via_exhaustive = false;
            return bundle;
        }
    }

    // Exhaustive fallback over color-to-tree assignments (0 = unused).
    if (W.size() <= 8 && m <= 12) {
        std::vector<std::size_t> assign(m, 0);
        for (;;) {
            std::vector<std::vector<std::size_t>> blocks(d);
            for (std::size_t c = 0; c < m; ++c)
                if (assign[c] > 0) blocks[assign[c] - 1].push_back(c);
            bool all_nonempty = true;
            for (const auto& bl : blocks)
                if (bl.empty()) all_nonempty = false;
            if (all_nonempty) {
                if (auto trees = try_blocks(blocks)) {
                    DisjointTreeBundle bundle;
                    bundle.W = W;
                    bundle.trees = std::move(*trees);
                    for (const auto& t : bundle.trees)
                        bundle.color_sets.push_back(distinct_colors(t));
                    bundle.retries_used = retries;
                    bundle.via_exhaustive = true;
                    return bundle;
                }
            }
            std::size_t c = m;
            bool done = true;
            while (c > 0) {
                --c;
                if (++assign[c] <= d) {
                    done = false;
                    break;
                }
                assign[c] = 0;
            }
            if (done) break;
        }
    }
    return std::nullopt;
}

} // namespace lrc
