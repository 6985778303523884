#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lrc/lists.hpp"
#include "lrc/prng.hpp"
#include "lrc/rational.hpp"

namespace lrc {

struct ColoredEdge {
    std::size_t u = 0;
    std::size_t v = 0;
    std::size_t color = 0;

    bool operator==(const ColoredEdge&) const = default;
    auto operator<=>(const ColoredEdge&) const = default;
};

/// Loopless edge-colored multigraph on vertices [0, w) with colors [0, m).
struct ColoredMultigraph {
    std::size_t vertex_count = 0;
    std::size_t color_count = 0;
    std::vector<ColoredEdge> edges;
};

ColoredMultigraph make_graph(std::size_t w, std::size_t m, std::vector<ColoredEdge> edges);

/// Per-color edge lists where every color class is a matching.
struct MatchingFamily {
    std::size_t vertex_count = 0;
    std::vector<std::vector<ColoredEdge>> per_color;
};

MatchingFamily make_matching_family(std::size_t w, std::vector<std::vector<ColoredEdge>> per_color);
ColoredMultigraph to_graph(const MatchingFamily& mf);
MatchingFamily to_matching_family(const ColoredMultigraph& g);

/// Connected components of the spanning subgraph with edge colors restricted
/// to `colors`, isolated vertices included.
std::size_t cc_count(const ColoredMultigraph& h, std::span<const std::size_t> colors);

/// For each coordinate i, partition A_i = {a in A : lambda_i(a) in S_i} into
/// fibers of lambda_i and pair greedily inside each fiber. Guarantees
/// |M_i| >= ceil((a_i - ell)/2) whenever a_i > ell.
MatchingFamily fibers_to_matchings(const std::vector<Message>& A, const GeneratorMatrix& g,
                                   const ListFamily& fam);

/// Colors with at least one edge crossing the cut (A, V \ A).
/// Throws InputError("BadCut") if A is empty or all of V.
std::vector<std::size_t> colors_crossing_cut(const ColoredMultigraph& h,
                                             std::span<const std::size_t> cut);

struct DensityResult {
    std::vector<std::size_t> W; // sorted, |W| >= 2
    double rho = 0.0;           // e(W) / (|W| ln |W|), multiplicities counted
    bool exact = true;          // subset enumeration vs peeling heuristic
};

/// Maximize rho(U) = e(U)/(|U| ln|U|) over |U| >= 2. Exact by subset
/// enumeration up to 20 vertices; peeling heuristic (flagged) beyond.
DensityResult max_density_subgraph(const ColoredMultigraph& g);

struct ExpansionResult {
    bool ok = false;
    std::vector<std::size_t> violating_cut; // empty when ok
};

/// Check that every nonempty A with |A| <= w/2 has at least
/// gamma * m * ln(w/|A|) distinct crossing colors. Exhaustive; w <= 20.
ExpansionResult verify_expansion(const ColoredMultigraph& h, double gamma);

/// Largest gamma the graph certifies: min over cuts of
/// crossing_colors / (m * ln(w/|A|)).
double expansion_gamma(const ColoredMultigraph& h);

/// Lemma-style trial budget: ceil((4/gamma)(ln ln(4w) + ln(1/eta) + 1)).
std::size_t connectivity_trial_budget(double gamma, std::size_t w, double eta);

/// Sample a uniform T-subset of colors and report whether H[I] is connected.
bool random_color_connectivity_trial(const ColoredMultigraph& h, std::size_t T,
                                     std::uint64_t seed, std::uint64_t trial_index = 0);

struct DisjointTreeBundle {
    std::vector<std::size_t> W;                     // sorted vertex subset
    std::vector<std::vector<ColoredEdge>> trees;    // d spanning trees on W
    std::vector<std::vector<std::size_t>> color_sets; // sorted, pairwise disjoint
    std::size_t retries_used = 0;
    bool via_exhaustive = false;
};

/// Probabilistic construction: W from max_density_subgraph, then d consecutive
/// color blocks of size T(b) (or floor(m/d) when colors are scarce) in a random
/// permutation; accept when every block connects W. Falls back to exhaustive
/// search over color-to-tree assignments when |W| <= 8 and m <= 12.
/// NotFound (nullopt) is a legitimate outcome when the hypotheses fail.
std::optional<DisjointTreeBundle> find_disjoint_spanning_trees(const MatchingFamily& mf,
                                                               std::size_t d,
                                                               const Rat& beta,
                                                               std::uint64_t seed,
                                                               std::size_t retries);

} // namespace lrc
