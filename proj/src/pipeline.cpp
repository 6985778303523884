#include "lrc/pipeline.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "lrc/code.hpp"

namespace lrc {

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::ConsistentWithTheorem: return "ConsistentWithTheorem";
        case Verdict::CounterexampleFound: return "CounterexampleFound";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

std::vector<std::size_t> matching_color_filter(const MatchingFamily& matchings,
                                               const Rat& beta, std::size_t b) {
    std::vector<std::size_t> I;
    for (std::size_t i = 0; i < matchings.per_color.size(); ++i)
        if (Rat(matchings.per_color[i].size()) >= beta * b) I.push_back(i);
    return I;
}

namespace {

std::uint64_t cgr_cached(const Rat& beta, std::size_t d, std::uint64_t s_max) {
    static std::mutex mu;
    static std::map<std::tuple<std::string, std::size_t, std::uint64_t>, std::uint64_t> cache;
    const auto key = std::make_tuple(format_rational(beta), d, s_max);
    std::lock_guard<std::mutex> lock(mu);
    const auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const std::uint64_t val = cgr_estimate(beta, d, s_max).value;
    cache.emplace(key, val);
    return val;
}

/// Run fibers -> color filter -> disjoint trees -> collapse on one candidate
/// set. Any bundle found on an instance whose forms are exactly good up to B,
/// or any bundle whose nonzero determinant coexists with consistent equations
/// on distinct points, counts as a contradiction violation.
BundleRecord run_contradiction_machine(const GeneratorMatrix& g, const ListFamily& fam,
                                       const std::vector<Message>& A,
                                       const RecoveryParams& params, std::uint64_t bad_limit,
                                       const Rat& Kl, std::uint64_t seed,
                                       std::uint64_t machine_index, const Budgets& budgets,
                                       bool goodness_exact_holds,
                                       std::size_t* violations) {
    BundleRecord rec;
    rec.set_size = A.size();
    const std::size_t b = A.size();

    // genuine violator: every point within the bad budget and |A| > K*ell
    bool all_within = true;
    for (const Message& a : A) {
        std::size_t bad = 0;
        for (std::size_t i = 0; i < g.n; ++i) {
            const Fe x = g.coord_form(i, a);
            if (!std::binary_search(fam.lists[i].begin(), fam.lists[i].end(), x)) ++bad;
        }
        if (bad > bad_limit) {
            all_within = false;
            break;
        }
    }
    rec.genuine_violator = all_within && Rat(b) > Kl;

    const MatchingFamily matchings = fibers_to_matchings(A, g, fam);
    const std::vector<std::size_t> I = matching_color_filter(matchings, params.beta, b);
    rec.filtered_colors = I.size();

    if (rec.genuine_violator) {
        // the proof's counting chain: sum |M_i| > mu*n*b  =>  |I| > theta*n
        std::size_t total = 0;
        for (const auto& cls : matchings.per_color) total += cls.size();
        if (Rat(total) > params.mu * g.n * b && !(Rat(I.size()) > params.theta * g.n))
            ++*violations;
    }

    // restrict the family to colors I (dense relabel, remember the origin)
    std::vector<std::vector<ColoredEdge>> dense;
    std::vector<std::size_t> origin;
    for (const std::size_t i : I) {
        std::vector<ColoredEdge> cls = matchings.per_color[i];
        for (ColoredEdge& e : cls) e.color = dense.size();
        dense.push_back(std::move(cls));
        origin.push_back(i);
    }
    if (dense.empty()) return rec;
    const MatchingFamily restricted = make_matching_family(b, std::move(dense));

    const auto bundle = find_disjoint_spanning_trees(
        restricted, g.d, params.beta, splitmix64(seed ^ machine_index), budgets.tree_retries);
    if (!bundle) return rec;

    rec.bundle_found = true;
    rec.via_exhaustive = bundle->via_exhaustive;

    // bundle -> tree certificate on W relabeled to [0, |W|), original colors
    std::vector<std::size_t> local(b, SIZE_MAX);
    for (std::size_t i = 0; i < bundle->W.size(); ++i) local[bundle->W[i]] = i;
    std::vector<std::vector<ColoredEdge>> trees;
    for (const auto& t : bundle->trees) {
        std::vector<ColoredEdge> tree;
        for (const ColoredEdge& e : t)
            tree.push_back({local[e.u], local[e.v], origin[e.color]});
        trees.push_back(std::move(tree));
    }
    const TreeCertificate cert = make_certificate(bundle->W.size(), std::move(trees));
    std::vector<Message> points;
    for (const std::size_t v : bundle->W) points.push_back(A[v]);

    rec.cert_eval = eval_certificate(cert, g.m, g.ctx);
    const CollapseResult col = collapse_points(cert, g.m, points, g.ctx);
    rec.consistent = col.consistent;
    rec.forced_equal = col.forced_equal;

    // Lemma-3.1-style contract: nonzero determinant + consistent equations
    // force equal points. Distinct points of A make that impossible.
    if (rec.cert_eval != 0 && rec.consistent && !rec.forced_equal) {
        ++*violations;
    } else if (goodness_exact_holds && rec.cert_eval == 0) {
        // the bundle is a certificate of size <= B that vanishes, yet the
        // exhaustive goodness check claimed none does
        ++*violations;
    }
    return rec;
}

} // namespace

PipelineReport run_main_experiment(const Rat& alpha, const Rat& epsilon, std::size_t d,
                                   std::size_t n, std::uint64_t p, std::uint64_t ell,
                                   std::uint64_t seed, const Budgets& budgets) {
    PipelineReport rep;
    rep.alpha = alpha;
    rep.epsilon = epsilon;
    rep.d = d;
    rep.n = n;
    rep.p = p;
    rep.ell = ell;
    rep.seed = seed;

    rep.params = derive_params(alpha, epsilon, d);
    rep.C_gr = cgr_cached(rep.params.beta, d, budgets.cgr_scan);
    const Rat Kl = rep.params.K * ell;
    rep.B = floor_rat(Kl).convert_to<std::uint64_t>() + 1;
    rep.hypothesis_ok =
        static_cast<double>(n) >= static_cast<double>(rep.C_gr) /
                                      to_double(rep.params.theta) *
                                      lambda_fn(static_cast<double>(std::max<std::uint64_t>(rep.B, 2)));

    const FieldCtx ctx(p);
    Big pd = 1;
    for (std::size_t j = 0; j < d; ++j) pd *= p;
    rep.degenerate = Rat(pd) <= Kl;

    const FullRankResult fr = condition_full_rank(n, d, ctx, seed);
    const GeneratorMatrix& g = fr.g;
    rep.conditioning_tries = fr.tries;

    // goodness of the code's coordinate forms up to B
    bool budget_trouble = false;
    const Big exact_count = certificate_count(std::max<std::size_t>(rep.B, 2), n, d);
    if (exact_count <= budgets.certificate_budget) {
        const GoodnessResult good =
            check_good_up_to_B(g.m, std::max<std::size_t>(rep.B, 2), ctx,
                               budgets.certificate_budget);
        rep.goodness_mode = "exact";
        rep.goodness_holds = good.good;
        rep.certificates_checked = good.certificates_checked;
    } else {
        const GoodnessResult good =
            check_good_sampled(g.m, std::max<std::size_t>(rep.B, 2), ctx,
                               budgets.goodness_samples, splitmix64(seed ^ 0x600d));
        rep.goodness_mode = "sampled";
        rep.goodness_holds = good.good;
        rep.certificates_checked = good.certificates_checked;
    }
    const bool goodness_exact_holds = rep.goodness_mode == "exact" && rep.goodness_holds;

    const std::uint64_t bad_limit = floor_mul(alpha, n);
    const std::uint64_t L = floor_rat(Kl).convert_to<std::uint64_t>();

    // randomized adversary search for a violating family
    std::optional<ListFamily> best_family;
    try {
        const AttackSearchResult search = random_attack_search(
            g, alpha, ell, L, budgets.attack_trials, splitmix64(seed ^ 0xa77ac), {},
            budgets.message_cap);
        rep.attacks_tried = search.trials_run;
        rep.max_count_found = search.best.count;
        if (search.best_family && Rat(search.best.count) > Kl) {
            // verdict soundness: re-verify through the counting path
            const RecoveryReport recheck =
                count_near_codewords(g, *search.best_family, alpha, budgets.message_cap);
            rep.violator_verified = Rat(recheck.count) > Kl;
            if (rep.violator_verified) {
                best_family = search.best_family;
                // run the machine on B witnesses of the verified violator
                std::vector<Message> A;
                for (const Witness& w : recheck.witnesses) {
                    A.push_back(w.message);
                    if (A.size() == rep.B) break;
                }
                if (A.size() >= 2) {
                    BundleRecord r = run_contradiction_machine(
                        g, *search.best_family, A, rep.params, bad_limit, Kl, seed, 0,
                        budgets, goodness_exact_holds, &rep.contradiction_violations);
                    if (r.bundle_found) {
                        ++rep.bundles_extracted;
                        rep.bundles.push_back(r);
                    }
                }
            }
        }
    } catch (const BudgetError&) {
        budget_trouble = true;
    }

    // adversarially supplied candidate sets
    const std::uint64_t nmsg_cap = budgets.message_cap;
    Big nmsg_big = 1;
    for (std::size_t j = 0; j < d; ++j) nmsg_big *= p;
    const std::uint64_t nmsg = nmsg_big > nmsg_cap ? nmsg_cap : nmsg_big.convert_to<std::uint64_t>();
    for (std::size_t c = 0; c < budgets.candidate_sets; ++c) {
        RngStream rng = RngStream::derive(seed, "pipeline/candidates", c);
        const std::size_t bsize =
            2 + static_cast<std::size_t>(rng.below(std::max<std::uint64_t>(rep.B, 2) - 1));
        if (Big(bsize) > nmsg_big) continue;
        // distinct random messages
        std::vector<std::uint64_t> ranks;
        while (ranks.size() < bsize) {
            const std::uint64_t r = rng.below(nmsg);
            if (std::find(ranks.begin(), ranks.end(), r) == ranks.end()) ranks.push_back(r);
        }
        std::vector<Message> A;
        for (const std::uint64_t r : ranks) A.push_back(message_at(g, r));
        // lists from the most popular fiber values, padded to ell
        std::vector<std::vector<Fe>> lists(n);
        bool feasible = true;
        for (std::size_t i = 0; i < n && feasible; ++i) {
            std::map<Fe, std::size_t> freq;
            for (const Message& a : A) ++freq[g.coord_form(i, a)];
            std::vector<std::pair<Fe, std::size_t>> vals(freq.begin(), freq.end());
            std::stable_sort(vals.begin(), vals.end(), [](const auto& x, const auto& y) {
                if (x.second != y.second) return x.second > y.second;
                return x.first < y.first;
            });
            std::vector<Fe> s;
            for (std::size_t j = 0; j < vals.size() && s.size() < ell; ++j)
                s.push_back(vals[j].first);
            Fe cand = 0;
            while (s.size() < ell && cand < p) {
                if (std::find(s.begin(), s.end(), cand) == s.end()) s.push_back(cand);
                ++cand;
            }
            if (s.size() < ell) feasible = false;
            lists[i] = std::move(s);
        }
        if (!feasible) continue;
        const ListFamily fam = make_list_family(p, ell, std::move(lists));
        BundleRecord r = run_contradiction_machine(g, fam, A, rep.params, bad_limit, Kl,
                                                   seed, c + 1, budgets, goodness_exact_holds,
                                                   &rep.contradiction_violations);
        ++rep.candidate_sets_tried;
        if (r.bundle_found) {
            ++rep.bundles_extracted;
            rep.bundles.push_back(r);
        }
    }

    // verdict
    if (rep.violator_verified && goodness_exact_holds && rep.hypothesis_ok) {
        rep.verdict = Verdict::CounterexampleFound; // Lemma 4.1 says this cannot happen
    } else if (rep.degenerate) {
        rep.verdict = Verdict::ConsistentWithTheorem; // no set can exceed p^d
    } else if (budget_trouble || rep.goodness_mode != "exact") {
        rep.verdict = Verdict::Inconclusive;
    } else {
        rep.verdict = Verdict::ConsistentWithTheorem;
    }
    return rep;
}

std::vector<PipelineReport> run_grid(const GridConfig& config) {
    std::vector<PipelineReport> reports;
    for (const Rat& alpha : config.alphas)
        for (const Rat& epsilon : config.epsilons)
            for (const std::uint64_t ell : config.ells)
                for (const std::uint64_t seed : config.seeds)
                    reports.push_back(run_main_experiment(alpha, epsilon, config.d, config.n,
                                                          config.p, ell, seed,
                                                          config.budgets));
    return reports;
}

std::string grid_csv(const std::vector<PipelineReport>& reports) {
    std::ostringstream out;
    out << "alpha,epsilon,d,n,p,ell,seed,B,hypothesis_ok,degenerate,goodness_mode,"
           "goodness_holds,certificates_checked,attacks_tried,max_count_found,"
           "candidate_sets,bundles,violations,verdict\n";
    for (const PipelineReport& r : reports) {
        out << format_rational(r.alpha) << ',' << format_rational(r.epsilon) << ',' << r.d
            << ',' << r.n << ',' << r.p << ',' << r.ell << ',' << r.seed << ',' << r.B << ','
            << (r.hypothesis_ok ? 1 : 0) << ',' << (r.degenerate ? 1 : 0) << ','
            << r.goodness_mode << ',' << (r.goodness_holds ? 1 : 0) << ','
            << r.certificates_checked.str() << ',' << r.attacks_tried << ','
            << r.max_count_found << ',' << r.candidate_sets_tried << ','
            << r.bundles_extracted << ',' << r.contradiction_violations << ','
            << verdict_name(r.verdict) << '\n';
    }
    return out.str();
}

} // namespace lrc
