#include "lrc/lists.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace lrc {

namespace {

bool in_list(const std::vector<Fe>& sorted, Fe v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
}

/// Pad `vals` to size ell with the smallest residues not already present and
/// not in `avoid_image` (so the padding can never capture a codeword).
std::vector<Fe> pad_to_ell(std::vector<Fe> vals, std::size_t ell, std::uint64_t p,
                           const std::vector<Fe>& avoid_image) {
    std::sort(vals.begin(), vals.end());
    Fe cand = 0;
    while (vals.size() < ell) {
        if (cand >= p) throw InputError("list padding ran out of residues (ell > p?)");
        if (!in_list(vals, cand) && !in_list(avoid_image, cand)) {
            vals.push_back(cand);
            std::sort(vals.begin(), vals.end());
        }
        ++cand;
    }
    return vals;
}

} // namespace

ListFamily make_list_family(std::uint64_t p, std::size_t ell,
                            std::vector<std::vector<Fe>> lists) {
    if (ell == 0) throw InputError("list family: ell must be >= 1");
    if (ell > p) throw InputError("list family: ell > p is impossible over F_p");
    for (auto& s : lists) {
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw InputError("list family: duplicate value in a list");
        if (s.size() != ell)
            throw InputError("list family: every list must have size exactly " +
                             std::to_string(ell));
        if (!s.empty() && s.back() >= p)
            throw InputError("list family: value out of field range");
    }
    return ListFamily{p, ell, std::move(lists)};
}

RecoveryReport count_near_codewords(const GeneratorMatrix& g, const ListFamily& fam,
                                    const Rat& alpha, std::uint64_t cap) {
    if (fam.lists.size() != g.n)
        throw InputError("list family has " + std::to_string(fam.lists.size()) +
                         " lists, code has n=" + std::to_string(g.n));
    if (fam.p != g.ctx.p()) throw InputError("list family field mismatch");

    RecoveryReport rep;
    rep.alpha = alpha;
    rep.bad_limit = floor_mul(alpha, g.n);

    enumerate_messages(g, cap, [&](const Message& t) {
        std::vector<std::size_t> bad;
        for (std::size_t i = 0; i < g.n; ++i) {
            const Fe x = g.coord_form(i, t);
            if (!in_list(fam.lists[i], x)) bad.push_back(i);
        }
        if (bad.size() <= rep.bad_limit) {
            ++rep.count;
            if (rep.witnesses.size() < kWitnessCap)
                rep.witnesses.push_back({t, std::move(bad)});
            else
                rep.witnesses_truncated = true;
        }
        return true;
    });
    return rep;
}

OracleResult is_list_recoverable_bruteforce(const GeneratorMatrix& g, const Rat& alpha,
                                            std::size_t ell, std::uint64_t L,
                                            std::uint64_t work_budget) {
    const std::uint64_t nmsg = message_space_size(g, work_budget);
    const std::uint64_t p = g.ctx.p();
    if (ell > p) throw InputError("ell > p is impossible over F_p");
    const std::uint64_t bad_limit = floor_mul(alpha, g.n);

    // Codeword value table, column-major: val[i][msg] = lambda_i(message msg).
    std::vector<std::vector<Fe>> val(g.n, std::vector<Fe>(nmsg));
    {
        std::uint64_t idx = 0;
        enumerate_messages(g, work_budget, [&](const Message& t) {
            for (std::size_t i = 0; i < g.n; ++i) val[i][idx] = g.coord_form(i, t);
            ++idx;
            return true;
        });
    }

    // Per-coordinate value universe (the image of lambda_i on messages).
    std::vector<std::vector<Fe>> universe(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
        universe[i] = val[i];
        std::sort(universe[i].begin(), universe[i].end());
        universe[i].erase(std::unique(universe[i].begin(), universe[i].end()),
                          universe[i].end());
    }

    // All k_i-subsets of each universe, k_i = min(ell, |U_i|).
    const auto next_combination = [](std::vector<std::size_t>& comb, std::size_t n) {
        const std::size_t k = comb.size();
        for (std::size_t j = k; j-- > 0;) {
            if (comb[j] + (k - j) < n) {
                ++comb[j];
                for (std::size_t t = j + 1; t < k; ++t) comb[t] = comb[t - 1] + 1;
                return true;
            }
        }
        return false;
    };
    std::vector<std::vector<std::vector<Fe>>> candidates(g.n);
    Big family_total = 1;
    for (std::size_t i = 0; i < g.n; ++i) {
        const std::size_t u = universe[i].size();
        const std::size_t k = std::min(ell, u);
        Big n_subsets = 1; // C(u, k)
        for (std::size_t j = 0; j < k; ++j) n_subsets = n_subsets * (u - j) / (j + 1);
        family_total *= n_subsets;
        if (family_total * nmsg > work_budget)
            throw BudgetError("BudgetExceeded: restricted family space too large");
        std::vector<std::size_t> comb(k);
        for (std::size_t j = 0; j < k; ++j) comb[j] = j;
        do {
            std::vector<Fe> subset(k);
            for (std::size_t j = 0; j < k; ++j) subset[j] = universe[i][comb[j]];
            candidates[i].push_back(std::move(subset));
        } while (next_combination(comb, u));
    }

    const bool use_masks = p <= 64;
    std::vector<std::vector<std::uint64_t>> masks(g.n);
    if (use_masks) {
        for (std::size_t i = 0; i < g.n; ++i)
            for (const auto& subset : candidates[i]) {
                std::uint64_t msk = 0;
                for (const Fe v : subset) msk |= 1ull << v;
                masks[i].push_back(msk);
            }
    }

    OracleResult res;
    res.max_count = 0;
    std::vector<std::size_t> pick(g.n, 0), best_pick(g.n, 0);
    bool have_best = false;
    for (;;) {
        ++res.families_checked;
        std::uint64_t cnt = 0;
        for (std::uint64_t msg = 0; msg < nmsg; ++msg) {
            std::size_t bad = 0;
            for (std::size_t i = 0; i < g.n; ++i) {
                const Fe x = val[i][msg];
                const bool member = use_masks
                                        ? ((masks[i][pick[i]] >> x) & 1ull) != 0
                                        : in_list(candidates[i][pick[i]], x);
                if (!member && ++bad > bad_limit) break;
            }
            if (bad <= bad_limit) ++cnt;
        }
        if (!have_best || cnt > res.max_count) {
            res.max_count = cnt;
            best_pick = pick;
            have_best = true;
        }
        // odometer over family picks
        std::size_t i = g.n;
        while (i > 0) {
            --i;
            if (++pick[i] < candidates[i].size()) break;
            pick[i] = 0;
            if (i == 0) goto done_all;
        }
    }
done_all:
    std::vector<std::vector<Fe>> worst_lists(g.n);
    for (std::size_t i = 0; i < g.n; ++i)
        worst_lists[i] = pad_to_ell(candidates[i][best_pick[i]], ell, p, universe[i]);
    res.worst = make_list_family(p, ell, std::move(worst_lists));
    res.recoverable = res.max_count <= L;
    return res;
}

AttackSearchResult random_attack_search(const GeneratorMatrix& g, const Rat& alpha,
                                        std::size_t ell, std::uint64_t L,
                                        std::size_t trials, std::uint64_t seed,
                                        std::span<const ListFamily> extra_candidates,
                                        std::uint64_t cap) {
    AttackSearchResult out;
    out.best.alpha = alpha;
    out.best.bad_limit = floor_mul(alpha, g.n);
    out.best.threshold_L = L;

    auto consider = [&](const ListFamily& fam) {
        RecoveryReport rep = count_near_codewords(g, fam, alpha, cap);
        rep.threshold_L = L;
        if (!out.best_family || rep.count > out.best.count) {
            out.best = std::move(rep);
            out.best_family = fam;
        }
    };

    for (const ListFamily& fam : extra_candidates) consider(fam);

    if (trials == 0 && extra_candidates.empty()) return out;

    const std::uint64_t nmsg = message_space_size(g, cap);
    const std::uint64_t subset_size = std::min<std::uint64_t>(L + 1, nmsg);
    const std::uint64_t p = g.ctx.p();

    for (std::size_t t = 0; t < trials; ++t) {
        RngStream rng = RngStream::derive(seed, "lists/attack-search", t);
        // L+1 distinct random messages
        std::vector<Message> subset;
        if (nmsg <= 4 * subset_size) {
            const auto ranks = rng.sample_subset(nmsg, subset_size);
            for (const std::size_t r : ranks) subset.push_back(message_at(g, r));
        } else {
            std::vector<std::uint64_t> seen;
            while (seen.size() < subset_size) {
                const std::uint64_t r = rng.below(nmsg);
                if (std::find(seen.begin(), seen.end(), r) == seen.end())
                    seen.push_back(r);
            }
            for (const std::uint64_t r : seen) subset.push_back(message_at(g, r));
        }
        // most popular fiber values per coordinate
        std::vector<std::vector<Fe>> lists(g.n);
        for (std::size_t i = 0; i < g.n; ++i) {
            std::map<Fe, std::size_t> freq;
            for (const Message& a : subset) ++freq[g.coord_form(i, a)];
            std::vector<std::pair<Fe, std::size_t>> vals(freq.begin(), freq.end());
            std::stable_sort(vals.begin(), vals.end(), [](const auto& x, const auto& y) {
                if (x.second != y.second) return x.second > y.second;
                return x.first < y.first;
            });
            std::vector<Fe> s;
            for (std::size_t j = 0; j < vals.size() && s.size() < ell; ++j)
                s.push_back(vals[j].first);
            lists[i] = pad_to_ell(std::move(s), ell, p, {});
        }
        consider(make_list_family(p, ell, std::move(lists)));
        ++out.trials_run;
    }
    return out;
}

PipelineInput violating_set_to_pipeline_input(const RecoveryReport& report,
                                              const GeneratorMatrix& g,
                                              const ListFamily& fam) {
    if (report.witnesses.empty()) throw InputError("empty report: no violating set");
    PipelineInput in;
    for (const Witness& w : report.witnesses) in.points.push_back(w.message);
    in.members.resize(g.n);
    in.sizes.assign(g.n, 0);
    for (std::size_t i = 0; i < g.n; ++i) {
        for (std::size_t a = 0; a < in.points.size(); ++a) {
            const Fe x = g.coord_form(i, in.points[a]);
            if (std::binary_search(fam.lists[i].begin(), fam.lists[i].end(), x))
                in.members[i].push_back(a);
        }
        in.sizes[i] = in.members[i].size();
    }
    return in;
}

} // namespace lrc
