#include "lrc/json_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lrc {

Json matrix_to_json(const GeneratorMatrix& g) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < g.n; ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < g.d; ++c) row.push_back(g.m.at(r, c));
        rows.push_back(std::move(row));
    }
    return Json{{"p", g.ctx.p()}, {"n", g.n}, {"d", g.d}, {"rows", std::move(rows)}};
}

GeneratorMatrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("p") || !j.contains("n") || !j.contains("d") ||
        !j.contains("rows"))
        throw InputError("matrix JSON: need object with p, n, d, rows");
    const FieldCtx ctx(j.at("p").get<std::uint64_t>());
    const std::size_t n = j.at("n").get<std::size_t>();
    const std::size_t d = j.at("d").get<std::size_t>();
    const Json& rows = j.at("rows");
    if (!rows.is_array() || rows.size() != n)
        throw InputError("matrix JSON: rows must be an array of n rows");
    Matrix m(n, d);
    for (std::size_t r = 0; r < n; ++r) {
        if (!rows[r].is_array() || rows[r].size() != d)
            throw InputError("matrix JSON: each row must have d entries");
        for (std::size_t c = 0; c < d; ++c) m.at(r, c) = rows[r][c].get<std::uint64_t>();
    }
    return GeneratorMatrix(ctx, n, d, std::move(m));
}

Json family_to_json(const ListFamily& fam) {
    return Json{{"p", fam.p}, {"ell", fam.ell}, {"lists", fam.lists}};
}

ListFamily family_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("p") || !j.contains("ell") || !j.contains("lists"))
        throw InputError("list family JSON: need object with p, ell, lists");
    return make_list_family(j.at("p").get<std::uint64_t>(), j.at("ell").get<std::size_t>(),
                            j.at("lists").get<std::vector<std::vector<Fe>>>());
}

Json graph_to_json(const ColoredMultigraph& g) {
    Json edges = Json::array();
    for (const ColoredEdge& e : g.edges) edges.push_back(Json::array({e.u, e.v, e.color}));
    return Json{{"w", g.vertex_count}, {"m", g.color_count}, {"edges", std::move(edges)}};
}

ColoredMultigraph graph_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("w") || !j.contains("m") || !j.contains("edges"))
        throw InputError("graph JSON: need object with w, m, edges");
    std::vector<ColoredEdge> edges;
    for (const Json& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 3)
            throw InputError("graph JSON: each edge must be [u, v, color]");
        edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(),
                         e[2].get<std::size_t>()});
    }
    return make_graph(j.at("w").get<std::size_t>(), j.at("m").get<std::size_t>(),
                      std::move(edges));
}

Json certificate_to_json(const TreeCertificate& cert) {
    Json trees = Json::array();
    for (const auto& tree : cert.trees) {
        Json t = Json::array();
        for (const ColoredEdge& e : tree) t.push_back(Json::array({e.u, e.v, e.color}));
        trees.push_back(std::move(t));
    }
    return Json{{"w", cert.w}, {"trees", std::move(trees)}};
}

TreeCertificate certificate_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("w") || !j.contains("trees"))
        throw InputError("certificate JSON: need object with w, trees");
    std::vector<std::vector<ColoredEdge>> trees;
    for (const Json& t : j.at("trees")) {
        std::vector<ColoredEdge> tree;
        for (const Json& e : t) {
            if (!e.is_array() || e.size() != 3)
                throw InputError("certificate JSON: each edge must be [u, v, color]");
            tree.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>(),
                            e[2].get<std::size_t>()});
        }
        trees.push_back(std::move(tree));
    }
    return make_certificate(j.at("w").get<std::size_t>(), std::move(trees));
}

Json bundle_to_json(const DisjointTreeBundle& b) {
    Json trees = Json::array();
    for (const auto& tree : b.trees) {
        Json t = Json::array();
        for (const ColoredEdge& e : tree) t.push_back(Json::array({e.u, e.v, e.color}));
        trees.push_back(std::move(t));
    }
    return Json{{"W", b.W},
                {"trees", std::move(trees)},
                {"color_sets", b.color_sets},
                {"retries_used", b.retries_used},
                {"via_exhaustive", b.via_exhaustive}};
}

Json report_to_json(const RecoveryReport& rep, std::size_t max_witnesses) {
    Json witnesses = Json::array();
    for (std::size_t i = 0; i < rep.witnesses.size() && i < max_witnesses; ++i)
        witnesses.push_back(
            Json{{"message", rep.witnesses[i].message}, {"bad", rep.witnesses[i].bad}});
    Json j{{"count", rep.count},
           {"alpha", format_rational(rep.alpha)},
           {"bad_limit", rep.bad_limit},
           {"witnesses", std::move(witnesses)},
           {"witnesses_stored", rep.witnesses.size()},
           {"witnesses_truncated", rep.witnesses_truncated}};
    if (rep.threshold_L) j["threshold_L"] = *rep.threshold_L;
    return j;
}

Json params_to_json(const RecoveryParams& p) {
    return Json{{"alpha", format_rational(p.alpha)}, {"epsilon", format_rational(p.epsilon)},
                {"d", p.d},
                {"K", format_rational(p.K)},         {"mu", format_rational(p.mu)},
                {"beta", format_rational(p.beta)},   {"theta", format_rational(p.theta)}};
}

Json cgr_to_json(const CgrResult& c) {
    return Json{{"C_gr", c.value},
                {"argmax_s", c.argmax_s},
                {"max_ratio", c.max_ratio},
                {"tail_decreasing", c.tail_decreasing}};
}

Json plan_to_json(const MainThmPlan& plan, std::uint64_t sample_n) {
    const Big B = plan.B_of(sample_n);
    Json j{{"params", params_to_json(plan.params)},
           {"C_gr", plan.C_gr},
           {"C0", plan.C0},
           {"c", plan.c},
           {"delta", plan.delta},
           {"n0", plan.n0},
           {"scan_cap", plan.scan_cap},
           {"sample_N", sample_n},
           {"B_N", B.str()}};
    try {
        const Big f = plan.f_of(sample_n);
        j["f_N"] = f.str();
        j["f_N_digits"] = f.str().size();
    } catch (const BudgetError& e) {
        j["f_N_error"] = e.what();
    }
    return j;
}

Json lower_bound_to_json(const LowerBoundParams& lb) {
    return Json{{"K", format_rational(lb.K)},
                {"T", lb.T},
                {"delta", lb.delta},
                {"f", lb.f.str()}};
}

Json attack_to_json(const AttackPlan& plan) {
    Json kernels = Json::array();
    for (const auto& u : plan.kernels) kernels.push_back(Json::array({u[0], u[1]}));
    Json coord_kernel = Json::array();
    for (const auto& k : plan.coord_kernel) {
        if (k)
            coord_kernel.push_back(*k);
        else
            coord_kernel.push_back(nullptr);
    }
    return Json{{"basis", Json::array({plan.basis1, plan.basis2})},
                {"r", plan.r},
                {"kernels", std::move(kernels)},
                {"coord_kernel", std::move(coord_kernel)},
                {"side_lengths", plan.side_lengths},
                {"P", plan.P.str()},
                {"scalars", plan.scalars},
                {"scalar_tries", plan.scalar_tries},
                {"box_size", plan.box.size()},
                {"lists", family_to_json(plan.lists)},
                {"ell", plan.ell},
                {"K", format_rational(plan.K)},
                {"T", plan.T}};
}

Json pipeline_report_to_json(const PipelineReport& rep) {
    Json bundles = Json::array();
    for (const BundleRecord& b : rep.bundles)
        bundles.push_back(Json{{"set_size", b.set_size},
                               {"genuine_violator", b.genuine_violator},
                               {"bundle_found", b.bundle_found},
                               {"via_exhaustive", b.via_exhaustive},
                               {"filtered_colors", b.filtered_colors},
                               {"cert_eval", b.cert_eval},
                               {"consistent", b.consistent},
                               {"forced_equal", b.forced_equal}});
    return Json{{"alpha", format_rational(rep.alpha)},
                {"epsilon", format_rational(rep.epsilon)},
                {"d", rep.d},
                {"n", rep.n},
                {"p", rep.p},
                {"ell", rep.ell},
                {"seed", rep.seed},
                {"params", params_to_json(rep.params)},
                {"C_gr", rep.C_gr},
                {"B", rep.B},
                {"hypothesis_ok", rep.hypothesis_ok},
                {"degenerate", rep.degenerate},
                {"conditioning_tries", rep.conditioning_tries},
                {"goodness_mode", rep.goodness_mode},
                {"goodness_holds", rep.goodness_holds},
                {"certificates_checked", rep.certificates_checked.str()},
                {"attacks_tried", rep.attacks_tried},
                {"max_count_found", rep.max_count_found},
                {"violator_verified", rep.violator_verified},
                {"candidate_sets_tried", rep.candidate_sets_tried},
                {"bundles", std::move(bundles)},
                {"bundles_extracted", rep.bundles_extracted},
                {"contradiction_violations", rep.contradiction_violations},
                {"verdict", verdict_name(rep.verdict)}};
}

Json sz_report_to_json(const SzReport& rep) {
    Json rows = Json::array();
    for (const SzTrialRow& r : rep.rows) {
        Json row{{"trial", r.trial}, {"good", r.good}};
        if (r.failing_certificate)
            row["failing_certificate"] = certificate_to_json(*r.failing_certificate);
        rows.push_back(std::move(row));
    }
    return Json{{"B", rep.B},
                {"m", rep.m},
                {"d", rep.d},
                {"p", rep.p},
                {"trials", rep.trials},
                {"failures", rep.failures},
                {"frequency", rep.frequency},
                {"wilson_low", rep.wilson_low},
                {"wilson_high", rep.wilson_high},
                {"bound", format_rational(rep.bound)},
                {"bound_float", std::min(1.0, to_double(rep.bound))},
                {"rows", std::move(rows)}};
}

GridConfig grid_config_from_json(const Json& j) {
    GridConfig cfg;
    if (!j.is_object()) throw InputError("grid config: need a JSON object");
    for (const Json& a : j.at("alphas")) cfg.alphas.push_back(parse_rational(a.get<std::string>()));
    for (const Json& e : j.at("epsilons"))
        cfg.epsilons.push_back(parse_rational(e.get<std::string>()));
    cfg.d = j.at("d").get<std::size_t>();
    cfg.n = j.at("n").get<std::size_t>();
    cfg.p = j.at("p").get<std::uint64_t>();
    cfg.ells = j.at("ells").get<std::vector<std::uint64_t>>();
    cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    if (j.contains("budgets")) {
        const Json& b = j.at("budgets");
        if (b.contains("message_cap")) cfg.budgets.message_cap = b.at("message_cap").get<std::uint64_t>();
        if (b.contains("certificate_budget"))
            cfg.budgets.certificate_budget = Big(b.at("certificate_budget").get<std::uint64_t>());
        if (b.contains("goodness_samples"))
            cfg.budgets.goodness_samples = b.at("goodness_samples").get<std::size_t>();
        if (b.contains("attack_trials")) cfg.budgets.attack_trials = b.at("attack_trials").get<std::size_t>();
        if (b.contains("candidate_sets")) cfg.budgets.candidate_sets = b.at("candidate_sets").get<std::size_t>();
        if (b.contains("tree_retries")) cfg.budgets.tree_retries = b.at("tree_retries").get<std::size_t>();
        if (b.contains("cgr_scan")) cfg.budgets.cgr_scan = b.at("cgr_scan").get<std::uint64_t>();
    }
    return cfg;
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("JSON parse error: ") + e.what());
    }
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str());
}

void atomic_write(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw Error("cannot open for writing: " + tmp);
        out << text;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error("cannot rename " + tmp + " -> " + path);
}

} // namespace lrc
