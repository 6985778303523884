#include "CLI11.hpp"

#include <cstdio>
#include <iostream>
#include <string>

#include "lrc/json_io.hpp"
#include "lrc/version.hpp"

namespace {

using lrc::Json;

/// Accept either a bare wire object or a CLI artifact wrapping it.
Json unwrap(const Json& j, const char* key) {
    if (j.is_object() && j.contains(key) && j.at(key).is_object()) return j.at(key);
    return j;
}

void emit(const Json& payload, const std::string& out_path) {
    const std::string text = payload.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        lrc::atomic_write(out_path, text);
}

Json artifact(const char* subcommand, Json config, Json body) {
    Json j{{"version", lrc::kVersion}, {"subcommand", subcommand},
           {"config", std::move(config)}};
    for (auto& [k, v] : body.items()) j[k] = std::move(v);
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic toolkit for list recovery of random linear codes"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_path;
    app.add_option("-o,--output", out_path, "write the JSON artifact to this path (atomic)");

    // ---- params ----
    auto* cmd_params = app.add_subcommand("params", "derived constants for (alpha, epsilon, d, n)");
    std::string p_alpha, p_epsilon;
    std::size_t p_d = 1;
    std::uint64_t p_n = 2, p_ell = 0, p_smax = 1'000'000, p_scan = 200'000;
    double p_c = 0.0;
    cmd_params->add_option("--alpha", p_alpha, "error fraction as a/b")->required();
    cmd_params->add_option("--epsilon", p_epsilon, "accuracy parameter as a/b")->required();
    cmd_params->add_option("--d", p_d, "code dimension")->required();
    cmd_params->add_option("--n", p_n, "block length");
    cmd_params->add_option("--ell", p_ell, "input list size (enables the hypothesis check)");
    cmd_params->add_option("--smax", p_smax, "C_gr scan cap");
    cmd_params->add_option("--scan-cap", p_scan, "n0 scan cap");
    cmd_params->add_option("--c", p_c, "free constant in (0,1]; 0 selects the default");

    // ---- sample ----
    auto* cmd_sample = app.add_subcommand("sample", "sample a random generator matrix");
    std::uint64_t s_p = 0, s_seed = 0;
    std::size_t s_n = 0, s_d = 0, s_tries = 64;
    bool s_full_rank = false;
    cmd_sample->add_option("--p", s_p, "prime modulus")->required();
    cmd_sample->add_option("--n", s_n, "block length")->required();
    cmd_sample->add_option("--d", s_d, "dimension")->required();
    cmd_sample->add_option("--seed", s_seed, "PRNG seed")->required();
    cmd_sample->add_flag("--full-rank", s_full_rank, "resample until rank d");
    cmd_sample->add_option("--max-tries", s_tries, "resample budget");

    // ---- check ----
    auto* cmd_check = app.add_subcommand("check", "count near-codewords for a list family");
    std::string c_code, c_lists, c_alpha;
    std::uint64_t c_cap = 10'000'000;
    std::size_t c_wit = 64;
    cmd_check->add_option("--code", c_code, "generator matrix JSON")->required();
    cmd_check->add_option("--lists", c_lists, "list family JSON")->required();
    cmd_check->add_option("--alpha", c_alpha, "error fraction as a/b")->required();
    cmd_check->add_option("--cap", c_cap, "message enumeration cap");
    cmd_check->add_option("--max-witnesses", c_wit, "witnesses written to the artifact");

    // ---- oracle ----
    auto* cmd_oracle = app.add_subcommand("oracle", "brute-force list-recoverability oracle");
    std::string o_code, o_alpha;
    std::uint64_t o_L = 1, o_budget = 2'000'000'000;
    std::size_t o_ell = 1;
    cmd_oracle->add_option("--code", o_code)->required();
    cmd_oracle->add_option("--alpha", o_alpha)->required();
    cmd_oracle->add_option("--ell", o_ell)->required();
    cmd_oracle->add_option("--L", o_L)->required();
    cmd_oracle->add_option("--budget", o_budget, "family x message work budget");

    // ---- graph ----
    auto* cmd_graph = app.add_subcommand("graph", "edge-colored multigraph operations");
    std::string g_file, g_op, g_beta = "1/4";
    std::vector<std::size_t> g_colors, g_cut;
    double g_gamma = 0.0;
    std::size_t g_T = 0, g_d = 1, g_retries = 50;
    std::uint64_t g_seed = 0, g_trials = 1;
    cmd_graph->add_option("--graph", g_file, "graph JSON")->required();
    cmd_graph->add_option("--op", g_op, "one of cc|cut|density|expansion|gamma|trial|trees")
        ->required();
    cmd_graph->add_option("--colors", g_colors, "color set for --op cc");
    cmd_graph->add_option("--cut", g_cut, "vertex subset for --op cut");
    cmd_graph->add_option("--gamma", g_gamma, "expansion parameter for --op expansion");
    cmd_graph->add_option("--T", g_T, "subset size for --op trial");
    cmd_graph->add_option("--seed", g_seed, "PRNG seed for --op trial/trees");
    cmd_graph->add_option("--trials", g_trials, "number of trials for --op trial");
    cmd_graph->add_option("--d", g_d, "number of trees for --op trees");
    cmd_graph->add_option("--beta", g_beta, "matching-size fraction a/b for --op trees");
    cmd_graph->add_option("--retries", g_retries, "block resampling budget for --op trees");

    // ---- certify ----
    auto* cmd_cert = app.add_subcommand("certify", "tree-certificate goodness and evaluation");
    std::string ce_coeffs, ce_cert;
    std::size_t ce_B = 2;
    std::uint64_t ce_budget = 1'000'000;
    cmd_cert->add_option("--coeffs", ce_coeffs, "coefficient array as matrix JSON")->required();
    cmd_cert->add_option("--B", ce_B, "certificate size bound");
    cmd_cert->add_option("--budget", ce_budget, "certificate enumeration budget");
    cmd_cert->add_option("--cert", ce_cert, "evaluate one certificate JSON instead");

    // ---- attack ----
    auto* cmd_attack = app.add_subcommand("attack", "build and verify the lower-bound attack");
    std::string a_code, a_alpha, a_epsilon;
    std::uint64_t a_ell = 0, a_seed = 0, a_cap = 100'000'000;
    cmd_attack->add_option("--code", a_code)->required();
    cmd_attack->add_option("--alpha", a_alpha)->required();
    cmd_attack->add_option("--epsilon", a_epsilon)->required();
    cmd_attack->add_option("--ell", a_ell)->required();
    cmd_attack->add_option("--seed", a_seed)->required();
    cmd_attack->add_option("--cap", a_cap, "message enumeration cap");

    // ---- experiment ----
    auto* cmd_exp = app.add_subcommand("experiment", "pipeline grid from a config JSON");
    std::string e_config, e_csv;
    cmd_exp->add_option("--config", e_config, "grid config JSON")->required();
    cmd_exp->add_option("--csv", e_csv, "also write a CSV summary to this path");

    // ---- szlab ----
    auto* cmd_sz = app.add_subcommand("szlab", "random-coefficient goodness frequencies");
    std::size_t z_B = 2, z_m = 1, z_d = 1, z_trials = 100;
    std::uint64_t z_p = 101, z_seed = 0, z_budget = 1'000'000;
    cmd_sz->add_option("--B", z_B)->required();
    cmd_sz->add_option("--m", z_m)->required();
    cmd_sz->add_option("--d", z_d)->required();
    cmd_sz->add_option("--p", z_p)->required();
    cmd_sz->add_option("--trials", z_trials)->required();
    cmd_sz->add_option("--seed", z_seed)->required();
    cmd_sz->add_option("--budget", z_budget, "certificate enumeration budget");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_params->parsed()) {
            const lrc::Rat alpha = lrc::parse_rational(p_alpha);
            const lrc::Rat epsilon = lrc::parse_rational(p_epsilon);
            const lrc::RecoveryParams rp = lrc::derive_params(alpha, epsilon, p_d);
            const lrc::CgrResult cgr = lrc::cgr_estimate(rp.beta, p_d, p_smax);
            Json body{{"params", lrc::params_to_json(rp)}, {"cgr", lrc::cgr_to_json(cgr)}};
            if (p_n >= 2)
                body["lower_bound"] =
                    lrc::lower_bound_to_json(lrc::lower_bound_params(alpha, epsilon, p_n));
            try {
                const lrc::MainThmPlan plan =
                    lrc::main_thm_plan(alpha, epsilon, p_d, p_c, p_smax, p_scan);
                body["main_plan"] = lrc::plan_to_json(plan, std::max<std::uint64_t>(p_n, 2));
            } catch (const lrc::BudgetError& e) {
                body["main_plan_error"] = e.what();
            }
            if (p_ell > 0) {
                const lrc::Rat Kl = rp.K * p_ell;
                const std::uint64_t B =
                    lrc::floor_rat(Kl).convert_to<std::uint64_t>() + 1;
                body["B"] = B;
                body["hypothesis_ok"] =
                    static_cast<double>(p_n) >=
                    static_cast<double>(cgr.value) / lrc::to_double(rp.theta) *
                        lrc::lambda_fn(static_cast<double>(std::max<std::uint64_t>(B, 2)));
            }
            emit(artifact("params",
                          Json{{"alpha", p_alpha},
                               {"epsilon", p_epsilon},
                               {"d", p_d},
                               {"n", p_n},
                               {"ell", p_ell},
                               {"smax", p_smax},
                               {"scan_cap", p_scan},
                               {"c", p_c}},
                          std::move(body)),
                 out_path);
            return 0;
        }
        if (cmd_sample->parsed()) {
            const lrc::FieldCtx ctx(s_p);
            Json body;
            if (s_full_rank) {
                const lrc::FullRankResult fr =
                    lrc::condition_full_rank(s_n, s_d, ctx, s_seed, s_tries);
                body["matrix"] = lrc::matrix_to_json(fr.g);
                body["tries"] = fr.tries;
            } else {
                body["matrix"] =
                    lrc::matrix_to_json(lrc::sample_random_matrix(s_n, s_d, ctx, s_seed));
            }
            emit(artifact("sample",
                          Json{{"p", s_p},
                               {"n", s_n},
                               {"d", s_d},
                               {"seed", s_seed},
                               {"full_rank", s_full_rank},
                               {"max_tries", s_tries}},
                          std::move(body)),
                 out_path);
            return 0;
        }
        if (cmd_check->parsed()) {
            const lrc::GeneratorMatrix g =
                lrc::matrix_from_json(unwrap(lrc::load_json_file(c_code), "matrix"));
            const lrc::ListFamily fam =
                lrc::family_from_json(unwrap(lrc::load_json_file(c_lists), "lists"));
            const lrc::Rat alpha = lrc::parse_rational(c_alpha);
            const lrc::RecoveryReport rep = lrc::count_near_codewords(g, fam, alpha, c_cap);
            emit(artifact("check",
                          Json{{"code", c_code},
                               {"lists", c_lists},
                               {"alpha", c_alpha},
                               {"cap", c_cap},
                               {"max_witnesses", c_wit}},
                          Json{{"report", lrc::report_to_json(rep, c_wit)}}),
                 out_path);
            return 0;
        }
        if (cmd_oracle->parsed()) {
            const lrc::GeneratorMatrix g =
                lrc::matrix_from_json(unwrap(lrc::load_json_file(o_code), "matrix"));
            const lrc::Rat alpha = lrc::parse_rational(o_alpha);
            const lrc::OracleResult res =
                lrc::is_list_recoverable_bruteforce(g, alpha, o_ell, o_L, o_budget);
            emit(artifact("oracle",
                          Json{{"code", o_code},
                               {"alpha", o_alpha},
                               {"ell", o_ell},
                               {"L", o_L},
                               {"budget", o_budget}},
                          Json{{"recoverable", res.recoverable},
                               {"max_count", res.max_count},
                               {"families_checked", res.families_checked},
                               {"worst_family", lrc::family_to_json(res.worst)}}),
                 out_path);
            return res.recoverable ? 0 : 0;
        }
        if (cmd_graph->parsed()) {
            const lrc::ColoredMultigraph gr =
                lrc::graph_from_json(unwrap(lrc::load_json_file(g_file), "graph"));
            Json body;
            if (g_op == "cc") {
                body["cc"] = lrc::cc_count(gr, g_colors);
            } else if (g_op == "cut") {
                body["crossing_colors"] = lrc::colors_crossing_cut(gr, g_cut);
            } else if (g_op == "density") {
                const lrc::DensityResult dr = lrc::max_density_subgraph(gr);
                body["W"] = dr.W;
                body["rho"] = dr.rho;
                body["exact"] = dr.exact;
            } else if (g_op == "expansion") {
                const lrc::ExpansionResult er = lrc::verify_expansion(gr, g_gamma);
                body["ok"] = er.ok;
                body["violating_cut"] = er.violating_cut;
            } else if (g_op == "gamma") {
                body["gamma"] = lrc::expansion_gamma(gr);
            } else if (g_op == "trial") {
                std::size_t successes = 0;
                for (std::uint64_t t = 0; t < g_trials; ++t)
                    if (lrc::random_color_connectivity_trial(gr, g_T, g_seed, t)) ++successes;
                body["trials"] = g_trials;
                body["connected"] = successes;
                body["rate"] = g_trials ? static_cast<double>(successes) / g_trials : 0.0;
            } else if (g_op == "trees") {
                const auto bundle = lrc::find_disjoint_spanning_trees(
                    lrc::to_matching_family(gr), g_d, lrc::parse_rational(g_beta), g_seed,
                    g_retries);
                body["found"] = bundle.has_value();
                if (bundle) body["bundle"] = lrc::bundle_to_json(*bundle);
            } else {
                throw lrc::InputError("graph: unknown --op " + g_op);
            }
            emit(artifact("graph",
                          Json{{"graph", g_file},
                               {"op", g_op},
                               {"colors", g_colors},
                               {"cut", g_cut},
                               {"gamma", g_gamma},
                               {"T", g_T},
                               {"seed", g_seed},
                               {"trials", g_trials},
                               {"d", g_d},
                               {"beta", g_beta},
                               {"retries", g_retries}},
                          std::move(body)),
                 out_path);
            return 0;
        }
        if (cmd_cert->parsed()) {
            const lrc::GeneratorMatrix coeffs_g =
                lrc::matrix_from_json(unwrap(lrc::load_json_file(ce_coeffs), "matrix"));
            Json body;
            if (!ce_cert.empty()) {
                const lrc::TreeCertificate cert =
                    lrc::certificate_from_json(unwrap(lrc::load_json_file(ce_cert), "certificate"));
                body["eval"] = lrc::eval_certificate(cert, coeffs_g.m, coeffs_g.ctx);
                body["specialization"] = lrc::specialization_sanity(cert, coeffs_g.ctx);
            } else {
                const lrc::GoodnessResult good = lrc::check_good_up_to_B(
                    coeffs_g.m, ce_B, coeffs_g.ctx, lrc::Big(ce_budget));
                body["good"] = good.good;
                body["certificates_checked"] = good.certificates_checked.str();
                if (good.first_failing)
                    body["first_failing"] = lrc::certificate_to_json(*good.first_failing);
                body["bound"] = lrc::format_rational(lrc::sz_failure_bound(
                    ce_B, coeffs_g.n, coeffs_g.d, coeffs_g.ctx.p()));
            }
            emit(artifact("certify",
                          Json{{"coeffs", ce_coeffs},
                               {"B", ce_B},
                               {"budget", ce_budget},
                               {"cert", ce_cert}},
                          std::move(body)),
                 out_path);
            return 0;
        }
        if (cmd_attack->parsed()) {
            const lrc::GeneratorMatrix g =
                lrc::matrix_from_json(unwrap(lrc::load_json_file(a_code), "matrix"));
            const lrc::Rat alpha = lrc::parse_rational(a_alpha);
            const lrc::Rat epsilon = lrc::parse_rational(a_epsilon);
            const lrc::AttackPlan plan = lrc::build_attack(g, alpha, epsilon, a_ell, a_seed);
            const bool ok = lrc::verify_attack(g, plan, alpha, a_cap);
            emit(artifact("attack",
                          Json{{"code", a_code},
                               {"alpha", a_alpha},
                               {"epsilon", a_epsilon},
                               {"ell", a_ell},
                               {"seed", a_seed},
                               {"cap", a_cap}},
                          Json{{"plan", lrc::attack_to_json(plan)}, {"verified", ok}}),
                 out_path);
            return ok ? 0 : 1;
        }
        if (cmd_exp->parsed()) {
            const Json cfg_json = lrc::load_json_file(e_config);
            const lrc::GridConfig cfg = lrc::grid_config_from_json(cfg_json);
            const std::vector<lrc::PipelineReport> reports = lrc::run_grid(cfg);
            Json arr = Json::array();
            for (const lrc::PipelineReport& r : reports)
                arr.push_back(lrc::pipeline_report_to_json(r));
            if (!e_csv.empty()) lrc::atomic_write(e_csv, lrc::grid_csv(reports));
            emit(artifact("experiment", cfg_json, Json{{"reports", std::move(arr)}}),
                 out_path);
            return 0;
        }
        if (cmd_sz->parsed()) {
            const lrc::SzReport rep =
                lrc::sz_experiment(z_B, z_m, z_d, z_p, z_trials, z_seed, lrc::Big(z_budget));
            emit(artifact("szlab",
                          Json{{"B", z_B},
                               {"m", z_m},
                               {"d", z_d},
                               {"p", z_p},
                               {"trials", z_trials},
                               {"seed", z_seed},
                               {"budget", z_budget}},
                          Json{{"report", lrc::sz_report_to_json(rep)}}),
                 out_path);
            return 0;
        }
    } catch (const lrc::BudgetError& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 2;
    } catch (const lrc::InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
