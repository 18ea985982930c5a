#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "rsg/baseline.hpp"
#include "rsg/constants.hpp"
#include "rsg/errors.hpp"
#include "rsg/estimators.hpp"
#include "rsg/geometry.hpp"
#include "rsg/graph.hpp"
#include "rsg/oracles.hpp"
#include "rsg/verify.hpp"

namespace rsg::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Globals {
    std::optional<std::uint64_t> seed;
    int workers = 1;
    std::string format = "json";
    std::string out = ".";
};

// A subcommand result: the canonical document plus an optional tabular projection.
struct Output {
    Json doc;
    Json params = Json::object();
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    int code = kOk;
};

std::string num(double x) {
    if (!std::isfinite(x)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Json jnum(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_float()) return num(v.get<double>());
    if (v.is_null()) return "";
    return v.dump();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

std::string to_csv(const Output& o) {
    std::vector<std::string> header = o.header;
    std::vector<std::vector<std::string>> rows = o.rows;
    if (header.empty()) {
        // Lossy projection: top-level scalars only.
        std::vector<std::string> row;
        for (auto it = o.doc.begin(); it != o.doc.end(); ++it) {
            if (it.value().is_structured()) continue;
            header.push_back(it.key());
            row.push_back(scalar_text(it.value()));
        }
        rows.push_back(row);
    }
    std::ostringstream s;
    for (std::size_t i = 0; i < header.size(); ++i) s << (i ? "," : "") << csv_field(header[i]);
    s << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) s << (i ? "," : "") << csv_field(row[i]);
        s << "\n";
    }
    return s.str();
}

std::string utc_now() {
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

int default_workers() {
    if (const char* w = std::getenv("RSG_WORKERS")) {
        const int v = std::atoi(w);
        if (v >= 1) return v;
    }
    return 1;
}

// "auto" resolves via select_p_star when D and k are known, else p_C.
double resolve_p(const std::string& p, double C, std::optional<double> D, std::optional<double> k) {
    if (p == "auto") {
        if (D && k) return select_p_star(C, *D, *k);
        return solve_p_C(C);
    }
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(p, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != p.size()) domain_fail("--p must be a number or 'auto'");
    return v;
}

Json points_json(const Sequence& pts) {
    Json arr = Json::array();
    for (const auto& x : pts) {
        Json row = Json::array();
        for (Eigen::Index i = 0; i < x.coords().size(); ++i) row.push_back(x.coords()[i]);
        arr.push_back(row);
    }
    return arr;
}

Json estimate_json(const std::string& quantity, const Json& params, const PredictionComparison& pc) {
    Json d;
    d["quantity"] = quantity;
    d["params"] = params;
    d["estimate"] = jnum(pc.estimate.value);
    d["stderr"] = jnum(pc.estimate.std_error);
    d["prediction"] = jnum(pc.prediction);
    d["prediction_source"] = pc.prediction_source;
    d["z_score"] = jnum(pc.z_score);
    d["n_samples"] = pc.estimate.n_samples;
    d["n_accepted"] = pc.estimate.n_accepted;
    d["seed"] = pc.estimate.seed;
    d["workers"] = pc.estimate.workers;
    return d;
}

int clique_number(const SphereGraph& g, Color color) {
    const BitGraph adj = g.adjacency(color);
    int best = g.n() > 0 ? 1 : 0;
    while (best < g.n() && find_clique(adj, best + 1)) ++best;
    return best;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Random sphere graph toolkit: constants, caps, graphs, certificates, estimators, baseline"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Globals g;
    g.workers = default_workers();
    app.add_option("--seed", g.seed, "Master seed (default: system entropy, recorded in the manifest)");
    app.add_option("--workers", g.workers, "Worker threads (default: RSG_WORKERS or 1)")->check(CLI::PositiveNumber);
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", g.out, "Output directory");

    // constants
    auto* c_const = app.add_subcommand("constants", "Threshold constants for a given C");
    double cc_C = 2.0;
    std::optional<double> cc_D, cc_k;
    c_const->add_option("--C", cc_C, "Ramsey ratio C > 1")->required();
    c_const->add_option("--D", cc_D, "Scale parameter for p* selection (default D(C))");
    c_const->add_option("--k", cc_k, "Dimension for p* selection");
    std::optional<double> cc_ell;
    double cc_ell0 = 0;
    c_const->add_option("--ell", cc_ell, "Clique size for the union-bound report");
    c_const->add_option("--ell0", cc_ell0, "Lower limit on ell, compared against --ell")->needs("--ell");

    // cap
    auto* c_cap = app.add_subcommand("cap", "Cap threshold c_{k,p} and cap measures");
    double cap_k = 0, cap_C = 2.0;
    std::string cap_p = "auto";
    std::optional<double> cap_a;
    c_cap->add_option("--k", cap_k, "Sphere dimension")->required();
    c_cap->add_option("--p", cap_p, "Cap measure in (0, 1/2] or 'auto'");
    c_cap->add_option("--C", cap_C, "C used by --p auto");
    c_cap->add_option("--a", cap_a, "Also report the measure of {<x,e> <= a}");

    // graph
    auto* c_graph = app.add_subcommand("graph", "Sample G_{k,p}(n) and report its monochromatic clique numbers");
    int gr_k = 0, gr_n = 0;
    double gr_C = 2.0;
    std::string gr_p = "auto";
    bool gr_points = false;
    c_graph->add_option("--k", gr_k, "Sphere dimension")->required()->check(CLI::PositiveNumber);
    c_graph->add_option("--n", gr_n, "Vertex count")->required()->check(CLI::PositiveNumber);
    c_graph->add_option("--p", gr_p, "Edge threshold measure or 'auto'");
    c_graph->add_option("--C", gr_C, "C used by --p auto");
    c_graph->add_flag("--points", gr_points, "Include point coordinates");

    // certify
    auto* c_cert = app.add_subcommand("certify", "Search for a graph with no red K_ell and no blue K_ceil(C ell)");
    double ce_C = 1.0;
    int ce_ell = 0, ce_n = 0, ce_k = 0;
    long long ce_attempts = 10000;
    std::string ce_p = "auto";
    std::optional<double> ce_D;
    c_cert->add_option("--C", ce_C, "Ramsey ratio C >= 1")->required();
    c_cert->add_option("--ell", ce_ell, "Red clique size")->required();
    c_cert->add_option("--n", ce_n, "Vertex count")->required();
    c_cert->add_option("--k", ce_k, "Sphere dimension")->required();
    c_cert->add_option("--p", ce_p, "Edge threshold measure or 'auto'");
    c_cert->add_option("--D", ce_D, "Scale parameter for --p auto");
    c_cert->add_option("--attempts", ce_attempts, "Maximum independent resamples")->check(CLI::PositiveNumber);

    // estimate
    auto* c_est = app.add_subcommand("estimate", "Monte Carlo estimators with first-order predictions");
    std::string es_q;
    int es_r = 3;
    std::optional<int> es_s;
    double es_k = 0, es_C = 2.0;
    std::optional<double> es_ell, es_D;
    std::string es_p = "auto", es_color = "red";
    long long es_N = 100000;
    int es_inner = 256;
    c_est->add_option("--quantity", es_q, "Quantity to estimate")
        ->required()
        ->check(CLI::IsMember({"red-clique", "blue-clique", "kappa", "coefficient-mean", "projection-inner",
                               "perfect-fraction"}));
    c_est->add_option("--r", es_r, "Sequence or clique size");
    c_est->add_option("--s", es_s, "Coordinate index or prefix length (default r)");
    c_est->add_option("--k", es_k, "Sphere dimension")->required();
    c_est->add_option("--p", es_p, "Edge threshold measure or 'auto'");
    c_est->add_option("--C", es_C, "Ramsey ratio for perfectness and --p auto");
    c_est->add_option("--ell", es_ell, "Clique size in the perfectness bound (default r)");
    c_est->add_option("--D", es_D, "Scale parameter for --p auto");
    c_est->add_option("--color", es_color, "Neighborhood color")->check(CLI::IsMember({"red", "blue"}));
    c_est->add_option("--samples", es_N, "Sample count")->check(CLI::PositiveNumber);
    c_est->add_option("--inner", es_inner, "Inner samples per tuple for kappa")->check(CLI::PositiveNumber);

    // verify
    auto* c_ver = app.add_subcommand("verify", "Run the acceptance battery");
    std::string ve_level = "quick";
    std::vector<int> ve_only;
    double ve_bias = 0.0;
    c_ver->add_option("--level", ve_level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
    c_ver->add_option("--only", ve_only, "Check ids to run");
    c_ver->add_option("--cap-bias", ve_bias, "Bias injected into the cap threshold solver");

    // baseline
    auto* c_base = app.add_subcommand("baseline", "First-moment lower bound and comparisons");
    std::vector<double> ba_C{1.0, 2.0};
    std::vector<int> ba_ell;
    double ba_thr = 0.99;
    c_base->add_option("--C", ba_C, "Ramsey ratios C >= 1");
    c_base->add_option("--ell", ba_ell, "Clique sizes")->required();
    c_base->add_option("--threshold", ba_thr, "Bound on the expected bad-clique count");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion& e) {
        out << kVersion << "\n";
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    const bool entropy = !g.seed.has_value();
    const std::uint64_t seed = entropy ? entropy_seed() : *g.seed;
    const std::string started = utc_now();

    Output o;
    try {
        if (name == "constants") {
            const ThresholdConstants t = threshold_constants(cc_C);
            o.params = {{"C", cc_C}};
            o.doc = {{"C", t.C},       {"p_C", t.p_C},       {"M_C", t.M_C}, {"alpha_C", t.alpha_C},
                     {"f_pC", t.f_pC}, {"eps0", t.eps0},     {"D", t.D},     {"eps", t.eps}};
            if (cc_k) {
                const double D = cc_D.value_or(t.D);
                const PStar ps = select_p_star_detail(cc_C, D, *cc_k);
                o.params["D"] = D;
                o.params["k"] = *cc_k;
                o.doc["p_star"] = {{"p", ps.p},   {"offset", ps.offset}, {"target", ps.target},
                                   {"residual", ps.residual},
                                   {"p1", ps.p1}, {"p2", ps.p2},
                                   {"fp_inequality", ps.fp_inequality},
                                   {"one_minus_p_inequality", ps.one_minus_p_inequality}};
            }
            if (cc_ell) {
                const UnionBoundReport u = union_bound_report(cc_C, *cc_ell, cc_D.value_or(0.0), cc_ell0);
                o.params["ell"] = *cc_ell;
                o.params["ell0"] = cc_ell0;
                o.doc["union_bound"] = {{"ell", u.ell},
                                        {"k", u.k},
                                        {"log_n", u.log_n},
                                        {"bound", u.bound},
                                        {"one_minus_bound", u.one_minus_bound},
                                        {"bound_below_one", u.bound_below_one},
                                        {"auxiliary_holds", u.auxiliary_holds},
                                        {"base_sum", u.base_sum},
                                        {"base_sum_below_one", u.base_sum_below_one},
                                        {"ell0", u.ell0},
                                        {"ell_at_least_ell0", u.ell_at_least_ell0}};
            }
        } else if (name == "cap") {
            const double p = resolve_p(cap_p, cap_C, std::nullopt, std::nullopt);
            const CapThreshold t = solve_cap_threshold(cap_k, p);
            o.params = {{"k", cap_k}, {"p", p}};
            o.doc = {{"k", t.k}, {"p", t.p}, {"c", t.c}, {"residual", t.residual}, {"cutoff", t.cutoff()}};
            if (cap_a) {
                o.params["a"] = *cap_a;
                o.doc["a"] = *cap_a;
                o.doc["probability"] = cap_probability(cap_k, *cap_a);
            }
        } else if (name == "graph") {
            const double p = resolve_p(gr_p, gr_C, std::nullopt, std::nullopt);
            Rng rng = substream(seed, 0, Purpose::Points);
            const SphereGraph gr = build_graph(gr_k, p, gr_n, rng);
            long long red_edges = 0;
            for (int i = 0; i < gr.n(); ++i) red_edges += gr.red.degree(i);
            red_edges /= 2;
            const long long pairs = static_cast<long long>(gr.n()) * (gr.n() - 1) / 2;
            o.params = {{"k", gr_k}, {"n", gr_n}, {"p", p}};
            o.doc = {{"k", gr_k},          {"p", p},
                     {"c", gr.c},          {"seed", seed},
                     {"n", gr.n()},        {"red_edges", red_edges},
                     {"blue_edges", pairs - red_edges}};
            if (gr.n() <= 128) {
                o.doc["red_clique_number"] = clique_number(gr, Color::Red);
                o.doc["blue_clique_number"] = clique_number(gr, Color::Blue);
            }
            if (gr_points) o.doc["points"] = points_json(gr.points);
        } else if (name == "certify") {
            const double p = resolve_p(ce_p, ce_C, ce_D, ce_D ? std::optional<double>(ce_k) : std::nullopt);
            o.params = {{"C", ce_C}, {"ell", ce_ell}, {"n", ce_n}, {"k", ce_k}, {"p", p}, {"attempts", ce_attempts}};
            const CertifyResult r = certify_lower_bound(ce_C, ce_ell, ce_k, p, ce_n, ce_attempts, seed, g.workers);
            if (r.found) {
                const SphereGraph& gr = *r.graph;
                const bool no_red = !find_mono_clique(gr, Color::Red, r.red_size);
                const bool no_blue = !find_mono_clique(gr, Color::Blue, r.blue_size);
                const bool rederived = verify_certificate(gr, r.red_size, r.blue_size);
                o.doc = {{"k", ce_k},
                         {"p", p},
                         {"c", gr.c},
                         {"seed", seed},
                         {"n", gr.n()},
                         {"red_size", r.red_size},
                         {"blue_size", r.blue_size},
                         {"attempt_index", r.attempt_index},
                         {"points", points_json(gr.points)},
                         {"witness_checks",
                          {{"no_red_clique", no_red}, {"no_blue_clique", no_blue}, {"colors_rederived", rederived}}}};
                if (!(no_red && no_blue && rederived)) o.code = kInternal;
            } else {
                o.doc = {{"found", false},       {"attempts", r.attempts},   {"k", ce_k},   {"p", p},
                         {"seed", seed},         {"n", ce_n},                {"red_size", r.red_size},
                         {"blue_size", r.blue_size}};
                o.code = kNotFound;
            }
        } else if (name == "estimate") {
            const double p = resolve_p(es_p, es_C, es_D, es_D ? std::optional<double>(es_k) : std::nullopt);
            const double ell = es_ell.value_or(es_r);
            const int s = es_s.value_or(es_r);
            const Color color = parse_color(es_color);
            const RunConfig cfg{seed, g.workers};
            const double c = solve_cap_threshold(es_k, p).c;
            Json params = {{"k", es_k}, {"p", p}, {"c", c}, {"r", es_r}, {"samples", es_N}};
            PredictionComparison pc;
            if (es_q == "red-clique" || es_q == "blue-clique") {
                const Color col = es_q == "red-clique" ? Color::Red : Color::Blue;
                const MCEstimate e = estimate_clique_prob(es_k, p, es_r, col, es_N, cfg);
                const double q = col == Color::Red ? p : 1.0 - p;
                if (es_r == 3 && es_k >= 3)
                    pc = compare(e, triangle_prob_exact(es_k, p, col), "triangle quadrature");
                else if (es_r == 2)
                    pc = compare(e, q, "cap measure");
                else
                    pc = compare(e, std::pow(q, es_r * (es_r - 1) / 2.0), "independent edges");
            } else if (es_q == "kappa") {
                params["C"] = es_C;
                params["ell"] = ell;
                params["color"] = es_color;
                params["inner"] = es_inner;
                const MCEstimate e = estimate_kappa(es_k, p, ell, es_C, es_r, color, es_N, cfg, es_inner);
                pc = compare(e, std::pow(color == Color::Red ? p : 1.0 - p, es_r), "independent caps");
            } else if (es_q == "coefficient-mean") {
                params["C"] = es_C;
                params["ell"] = ell;
                params["s"] = s;
                params["color"] = es_color;
                pc = estimate_coefficient_mean(es_k, p, es_r, s, color, es_N, cfg, make_params(es_k, p, es_C, ell, true));
            } else if (es_q == "projection-inner") {
                params["C"] = es_C;
                params["ell"] = ell;
                params["s"] = s;
                params["color"] = es_color;
                pc = estimate_projection_inner(es_k, p, es_r, s, color, es_N, cfg, make_params(es_k, p, es_C, ell, true));
            } else {
                params["C"] = es_C;
                params["ell"] = ell;
                const PerfectFraction f = perfect_fraction(es_k, ell, es_C, es_r, es_N, cfg);
                pc = compare(f.estimate, f.union_lower, "union lower bound");
            }
            o.params = params;
            o.doc = estimate_json(es_q, params, pc);
        } else if (name == "verify") {
            VerifyOptions vo;
            vo.level = ve_level == "full" ? Level::Full : Level::Quick;
            vo.seed = seed;
            vo.workers = g.workers;
            vo.cap_bias = ve_bias;
            vo.only = ve_only;
            o.params = {{"level", ve_level}, {"only", ve_only}, {"cap_bias", ve_bias}};
            Json checks = Json::array();
            bool all = true;
            o.header = {"id", "name", "passed", "seconds", "detail"};
            for (const auto& r : verify_suite(vo)) {
                checks.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"seconds", r.seconds},
                                  {"detail", r.detail}});
                o.rows.push_back({std::to_string(r.id), r.name, r.passed ? "true" : "false", num(r.seconds), r.detail});
                if (!r.passed) {
                    all = false;
                    err << "failed: " << r.name << "\n";
                }
            }
            o.doc = {{"level", ve_level}, {"seed", seed}, {"workers", g.workers}, {"passed", all}, {"checks", checks}};
            if (!all) o.code = kNotFound;
        } else if (name == "baseline") {
            o.params = {{"C", ba_C}, {"ell", ba_ell}, {"threshold", ba_thr}};
            o.header = {"C", "ell", "p_opt", "log_n", "beta_C", "improvement_log_ratio"};
            Json rows = Json::array();
            for (double C : ba_C) {
                const BetaC beta = beta_C(C);
                for (int ell : ba_ell) {
                    const BaselineResult b = erdos_bound(C, ell, ba_thr);
                    const double imp = C > 1.0 ? improvement_ratio(C, ell).log_ratio : NAN;
                    rows.push_back({{"C", C},
                                    {"ell", ell},
                                    {"blue_size", b.blue_size},
                                    {"p_opt", b.p_opt},
                                    {"n_opt", std::to_string(static_cast<unsigned long long>(b.n_opt))},
                                    {"log_n", b.log_n},
                                    {"sandwich", b.sandwich},
                                    {"beta_C", beta.value},
                                    {"beta_C_degenerate", beta.degenerate},
                                    {"improvement_log_ratio", jnum(imp)}});
                    o.rows.push_back({num(C), std::to_string(ell), num(b.p_opt), num(b.log_n), num(beta.value), num(imp)});
                }
            }
            o.doc = {{"threshold", ba_thr}, {"rows", rows}};
        }
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << "\n";
        return kNotFound;
    } catch (const RejectionExhausted& e) {
        err << "not found: " << e.what() << "\n";
        return kNotFound;
    } catch (const ResourceError& e) {
        err << "infeasible: " << e.what() << "\n";
        return kNotFound;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kInternal;
    }

    const std::string body = g.format == "json" ? o.doc.dump(2) + "\n" : to_csv(o);
    namespace fs = std::filesystem;
    try {
        fs::create_directories(g.out);
        const fs::path result = fs::path(g.out) / (name + "." + g.format);
        const fs::path manifest = fs::path(g.out) / (name + ".manifest.json");
        std::ofstream(result, std::ios::binary) << body;
        Json m = {{"schema_version", kSchemaVersion},
                  {"artifact_version", kVersion},
                  {"subcommand", name},
                  {"parameters", o.params},
                  {"seed", seed},
                  {"seed_source", entropy ? "entropy" : "flag"},
                  {"workers", g.workers},
                  {"format", g.format},
                  {"exit_code", o.code},
                  {"started", started},
                  {"finished", utc_now()},
                  {"outputs", {result.string()}}};
        std::ofstream(manifest, std::ios::binary) << m.dump(2) << "\n";
    } catch (const std::exception& e) {
        err << "internal error: cannot write outputs: " << e.what() << "\n";
        return kInternal;
    }
    out << body;
    return o.code;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace rsg::cli
