#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "rig/branching.hpp"
#include "rig/explore.hpp"
#include "rig/graphgen.hpp"
#include "rig/harness.hpp"
#include "rig/hypergeom.hpp"

namespace {

using nlohmann::ordered_json;

rig::SizeDistribution dist_from_options(const std::string& dist_file, const std::string& pmf) {
    if (!dist_file.empty() && !pmf.empty())
        throw rig::ConfigError("give either --dist or --pmf, not both");
    if (!dist_file.empty()) {
        std::ifstream in(dist_file);
        if (!in) throw rig::ConfigError("cannot open distribution file '" + dist_file + "'");
        nlohmann::json spec;
        try {
            in >> spec;
        } catch (const nlohmann::json::exception& e) {
            throw rig::ConfigError(std::string("distribution file: ") + e.what());
        }
        return rig::parse_dist_spec(spec);
    }
    if (!pmf.empty()) return rig::parse_pmf_string(pmf);
    throw rig::ConfigError("a distribution is required (--dist FILE or --pmf \"t:p,...\")");
}

std::int64_t resolve_omega(const std::string& rule, std::int64_t n) {
    if (rule == "log") return rig::omega_log(n);
    if (rule == "twothirds") return rig::omega_two_thirds(n);
    try {
        const std::int64_t w = std::stoll(rule);
        if (w < 2 || w > n) throw rig::ConfigError("omega must be in [2, n]");
        return w;
    } catch (const std::invalid_argument&) {
        throw rig::ConfigError("omega must be 'log', 'twothirds', or an integer");
    }
}

ordered_json rational_json(const rig::hypergeom::Rational& r) {
    ordered_json j;
    j["value"] = r.convert_to<double>();
    j["exact"] = boost::multiprecision::numerator(r).str() + "/" +
                 boost::multiprecision::denominator(r).str();
    return j;
}

int cmd_rho(const std::string& dist_file, const std::string& pmf, double beta) {
    const rig::SizeDistribution q = dist_from_options(dist_file, pmf);
    ordered_json out;
    out["beta"] = beta;
    out["q0"] = q.mass(0);
    const double pred = rig::predict_giant_fraction(q, beta);
    if (q.mass(0) >= 1.0) {
        out["prediction"] = 0.0;
        out["degenerate"] = true;
        std::cout << out.dump(2) << '\n';
        return 0;
    }
    const rig::ReducedDistribution red = rig::reduce(q, beta);
    out["beta_star"] = red.beta_star;
    const rig::OffspringKernel kernel(red.star, red.beta_star);
    const rig::SurvivalSolution sol = rig::solve_extinction(kernel);
    out["theta"] = sol.theta;
    ordered_json extinct, survive;
    for (int t : kernel.types()) extinct[std::to_string(t)] = sol.extinct[static_cast<std::size_t>(t)];
    for (int s = 1; s <= kernel.max_type() + 1; ++s)
        survive[std::to_string(s)] = sol.survive[static_cast<std::size_t>(s)];
    out["extinct"] = extinct;
    out["survive"] = survive;
    out["rho_tilde"] = rig::rho_tilde(sol, red.star);
    out["prediction"] = pred;
    out["iterations"] = sol.iterations;
    out["residual"] = sol.residual;
    out["converged"] = sol.converged;
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_simulate(const std::string& dist_file, const std::string& pmf, std::int64_t n, double beta,
                 std::uint64_t seed, const std::string& dump_path) {
    const rig::SizeDistribution q = dist_from_options(dist_file, pmf);
    const rig::GraphParams params = rig::GraphParams::from_beta(n, beta);
    const rig::GraphSample g = rig::sample_graph(params, q, seed);
    const rig::ComponentCensus cc = rig::component_census(g);
    const double pred = rig::predict_giant_fraction(q, beta);

    if (!dump_path.empty()) {
        std::ofstream out(dump_path);
        if (!out) throw std::runtime_error("cannot open dump path '" + dump_path + "'");
        rig::write_graph_dump(g, out);
    }

    ordered_json out;
    out["n"] = params.n;
    out["m"] = params.m;
    out["seed"] = seed;
    out["n1"] = cc.n1;
    out["n1_frac"] = static_cast<double>(cc.n1) / static_cast<double>(params.n);
    out["prediction"] = pred;
    out["abs_err"] = std::abs(out["n1_frac"].get<double>() - pred);
    out["components"] = cc.count;
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_experiment(const std::string& config_path, const std::string& out_override,
                   const std::string& format_override, std::optional<std::uint64_t> seed_override,
                   std::optional<std::int64_t> replicates_override) {
    rig::ExperimentConfig cfg = rig::load_config_file(config_path);
    if (!out_override.empty()) cfg.out_path = out_override;
    if (!format_override.empty()) {
        if (format_override != "csv" && format_override != "jsonl")
            throw rig::ConfigError("format must be 'csv' or 'jsonl'");
        cfg.format = format_override;
    }
    if (seed_override) cfg.master_seed = *seed_override;
    if (replicates_override) {
        if (*replicates_override < 1) throw rig::ConfigError("replicates must be >= 1");
        cfg.replicates = *replicates_override;
    }

    const rig::ExperimentResult result = rig::run_experiment(cfg);
    if (cfg.out_path.empty()) {
        rig::emit_report(result.rows, cfg.format, std::cout, cfg.timing);
        std::cerr << rig::summary_json(cfg, result).dump(2) << '\n';
    } else {
        std::ofstream out(cfg.out_path);
        if (!out) throw std::runtime_error("cannot open output path '" + cfg.out_path + "'");
        rig::emit_report(result.rows, cfg.format, out, cfg.timing);
        std::cout << rig::summary_json(cfg, result).dump(2) << '\n';
    }
    return 0;
}

int cmd_hypergeom(long a, long b, long h, long k, bool grid) {
    using namespace rig::hypergeom;
    if (grid) {
        std::int64_t checked = 0, vacuous = 0;
        ordered_json violations = ordered_json::array();
        for (long kk = 4; kk <= 60; ++kk)
            for (long aa = 0; aa <= kk; ++aa)
                for (long bb = 0; aa + bb <= kk; ++bb)
                    for (long hh = 0; aa + bb + hh <= kk; ++hh) {
                        for (const auto& rep : check_lemma1({aa, bb, hh, kk})) {
                            ++checked;
                            if (rep.vacuous) ++vacuous;
                            if (!rep.holds) {
                                ordered_json v;
                                v["a"] = aa; v["b"] = bb; v["h"] = hh; v["k"] = kk;
                                v["bound"] = rep.name;
                                violations.push_back(v);
                            }
                        }
                    }
        ordered_json out;
        out["checked"] = checked;
        out["vacuous_lower_bounds"] = vacuous;
        out["violations"] = violations;
        std::cout << out.dump(2) << '\n';
        return violations.empty() ? 0 : 1;
    }

    const IntersectionQuery q{a, b, h, k};
    ordered_json out;
    out["query"] = {{"a", a}, {"b", b}, {"h", h}, {"k", k}};
    out["probabilities"] = {{"p_hit", rational_json(p_hit_exact(a, b, k))},
                            {"p_one", rational_json(p_one_exact(a, b, k))},
                            {"p_two", rational_json(p_two_exact(a, b, k))}};
    if (b + h <= k) {
        out["probabilities"]["p_one_avoid"] = rational_json(p_one_avoid_exact(a, b, h, k));
        out["probabilities"]["p_one_hit"] = rational_json(p_one_hit_exact(a, b, h, k));
    }
    ordered_json reports = ordered_json::array();
    for (const auto& rep : check_lemma1(q)) {
        ordered_json r;
        r["bound"] = rep.name;
        r["lower"] = rep.lower.convert_to<double>();
        r["value"] = rep.value.convert_to<double>();
        r["upper"] = rep.upper.convert_to<double>();
        r["holds"] = rep.holds;
        r["vacuous"] = rep.vacuous;
        reports.push_back(std::move(r));
    }
    out["bounds"] = std::move(reports);
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_explore(const std::string& dist_file, const std::string& pmf, std::int64_t n, double beta,
                const std::string& omega_rule, std::uint64_t seed, const std::string& flags_path) {
    const rig::SizeDistribution q = dist_from_options(dist_file, pmf);
    const rig::GraphParams params = rig::GraphParams::from_beta(n, beta);
    const std::int64_t omega = resolve_omega(omega_rule, n);
    const rig::GraphSample g = rig::sample_graph(params, q, seed);
    const rig::BigVertexCensus census = rig::big_vertex_census(g, omega);

    if (!flags_path.empty()) {
        std::ofstream out(flags_path);
        if (!out) throw std::runtime_error("cannot open flags path '" + flags_path + "'");
        out << "vertex,big_full,big_regular,big_simple\n";
        for (std::size_t v = 0; v < census.flag_full.size(); ++v)
            out << v << ',' << int(census.flag_full[v]) << ',' << int(census.flag_regular[v]) << ','
                << int(census.flag_simple[v]) << '\n';
    }

    ordered_json out;
    out["n"] = params.n;
    out["m"] = params.m;
    out["omega"] = omega;
    out["seed"] = seed;
    out["stop_rule"] = "list>=omega or colored>3*omega";
    out["b_full"] = census.b_full;
    out["b_regular"] = census.b_regular;
    out["b_simple"] = census.b_simple;
    out["b_full_frac"] = static_cast<double>(census.b_full) / static_cast<double>(params.n);
    out["b_regular_frac"] = static_cast<double>(census.b_regular) / static_cast<double>(params.n);
    out["b_simple_frac"] = static_cast<double>(census.b_simple) / static_cast<double>(params.n);
    out["prediction"] = rig::predict_giant_fraction(q, beta);
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_degree(const std::string& dist_file, const std::string& pmf, std::int64_t n, double beta,
               std::uint64_t seed, int kmax) {
    const rig::SizeDistribution q = dist_from_options(dist_file, pmf);
    const rig::GraphParams params = rig::GraphParams::from_beta(n, beta);
    const rig::GraphSample g = rig::sample_graph(params, q, seed);
    const rig::DegreeCensus dc = rig::degree_census(g);
    const int top = kmax > 0 ? kmax : static_cast<int>(dc.pmf.size()) + 60;
    const rig::LimitDegreePmf limit = rig::limit_degree_pmf(q, beta, top);

    ordered_json out;
    out["n"] = params.n;
    out["m"] = params.m;
    out["seed"] = seed;
    out["mean_degree"] = dc.mean;
    out["limit_rate_a"] = rig::degree_rate(q, beta);
    out["tv_distance"] = rig::tv_distance(dc.pmf, limit.pmf);
    out["empirical_pmf"] = dc.pmf;
    out["limit_pmf"] = limit.pmf;
    out["limit_tail"] = limit.tail;
    std::cout << out.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulation and numerical analysis of sparse random intersection graphs"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help and exit");  // frees -h for the hypergeom query

    std::string dist_file, pmf, omega_rule = "log", dump_path, flags_path, config_path;
    std::string out_path, format;
    double beta = 1.0;
    std::int64_t n = 1000;
    std::uint64_t seed = 0;
    int kmax = 0;
    long qa = 0, qb = 0, qh = 0, qk = 4;
    bool grid = false;
    std::optional<std::uint64_t> seed_override;
    std::optional<std::int64_t> replicates_override;

    auto* rho = app.add_subcommand("rho", "branching-process survival probabilities and giant prediction");
    rho->add_option("--beta", beta, "attribute ratio m/n")->required();
    rho->add_option("--dist", dist_file, "distribution spec file (JSON)");
    rho->add_option("--pmf", pmf, "inline pmf, e.g. \"0:0.5,3:0.5\"");

    auto* sim = app.add_subcommand("simulate", "sample one graph and report its component census");
    sim->add_option("--n", n, "vertex count")->required();
    sim->add_option("--beta", beta, "attribute ratio m/n")->required();
    sim->add_option("--dist", dist_file, "distribution spec file (JSON)");
    sim->add_option("--pmf", pmf, "inline pmf");
    sim->add_option("--seed", seed, "sample seed");
    sim->add_option("--dump", dump_path, "write the graph fixture to this path");

    auto* exp = app.add_subcommand("experiment", "replicate sweep driven by a config file");
    exp->add_option("--config", config_path, "experiment config (JSON)")->required();
    exp->add_option("--out", out_path, "report path (overrides config)");
    exp->add_option("--format", format, "csv|jsonl (overrides config)");
    exp->add_option("--seed", seed_override, "master seed (overrides config)");
    exp->add_option("--replicates", replicates_override, "replicates (overrides config)");

    auto* hyp = app.add_subcommand("hypergeom", "exact intersection probabilities and bound checks");
    hyp->set_help_flag("--help", "print help and exit");
    hyp->add_option("--a", qa, "random set size");
    hyp->add_option("--b", qb, "target set size");
    hyp->add_option("--h", qh, "avoid set size");
    hyp->add_option("--k", qk, "ground set size");
    hyp->add_flag("--grid", grid, "sweep the verification grid k in [4,60]");

    auto* expl = app.add_subcommand("explore", "big-vertex censuses over the three exploration modes");
    expl->add_option("--n", n, "vertex count")->required();
    expl->add_option("--beta", beta, "attribute ratio m/n")->required();
    expl->add_option("--dist", dist_file, "distribution spec file (JSON)");
    expl->add_option("--pmf", pmf, "inline pmf");
    expl->add_option("--omega", omega_rule, "log | twothirds | integer threshold");
    expl->add_option("--seed", seed, "sample seed");
    expl->add_option("--flags", flags_path, "per-vertex flag CSV path");

    auto* deg = app.add_subcommand("degree", "empirical degree law against the Poisson-mixture limit");
    deg->add_option("--n", n, "vertex count")->required();
    deg->add_option("--beta", beta, "attribute ratio m/n")->required();
    deg->add_option("--dist", dist_file, "distribution spec file (JSON)");
    deg->add_option("--pmf", pmf, "inline pmf");
    deg->add_option("--seed", seed, "sample seed");
    deg->add_option("--kmax", kmax, "limit pmf truncation (default: auto)");

    try {
        app.parse(argc, argv);
        if (rho->parsed()) return cmd_rho(dist_file, pmf, beta);
        if (sim->parsed()) return cmd_simulate(dist_file, pmf, n, beta, seed, dump_path);
        if (exp->parsed())
            return cmd_experiment(config_path, out_path, format, seed_override, replicates_override);
        if (hyp->parsed()) return cmd_hypergeom(qa, qb, qh, qk, grid);
        if (expl->parsed()) return cmd_explore(dist_file, pmf, n, beta, omega_rule, seed, flags_path);
        if (deg->parsed()) return cmd_degree(dist_file, pmf, n, beta, seed, kmax);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const rig::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
