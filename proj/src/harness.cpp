#include "rig/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <thread>

#include "rig/branching.hpp"
#include "rig/explore.hpp"
#include "rig/graphgen.hpp"

namespace rig {

namespace {

std::string g10(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

double require_positive(double v, const char* what) {
    if (!(v > 0.0)) throw ConfigError(std::string(what) + " must be positive");
    return v;
}

// kmax for the limit pmf: past the empirical maximum and far enough out that
// the truncated tail is negligible for TV purposes.
int limit_kmax(const SizeDistribution& q, double beta, int empirical_max) {
    const double a = degree_rate(q, beta);
    const double lambda_max = a * static_cast<double>(q.max_size());
    const int by_tail = static_cast<int>(std::ceil(lambda_max + 12.0 * std::sqrt(lambda_max + 1.0) + 30.0));
    return std::max(empirical_max, by_tail);
}

}  // namespace

SizeDistribution parse_dist_spec(const nlohmann::json& spec) {
    try {
        if (spec.contains("pmf")) {
            std::vector<std::pair<int, double>> pairs;
            for (const auto& entry : spec.at("pmf")) {
                if (!entry.is_array() || entry.size() != 2)
                    throw ConfigError("dist spec: pmf entries must be [t, p] pairs");
                pairs.emplace_back(entry[0].get<int>(), entry[1].get<double>());
            }
            return SizeDistribution::from_pmf(pairs);
        }
        if (spec.contains("family")) {
            const auto& fam = spec.at("family");
            const std::string name = fam.at("name").get<std::string>();
            if (name == "point") return SizeDistribution::point_mass(fam.at("t").get<int>());
            if (name == "binomial")
                return SizeDistribution::binomial(fam.at("m").get<std::int64_t>(), fam.at("p").get<double>());
            if (name == "power_law")
                return SizeDistribution::power_law(fam.at("alpha").get<double>(), fam.at("max").get<int>());
            if (name == "geometric")
                return SizeDistribution::geometric(fam.at("ratio").get<double>(), fam.at("max").get<int>());
            throw ConfigError("dist spec: unknown family '" + name + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("dist spec: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("dist spec: ") + e.what());
    }
    throw ConfigError("dist spec: expected a 'pmf' or 'family' object");
}

SizeDistribution parse_pmf_string(const std::string& text) {
    std::vector<std::pair<int, double>> pairs;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        const std::size_t colon = item.find(':');
        if (colon == std::string::npos) throw ConfigError("pmf string: expected 't:p' entries");
        try {
            pairs.emplace_back(std::stoi(item.substr(0, colon)), std::stod(item.substr(colon + 1)));
        } catch (const std::exception&) {
            throw ConfigError("pmf string: malformed entry '" + item + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    try {
        return SizeDistribution::from_pmf(pairs);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("pmf string: ") + e.what());
    }
}

ExperimentConfig parse_config(const nlohmann::json& j) {
    ExperimentConfig cfg;
    try {
        if (!j.contains("dist")) throw ConfigError("config: missing 'dist'");
        cfg.dist = parse_dist_spec(j.at("dist"));
        cfg.dist_label = j.at("dist").dump();
        cfg.beta = require_positive(j.value("beta", 1.0), "config: beta");
        if (!j.contains("n_values") || !j.at("n_values").is_array() || j.at("n_values").empty())
            throw ConfigError("config: 'n_values' must be a nonempty array");
        for (const auto& v : j.at("n_values")) {
            const std::int64_t n = v.get<std::int64_t>();
            if (n < 1) throw ConfigError("config: n values must be >= 1");
            cfg.n_values.push_back(n);
        }
        cfg.replicates = j.value("replicates", std::int64_t{1});
        if (cfg.replicates < 1) throw ConfigError("config: replicates must be >= 1");
        cfg.master_seed = j.value("master_seed", std::uint64_t{0});
        if (j.contains("tasks")) {
            for (const auto& t : j.at("tasks")) {
                const std::string name = t.get<std::string>();
                if (name == "components") continue;  // always computed
                if (name == "degrees") cfg.task_degrees = true;
                else if (name == "multiplicity") cfg.task_multiplicity = true;
                else if (name == "explore") cfg.task_explore = true;
                else throw ConfigError("config: unknown task '" + name + "'");
            }
        }
        if (j.contains("omega")) {
            const auto& w = j.at("omega");
            if (w.is_string()) {
                const std::string rule = w.get<std::string>();
                if (rule == "log") cfg.omega_rule = OmegaRule::log;
                else if (rule == "twothirds") cfg.omega_rule = OmegaRule::two_thirds;
                else throw ConfigError("config: omega must be 'log', 'twothirds', or an integer");
            } else {
                cfg.omega_rule = OmegaRule::fixed;
                cfg.omega_fixed = w.get<std::int64_t>();
                if (cfg.omega_fixed < 2) throw ConfigError("config: fixed omega must be >= 2");
            }
        }
        cfg.timing = j.value("timing", false);
        cfg.format = j.value("format", std::string("csv"));
        if (cfg.format != "csv" && cfg.format != "jsonl")
            throw ConfigError("config: format must be 'csv' or 'jsonl'");
        cfg.out_path = j.value("out", std::string());
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: parse failure in '") + path + "': " + e.what());
    }
    return parse_config(j);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t n, std::uint64_t replicate) {
    std::uint64_t h = mix64(master ^ 0xa0761d6478bd642fULL);
    h = mix64(h ^ (n + 0xe7037ed1a0b428dbULL));
    h = mix64(h ^ (replicate + 0x8ebc6af09c88c6e3ULL));
    return h;
}

unsigned thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("RIG_GIANT_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
    }
    return hw;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    const double pred = predict_giant_fraction(cfg.dist, cfg.beta);
    const std::size_t total = cfg.n_values.size() * static_cast<std::size_t>(cfg.replicates);

    ExperimentResult result;
    result.rows.resize(total);

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto run_task = [&](std::size_t task) {
            const std::size_t n_idx = task / static_cast<std::size_t>(cfg.replicates);
            const std::int64_t rep = static_cast<std::int64_t>(task % static_cast<std::size_t>(cfg.replicates));
            const std::int64_t n = cfg.n_values[n_idx];

            const auto t0 = std::chrono::steady_clock::now();
            ReportRow row;
            row.n = n;
            row.rep = rep;
            row.seed = derive_seed(cfg.master_seed, static_cast<std::uint64_t>(n),
                                   static_cast<std::uint64_t>(rep));
            const GraphParams params = GraphParams::from_beta(n, cfg.beta);
            row.m = params.m;
            const GraphSample g = sample_graph(params, cfg.dist, row.seed);

            const ComponentCensus cc = component_census(g);
            row.n1 = cc.n1;
            row.n1_frac = static_cast<double>(cc.n1) / static_cast<double>(n);
            row.pred = pred;
            row.abs_err = std::abs(row.n1_frac - pred);

            if (cfg.task_degrees) {
                const DegreeCensus dc = degree_census(g);
                const int kmax = limit_kmax(cfg.dist, cfg.beta, static_cast<int>(dc.pmf.size()) - 1);
                const LimitDegreePmf limit = limit_degree_pmf(cfg.dist, cfg.beta, kmax);
                row.deg_tv = tv_distance(dc.pmf, limit.pmf);
            }
            if (cfg.task_multiplicity)
                row.max_fw = attribute_multiplicity(g, cfg.dist.max_size()).max_multiplicity;
            if (cfg.task_explore) {
                std::int64_t omega = 0;
                switch (cfg.omega_rule) {
                    case OmegaRule::log: omega = omega_log(n); break;
                    case OmegaRule::two_thirds: omega = omega_two_thirds(n); break;
                    case OmegaRule::fixed: omega = std::min(cfg.omega_fixed, n); break;
                }
                const BigVertexCensus census = big_vertex_census(g, std::max<std::int64_t>(2, omega));
                row.b_full = census.b_full;
                row.b_regular = census.b_regular;
                row.b_simple = census.b_simple;
            }
            row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            result.rows[task] = std::move(row);
    };
    auto worker = [&] {
        for (;;) {
            const std::size_t task = next.fetch_add(1);
            if (task >= total) return;
            try {
                run_task(task);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                next.store(total);  // drain the remaining work
                return;
            }
        }
    };

    const unsigned workers = std::min<std::size_t>(thread_budget(), total);
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    for (std::size_t n_idx = 0; n_idx < cfg.n_values.size(); ++n_idx) {
        const auto* rows = result.rows.data() + n_idx * static_cast<std::size_t>(cfg.replicates);
        const auto reps = static_cast<std::size_t>(cfg.replicates);
        ExperimentSummary s;
        s.n = cfg.n_values[n_idx];
        s.m = rows[0].m;
        s.replicates = cfg.replicates;
        s.pred = pred;
        double sum = 0.0, tv_sum = 0.0, bf_sum = 0.0, bs_sum = 0.0;
        for (std::size_t r = 0; r < reps; ++r) {
            sum += rows[r].n1_frac;
            s.max_abs_err = std::max(s.max_abs_err, rows[r].abs_err);
            if (rows[r].deg_tv) tv_sum += *rows[r].deg_tv;
            if (rows[r].b_full) bf_sum += static_cast<double>(*rows[r].b_full) / static_cast<double>(s.n);
            if (rows[r].b_simple) bs_sum += static_cast<double>(*rows[r].b_simple) / static_cast<double>(s.n);
        }
        s.mean_n1_frac = sum / static_cast<double>(reps);
        double var = 0.0;
        for (std::size_t r = 0; r < reps; ++r) {
            const double d = rows[r].n1_frac - s.mean_n1_frac;
            var += d * d;
        }
        s.stddev_n1_frac = reps > 1 ? std::sqrt(var / static_cast<double>(reps - 1)) : 0.0;
        if (cfg.task_degrees) s.mean_deg_tv = tv_sum / static_cast<double>(reps);
        if (cfg.task_explore) {
            s.mean_big_full_frac = bf_sum / static_cast<double>(reps);
            s.mean_big_simple_frac = bs_sum / static_cast<double>(reps);
        }
        result.summary.push_back(s);
    }
    return result;
}

void emit_report(const std::vector<ReportRow>& rows, const std::string& format, std::ostream& os,
                 bool timing) {
    if (rows.empty()) throw std::invalid_argument("emit_report: no rows");
    if (format == "csv") {
        os << "n,m,rep,seed,n1,n1_frac,pred,abs_err,deg_tv,max_fw,wall_ms\n";
        for (const auto& r : rows) {
            os << r.n << ',' << r.m << ',' << r.rep << ',' << r.seed << ',' << r.n1 << ','
               << g10(r.n1_frac) << ',' << g10(r.pred) << ',' << g10(r.abs_err) << ',';
            if (r.deg_tv) os << g10(*r.deg_tv);
            os << ',';
            if (r.max_fw) os << *r.max_fw;
            os << ',';
            if (timing) os << g10(r.wall_ms);
            os << '\n';
        }
    } else if (format == "jsonl") {
        for (const auto& r : rows) {
            os << "{\"n\":" << r.n << ",\"m\":" << r.m << ",\"rep\":" << r.rep << ",\"seed\":" << r.seed
               << ",\"n1\":" << r.n1 << ",\"n1_frac\":" << g10(r.n1_frac) << ",\"pred\":" << g10(r.pred)
               << ",\"abs_err\":" << g10(r.abs_err) << ",\"deg_tv\":";
            if (r.deg_tv) os << g10(*r.deg_tv);
            else os << "null";
            os << ",\"max_fw\":";
            if (r.max_fw) os << *r.max_fw;
            else os << "null";
            os << ",\"wall_ms\":";
            if (timing) os << g10(r.wall_ms);
            else os << "null";
            os << "}\n";
        }
    } else {
        throw ConfigError("emit_report: format must be 'csv' or 'jsonl'");
    }
}

nlohmann::ordered_json summary_json(const ExperimentConfig& cfg, const ExperimentResult& result) {
    nlohmann::ordered_json out;
    out["dist"] = nlohmann::json::parse(cfg.dist_label.empty() ? "null" : cfg.dist_label);
    out["beta"] = cfg.beta;
    out["replicates"] = cfg.replicates;
    out["master_seed"] = cfg.master_seed;
    out["summary"] = nlohmann::ordered_json::array();
    for (const auto& s : result.summary) {
        nlohmann::ordered_json row;
        row["n"] = s.n;
        row["m"] = s.m;
        row["pred"] = s.pred;
        row["mean_n1_frac"] = s.mean_n1_frac;
        row["stddev_n1_frac"] = s.stddev_n1_frac;
        row["max_abs_err"] = s.max_abs_err;
        if (s.mean_deg_tv) row["mean_deg_tv"] = *s.mean_deg_tv;
        if (s.mean_big_full_frac) row["mean_big_full_frac"] = *s.mean_big_full_frac;
        if (s.mean_big_simple_frac) row["mean_big_simple_frac"] = *s.mean_big_simple_frac;
        out["summary"].push_back(std::move(row));
    }
    return out;
}

}  // namespace rig
