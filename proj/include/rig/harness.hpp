#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "rig/dist.hpp"

namespace rig {

// User-facing configuration problems; the CLI maps these to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OmegaRule { log, two_thirds, fixed };

struct ExperimentConfig {
    SizeDistribution dist = SizeDistribution::point_mass(0);
    std::string dist_label;  // echo of the distribution spec
    double beta = 1.0;
    std::vector<std::int64_t> n_values;
    std::int64_t replicates = 1;
    std::uint64_t master_seed = 0;
    bool task_degrees = false;
    bool task_multiplicity = false;
    bool task_explore = false;
    OmegaRule omega_rule = OmegaRule::log;
    std::int64_t omega_fixed = 0;
    bool timing = false;  // real wall times break byte-reproducible reports
    std::string format = "csv";
    std::string out_path;
};

// Distribution spec: {"pmf": [[t,p],...]} or
// {"family": {"name": "point"|"binomial"|"power_law"|"geometric", ...}}.
SizeDistribution parse_dist_spec(const nlohmann::json& spec);
// Compact CLI form "t:p,t:p,..." (e.g. "0:0.5,3:0.5").
SizeDistribution parse_pmf_string(const std::string& text);

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config_file(const std::string& path);

struct ReportRow {
    std::int64_t n = 0;
    std::int64_t m = 0;
    std::int64_t rep = 0;
    std::uint64_t seed = 0;
    std::int64_t n1 = 0;
    double n1_frac = 0.0;
    double pred = 0.0;
    double abs_err = 0.0;
    std::optional<double> deg_tv;
    std::optional<std::int64_t> max_fw;
    std::optional<std::int64_t> b_full;
    std::optional<std::int64_t> b_regular;
    std::optional<std::int64_t> b_simple;
    double wall_ms = 0.0;
};

struct ExperimentSummary {
    std::int64_t n = 0;
    std::int64_t m = 0;
    std::int64_t replicates = 0;
    double pred = 0.0;
    double mean_n1_frac = 0.0;
    double stddev_n1_frac = 0.0;
    double max_abs_err = 0.0;
    std::optional<double> mean_deg_tv;
    std::optional<double> mean_big_full_frac;
    std::optional<double> mean_big_simple_frac;
};

struct ExperimentResult {
    std::vector<ReportRow> rows;  // deterministic (n, replicate) order
    std::vector<ExperimentSummary> summary;
};

// Collision-resistant deterministic seed for one (n, replicate) cell.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t n, std::uint64_t replicate);

// Replicates run concurrently (worker count capped by RIG_GIANT_THREADS);
// output order and content depend only on the config.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// format "csv": fixed header n,m,rep,seed,n1,n1_frac,pred,abs_err,deg_tv,
// max_fw,wall_ms with empty fields for missing tasks; format "jsonl": one
// object per row with the same keys, null for missing. Floats carry 10
// significant digits. wall_ms is only populated when timing is set.
void emit_report(const std::vector<ReportRow>& rows, const std::string& format, std::ostream& os,
                 bool timing);

nlohmann::ordered_json summary_json(const ExperimentConfig& cfg, const ExperimentResult& result);

// Worker cap from RIG_GIANT_THREADS (hardware concurrency by default).
unsigned thread_budget();

}  // namespace rig
