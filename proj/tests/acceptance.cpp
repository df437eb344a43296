// Acceptance suite: one pass/fail line per criterion, exit 0 only if all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "rig/branching.hpp"
#include "rig/explore.hpp"
#include "rig/graphgen.hpp"
#include "rig/harness.hpp"
#include "rig/hypergeom.hpp"
#include "test_util.hpp"

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int idx, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", idx, name, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

constexpr std::uint64_t kMasterSeed = 20100220;

// fixed-point survival values, frozen from an independent bisection oracle
constexpr double kRho3 = 0.95871468949299876;      // point mass 2, beta 1
constexpr double kPredMix = 0.49273949750782991;   // {q0=0.5, q3=0.5}, beta 1

double mean_giant_fraction(const rig::SizeDistribution& q, double beta, std::int64_t n, int reps,
                           std::uint64_t salt, double* worst = nullptr) {
    double sum = 0.0;
    if (worst) *worst = 0.0;
    for (int rep = 0; rep < reps; ++rep) {
        const auto seed = rig::derive_seed(kMasterSeed ^ salt, static_cast<std::uint64_t>(n),
                                           static_cast<std::uint64_t>(rep));
        const auto g = rig::sample_graph(rig::GraphParams::from_beta(n, beta), q, seed);
        const double frac =
            static_cast<double>(rig::component_census(g).n1) / static_cast<double>(n);
        sum += frac;
        if (worst) *worst = std::max(*worst, frac);
    }
    return sum / reps;
}

void criterion_1_giant_reproduction() {
    const auto t0 = Clock::now();
    const auto q = rig::SizeDistribution::point_mass(2);
    const double pred = rig::predict_giant_fraction(q, 1.0);
    const double mean = mean_giant_fraction(q, 1.0, 100000, 20, 0x01);
    const double elapsed = seconds_since(t0);
    std::ostringstream d;
    d << "mean N1/n = " << mean << ", prediction = " << pred << ", |diff| = " << std::abs(mean - pred)
      << " <= 0.010, " << elapsed << " s";
    report(1, "giant-component reproduction, point mass 2, beta 1, n = 1e5",
           std::abs(mean - pred) <= 0.010 && std::abs(pred - kRho3) <= 1e-9 && elapsed < 60.0,
           d.str());
}

void criterion_2_dilution() {
    const auto q = rig::SizeDistribution::from_pmf({{0, 0.5}, {3, 0.5}});
    const double pred = rig::predict_giant_fraction(q, 1.0);
    const double mean = mean_giant_fraction(q, 1.0, 100000, 20, 0x02);
    std::ostringstream d;
    d << "mean N1/n = " << mean << ", prediction = " << pred << ", |diff| = " << std::abs(mean - pred)
      << " <= 0.010";
    report(2, "giant component survives empty-set dilution",
           std::abs(mean - pred) <= 0.010 && std::abs(pred - kPredMix) <= 1e-9, d.str());
}

void criterion_3_subcritical() {
    bool ok = true;
    std::ostringstream d;
    const auto check = [&](const rig::SizeDistribution& q, double beta, const char* label) {
        const double pred = rig::predict_giant_fraction(q, beta);
        double worst = 0.0;
        mean_giant_fraction(q, beta, 100000, 5, 0x03, &worst);
        ok = ok && pred == 0.0 && worst < 0.01;
        d << label << ": pred = " << pred << ", max N1/n = " << worst << "; ";
    };
    check(rig::SizeDistribution::point_mass(1), 0.5, "d1 b0.5");
    check(rig::SizeDistribution::point_mass(1), 1.0, "d1 b1");
    check(rig::SizeDistribution::point_mass(1), 2.0, "d1 b2");
    check(rig::SizeDistribution::point_mass(2), 4.0, "d2 b4");
    report(3, "subcritical configurations stay fragmented", ok, d.str());
}

void criterion_4_degree_law() {
    const auto q = rig::SizeDistribution::point_mass(2);
    const auto g = rig::sample_graph(rig::GraphParams::from_beta(100000, 1.0), q,
                                     rig::derive_seed(kMasterSeed ^ 0x04, 100000, 0));
    const auto dc = rig::degree_census(g);
    const int kmax = static_cast<int>(dc.pmf.size()) + 80;
    const auto limit = rig::limit_degree_pmf(q, 1.0, kmax);
    const double tv = rig::tv_distance(dc.pmf, limit.pmf);
    // the limit law at degree 0 is sum_t q_t e^{-a t} = e^{-4} with a = 2
    const double p0_limit = std::exp(-4.0);
    const double p0_emp = dc.pmf[0];
    const bool ok = tv < 0.02 && std::abs(limit.pmf[0] - p0_limit) <= 1e-12 &&
                    std::abs(p0_emp - p0_limit) <= 0.005;
    std::ostringstream d;
    d << "TV = " << tv << " < 0.02, pmf[0] = " << p0_emp << " vs e^-4 = " << p0_limit
      << ", |diff| = " << std::abs(p0_emp - p0_limit) << " <= 0.005";
    report(4, "degree law converges to the Poisson mixture", ok, d.str());
}

void criterion_5_lemma1() {
    using namespace rig::hypergeom;
    const auto t0 = Clock::now();
    bool ok = true;
    std::int64_t enumerated = 0;
    for (long k = 1; k <= 12 && ok; ++k)
        for (long a = 0; a <= k && ok; ++a)
            for (long b = 0; b <= k && ok; ++b)
                for (long h = 0; b + h <= k && ok; ++h) {
                    const auto e = enumerate_oracle(a, b, h, k);
                    ok = ok && p_hit_exact(a, b, k) == e.hit && p_one_exact(a, b, k) == e.one &&
                         p_two_exact(a, b, k) == e.two &&
                         p_one_avoid_exact(a, b, h, k) == e.one_avoid &&
                         p_one_hit_exact(a, b, h, k) == e.one_hit;
                    ++enumerated;
                }
    std::int64_t checked = 0, vacuous = 0, violations = 0;
    for (long k = 4; k <= 60; ++k)
        for (long a = 0; a <= k; ++a)
            for (long b = 0; a + b <= k; ++b)
                for (long h = 0; a + b + h <= k; ++h)
                    for (const auto& r : check_lemma1({a, b, h, k})) {
                        ++checked;
                        if (r.vacuous) ++vacuous;
                        if (!r.holds) ++violations;
                    }
    const double elapsed = seconds_since(t0);
    std::ostringstream d;
    d << enumerated << " queries match enumeration exactly; " << checked << " bounds checked, "
      << violations << " violations, " << vacuous << " vacuous, " << elapsed << " s";
    report(5, "closed forms equal enumeration and every stated bound holds",
           ok && violations == 0 && elapsed < 30.0, d.str());
}

void criterion_6_branching_cross_validation() {
    const rig::OffspringKernel kernel(rig::SizeDistribution::point_mass(2), 1.0);
    const auto sol = rig::solve_extinction(kernel);

    double worst_gap = 0.0;
    const std::vector<rig::OffspringKernel> kernels = {
        kernel,
        rig::OffspringKernel(rig::SizeDistribution::point_mass(3), 2.0),
        rig::OffspringKernel::from_masses({{2, 0.4}, {5, 0.3}}, 0.9),
    };
    for (const auto& k : kernels) {
        const auto s = rig::solve_extinction(k);
        const auto x = rig::solve_extinction_vector(k);
        for (std::size_t i = 0; i < x.size(); ++i) {
            const int t = k.types()[i];
            worst_gap = std::max(worst_gap,
                                 std::abs(x[i] - s.extinct[static_cast<std::size_t>(t)]));
        }
    }

    // one batch of capped progeny runs, estimates for every cap from the same paths
    const std::uint64_t reps = 100000;
    std::uint64_t ge10 = 0, ge100 = 0, ge1000 = 0;
    for (std::uint64_t r = 0; r < reps; ++r) {
        rig::RngStream rng = rig::make_substream(kMasterSeed ^ 0x06, r);
        const auto run = rig::simulate_progeny(kernel, 3, 1000, rng);
        const std::uint64_t progeny = run.capped ? 1000 : run.progeny;
        if (progeny >= 10) ++ge10;
        if (progeny >= 100) ++ge100;
        if (progeny >= 1000) ++ge1000;
    }
    const double est = static_cast<double>(ge1000) / static_cast<double>(reps);
    const double se = std::sqrt(est * (1.0 - est) / static_cast<double>(reps));
    const double rho = sol.survival(3);
    const bool mc_ok = std::abs(est - rho) <= 3.0 * se + 0.003;
    const bool monotone = ge10 >= ge100 && ge100 >= ge1000;

    std::ostringstream d;
    d << "solver gap = " << worst_gap << " <= 1e-10; rho_hat(1e3) = " << est << " vs rho = " << rho
      << " within 3se+0.003 (se = " << se << "); caps 10/100/1000 nonincreasing: " << ge10 << "/"
      << ge100 << "/" << ge1000;
    report(6, "scalar solver, vector iteration, and Monte Carlo agree",
           worst_gap <= 1e-10 && mc_ok && monotone, d.str());
}

void criterion_7_normalization_cancellation() {
    rig::RngStream g = rig::make_stream(kMasterSeed ^ 0x07);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::pair<int, double>> pairs;
        double total = 0.0;
        const int support = 2 + static_cast<int>(rig::uniform_below(g, 6));
        for (int i = 0; i < support; ++i) {
            pairs.emplace_back(static_cast<int>(rig::uniform_below(g, 3)) + 3 * i,
                               0.02 + rig::uniform01(g));
            total += pairs.back().second;
        }
        for (auto& [t, p] : pairs) p /= total;
        const double beta = 0.3 + 2.5 * rig::uniform01(g);
        const auto detail =
            rig::predict_giant_fraction_detail(rig::SizeDistribution::from_pmf(pairs), beta);
        worst = std::max(worst, std::abs(detail.via_reduced - detail.via_direct));
    }
    std::ostringstream d;
    d << "50 random measures, max route disagreement = " << worst << " <= 1e-12";
    report(7, "reduced and direct prediction routes agree", worst <= 1e-12, d.str());
}

void criterion_8_truncation_continuity() {
    const auto q = rig::SizeDistribution::geometric(0.5, 40);
    auto pred_at = [&](int M) {
        const auto tr = rig::truncate(q, M);
        return rig::predict_giant_fraction(tr.dist, 1.0 / tr.mass_kept);
    };
    const double ref = pred_at(40);
    double worst = 0.0;
    for (int M = 25; M <= 40; ++M) worst = std::max(worst, std::abs(pred_at(M) - ref));
    std::ostringstream d;
    d << "geometric tail, max |pred(M) - pred(40)| over M in [25,40] = " << worst << " < 1e-6";
    report(8, "predictions are continuous under truncation", worst < 1e-6, d.str());
}

void criterion_9_exploration_censuses() {
    const std::int64_t n = 10000;
    const auto q = rig::SizeDistribution::point_mass(2);
    const auto g = rig::sample_graph(rig::GraphParams::from_beta(n, 1.0), q,
                                     rig::derive_seed(kMasterSeed ^ 0x09, static_cast<std::uint64_t>(n), 0));
    const std::int64_t omega = rig::omega_log(n);  // ceil(ln 1e4) = 10
    const auto census = rig::big_vertex_census(g, omega);

    const auto cc = rig::component_census(g);
    std::vector<std::int64_t> size_by_id(static_cast<std::size_t>(cc.count), 0);
    for (std::uint32_t v = 0; v < n; ++v) ++size_by_id[cc.component_of[v]];
    bool flags_match = true;
    bool inclusions = census.b_simple <= census.b_full && census.b_regular <= census.b_full;
    for (std::uint32_t v = 0; v < n; ++v) {
        const bool big = size_by_id[cc.component_of[v]] >= omega;
        flags_match = flags_match && (census.flag_full[v] == (big ? 1 : 0));
        inclusions = inclusions && census.flag_simple[v] <= census.flag_full[v] &&
                     census.flag_regular[v] <= census.flag_full[v];
    }

    const double rho_tilde = rig::predict_giant_fraction(q, 1.0);
    const double full_frac = static_cast<double>(census.b_full) / static_cast<double>(n);
    const double gap_frac =
        static_cast<double>(census.b_full - census.b_simple) / static_cast<double>(n);
    const bool ok = inclusions && flags_match && std::abs(full_frac - rho_tilde) <= 0.05 &&
                    gap_frac <= 0.05;
    std::ostringstream d;
    d << "omega = " << omega << ", b_full/n = " << full_frac << " within 0.05 of " << rho_tilde
      << "; (b_full - b_simple)/n = " << gap_frac << " <= 0.05; inclusions and full-mode flags exact";
    report(9, "exploration censuses align with the union-find census", ok, d.str());
}

void criterion_10_oracle_equivalence() {
    rig::RngStream seeds = rig::make_stream(kMasterSeed ^ 0x0a);
    const auto q = rig::SizeDistribution::from_pmf({{0, 0.15}, {1, 0.35}, {2, 0.35}, {4, 0.15}});
    bool ok = true;
    for (int trial = 0; trial < 100 && ok; ++trial) {
        const std::int64_t n = 1 + static_cast<std::int64_t>(rig::uniform_below(seeds, 500));
        const std::int64_t m = 1 + static_cast<std::int64_t>(rig::uniform_below(seeds, 400));
        const auto g = rig::sample_graph(rig::GraphParams::from_counts(n, m), q, seeds());
        const auto fast = rig::component_census(g);
        const auto slow = test_oracle::bfs_census(g);
        const auto dc = rig::degree_census(g);
        ok = fast.sizes == slow.sizes && fast.n1 == slow.n1 && fast.count == slow.count &&
             test_oracle::same_partition(fast.component_of, slow.component_of) &&
             dc.mean == 2.0 * static_cast<double>(slow.edges) / static_cast<double>(n);
    }
    report(10, "union-find census equals explicit-adjacency BFS on 100 samples", ok,
           ok ? "components, sizes, and degree means identical" : "mismatch found");
}

void criterion_11_determinism() {
    nlohmann::json j;
    j["dist"] = {{"family", {{"name", "point"}, {"t", 2}}}};
    j["beta"] = 1.0;
    j["n_values"] = {2000, 5000};
    j["replicates"] = 3;
    j["master_seed"] = kMasterSeed;
    j["tasks"] = {"components", "degrees", "multiplicity", "explore"};
    const auto cfg = rig::parse_config(j);

    const auto run1 = rig::run_experiment(cfg);
    const auto run2 = rig::run_experiment(cfg);
    std::ostringstream csv1, csv2, jsonl1, jsonl2;
    rig::emit_report(run1.rows, "csv", csv1, false);
    rig::emit_report(run2.rows, "csv", csv2, false);
    rig::emit_report(run1.rows, "jsonl", jsonl1, false);
    rig::emit_report(run2.rows, "jsonl", jsonl2, false);
    const bool ok = csv1.str() == csv2.str() && jsonl1.str() == jsonl2.str();
    std::ostringstream d;
    d << "csv " << csv1.str().size() << " bytes and jsonl " << jsonl1.str().size()
      << " bytes identical across runs";
    report(11, "identical configs produce byte-identical reports", ok, d.str());
}

}  // namespace

int main() {
    const auto t0 = Clock::now();
    criterion_1_giant_reproduction();
    criterion_2_dilution();
    criterion_3_subcritical();
    criterion_4_degree_law();
    criterion_5_lemma1();
    criterion_6_branching_cross_validation();
    criterion_7_normalization_cancellation();
    criterion_8_truncation_continuity();
    criterion_9_exploration_censuses();
    criterion_10_oracle_equivalence();
    criterion_11_determinism();
    std::printf("%d/11 criteria passed in %.1f s\n", 11 - failures, seconds_since(t0));
    return failures == 0 ? 0 : 1;
}
