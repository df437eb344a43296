#include "rig/branching.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace rig {

namespace {

// theta |-> sum_t c_t (1 - exp(-(t-1) theta)); increasing and concave on
// [0, inf) with a unique positive root exactly when criticality > 1.
double survival_map(const std::vector<int>& types, const std::vector<double>& rates, double theta) {
    double s = 0.0;
    for (std::size_t i = 0; i < types.size(); ++i) {
        const double span = static_cast<double>(types[i] - 1);
        if (span > 0.0) s += rates[i] * -std::expm1(-span * theta);
    }
    return s;
}

struct FixedPointRun {
    double theta;
    std::int64_t iterations;
    bool converged;
};

// The step size |F(theta)-theta| rises and then falls as the iterates climb
// from 0+ toward the root, so a small step only signals convergence once the
// steps are shrinking.
FixedPointRun iterate_to_fixed_point(const std::vector<int>& types, const std::vector<double>& rates,
                                     double start, double tol, std::int64_t max_iter) {
    double theta = start;
    double prev_step = HUGE_VAL;
    for (std::int64_t it = 1; it <= max_iter; ++it) {
        const double next = survival_map(types, rates, theta);
        const double step = std::abs(next - theta);
        theta = next;
        if (step <= tol && step <= prev_step && it >= 2) return {theta, it, true};
        prev_step = step;
    }
    return {theta, max_iter, false};
}

}  // namespace

OffspringKernel::OffspringKernel(const SizeDistribution& q_restricted, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("offspring kernel: beta must be positive");
    if (q_restricted.mass(0) > 0.0)
        throw std::invalid_argument("offspring kernel: driving measure has mass at size 0");
    beta_ = beta;
    rate_by_type_.assign(static_cast<std::size_t>(q_restricted.max_size()) + 1, 0.0);
    for (int t = 1; t <= q_restricted.max_size(); ++t) {
        const double qt = q_restricted.mass(t);
        if (qt > 0.0) {
            types_.push_back(t);
            rate_by_type_[static_cast<std::size_t>(t)] = static_cast<double>(t) * qt / beta;
        }
    }
    if (types_.empty()) throw std::invalid_argument("offspring kernel: empty support");
}

OffspringKernel OffspringKernel::from_masses(const std::vector<std::pair<int, double>>& masses,
                                             double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("offspring kernel: beta must be positive");
    OffspringKernel k;
    k.beta_ = beta;
    int max_t = 0;
    std::set<int> seen;
    for (const auto& [t, q] : masses) {
        if (t < 1) throw std::invalid_argument("offspring kernel: type below 1");
        if (!(q >= 0.0)) throw std::invalid_argument("offspring kernel: negative mass");
        if (!seen.insert(t).second) throw std::invalid_argument("offspring kernel: duplicate type");
        max_t = std::max(max_t, t);
    }
    k.rate_by_type_.assign(static_cast<std::size_t>(max_t) + 1, 0.0);
    for (const auto& [t, q] : masses) {
        if (q > 0.0) {
            k.types_.push_back(t);
            k.rate_by_type_[static_cast<std::size_t>(t)] = static_cast<double>(t) * q / beta;
        }
    }
    std::sort(k.types_.begin(), k.types_.end());
    if (k.types_.empty()) throw std::invalid_argument("offspring kernel: empty support");
    return k;
}

double OffspringKernel::criticality() const {
    double s = 0.0;
    for (int t : types_) s += child_rate(t) * static_cast<double>(t - 1);
    return s;
}

double SurvivalSolution::survival(int s) const {
    if (s < 1) throw std::invalid_argument("survival: type must be >= 1");
    return -std::expm1(-static_cast<double>(s - 1) * theta);
}

SurvivalSolution solve_extinction(const OffspringKernel& kernel, double tol, std::int64_t max_iter) {
    if (!(tol > 0.0)) throw std::invalid_argument("solve_extinction: tol must be positive");
    std::vector<double> rates;
    rates.reserve(kernel.types().size());
    for (int t : kernel.types()) rates.push_back(kernel.child_rate(t));

    SurvivalSolution sol;
    sol.types = kernel.types();
    const double crit = kernel.criticality();
    if (crit <= 1.0) {
        sol.theta = 0.0;
        sol.theta_upper_start = 0.0;
        sol.iterations = 0;
        sol.residual = 0.0;
        sol.converged = true;
    } else {
        // lower start: any point in (0, theta*) iterates monotonically upward
        const auto lower = iterate_to_fixed_point(kernel.types(), rates, tol, tol, max_iter);
        // upper start: sum_t c_t (t-1) dominates the map, iterates downward
        const auto upper = iterate_to_fixed_point(kernel.types(), rates, crit, tol, max_iter);
        sol.theta = lower.theta;
        sol.theta_upper_start = upper.theta;
        sol.iterations = lower.iterations;
        sol.converged = lower.converged && upper.converged;
        sol.residual = std::abs(survival_map(kernel.types(), rates, sol.theta) - sol.theta);
    }

    const int top = kernel.max_type();
    sol.extinct.assign(static_cast<std::size_t>(top) + 1, 1.0);
    for (int t = 1; t <= top; ++t)
        sol.extinct[static_cast<std::size_t>(t)] = std::exp(-static_cast<double>(t - 1) * sol.theta);
    sol.survive.assign(static_cast<std::size_t>(top) + 2, 0.0);
    for (int s = 1; s <= top + 1; ++s) sol.survive[static_cast<std::size_t>(s)] = sol.survival(s);
    return sol;
}

std::vector<double> solve_extinction_vector(const OffspringKernel& kernel, double tol,
                                            std::int64_t max_iter) {
    const auto& types = kernel.types();
    std::vector<double> x(types.size(), 0.0), next(types.size(), 0.0);
    for (std::int64_t it = 0; it < max_iter; ++it) {
        double step = 0.0;
        for (std::size_t si = 0; si < types.size(); ++si) {
            double exponent = 0.0;
            for (std::size_t ti = 0; ti < types.size(); ++ti)
                exponent += kernel.mean_offspring(types[si], types[ti]) * (1.0 - x[ti]);
            next[si] = std::exp(-exponent);
            step = std::max(step, std::abs(next[si] - x[si]));
        }
        x.swap(next);
        if (step <= tol) break;
    }
    return x;
}

double rho_tilde(const SurvivalSolution& sol, const SizeDistribution& q_restricted) {
    if (q_restricted.mass(0) > 0.0)
        throw std::invalid_argument("rho_tilde: driving measure has mass at size 0");
    for (int t = 1; t <= q_restricted.max_size(); ++t)
        if (q_restricted.mass(t) > 0.0 &&
            !std::binary_search(sol.types.begin(), sol.types.end(), t))
            throw std::invalid_argument("rho_tilde: measure support not covered by the solved kernel");
    double s = 0.0;
    for (int t = 1; t <= q_restricted.max_size(); ++t) s += q_restricted.mass(t) * sol.survival(t + 1);
    return s;
}

GiantPrediction predict_giant_fraction_detail(const SizeDistribution& q, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("predict_giant_fraction: beta must be positive");
    GiantPrediction out;
    const double q0 = q.mass(0);
    if (q0 >= 1.0) return out;  // all sets empty: no giant component

    const ReducedDistribution red = reduce(q, beta);
    const OffspringKernel reduced_kernel(red.star, red.beta_star);
    const SurvivalSolution reduced_sol = solve_extinction(reduced_kernel);
    out.via_reduced = (1.0 - q0) * rho_tilde(reduced_sol, red.star);

    std::vector<std::pair<int, double>> raw;
    for (int t = 1; t <= q.max_size(); ++t)
        if (q.mass(t) > 0.0) raw.emplace_back(t, q.mass(t));
    const OffspringKernel direct_kernel = OffspringKernel::from_masses(raw, beta);
    const SurvivalSolution direct_sol = solve_extinction(direct_kernel);
    double direct = 0.0;
    for (const auto& [t, mass] : raw) direct += mass * direct_sol.survival(t + 1);
    out.via_direct = direct;

    if (std::abs(out.via_reduced - out.via_direct) > 1e-12)
        throw std::logic_error("predict_giant_fraction: reduced and direct routes disagree");
    out.value = out.via_reduced;
    return out;
}

double predict_giant_fraction(const SizeDistribution& q, double beta) {
    return predict_giant_fraction_detail(q, beta).value;
}

ProgenyResult simulate_progeny(const OffspringKernel& kernel, int root_type, std::uint64_t cap,
                               RngStream& rng) {
    if (root_type < 1) throw std::invalid_argument("simulate_progeny: root type must be >= 1");
    if (cap < 1) throw std::invalid_argument("simulate_progeny: cap must be >= 1");
    std::vector<int> queue{root_type};
    std::size_t head = 0;
    std::uint64_t progeny = 1;
    if (progeny >= cap) return {progeny, true};
    while (head < queue.size()) {
        const int s = queue[head++];
        if (s <= 1) continue;  // sterile
        for (int t : kernel.types()) {
            const std::uint64_t children = sample_poisson(rng, kernel.mean_offspring(s, t));
            for (std::uint64_t c = 0; c < children; ++c) {
                ++progeny;
                if (progeny >= cap) return {progeny, true};
                queue.push_back(t);
            }
        }
    }
    return {progeny, false};
}

SurvivalEstimate survival_mc(const OffspringKernel& kernel, int root_type, std::uint64_t cap,
                             std::uint64_t reps, std::uint64_t seed) {
    if (reps < 1) throw std::invalid_argument("survival_mc: reps must be >= 1");
    std::uint64_t capped = 0;
    for (std::uint64_t r = 0; r < reps; ++r) {
        RngStream rng = make_substream(seed, r);
        if (simulate_progeny(kernel, root_type, cap, rng).capped) ++capped;
    }
    SurvivalEstimate est;
    est.reps = reps;
    est.estimate = static_cast<double>(capped) / static_cast<double>(reps);
    est.std_error = std::sqrt(est.estimate * (1.0 - est.estimate) / static_cast<double>(reps));
    return est;
}

}  // namespace rig
