#pragma once

#include <cstdint>
#include <vector>

#include "rig/dist.hpp"
#include "rig/rng.hpp"

namespace rig {

// Mean-offspring kernel of the multi-type Poisson branching process: a
// particle of type s spawns Poisson((s-1) * child_rate(t)) children of type
// t, with child_rate(t) = t * q_t / beta on the support of the driving
// measure. Type-1 particles are sterile.
class OffspringKernel {
public:
    // q_restricted must place no mass at size 0.
    OffspringKernel(const SizeDistribution& q_restricted, double beta);

    // kernel from raw (possibly sub-probability) masses on sizes >= 1;
    // child_rate(t) = t * mass_t / beta.
    static OffspringKernel from_masses(const std::vector<std::pair<int, double>>& masses, double beta);

    double beta() const { return beta_; }
    const std::vector<int>& types() const { return types_; }
    int max_type() const { return types_.empty() ? 0 : types_.back(); }

    double child_rate(int t) const {
        return (t >= 0 && t < static_cast<int>(rate_by_type_.size())) ? rate_by_type_[static_cast<std::size_t>(t)]
                                                                      : 0.0;
    }
    double mean_offspring(int s, int t) const { return static_cast<double>(s - 1) * child_rate(t); }

    // derivative of the survival map at 0: sum_t child_rate(t) (t-1).
    // Survival is possible exactly when this exceeds 1.
    double criticality() const;

private:
    OffspringKernel() = default;

    double beta_ = 1.0;
    std::vector<int> types_;               // support, ascending
    std::vector<double> rate_by_type_;     // dense: index t -> child_rate(t)
};

// Solution of the extinction fixed point. The kernel factors through (s-1),
// so extinction probabilities have the rank-1 form x_t = exp(-(t-1) theta)
// where theta is the smallest nonnegative root of
//   theta = sum_t child_rate(t) (1 - exp(-(t-1) theta)).
struct SurvivalSolution {
    double theta = 0.0;
    std::vector<double> extinct;  // x_t, t = 0..max_type (index 0 unused, set to 1)
    std::vector<double> survive;  // rho(s) = 1 - exp(-(s-1) theta), s = 0..max_type+1
    std::int64_t iterations = 0;
    double residual = 0.0;
    bool converged = true;
    double theta_upper_start = 0.0;  // diagnostic: root reached from the upper start
    std::vector<int> types;          // kernel support the solution was computed on

    double survival(int s) const;  // rho(s) for arbitrary s >= 1, via theta
};

// Monotone fixed-point iteration from below (the extinction-probability
// root); the same iteration from the upper start sum_t c_t (t-1) is run as a
// root-uniqueness diagnostic. Subcritical kernels return theta = 0 exactly.
// Non-convergence within max_iter yields converged = false with the last
// iterate and residual (near-critical kernels).
SurvivalSolution solve_extinction(const OffspringKernel& kernel, double tol = 1e-12,
                                  std::int64_t max_iter = 1000000);

// Generic per-type iteration x_s <- exp(-sum_t lambda(s,t)(1-x_t)) from
// x == 0, no rank-1 assumption; returns x_t aligned with kernel.types().
// Cross-check path for solve_extinction.
std::vector<double> solve_extinction_vector(const OffspringKernel& kernel, double tol = 1e-12,
                                            std::int64_t max_iter = 1000000);

// sum_t q_t rho(t+1) over the driving measure's support.
double rho_tilde(const SurvivalSolution& sol, const SizeDistribution& q_restricted);

struct GiantPrediction {
    double value = 0.0;        // (1 - Q(0)) * rho_tilde(Q*, beta*)
    double via_reduced = 0.0;  // the (Q*, beta*) route
    double via_direct = 0.0;   // unreduced route; normalization factors cancel
};

// Predicted giant-component fraction for G(n, floor(beta n), Q). Both
// algebraic routes are computed and must agree to 1e-12.
GiantPrediction predict_giant_fraction_detail(const SizeDistribution& q, double beta);
double predict_giant_fraction(const SizeDistribution& q, double beta);

struct ProgenyResult {
    std::uint64_t progeny = 0;  // total particles generated (root included)
    bool capped = false;        // stopped once progeny >= cap
};

ProgenyResult simulate_progeny(const OffspringKernel& kernel, int root_type, std::uint64_t cap,
                               RngStream& rng);

struct SurvivalEstimate {
    double estimate = 0.0;  // fraction of runs with progeny >= cap
    double std_error = 0.0;
    std::uint64_t reps = 0;
};

SurvivalEstimate survival_mc(const OffspringKernel& kernel, int root_type, std::uint64_t cap,
                             std::uint64_t reps, std::uint64_t seed);

}  // namespace rig
