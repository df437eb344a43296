#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rig/rng.hpp"

namespace rig {

// Probability measure on {0, ..., max_size()} driving attribute-set sizes.
// Immutable after construction; masses are normalized exactly once, here.
class SizeDistribution {
public:
    // Explicit pmf given as (size, probability) pairs. Duplicate support
    // points are an error, masses must be nonnegative and sum to 1 within
    // 1e-9 (they are then renormalized exactly).
    static SizeDistribution from_pmf(const std::vector<std::pair<int, double>>& pairs);

    static SizeDistribution point_mass(int t);
    static SizeDistribution binomial(std::int64_t m, double p);
    // q_t proportional to t^(-alpha) on {1, ..., max_size}.
    static SizeDistribution power_law(double alpha, int max_size);
    // q_t proportional to ratio^t on {1, ..., max_size}.
    static SizeDistribution geometric(double ratio, int max_size);

    int max_size() const { return static_cast<int>(mass_.size()) - 1; }
    double mass(int t) const {
        return (t >= 0 && t < static_cast<int>(mass_.size())) ? mass_[static_cast<std::size_t>(t)] : 0.0;
    }
    const std::vector<double>& pmf() const { return mass_; }
    const std::string& family() const { return family_; }

    double first_moment() const;

    // One draw with P(result = t) = mass(t); advances the caller's stream.
    int sample(RngStream& rng) const;

private:
    SizeDistribution(std::vector<double> raw_mass, std::string family);

    std::vector<double> mass_;  // mass_[t] = q_t; mass_.back() > 0 unless the measure is a point mass at 0
    std::vector<double> cdf_;
    std::string family_;
};

// The measure conditioned on nonempty sets, with the correspondingly
// rescaled attribute ratio: star(t) = q_t / (1 - q_0), beta_star = beta / (1 - q_0).
struct ReducedDistribution {
    SizeDistribution star;
    double beta_star;
    double q0;
};

// Restriction to {1, ..., M}, renormalized by the kept mass
// q_[M] = q_1 + ... + q_M; callers form beta_M = beta / mass_kept.
struct TruncatedDistribution {
    SizeDistribution dist;
    double mass_kept;
};

ReducedDistribution reduce(const SizeDistribution& q, double beta);
TruncatedDistribution truncate(const SizeDistribution& q, int max_size);

// a = beta^{-1} * sum_t t q_t, the mean-degree rate of the limit law.
double degree_rate(const SizeDistribution& q, double beta);

}  // namespace rig
