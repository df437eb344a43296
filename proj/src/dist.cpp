#include "rig/dist.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace rig {

SizeDistribution::SizeDistribution(std::vector<double> raw_mass, std::string family)
    : mass_(std::move(raw_mass)), family_(std::move(family)) {
    if (mass_.empty()) throw std::invalid_argument("size distribution: empty mass vector");
    double total = 0.0;
    for (double q : mass_) {
        if (!std::isfinite(q) || q < 0.0) throw std::invalid_argument("size distribution: negative or non-finite mass");
        total += q;
    }
    if (total <= 0.0) throw std::invalid_argument("size distribution: zero total mass");
    // trim trailing zero masses so max_size is the largest t with q_t > 0
    while (mass_.size() > 1 && mass_.back() == 0.0) mass_.pop_back();
    for (double& q : mass_) q /= total;
    cdf_.resize(mass_.size());
    double acc = 0.0;
    for (std::size_t t = 0; t < mass_.size(); ++t) {
        acc += mass_[t];
        cdf_[t] = acc;
    }
    cdf_.back() = 1.0;
}

SizeDistribution SizeDistribution::from_pmf(const std::vector<std::pair<int, double>>& pairs) {
    if (pairs.empty()) throw std::invalid_argument("pmf: empty input");
    int max_t = 0;
    double total = 0.0;
    std::set<int> seen;
    for (const auto& [t, p] : pairs) {
        if (t < 0) throw std::invalid_argument("pmf: negative support point");
        if (!std::isfinite(p) || p < 0.0) throw std::invalid_argument("pmf: negative mass");
        if (!seen.insert(t).second) throw std::invalid_argument("pmf: duplicate support point " + std::to_string(t));
        max_t = std::max(max_t, t);
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("pmf: masses sum to " + std::to_string(total) + ", expected 1");
    std::vector<double> mass(static_cast<std::size_t>(max_t) + 1, 0.0);
    for (const auto& [t, p] : pairs) mass[static_cast<std::size_t>(t)] = p;
    return SizeDistribution(std::move(mass), "pmf");
}

SizeDistribution SizeDistribution::point_mass(int t) {
    if (t < 0) throw std::invalid_argument("point_mass: negative size");
    std::vector<double> mass(static_cast<std::size_t>(t) + 1, 0.0);
    mass.back() = 1.0;
    return SizeDistribution(std::move(mass), "point");
}

SizeDistribution SizeDistribution::binomial(std::int64_t m, double p) {
    if (m < 0) throw std::invalid_argument("binomial: negative m");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial: p outside [0,1]");
    if (m == 0 || p == 0.0) return point_mass(0);
    if (p == 1.0) return point_mass(static_cast<int>(m));
    // log-space evaluation keeps the tails sane for large m
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    const double lgm = std::lgamma(static_cast<double>(m) + 1.0);
    std::vector<double> logmass(static_cast<std::size_t>(m) + 1);
    double lmax = -HUGE_VAL;
    for (std::int64_t t = 0; t <= m; ++t) {
        const double l = lgm - std::lgamma(static_cast<double>(t) + 1.0) -
                         std::lgamma(static_cast<double>(m - t) + 1.0) +
                         static_cast<double>(t) * lp + static_cast<double>(m - t) * lq;
        logmass[static_cast<std::size_t>(t)] = l;
        lmax = std::max(lmax, l);
    }
    std::vector<double> mass(logmass.size());
    for (std::size_t t = 0; t < mass.size(); ++t) {
        const double v = std::exp(logmass[t] - lmax);
        mass[t] = (v < 1e-300) ? 0.0 : v;
    }
    return SizeDistribution(std::move(mass), "binomial");
}

SizeDistribution SizeDistribution::power_law(double alpha, int max_size) {
    if (max_size < 1) throw std::invalid_argument("power_law: max_size < 1");
    if (!std::isfinite(alpha)) throw std::invalid_argument("power_law: bad exponent");
    std::vector<double> mass(static_cast<std::size_t>(max_size) + 1, 0.0);
    for (int t = 1; t <= max_size; ++t) mass[static_cast<std::size_t>(t)] = std::pow(static_cast<double>(t), -alpha);
    return SizeDistribution(std::move(mass), "power_law");
}

SizeDistribution SizeDistribution::geometric(double ratio, int max_size) {
    if (max_size < 1) throw std::invalid_argument("geometric: max_size < 1");
    if (!(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("geometric: ratio outside (0,1)");
    std::vector<double> mass(static_cast<std::size_t>(max_size) + 1, 0.0);
    double v = ratio;
    for (int t = 1; t <= max_size; ++t, v *= ratio) mass[static_cast<std::size_t>(t)] = v;
    return SizeDistribution(std::move(mass), "geometric");
}

double SizeDistribution::first_moment() const {
    double s = 0.0;
    for (std::size_t t = 1; t < mass_.size(); ++t) s += static_cast<double>(t) * mass_[t];
    return s;
}

int SizeDistribution::sample(RngStream& rng) const {
    const double u = uniform01(rng);
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<int>(it - cdf_.begin());
}

ReducedDistribution reduce(const SizeDistribution& q, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("reduce: beta must be positive");
    const double q0 = q.mass(0);
    if (q0 >= 1.0) throw std::domain_error("reduce: degenerate measure, all mass at size 0");
    std::vector<std::pair<int, double>> tail;
    for (int t = 1; t <= q.max_size(); ++t)
        if (q.mass(t) > 0.0) tail.emplace_back(t, q.mass(t) / (1.0 - q0));
    return ReducedDistribution{SizeDistribution::from_pmf(tail), beta / (1.0 - q0), q0};
}

TruncatedDistribution truncate(const SizeDistribution& q, int max_size) {
    if (max_size < 1) throw std::invalid_argument("truncate: max_size < 1");
    double kept = 0.0;
    const int top = std::min(max_size, q.max_size());
    for (int t = 1; t <= top; ++t) kept += q.mass(t);
    if (kept <= 0.0) throw std::domain_error("truncate: no mass in {1,...,M}");
    std::vector<std::pair<int, double>> masses;
    for (int t = 1; t <= top; ++t)
        if (q.mass(t) > 0.0) masses.emplace_back(t, q.mass(t) / kept);
    return TruncatedDistribution{SizeDistribution::from_pmf(masses), kept};
}

double degree_rate(const SizeDistribution& q, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("degree_rate: beta must be positive");
    return q.first_moment() / beta;
}

}  // namespace rig
