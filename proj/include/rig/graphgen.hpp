#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "rig/dist.hpp"
#include "rig/rng.hpp"

namespace rig {

struct GraphParams {
    std::int64_t n = 0;
    std::int64_t m = 0;
    double beta = 0.0;

    // m = floor(beta * n), matching the scaling regime under study.
    static GraphParams from_beta(std::int64_t n, double beta);
    static GraphParams from_counts(std::int64_t n, std::int64_t m);
};

// One sampled intersection graph: per-vertex sorted attribute lists plus the
// inverted attribute -> vertices index (the only adjacency structure kept).
struct GraphSample {
    GraphParams params;
    std::vector<std::vector<std::uint32_t>> sets;   // sets[v] = sorted attributes of v
    std::vector<std::vector<std::uint32_t>> index;  // index[w] = sorted vertices containing w
    std::uint64_t seed = 0;

    std::int64_t total_set_size() const;
    int max_set_size() const;
};

// iid mode: every vertex gets size t ~ Q, then a uniform size-t subset.
GraphSample sample_graph(const GraphParams& params, const SizeDistribution& q, std::uint64_t seed);

// fixed-degree-sequence mode: exactly counts[t] vertices get size t, vertex
// order randomized; subsets uniform given the sizes.
GraphSample sample_graph_fixed(const GraphParams& params, const std::map<int, std::int64_t>& counts,
                               std::uint64_t seed);

// deterministic assembly from explicit sets (fixtures, tests).
GraphSample graph_from_sets(const GraphParams& params, std::vector<std::vector<std::uint32_t>> sets,
                            std::uint64_t seed = 0);

struct ComponentCensus {
    std::vector<std::uint32_t> component_of;  // dense component ids, by first occurrence
    std::vector<std::int64_t> sizes;          // component sizes, descending
    std::int64_t n1 = 0;                      // largest component order
    std::int64_t count = 0;
};

// Components without materializing edges: each attribute's occupant list is
// a clique, so uniting its first occupant with the rest connects exactly the
// same pairs at O((n + sum f(w)) alpha) cost.
ComponentCensus component_census(const GraphSample& g);

struct DegreeCensus {
    std::vector<double> pmf;  // empirical degree probabilities, 0..max degree
    double mean = 0.0;
};

DegreeCensus degree_census(const GraphSample& g);

struct LimitDegreePmf {
    std::vector<double> pmf;  // p_k = sum_t q_t (at)^k e^{-at} / k!, k <= kmax
    double tail = 0.0;        // 1 - sum of the above
};

LimitDegreePmf limit_degree_pmf(const SizeDistribution& q, double beta, int kmax);

struct AttributeMultiplicity {
    std::int64_t max_multiplicity = 0;
    std::vector<std::int64_t> histogram;  // histogram[f] = #attributes with multiplicity f
    double bound = 0.0;                   // 2 M ln n
    bool bound_ok = true;
};

// max_size 0 means: use the largest sampled set size.
AttributeMultiplicity attribute_multiplicity(const GraphSample& g, int max_size = 0);

// Total variation distance (1/2) sum |p_k - q_k|; tails aligned by
// zero-padding. Both inputs must be normalized within 1e-6.
double tv_distance(const std::vector<double>& p, const std::vector<double>& q);

// Text fixture format: one JSON header line {n, m, seed}, then one line per
// vertex "v: w1 w2 ...".
void write_graph_dump(const GraphSample& g, std::ostream& os);
GraphSample read_graph_dump(std::istream& is);

}  // namespace rig
