#include "rig/graphgen.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "rig/union_find.hpp"

namespace rig {

namespace {

void check_params(const GraphParams& p) {
    if (p.n < 1) throw std::invalid_argument("graph params: n must be >= 1");
    if (p.m < 1) throw std::invalid_argument("graph params: m must be >= 1");
    if (p.n > std::numeric_limits<std::uint32_t>::max() || p.m > std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument("graph params: n or m exceeds 32-bit vertex/attribute space");
}

std::vector<std::vector<std::uint32_t>> invert_sets(const std::vector<std::vector<std::uint32_t>>& sets,
                                                    std::int64_t m) {
    std::vector<std::uint32_t> counts(static_cast<std::size_t>(m), 0);
    for (const auto& s : sets)
        for (std::uint32_t w : s) ++counts[w];
    std::vector<std::vector<std::uint32_t>> index(static_cast<std::size_t>(m));
    for (std::size_t w = 0; w < index.size(); ++w) index[w].reserve(counts[w]);
    // vertices visited in increasing order, so each occupant list is sorted
    for (std::uint32_t v = 0; v < sets.size(); ++v)
        for (std::uint32_t w : sets[v]) index[w].push_back(v);
    return index;
}

// Uniform size-t subset of {0..m-1} via a partial Fisher-Yates shuffle over a
// reusable scratch permutation; swaps are undone afterwards so every vertex
// starts from the identity without an O(m) reset.
class SubsetSampler {
public:
    explicit SubsetSampler(std::int64_t m) : scratch_(static_cast<std::size_t>(m)) {
        std::iota(scratch_.begin(), scratch_.end(), 0u);
    }

    std::vector<std::uint32_t> draw(int t, RngStream& rng) {
        const std::size_t tt = static_cast<std::size_t>(t);
        swap_log_.resize(tt);
        for (std::size_t i = 0; i < tt; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(uniform_below(rng, scratch_.size() - i));
            std::swap(scratch_[i], scratch_[j]);
            swap_log_[i] = j;
        }
        std::vector<std::uint32_t> out(scratch_.begin(), scratch_.begin() + static_cast<std::ptrdiff_t>(tt));
        for (std::size_t i = tt; i-- > 0;) std::swap(scratch_[i], scratch_[swap_log_[i]]);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    std::vector<std::uint32_t> scratch_;
    std::vector<std::size_t> swap_log_;
};

}  // namespace

GraphParams GraphParams::from_beta(std::int64_t n, double beta) {
    if (n < 1) throw std::invalid_argument("graph params: n must be >= 1");
    if (!(beta > 0.0)) throw std::invalid_argument("graph params: beta must be positive");
    const std::int64_t m = static_cast<std::int64_t>(std::floor(beta * static_cast<double>(n)));
    GraphParams p{n, m, beta};
    check_params(p);
    return p;
}

GraphParams GraphParams::from_counts(std::int64_t n, std::int64_t m) {
    GraphParams p{n, m, static_cast<double>(m) / static_cast<double>(n)};
    check_params(p);
    return p;
}

std::int64_t GraphSample::total_set_size() const {
    std::int64_t s = 0;
    for (const auto& set : sets) s += static_cast<std::int64_t>(set.size());
    return s;
}

int GraphSample::max_set_size() const {
    std::size_t mx = 0;
    for (const auto& set : sets) mx = std::max(mx, set.size());
    return static_cast<int>(mx);
}

GraphSample sample_graph(const GraphParams& params, const SizeDistribution& q, std::uint64_t seed) {
    check_params(params);
    if (q.max_size() > params.m)
        throw std::invalid_argument("sample_graph: size distribution support exceeds attribute count");
    RngStream rng = make_stream(seed);
    SubsetSampler sampler(params.m);
    GraphSample g;
    g.params = params;
    g.seed = seed;
    g.sets.reserve(static_cast<std::size_t>(params.n));
    for (std::int64_t v = 0; v < params.n; ++v) g.sets.push_back(sampler.draw(q.sample(rng), rng));
    g.index = invert_sets(g.sets, params.m);
    return g;
}

GraphSample sample_graph_fixed(const GraphParams& params, const std::map<int, std::int64_t>& counts,
                               std::uint64_t seed) {
    check_params(params);
    std::int64_t total = 0;
    std::vector<int> sizes;
    for (const auto& [t, n_t] : counts) {
        if (t < 0 || t > params.m) throw std::invalid_argument("sample_graph_fixed: size outside [0, m]");
        if (n_t < 0) throw std::invalid_argument("sample_graph_fixed: negative count");
        total += n_t;
        for (std::int64_t i = 0; i < n_t; ++i) sizes.push_back(t);
    }
    if (total != params.n) throw std::invalid_argument("sample_graph_fixed: counts do not sum to n");

    RngStream rng = make_stream(seed);
    // randomize which vertex gets which size (Fisher-Yates)
    for (std::size_t i = sizes.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
        std::swap(sizes[i - 1], sizes[j]);
    }
    SubsetSampler sampler(params.m);
    GraphSample g;
    g.params = params;
    g.seed = seed;
    g.sets.reserve(static_cast<std::size_t>(params.n));
    for (std::int64_t v = 0; v < params.n; ++v)
        g.sets.push_back(sampler.draw(sizes[static_cast<std::size_t>(v)], rng));
    g.index = invert_sets(g.sets, params.m);
    return g;
}

GraphSample graph_from_sets(const GraphParams& params, std::vector<std::vector<std::uint32_t>> sets,
                            std::uint64_t seed) {
    check_params(params);
    if (static_cast<std::int64_t>(sets.size()) != params.n)
        throw std::invalid_argument("graph_from_sets: set count differs from n");
    for (auto& s : sets) {
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw std::invalid_argument("graph_from_sets: duplicate attribute in a set");
        if (!s.empty() && s.back() >= static_cast<std::uint32_t>(params.m))
            throw std::invalid_argument("graph_from_sets: attribute outside [0, m)");
    }
    GraphSample g;
    g.params = params;
    g.seed = seed;
    g.sets = std::move(sets);
    g.index = invert_sets(g.sets, params.m);
    return g;
}

ComponentCensus component_census(const GraphSample& g) {
    const std::size_t n = g.sets.size();
    UnionFind uf(n);
    for (const auto& occupants : g.index)
        for (std::size_t i = 1; i < occupants.size(); ++i) uf.unite(occupants[0], occupants[i]);

    ComponentCensus census;
    census.component_of.resize(n);
    std::vector<std::uint32_t> dense_id(n, std::numeric_limits<std::uint32_t>::max());
    std::vector<std::int64_t> sizes;
    for (std::uint32_t v = 0; v < n; ++v) {
        const std::uint32_t root = uf.find(v);
        if (dense_id[root] == std::numeric_limits<std::uint32_t>::max()) {
            dense_id[root] = static_cast<std::uint32_t>(sizes.size());
            sizes.push_back(0);
        }
        census.component_of[v] = dense_id[root];
        ++sizes[dense_id[root]];
    }
    census.count = static_cast<std::int64_t>(sizes.size());
    census.sizes = std::move(sizes);
    std::sort(census.sizes.begin(), census.sizes.end(), std::greater<>());
    census.n1 = census.sizes.empty() ? 0 : census.sizes.front();
    return census;
}

DegreeCensus degree_census(const GraphSample& g) {
    const std::size_t n = g.sets.size();
    std::vector<std::uint32_t> mark(n, std::numeric_limits<std::uint32_t>::max());
    std::vector<std::int64_t> degree_counts;
    std::int64_t degree_sum = 0;
    for (std::uint32_t v = 0; v < n; ++v) {
        std::int64_t deg = 0;
        for (std::uint32_t w : g.sets[v]) {
            for (std::uint32_t u : g.index[w]) {
                if (u == v || mark[u] == v) continue;
                mark[u] = v;
                ++deg;
            }
        }
        degree_sum += deg;
        if (static_cast<std::size_t>(deg) >= degree_counts.size())
            degree_counts.resize(static_cast<std::size_t>(deg) + 1, 0);
        ++degree_counts[static_cast<std::size_t>(deg)];
    }
    DegreeCensus census;
    census.pmf.resize(degree_counts.size());
    for (std::size_t k = 0; k < degree_counts.size(); ++k)
        census.pmf[k] = static_cast<double>(degree_counts[k]) / static_cast<double>(n);
    census.mean = static_cast<double>(degree_sum) / static_cast<double>(n);
    return census;
}

LimitDegreePmf limit_degree_pmf(const SizeDistribution& q, double beta, int kmax) {
    if (kmax < 0) throw std::invalid_argument("limit_degree_pmf: kmax must be >= 0");
    const double a = degree_rate(q, beta);
    LimitDegreePmf out;
    out.pmf.assign(static_cast<std::size_t>(kmax) + 1, 0.0);
    for (int t = 0; t <= q.max_size(); ++t) {
        const double qt = q.mass(t);
        if (qt == 0.0) continue;
        const double lambda = a * static_cast<double>(t);
        double pk = std::exp(-lambda);  // Poisson(lambda) pmf, iterated upward
        for (int k = 0; k <= kmax; ++k) {
            out.pmf[static_cast<std::size_t>(k)] += qt * pk;
            pk *= lambda / static_cast<double>(k + 1);
        }
    }
    double total = 0.0;
    for (double p : out.pmf) total += p;
    out.tail = std::max(0.0, 1.0 - total);
    return out;
}

AttributeMultiplicity attribute_multiplicity(const GraphSample& g, int max_size) {
    AttributeMultiplicity out;
    for (const auto& occupants : g.index)
        out.max_multiplicity = std::max(out.max_multiplicity, static_cast<std::int64_t>(occupants.size()));
    out.histogram.assign(static_cast<std::size_t>(out.max_multiplicity) + 1, 0);
    for (const auto& occupants : g.index) ++out.histogram[occupants.size()];
    const int m_eff = max_size > 0 ? max_size : g.max_set_size();
    out.bound = 2.0 * static_cast<double>(m_eff) * std::log(static_cast<double>(g.params.n));
    out.bound_ok = static_cast<double>(out.max_multiplicity) <= out.bound;
    return out;
}

double tv_distance(const std::vector<double>& p, const std::vector<double>& q) {
    double sp = 0.0, sq = 0.0;
    for (double x : p) sp += x;
    for (double x : q) sq += x;
    if (std::abs(sp - 1.0) > 1e-6 || std::abs(sq - 1.0) > 1e-6)
        throw std::invalid_argument("tv_distance: inputs must be normalized");
    const std::size_t len = std::max(p.size(), q.size());
    double l1 = 0.0;
    for (std::size_t k = 0; k < len; ++k) {
        const double pk = k < p.size() ? p[k] : 0.0;
        const double qk = k < q.size() ? q[k] : 0.0;
        l1 += std::abs(pk - qk);
    }
    return 0.5 * l1;
}

void write_graph_dump(const GraphSample& g, std::ostream& os) {
    nlohmann::ordered_json header;
    header["n"] = g.params.n;
    header["m"] = g.params.m;
    header["seed"] = g.seed;
    os << header.dump() << '\n';
    for (std::size_t v = 0; v < g.sets.size(); ++v) {
        os << v << ':';
        for (std::uint32_t w : g.sets[v]) os << ' ' << w;
        os << '\n';
    }
}

GraphSample read_graph_dump(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("graph dump: missing header");
    const auto header = nlohmann::json::parse(line);
    const std::int64_t n = header.at("n").get<std::int64_t>();
    const std::int64_t m = header.at("m").get<std::int64_t>();
    const std::uint64_t seed = header.at("seed").get<std::uint64_t>();
    std::vector<std::vector<std::uint32_t>> sets(static_cast<std::size_t>(n));
    for (std::int64_t v = 0; v < n; ++v) {
        if (!std::getline(is, line)) throw std::runtime_error("graph dump: truncated vertex lines");
        std::istringstream ss(line);
        std::string tag;
        ss >> tag;
        if (tag != std::to_string(v) + ":")
            throw std::runtime_error("graph dump: malformed vertex line " + std::to_string(v));
        std::uint32_t w;
        while (ss >> w) sets[static_cast<std::size_t>(v)].push_back(w);
    }
    return graph_from_sets(GraphParams::from_counts(n, m), std::move(sets), seed);
}

}  // namespace rig
