#include "rig/explore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rig {

namespace {

// Epoch-stamped scratch shared across explorations: resetting costs nothing,
// a stamp differing from the current epoch means "unset".
struct Scratch {
    std::vector<std::uint32_t> color_stamp;   // per vertex: coloured in this exploration
    std::vector<std::uint32_t> cand_stamp;    // per vertex: gathered as candidate this scan
    std::vector<std::uint32_t> shared;        // per vertex: |S(candidate) ∩ S(scanner)|
    std::vector<std::uint32_t> elder_stamp;   // per attribute: in D, union over scanned list prefix
    std::vector<std::uint32_t> younger_stamp;  // per attribute: held by a younger white list member
    std::uint32_t epoch = 0;
    std::uint32_t scan_epoch = 0;

    Scratch(std::size_t n, std::size_t m)
        : color_stamp(n, 0), cand_stamp(n, 0), shared(n, 0), elder_stamp(m, 0), younger_stamp(m, 0) {}
};

ExplorationRecord explore_with_scratch(const GraphSample& g, std::uint32_t root,
                                       const ExplorationConfig& cfg, Scratch& scratch) {
    const std::int64_t n = g.params.n;
    if (root >= g.sets.size()) throw std::invalid_argument("explore: root outside vertex range");
    if (cfg.omega < 2) throw std::invalid_argument("explore: omega must be >= 2");
    if (cfg.omega > n) throw std::invalid_argument("explore: omega exceeds n");

    if (++scratch.epoch == 0) {  // stamp wraparound: clear and restart
        std::fill(scratch.color_stamp.begin(), scratch.color_stamp.end(), 0u);
        std::fill(scratch.elder_stamp.begin(), scratch.elder_stamp.end(), 0u);
        std::fill(scratch.younger_stamp.begin(), scratch.younger_stamp.end(), 0u);
        scratch.epoch = 1;
    }
    const std::uint32_t epoch = scratch.epoch;

    ExplorationRecord rec;
    rec.root = root;
    rec.list.push_back(root);
    scratch.color_stamp[root] = epoch;
    std::int64_t colored = 1;

    // D = attributes of the scanned list prefix (elder_stamp); the attributes
    // of listed-but-unscanned members sit in younger_stamp. A scanner's set
    // moves from younger to elder when its scan begins.
    for (std::uint32_t w : g.sets[root]) scratch.younger_stamp[w] = epoch;

    const std::int64_t budget = 3 * cfg.omega;
    std::vector<std::uint32_t> candidates;
    std::size_t head = 0;
    bool done = false;

    while (!done && head < rec.list.size()) {
        const std::uint32_t scanner = rec.list[head];
        for (std::uint32_t w : g.sets[scanner]) scratch.elder_stamp[w] = epoch;

        // gather the uncoloured neighbours; multiplicity in the inverted
        // index equals the shared-attribute count with the scanner
        if (++scratch.scan_epoch == 0) {
            std::fill(scratch.cand_stamp.begin(), scratch.cand_stamp.end(), 0u);
            scratch.scan_epoch = 1;
        }
        candidates.clear();
        for (std::uint32_t w : g.sets[scanner]) {
            for (std::uint32_t v : g.index[w]) {
                if (scratch.color_stamp[v] == epoch) continue;
                if (scratch.cand_stamp[v] != scratch.scan_epoch) {
                    scratch.cand_stamp[v] = scratch.scan_epoch;
                    scratch.shared[v] = 0;
                    candidates.push_back(v);
                }
                ++scratch.shared[v];
            }
        }
        std::sort(candidates.begin(), candidates.end());

        for (const std::uint32_t child : candidates) {
            scratch.color_stamp[child] = epoch;
            ++colored;
            const int type = static_cast<int>(g.sets[child].size());
            const bool regular = scratch.shared[child] == 1;

            bool listed = false;
            switch (cfg.mode) {
                case ExploreMode::full:
                    listed = true;
                    if (!regular) ++rec.irregular_count[type];
                    break;
                case ExploreMode::regular:
                    if (regular) listed = true;
                    else ++rec.irregular_count[type];
                    break;
                case ExploreMode::simple:
                    if (!regular) {
                        ++rec.irregular_count[type];
                    } else {
                        // blocked iff some attribute is held by a younger
                        // white list member and lies outside D
                        bool blocked = false;
                        for (std::uint32_t w : g.sets[child]) {
                            if (scratch.younger_stamp[w] == epoch && scratch.elder_stamp[w] != epoch) {
                                blocked = true;
                                break;
                            }
                        }
                        if (blocked) ++rec.complex_count[type];
                        else listed = true;
                    }
                    break;
            }

            if (listed) {
                rec.list.push_back(child);
                for (std::uint32_t w : g.sets[child]) scratch.younger_stamp[w] = epoch;
                if (static_cast<std::int64_t>(rec.list.size()) >= cfg.omega) {
                    rec.stopped = true;
                    if (cfg.stop_at_omega) {
                        rec.halt = HaltReason::list_reached_omega;
                        done = true;
                        break;
                    }
                }
            }
            if (cfg.stop_at_omega && colored > budget) {
                rec.halt = HaltReason::colored_budget;
                done = true;
                break;
            }
        }
        ++head;  // scanner turns black
    }

    rec.is_big = rec.stopped;
    for (std::uint32_t u : rec.list)
        rec.used_attributes.insert(rec.used_attributes.end(), g.sets[u].begin(), g.sets[u].end());
    std::sort(rec.used_attributes.begin(), rec.used_attributes.end());
    rec.used_attributes.erase(std::unique(rec.used_attributes.begin(), rec.used_attributes.end()),
                              rec.used_attributes.end());
    return rec;
}

}  // namespace

ExplorationRecord explore_component(const GraphSample& g, std::uint32_t root,
                                    const ExplorationConfig& cfg) {
    Scratch scratch(g.sets.size(), g.index.size());
    return explore_with_scratch(g, root, cfg, scratch);
}

BigVertexCensus big_vertex_census(const GraphSample& g, std::int64_t omega, bool stop_at_omega) {
    const std::size_t n = g.sets.size();
    BigVertexCensus census;
    census.flag_full.assign(n, 0);
    census.flag_regular.assign(n, 0);
    census.flag_simple.assign(n, 0);

    Scratch scratch(n, g.index.size());
    for (std::uint32_t v = 0; v < n; ++v) {
        const ExplorationConfig full{ExploreMode::full, omega, stop_at_omega};
        const auto rec_full = explore_with_scratch(g, v, full, scratch);
        if (rec_full.is_big) {
            census.flag_full[v] = 1;
            ++census.b_full;
        }
        if (!rec_full.irregular_count.empty()) ++census.irregular_roots_full;

        const ExplorationConfig regular{ExploreMode::regular, omega, stop_at_omega};
        if (explore_with_scratch(g, v, regular, scratch).is_big) {
            census.flag_regular[v] = 1;
            ++census.b_regular;
        }
        const ExplorationConfig simple{ExploreMode::simple, omega, stop_at_omega};
        if (explore_with_scratch(g, v, simple, scratch).is_big) {
            census.flag_simple[v] = 1;
            ++census.b_simple;
        }
    }
    return census;
}

std::int64_t omega_log(std::int64_t n) {
    const auto w = static_cast<std::int64_t>(std::ceil(std::log(static_cast<double>(n))));
    return std::max<std::int64_t>(2, w);
}

std::int64_t omega_two_thirds(std::int64_t n) {
    const auto w = static_cast<std::int64_t>(std::ceil(std::pow(static_cast<double>(n), 2.0 / 3.0)));
    return std::max<std::int64_t>(2, std::min(w, n));
}

}  // namespace rig
