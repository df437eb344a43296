#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "rig/graphgen.hpp"

namespace rig {

// full: every neighbour joins the list.
// regular: only neighbours sharing exactly one attribute with the scanner
//   join; others are coloured but not listed.
// simple: regular neighbours whose attributes additionally avoid the fresh
//   attributes of younger white list members join; blocked ones are coloured
//   as complex children.
enum class ExploreMode { full, regular, simple };

enum class HaltReason { exhausted, list_reached_omega, colored_budget };

struct ExplorationConfig {
    ExploreMode mode = ExploreMode::full;
    std::int64_t omega = 2;     // big-vertex threshold, >= 2
    bool stop_at_omega = true;  // false: explore to exhaustion (no budgets)
};

struct ExplorationRecord {
    std::uint32_t root = 0;
    std::vector<std::uint32_t> list;              // discovery order, starts with root
    std::vector<std::uint32_t> used_attributes;   // union of S(u) over listed u, sorted
    std::map<int, std::int64_t> irregular_count;  // irregular children by type
    std::map<int, std::int64_t> complex_count;    // complex children by type (simple mode)
    bool stopped = false;                         // list reached omega before exhaustion
    bool is_big = false;                          // == stopped
    HaltReason halt = HaltReason::exhausted;
};

// One exploration from `root` with fresh colouring. Under stop_at_omega the
// run halts when the list reaches omega or the coloured count exceeds
// 3*omega, whichever happens first.
ExplorationRecord explore_component(const GraphSample& g, std::uint32_t root,
                                    const ExplorationConfig& cfg);

struct BigVertexCensus {
    std::int64_t b_full = 0;
    std::int64_t b_regular = 0;
    std::int64_t b_simple = 0;
    std::vector<std::uint8_t> flag_full;
    std::vector<std::uint8_t> flag_regular;
    std::vector<std::uint8_t> flag_simple;
    std::int64_t irregular_roots_full = 0;  // roots whose full exploration met an irregular edge
};

// Runs all three modes from every vertex, each exploration independent.
BigVertexCensus big_vertex_census(const GraphSample& g, std::int64_t omega, bool stop_at_omega = true);

std::int64_t omega_log(std::int64_t n);         // max(2, ceil(ln n))
std::int64_t omega_two_thirds(std::int64_t n);  // max(2, ceil(n^(2/3)))

}  // namespace rig
