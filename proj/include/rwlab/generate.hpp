#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rwlab/errors.hpp"
#include "rwlab/instances.hpp"
#include "rwlab/rng.hpp"

namespace rwlab {

/// Graph class: orientation crossed with coloring placement.
struct WalkVariant {
    bool directed = true;
    ColoringMode mode = ColoringMode::edge;
    bool operator==(const WalkVariant&) const = default;
};

inline constexpr WalkVariant kDirNode{true, ColoringMode::node};
inline constexpr WalkVariant kDirEdge{true, ColoringMode::edge};
inline constexpr WalkVariant kUndirNode{false, ColoringMode::node};
inline constexpr WalkVariant kUndirEdge{false, ColoringMode::edge};

inline std::string variant_name(WalkVariant v) {
    return std::string(v.directed ? "dir" : "undir") + "-" + to_string(v.mode);
}

inline std::optional<WalkVariant> variant_from_name(std::string_view s) {
    for (WalkVariant v : {kDirNode, kDirEdge, kUndirNode, kUndirEdge})
        if (s == variant_name(v)) return v;
    return std::nullopt;
}

inline std::int64_t max_simple_edges(int n, bool directed) {
    std::int64_t pairs = (std::int64_t)n * (n - 1);
    return directed ? pairs : pairs / 2;
}

/// Entire edge set drawn by rejection against a growing set, then sorted, so
/// the result depends only on (n, m, rng state), not on container iteration
/// order. Colors are drawn after sorting, giving each sorted edge slot an
/// rng-order-stable color.
inline ColoredGraph sample_colored_graph(int n, std::int64_t m, int C, WalkVariant variant,
                                         SplitMix64& rng) {
    ColoredGraph g;
    g.directed = variant.directed;
    g.n = n;
    g.mode = variant.mode;
    g.num_colors = C;
    std::int64_t cap = max_simple_edges(n, variant.directed);
    if (m > cap) throw precondition_error("requested " + std::to_string(m) + " edges, max is " +
                                          std::to_string(cap));
    std::set<std::pair<int, int>> chosen;
    while ((std::int64_t)chosen.size() < m) {
        int u = rng.below_int(n);
        int v = rng.below_int(n);
        if (u == v) continue;
        if (!variant.directed && u > v) std::swap(u, v);
        chosen.emplace(u, v);
    }
    g.edges.assign(chosen.begin(), chosen.end());
    const std::size_t color_slots = variant.mode == ColoringMode::edge ? g.edges.size() : (std::size_t)n;
    g.colors.reserve(color_slots);
    for (std::size_t i = 0; i < color_slots; ++i) g.colors.push_back(1 + rng.below_int(C));
    return g;
}

namespace detail {

/// n^exponent rounded to the nearest integer when within floating-point noise
/// of one, otherwise rounded up; keeps e.g. 10^2 at exactly 100
inline std::int64_t power_target(int n, double exponent) {
    double v = std::pow((double)n, exponent);
    double r = std::round(v);
    if (std::abs(v - r) < 1e-9 * std::max(1.0, r)) return (std::int64_t)r;
    return (std::int64_t)std::ceil(v);
}

}  // namespace detail

/// Random instance in the density class m ~ n^alpha, l ~ n^beta. The draw
/// order (edges, colors, s, t, seq) is part of the format: fixed seed gives a
/// bit-identical instance on every platform.
inline WalkInstance gen_random_walk_instance(int n, double alpha, double beta, int C,
                                             WalkVariant variant, std::uint64_t seed) {
    if (n < 2) throw precondition_error("need n >= 2");
    SplitMix64 rng(seed);
    std::int64_t m = std::min(detail::power_target(n, alpha), max_simple_edges(n, variant.directed));
    std::int64_t l = detail::power_target(n, beta);
    WalkInstance inst;
    inst.graph = sample_colored_graph(n, m, C, variant, rng);
    inst.s = rng.below_int(n);
    inst.t = rng.below_int(n);
    inst.seq.reserve((std::size_t)l);
    for (std::int64_t i = 0; i < l; ++i) inst.seq.push_back(1 + rng.below_int(C));
    return inst;
}

/// Small instance with every parameter chosen directly; the workhorse for
/// randomized cross-checks.
inline WalkInstance gen_walk_sized(int n, std::int64_t m, std::int64_t l, int C,
                                   WalkVariant variant, SplitMix64& rng) {
    WalkInstance inst;
    inst.graph = sample_colored_graph(n, m, C, variant, rng);
    inst.s = rng.below_int(n);
    inst.t = rng.below_int(n);
    inst.seq.reserve((std::size_t)l);
    for (std::int64_t i = 0; i < l; ++i) inst.seq.push_back(1 + rng.below_int(C));
    return inst;
}

inline AnyWalkInstance gen_anywalk_sized(int n, std::int64_t m, std::int64_t l, int C,
                                         WalkVariant variant, SplitMix64& rng) {
    AnyWalkInstance inst;
    inst.graph = sample_colored_graph(n, m, C, variant, rng);
    inst.seq.reserve((std::size_t)l);
    for (std::int64_t i = 0; i < l; ++i) inst.seq.push_back(1 + rng.below_int(C));
    return inst;
}

/// Tiny automaton within enumeration-oracle reach: n <= 6 states, sigma <= 3,
/// input <= 6 symbols. Loops and parallel symbols allowed, duplicates not.
inline NfaInstance gen_random_nfa(SplitMix64& rng) {
    NfaInstance inst;
    Nfa& m = inst.nfa;
    m.n_states = 1 + rng.below_int(6);
    m.alphabet_size = 1 + rng.below_int(3);
    m.initial = rng.below_int(m.n_states);
    std::set<std::array<int, 3>> trans;
    std::int64_t want = rng.below(1 + (std::uint64_t)(m.n_states * m.alphabet_size * 2));
    int attempts = 0;
    while ((std::int64_t)trans.size() < want && attempts < 200) {
        ++attempts;
        trans.insert({rng.below_int(m.n_states), 1 + rng.below_int(m.alphabet_size),
                      rng.below_int(m.n_states)});
    }
    m.transitions.assign(trans.begin(), trans.end());
    std::set<int> acc;
    int na = rng.below_int(m.n_states + 1);
    while ((int)acc.size() < na) acc.insert(rng.below_int(m.n_states));
    m.accepting.assign(acc.begin(), acc.end());
    int len = rng.below_int(7);
    for (int i = 0; i < len; ++i) inst.input.push_back(1 + rng.below_int(m.alphabet_size));
    return inst;
}

inline OvInstance gen_random_ov(SplitMix64& rng) {
    OvInstance inst;
    inst.dim = 1 + rng.below_int(6);
    auto draw = [&](std::vector<std::vector<std::uint8_t>>& out) {
        int count = 1 + rng.below_int(8);
        std::set<std::vector<std::uint8_t>> vs;
        int attempts = 0;
        while ((int)vs.size() < count && attempts < 200) {
            ++attempts;
            std::vector<std::uint8_t> v((std::size_t)inst.dim);
            for (auto& b : v) b = rng.coin() ? 1 : 0;
            vs.insert(std::move(v));
        }
        out.assign(vs.begin(), vs.end());
    };
    draw(inst.a_vectors);
    draw(inst.b_vectors);
    return inst;
}

inline CliqueInstance gen_random_clique(SplitMix64& rng) {
    CliqueInstance inst;
    inst.n = 3 + rng.below_int(7);
    inst.k = 1 + rng.below_int(inst.n);
    // edge probability varies per instance so both sparse and dense cases show up
    std::uint64_t prob = 1 + rng.below(9);  // keep each edge with probability prob/10
    for (int u = 0; u < inst.n; ++u)
        for (int v = u + 1; v < inst.n; ++v)
            if (rng.below(10) < prob) inst.edges.emplace_back(u, v);
    return inst;
}

}  // namespace rwlab
