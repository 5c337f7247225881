#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rwlab/errors.hpp"
#include "rwlab/instances.hpp"

namespace rwlab {

// Enumeration oracles: recursive search over all walks, scanning the raw edge
// list at every step. Deliberately shares no adjacency-building or bit-set
// code with the production solvers so that agreement between the two is
// meaningful. Exponential; the budget counts node expansions and a
// budget_error signals the instance was too big to certify this way.

inline constexpr std::int64_t kDefaultOracleBudget = std::int64_t{1} << 24;

namespace detail {

/// true iff some walk v, ... matches seq[depth..] and ends at t (t < 0: any end)
inline bool walk_search(const ColoredGraph& g, int v, int t, std::span<const int> seq,
                        std::size_t depth, std::int64_t& budget) {
    if (--budget < 0) throw budget_error("oracle budget exhausted");
    if (depth == seq.size()) return t < 0 || v == t;
    const int want = seq[depth];
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        auto [a, b] = g.edges[i];
        int head = -1;
        if (a == v) head = b;
        else if (!g.directed && b == v) head = a;
        if (head < 0) continue;
        const int color = g.mode == ColoringMode::edge ? g.colors[i] : g.colors[head];
        if (color != want) continue;
        if (walk_search(g, head, t, seq, depth + 1, budget)) return true;
    }
    return false;
}

}  // namespace detail

inline bool walk_enum_oracle(const WalkInstance& inst, std::int64_t budget = kDefaultOracleBudget) {
    return detail::walk_search(inst.graph, inst.s, inst.t, inst.seq, 0, budget);
}

inline bool anywalk_enum_oracle(const AnyWalkInstance& inst,
                                std::int64_t budget = kDefaultOracleBudget) {
    for (int v = 0; v < inst.graph.n; ++v)
        if (detail::walk_search(inst.graph, v, /*t=*/-1, inst.seq, 0, budget)) return true;
    return false;
}

namespace detail {

inline bool nfa_search(const Nfa& m, int q, std::span<const int> word, std::size_t depth,
                       std::int64_t& budget) {
    if (--budget < 0) throw budget_error("oracle budget exhausted");
    if (depth == word.size()) {
        for (int f : m.accepting)
            if (f == q) return true;
        return false;
    }
    const int sym = word[depth];
    for (const auto& t : m.transitions) {
        if (t[0] != q || t[1] != sym) continue;
        if (nfa_search(m, t[2], word, depth + 1, budget)) return true;
    }
    return false;
}

}  // namespace detail

inline bool nfa_enum_oracle(const Nfa& m, std::span<const int> word,
                            std::int64_t budget = kDefaultOracleBudget) {
    return detail::nfa_search(m, m.initial, word, 0, budget);
}

inline bool nfa_enum_oracle(const NfaInstance& inst, std::int64_t budget = kDefaultOracleBudget) {
    return nfa_enum_oracle(inst.nfa, inst.input, budget);
}

}  // namespace rwlab
