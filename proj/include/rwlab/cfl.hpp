#pragma once

#include <deque>
#include <span>
#include <vector>

#include "rwlab/bits.hpp"
#include "rwlab/instances.hpp"

namespace rwlab {

/// Worklist fixpoint over derivations: reach[X].get(u,v) means X derives the
/// label word of some u -> v path. reach_rev mirrors each relation transposed
/// so both completion directions of a binary rule are row scans. Cubic in n.
inline bool solve_cfl_reachability(const CflInstance& inst) {
    const Grammar& g = inst.grammar;
    const std::size_t n = (std::size_t)inst.graph.n;
    const std::size_t nt = (std::size_t)g.num_nonterminals;

    std::vector<BitMatrix> reach(nt, BitMatrix(n, n));
    std::vector<BitMatrix> reach_rev(nt, BitMatrix(n, n));

    // binary rules indexed by each right-hand nonterminal
    std::vector<std::vector<std::pair<int, int>>> by_first(nt), by_second(nt);
    for (const auto& r : g.binary) {
        by_first[(std::size_t)r[1]].push_back({r[0], r[2]});   // X -> (Y) Z
        by_second[(std::size_t)r[2]].push_back({r[0], r[1]});  // X -> Y (Z)
    }

    std::deque<std::array<int, 3>> worklist;  // (X, u, v) newly derivable
    auto insert = [&](int x, std::size_t u, std::size_t v) {
        if (reach[(std::size_t)x].get(u, v)) return;
        reach[(std::size_t)x].set(u, v);
        reach_rev[(std::size_t)x].set(v, u);
        worklist.push_back({x, (int)u, (int)v});
    };

    std::vector<std::vector<int>> by_terminal((std::size_t)g.num_terminals + 1);
    for (const auto& [x, a] : g.unary) by_terminal[(std::size_t)a].push_back(x);
    for (std::size_t i = 0; i < inst.graph.edges.size(); ++i) {
        auto [u, v] = inst.graph.edges[i];
        for (int x : by_terminal[(std::size_t)inst.graph.colors[i]])
            insert(x, (std::size_t)u, (std::size_t)v);
    }

    while (!worklist.empty()) {
        auto [y, u, v] = worklist.front();
        worklist.pop_front();
        // y as left part: X -> y Z needs Z from v onward
        for (auto [x, z] : by_first[(std::size_t)y])
            reach[(std::size_t)z].for_each_set_in_row((std::size_t)v, [&](std::size_t w) {
                insert(x, (std::size_t)u, w);
            });
        // y as right part: X -> Y y needs Y arriving at u
        for (auto [x, z] : by_second[(std::size_t)y])
            reach_rev[(std::size_t)z].for_each_set_in_row((std::size_t)u, [&](std::size_t w) {
                insert(x, w, (std::size_t)v);
            });
    }

    return reach[(std::size_t)g.start].get((std::size_t)inst.s, (std::size_t)inst.t);
}

/// Stack check for balanced two-bracket words; symbols 1 2 3 4 read as
/// (1 )1 (2 )2. The empty word is rejected (the grammar derives only
/// nonempty words).
inline bool dyck2_membership(std::span<const int> word) {
    if (word.empty()) return false;
    std::vector<int> stack;
    for (int sym : word) {
        switch (sym) {
            case 1: stack.push_back(1); break;
            case 3: stack.push_back(2); break;
            case 2:
                if (stack.empty() || stack.back() != 1) return false;
                stack.pop_back();
                break;
            case 4:
                if (stack.empty() || stack.back() != 2) return false;
                stack.pop_back();
                break;
            default: return false;
        }
    }
    return stack.empty();
}

}  // namespace rwlab
