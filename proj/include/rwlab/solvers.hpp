#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#if defined(__SSE2__)
#include <emmintrin.h>
#endif

#include "rwlab/bits.hpp"
#include "rwlab/errors.hpp"
#include "rwlab/instances.hpp"

namespace rwlab {

/// One usable move (from, head, color). Undirected edges contribute both
/// directions; in node mode the color is the head's color, so a walk
/// v0..vl matches c(v1)..c(vl) with v0 unconstrained.
struct Arc {
    int from;
    int head;
    int color;
};

inline std::vector<Arc> transition_arcs(const ColoredGraph& g) {
    std::vector<Arc> arcs;
    arcs.reserve(g.edges.size() * (g.directed ? 1 : 2));
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        auto [u, v] = g.edges[i];
        if (g.mode == ColoringMode::edge) {
            arcs.push_back({u, v, g.colors[i]});
            if (!g.directed) arcs.push_back({v, u, g.colors[i]});
        } else {
            arcs.push_back({u, v, g.colors[v]});
            if (!g.directed) arcs.push_back({v, u, g.colors[u]});
        }
    }
    return arcs;
}

/// Per-color adjacency as packed bit matrices, built once per solve. Row u of
/// table(c) holds the heads reachable by one color-c move from u; stepping a
/// frontier is a word-parallel OR over rows of the current color. Tables are
/// stored in a dense array indexed by color so both the per-edge build and
/// the per-step lookup stay branch-cheap (the build is O(m) and must not
/// pollute m*l timing).
class StepTable {
   public:
    StepTable(const ColoredGraph& g, std::span<const int> needed_colors) : n_((std::size_t)g.n) {
        int maxc = 0;
        for (int c : needed_colors) maxc = std::max(maxc, c);
        present_.assign((std::size_t)maxc + 1, 0);
        for (int c : needed_colors)
            if (c >= 1 && c <= maxc) present_[(std::size_t)c] = 1;
        tables_.resize((std::size_t)maxc + 1);
        for (int c = 1; c <= maxc; ++c)
            if (present_[(std::size_t)c]) tables_[(std::size_t)c] = BitMatrix(n_, n_);
        if (g.directed && g.mode == ColoringMode::edge && maxc == 2 && present_[1] &&
            present_[2] && g.num_colors <= 2) {
            build_two_color_direct(g);
        } else if (g.directed && g.mode == ColoringMode::edge) {
            // same idea without run batching for wider palettes
            for (std::size_t i = 0; i < g.edges.size(); ++i) {
                const int c = g.colors[i];
                if (c <= maxc && present_[(std::size_t)c])
                    tables_[(std::size_t)c].set((std::size_t)g.edges[i].first,
                                                (std::size_t)g.edges[i].second);
            }
        } else {
            for (const Arc& a : transition_arcs(g))
                if (a.color <= maxc && present_[(std::size_t)a.color])
                    tables_[(std::size_t)a.color].set((std::size_t)a.from, (std::size_t)a.head);
        }
    }

    std::size_t n() const { return n_; }

    /// next = one move of the given color from cur; next is overwritten
    void step_into(const BitVec& cur, int color, BitVec& next) const {
        if (color < 0 || (std::size_t)color >= tables_.size() || !present_[(std::size_t)color]) {
            next.clear();  // color absent in graph: empty frontier
            return;
        }
        tables_[(std::size_t)color].or_rows_selected(cur, next);
    }

    BitVec step(const BitVec& cur, int color) const {
        BitVec next(n_);
        step_into(cur, color, next);
        return next;
    }

    const BitMatrix& table(int color) const {
        if (color < 0 || (std::size_t)color >= tables_.size() || !present_[(std::size_t)color])
            throw precondition_error("no table for color " + std::to_string(color));
        return tables_[(std::size_t)color];
    }

   private:
    /// Two-color directed edge build, the benchmarked class. Canonical edge
    /// order is row-major with strictly increasing targets, so one endpoint
    /// comparison certifies a run of 64 consecutive targets; the run's two
    /// color masks then partition the whole word and come straight out of
    /// the color array. Ragged tails fall back to per-edge mask batching.
    void build_two_color_direct(const ColoredGraph& g) {
        BitMatrix& t1 = tables_[1];
        BitMatrix& t2 = tables_[2];
        const auto* ep = g.edges.data();
        const int* cp = g.colors.data();
        const std::size_t m = g.edges.size();
        std::size_t i = 0;
        while (i < m) {
            const int u = ep[i].first;
            const int v0 = ep[i].second;
            const std::size_t wv = (std::size_t)v0 >> 6;
            if ((v0 & 63) == 0 && i + 64 <= m && ep[i + 63].first == u &&
                ep[i + 63].second == v0 + 63) {
                const std::uint64_t m2 = color_two_mask(cp + i);
                t2.or_word((std::size_t)u, wv, m2);
                t1.or_word((std::size_t)u, wv, ~m2);
                i += 64;
                continue;
            }
            // The group holding u itself: u is never a target (no loops), so
            // 63 increasing targets spanning the group's other 63 slots are
            // exactly slots-minus-u, again certified by the two endpoints.
            // The 64-entry mask gadget may read one color past the run, so
            // the last run of the array takes the plain path instead.
            const int g = u - (int)(wv << 6);
            if (g >= 0 && g < 64 && (v0 & 63) == (g == 0 ? 1 : 0) && i + 64 <= m &&
                ep[i + 62].first == u && ep[i + 62].second == (int)(wv << 6) + 63 - (g == 63)) {
                const std::uint64_t packed = color_two_mask(cp + i) & (~std::uint64_t{0} >> 1);
                const std::uint64_t lowm = (std::uint64_t{1} << g) - 1;
                const std::uint64_t m2 = (packed & lowm) | ((packed & ~lowm) << 1);
                t2.or_word((std::size_t)u, wv, m2);
                t1.or_word((std::size_t)u, wv, ~(m2 | (std::uint64_t{1} << g)));
                i += 63;
                continue;
            }
            std::uint64_t pend[2] = {0, 0};
            do {
                pend[(std::size_t)(cp[i] - 1)] |= std::uint64_t{1} << (ep[i].second & 63);
                ++i;
            } while (i < m && ep[i].first == u && (std::size_t)ep[i].second >> 6 == wv);
            if (pend[0]) t1.or_word((std::size_t)u, wv, pend[0]);
            if (pend[1]) t2.or_word((std::size_t)u, wv, pend[1]);
        }
    }

    /// bit k = 1 iff c[k] == 2, for 64 colors drawn from {1, 2}
    static std::uint64_t color_two_mask(const int* c) {
#if defined(__SSE2__)
        const __m128i one = _mm_set1_epi32(1);
        std::uint64_t m2 = 0;
        for (int k = 0; k < 64; k += 16) {
            const __m128i a = _mm_loadu_si128((const __m128i*)(c + k));
            const __m128i b = _mm_loadu_si128((const __m128i*)(c + k + 4));
            const __m128i d = _mm_loadu_si128((const __m128i*)(c + k + 8));
            const __m128i e = _mm_loadu_si128((const __m128i*)(c + k + 12));
            const __m128i ab = _mm_packs_epi32(_mm_cmpgt_epi32(a, one), _mm_cmpgt_epi32(b, one));
            const __m128i de = _mm_packs_epi32(_mm_cmpgt_epi32(d, one), _mm_cmpgt_epi32(e, one));
            const unsigned m16 = (unsigned)_mm_movemask_epi8(_mm_packs_epi16(ab, de));
            m2 |= (std::uint64_t)m16 << k;
        }
        return m2;
#else
        std::uint64_t m2 = 0;
        for (int k = 0; k < 64; ++k) m2 |= (std::uint64_t)((c[k] - 1) & 1) << k;
        return m2;
#endif
    }

    std::size_t n_;
    std::vector<char> present_;
    std::vector<BitMatrix> tables_;
};

/// Frontier dynamic program, O(m*l / w) word operations after table build.
inline bool solve_walk_dp(const WalkInstance& inst) {
    StepTable table(inst.graph, inst.seq);
    BitVec a = BitVec::indicator((std::size_t)inst.graph.n, (std::size_t)inst.s);
    BitVec b((std::size_t)inst.graph.n);
    BitVec* cur = &a;
    BitVec* next = &b;
    for (int c : inst.seq) {
        table.step_into(*cur, c, *next);
        if (next->none()) return false;
        std::swap(cur, next);
    }
    return cur->test((std::size_t)inst.t);
}

/// All intermediate frontiers x0..xl (no early exit); the certificate body.
inline std::vector<BitVec> walk_frontiers(const WalkInstance& inst) {
    StepTable table(inst.graph, inst.seq);
    std::vector<BitVec> frontiers;
    frontiers.reserve(inst.seq.size() + 1);
    frontiers.push_back(BitVec::indicator((std::size_t)inst.graph.n, (std::size_t)inst.s));
    for (int c : inst.seq) frontiers.push_back(table.step(frontiers.back(), c));
    return frontiers;
}

inline bool solve_anywalk(const AnyWalkInstance& inst) {
    if (inst.seq.empty()) return inst.graph.n >= 1;
    StepTable table(inst.graph, inst.seq);
    BitVec cur((std::size_t)inst.graph.n, true);
    BitVec next((std::size_t)inst.graph.n);
    for (int c : inst.seq) {
        table.step_into(cur, c, next);
        if (next.none()) return false;
        std::swap(cur, next);
    }
    return cur.any();
}

inline bool nfa_accepts(const Nfa& m, std::span<const int> word) {
    const std::size_t n = (std::size_t)m.n_states;
    std::map<int, BitMatrix> step;
    for (const auto& t : m.transitions) {
        auto [it, _] = step.try_emplace(t[1], BitMatrix(n, n));
        it->second.set((std::size_t)t[0], (std::size_t)t[2]);
    }
    BitVec cur = BitVec::indicator(n, (std::size_t)m.initial);
    for (int sym : word) {
        BitVec next(n);
        auto it = step.find(sym);
        if (it != step.end()) {
            const BitMatrix& mat = it->second;
            cur.for_each_set([&](std::size_t q) { mat.or_row_into(q, next); });
        }
        cur = next;
        if (cur.none()) return false;
    }
    for (int f : m.accepting)
        if (cur.test((std::size_t)f)) return true;
    return false;
}

inline bool nfa_accepts(const NfaInstance& inst) { return nfa_accepts(inst.nfa, inst.input); }

/// Baseline: explicit boolean matrix product per step, O(n^3) each. Directed
/// edge-colored only; the cross-check pins it against the frontier program.
inline bool solve_walk_matrix_chain(const WalkInstance& inst) {
    const ColoredGraph& g = inst.graph;
    if (!g.directed || g.mode != ColoringMode::edge)
        throw precondition_error("matrix-chain solver needs a directed edge-colored instance");
    if (inst.seq.empty()) return inst.s == inst.t;
    const std::size_t n = (std::size_t)g.n;
    std::map<int, BitMatrix> adj;
    for (int c : inst.seq) adj.try_emplace(c, BitMatrix(n, n));
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        auto it = adj.find(g.colors[i]);
        if (it != adj.end())
            it->second.set((std::size_t)g.edges[i].first, (std::size_t)g.edges[i].second);
    }
    BitMatrix prod = BitMatrix::identity(n);
    for (int c : inst.seq) prod = BitMatrix::multiply(prod, adj.at(c));
    return prod.get((std::size_t)inst.s, (std::size_t)inst.t);
}

/// Baseline for uniform sequences c^l: repeated squaring of the one relevant
/// adjacency matrix, O(n^3 log l). Any graph class.
inline bool solve_uniform_color_power(const WalkInstance& inst) {
    if (inst.seq.empty()) return inst.s == inst.t;
    const int c = inst.seq[0];
    for (int x : inst.seq)
        if (x != c) throw precondition_error("power solver needs a uniform color sequence");
    const std::size_t n = (std::size_t)inst.graph.n;
    BitMatrix base(n, n);
    for (const Arc& a : transition_arcs(inst.graph))
        if (a.color == c) base.set((std::size_t)a.from, (std::size_t)a.head);
    BitMatrix result = BitMatrix::identity(n);
    std::uint64_t e = inst.seq.size();
    while (e > 0) {
        if (e & 1) result = BitMatrix::multiply(result, base);
        e >>= 1;
        if (e > 0) base = BitMatrix::multiply(base, base);
    }
    return result.get((std::size_t)inst.s, (std::size_t)inst.t);
}

/// Trie-backed dynamic program: reach[i] marks prefixes of the text that are
/// dictionary concatenations; O(N * maxlen + M) over alphabet {0,1,2}.
inline bool solve_word_break(const WordBreakInstance& inst) {
    struct Node {
        std::array<int, 3> child{-1, -1, -1};
        bool terminal = false;
    };
    std::vector<Node> trie(1);
    for (const auto& w : inst.dictionary) {
        int cur = 0;
        for (int sym : w) {
            int next = trie[(std::size_t)cur].child[(std::size_t)sym];
            if (next < 0) {
                next = (int)trie.size();
                trie[(std::size_t)cur].child[(std::size_t)sym] = next;
                trie.emplace_back();
            }
            cur = next;
        }
        trie[(std::size_t)cur].terminal = true;
    }
    const std::size_t n = inst.text.size();
    std::vector<char> reach(n + 1, 0);
    reach[0] = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (!reach[i]) continue;
        int cur = 0;
        for (std::size_t j = i; j < n; ++j) {
            cur = trie[(std::size_t)cur].child[(std::size_t)inst.text[j]];
            if (cur < 0) break;
            if (trie[(std::size_t)cur].terminal) reach[j + 1] = 1;
        }
    }
    return reach[n] != 0;
}

/// Matrix-vector round server. The matrix is fixed at construction; round()
/// answers one query and refuses to serve more than dim rounds, so a caller
/// that tries to sneak extra products past the round budget trips an error
/// instead of silently getting them.
class OmvEngine {
   public:
    explicit OmvEngine(BitMatrix matrix) : m_(std::move(matrix)) {
        if (m_.rows() != m_.cols()) throw precondition_error("matrix must be square");
    }

    std::size_t dim() const { return m_.rows(); }
    std::size_t rounds_done() const { return rounds_done_; }

    BitVec round(const BitVec& v) {
        if (rounds_done_ >= dim()) throw precondition_error("rounds exhausted");
        if (v.size() != dim()) throw precondition_error("query dimension mismatch");
        ++rounds_done_;
        BitVec out(dim());
        for (std::size_t i = 0; i < dim(); ++i)
            if (m_.row_intersects(i, v)) out.set(i);
        return out;
    }

   private:
    BitMatrix m_;
    std::size_t rounds_done_ = 0;
};

/// runs the instance's query list through an engine; result per round
inline std::vector<BitVec> solve_omv(const OmvInstance& inst) {
    OmvEngine engine(inst.matrix);
    std::vector<BitVec> out;
    out.reserve(inst.rounds.size());
    for (const BitVec& q : inst.rounds) out.push_back(engine.round(q));
    return out;
}

inline bool ov_bruteforce(const OvInstance& inst) {
    for (const auto& a : inst.a_vectors)
        for (const auto& b : inst.b_vectors) {
            bool orth = true;
            for (int i = 0; i < inst.dim && orth; ++i)
                if (a[(std::size_t)i] && b[(std::size_t)i]) orth = false;
            if (orth) return true;
        }
    return false;
}

namespace detail {

inline bool clique_search(const std::vector<BitVec>& adj, BitVec candidates, int need) {
    if (need == 0) return true;
    if ((int)candidates.count() < need) return false;
    bool found = false;
    candidates.for_each_set([&](std::size_t v) {
        if (found) return;
        BitVec rest = candidates;
        rest &= adj[v];
        // only extend with higher-numbered vertices: each clique enumerated once
        for (std::size_t u = 0; u <= v; ++u)
            if (rest.test(u)) rest.reset(u);
        if (clique_search(adj, rest, need - 1)) found = true;
    });
    return found;
}

}  // namespace detail

/// Exhaustive k-clique test with a C(n,k) feasibility guard.
inline bool clique_bruteforce(const CliqueInstance& inst,
                              std::int64_t guard = std::int64_t{20'000'000}) {
    if (inst.k <= 0) return true;
    if (inst.k > inst.n) return false;
    long double combos = 1;
    for (int i = 0; i < inst.k; ++i) combos = combos * (inst.n - i) / (i + 1);
    if (combos > (long double)guard)
        throw budget_error("clique search space too large");
    std::vector<BitVec> adj((std::size_t)inst.n, BitVec((std::size_t)inst.n));
    for (auto [u, v] : inst.edges) {
        adj[(std::size_t)u].set((std::size_t)v);
        adj[(std::size_t)v].set((std::size_t)u);
    }
    return detail::clique_search(adj, BitVec((std::size_t)inst.n, true), inst.k);
}

}  // namespace rwlab
