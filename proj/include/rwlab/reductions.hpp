#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rwlab/bits.hpp"
#include "rwlab/cfl.hpp"
#include "rwlab/errors.hpp"
#include "rwlab/instances.hpp"
#include "rwlab/solvers.hpp"

namespace rwlab {

/// How a promised output parameter relates to the measured one. "exact" and
/// "upper" are asserted by the audit; "reported" is emitted for layouts whose
/// size is construction-dependent (the clique automaton) and is not a promise.
enum class BoundKind { exact, upper, reported };

inline const char* to_string(BoundKind k) {
    switch (k) {
        case BoundKind::exact: return "exact";
        case BoundKind::upper: return "upper";
        case BoundKind::reported: return "reported";
    }
    return "?";
}

struct Bound {
    std::int64_t value = 0;
    BoundKind kind = BoundKind::exact;
    std::string formula;
    bool operator==(const Bound&) const = default;
};

inline bool bound_ok(const Bound& b, std::int64_t actual) {
    switch (b.kind) {
        case BoundKind::exact: return actual == b.value;
        case BoundKind::upper: return actual <= b.value;
        case BoundKind::reported: return true;
    }
    return false;
}

struct ReductionReport {
    std::string name;
    Params params_in;
    Params params_out;
    Bound n_bound, m_bound, l_bound;
    Instance output;
};

/// promised parameters hold against the measured output
inline bool report_ok(const ReductionReport& r) {
    return bound_ok(r.n_bound, r.params_out.n) && bound_ok(r.m_bound, r.params_out.m) &&
           bound_ok(r.l_bound, r.params_out.l);
}

namespace detail {

inline Bound exact_bound(std::int64_t v, std::string formula) {
    return {v, BoundKind::exact, std::move(formula)};
}
inline Bound reported_bound(std::int64_t v, std::string formula) {
    return {v, BoundKind::reported, std::move(formula)};
}

template <typename T>
inline ReductionReport make_report(std::string name, Params in, T out, Bound nb, Bound mb,
                                   Bound lb) {
    finalize(out);
    ReductionReport r;
    r.name = std::move(name);
    r.params_in = in;
    r.params_out = params_of(out);
    r.n_bound = std::move(nb);
    r.m_bound = std::move(mb);
    r.l_bound = std::move(lb);
    r.output = Instance(std::move(out));
    return r;
}

inline void require_variant(const ColoredGraph& g, bool directed, ColoringMode mode,
                            std::optional<int> colors, const char* who) {
    if (g.directed != directed || g.mode != mode || (colors && g.num_colors != *colors))
        throw precondition_error(std::string(who) + ": needs a " +
                                 (directed ? "directed " : "undirected ") + to_string(mode) +
                                 "-colored instance" +
                                 (colors ? " with C=" + std::to_string(*colors) : ""));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Walk-family equivalences

/// Node colors pushed onto edges: c'(u,v) = c(v). Same graph otherwise.
inline ReductionReport reduce_dirnode2_to_diredge2(const WalkInstance& inst) {
    const ColoredGraph& g = inst.graph;
    detail::require_variant(g, true, ColoringMode::node, 2, "red_dirnode2_to_diredge2");
    WalkInstance out = inst;
    out.graph.mode = ColoringMode::edge;
    out.graph.colors.clear();
    out.graph.colors.reserve(g.edges.size());
    for (const auto& e : g.edges) out.graph.colors.push_back(g.colors[(std::size_t)e.second]);
    Params p = params_of(inst);
    return detail::make_report("red_dirnode2_to_diredge2", p, std::move(out),
                               detail::exact_bound(p.n, "n'=n"), detail::exact_bound(p.m, "m'=m"),
                               detail::exact_bound(p.l, "l'=l"));
}

/// Edges become transitions verbatim: Q=V, delta=(u,c,v), q0=s, F={t}.
inline ReductionReport reduce_diredge_to_nfa(const WalkInstance& inst) {
    const ColoredGraph& g = inst.graph;
    detail::require_variant(g, true, ColoringMode::edge, std::nullopt, "red_diredgeC_to_nfa");
    NfaInstance out;
    out.nfa.n_states = g.n;
    out.nfa.alphabet_size = g.num_colors;
    out.nfa.initial = inst.s;
    out.nfa.accepting = {inst.t};
    out.nfa.transitions.reserve(g.edges.size());
    for (std::size_t i = 0; i < g.edges.size(); ++i)
        out.nfa.transitions.push_back({g.edges[i].first, g.colors[i], g.edges[i].second});
    out.input = inst.seq;
    Params p = params_of(inst);
    return detail::make_report("red_diredgeC_to_nfa", p, std::move(out),
                               detail::exact_bound(p.n, "n'=n"), detail::exact_bound(p.m, "m'=m"),
                               detail::exact_bound(p.l, "l'=l"));
}

/// Three stages: (a) loops removed by doubling states into two copies with
/// copy-flipping transitions; (b) a single sink f0 entered from every
/// accepting state on the fixed symbol 1 appended to the input; (c) product
/// with the alphabet, vertex (p, sym) colored sym, an edge into (r, a) from
/// every (p, b) per transition (p, a, r). Macro state ids: (q, copy) = 2q+copy,
/// f0 = 2n; vertex id = macro * sigma + (sym - 1).
inline ReductionReport reduce_nfa_to_dirnode(const NfaInstance& inst) {
    const Nfa& M = inst.nfa;
    if (M.alphabet_size < 1)
        throw precondition_error("red_nfa_to_dirnodeC: needs a nonempty alphabet");
    const int sigma = M.alphabet_size;
    const int n = M.n_states;

    std::vector<std::array<int, 3>> hat;
    hat.reserve(2 * (M.transitions.size() + M.accepting.size()));
    for (const auto& t : M.transitions) {
        hat.push_back({2 * t[0] + 0, t[1], 2 * t[2] + 1});
        hat.push_back({2 * t[0] + 1, t[1], 2 * t[2] + 0});
    }
    for (int f : M.accepting) {
        hat.push_back({2 * f + 0, 1, 2 * n});
        hat.push_back({2 * f + 1, 1, 2 * n});
    }

    WalkInstance out;
    out.graph.directed = true;
    out.graph.mode = ColoringMode::node;
    out.graph.n = (2 * n + 1) * sigma;
    out.graph.num_colors = sigma;
    out.graph.colors.resize((std::size_t)out.graph.n);
    for (int p = 0; p <= 2 * n; ++p)
        for (int sym = 1; sym <= sigma; ++sym)
            out.graph.colors[(std::size_t)(p * sigma + sym - 1)] = sym;
    out.graph.edges.reserve(hat.size() * (std::size_t)sigma);
    for (const auto& t : hat)
        for (int b = 1; b <= sigma; ++b)
            out.graph.edges.emplace_back(t[0] * sigma + b - 1, t[2] * sigma + t[1] - 1);
    out.s = (2 * M.initial) * sigma;  // copy 0 of q0, color slot 1 (start color never read)
    out.t = (2 * n) * sigma;          // f0 at slot 1, the appended symbol
    out.seq = inst.input;
    out.seq.push_back(1);

    Params p = params_of(inst);
    const std::int64_t nn = (std::int64_t)(2 * n + 1) * sigma;
    const std::int64_t mm =
        2 * ((std::int64_t)M.transitions.size() + (std::int64_t)M.accepting.size()) * sigma;
    return detail::make_report("red_nfa_to_dirnodeC", p, std::move(out),
                               detail::exact_bound(nn, "n'=(2n+1)sigma"),
                               detail::exact_bound(mm, "m'=2(m+|F|)sigma"),
                               detail::exact_bound(p.l + 1, "l'=l+1"));
}

/// Colors squeezed to two: vertex v becomes a B-path (v,1)..(v,B) whose node
/// colors spell the B-bit encoding of c(v)-1 (most significant first, bit+1),
/// edges re-enter at (v,1) from (u,B). B = bits needed for C-1, so every
/// color 1..C encodes without overflow; C=2 gives B=1 and a pure renaming.
inline ReductionReport reduce_dirnodeN_to_dirnode2(const WalkInstance& inst) {
    const ColoredGraph& g = inst.graph;
    if (!g.directed || g.mode != ColoringMode::node || g.num_colors < 2)
        throw precondition_error(
            "red_dirnodeN_to_dirnode2: needs a directed node-colored instance with C>=2");
    const int B = std::bit_width((unsigned)(g.num_colors - 1));
    auto slot = [B](int v, int i) { return v * B + (i - 1); };  // i in 1..B
    auto bit_color = [B](int c, int i) {
        return (int)(((unsigned)(c - 1) >> (B - i)) & 1u) + 1;
    };

    WalkInstance out;
    out.graph.directed = true;
    out.graph.mode = ColoringMode::node;
    out.graph.n = g.n * B;
    out.graph.num_colors = 2;
    out.graph.colors.resize((std::size_t)out.graph.n);
    for (int v = 0; v < g.n; ++v)
        for (int i = 1; i <= B; ++i)
            out.graph.colors[(std::size_t)slot(v, i)] = bit_color(g.colors[(std::size_t)v], i);
    for (const auto& e : g.edges) out.graph.edges.emplace_back(slot(e.first, B), slot(e.second, 1));
    for (int v = 0; v < g.n; ++v)
        for (int i = 1; i < B; ++i) out.graph.edges.emplace_back(slot(v, i), slot(v, i + 1));
    out.s = slot(inst.s, B);
    out.t = slot(inst.t, B);
    out.seq.reserve(inst.seq.size() * (std::size_t)B);
    for (int c : inst.seq)
        for (int i = 1; i <= B; ++i) out.seq.push_back(bit_color(c, i));

    Params p = params_of(inst);
    return detail::make_report("red_dirnodeN_to_dirnode2", p, std::move(out),
                               detail::exact_bound(p.n * B, "n'=nB"),
                               detail::exact_bound(p.m + p.n * (B - 1), "m'=m+n(B-1)"),
                               detail::exact_bound(p.l * B, "l'=lB"));
}

namespace gadget {

// Layout of the directed-to-undirected vertex gadget: 6v+0 = entry, 6v+1..4
// the internal path, 6v+5 = exit. The per-step color word starts with the
// color-1 crossing edge, then the five path edges.
inline int in_of(int v) { return 6 * v; }
inline int mid_of(int v, int i) { return 6 * v + i; }  // i in 1..4
inline int out_of(int v) { return 6 * v + 5; }

/// path edge colors for the edge-colored gadget at a vertex of color c
inline std::array<int, 5> edge_word(int c) { return {2, c, c, 1, 2}; }
/// internal node colors (entry and exit are 1) for the node-colored gadget
inline std::array<int, 4> node_word(int c) { return {2, c, 2, 2}; }
/// step colors read when walking entry -> exit in the node-colored gadget
inline std::array<int, 5> node_walk_word(int c) { return {2, c, 2, 2, 1}; }

}  // namespace gadget

/// Direction dropped via the 6-vertex gadget: each step crosses one color-1
/// edge exit(u) -- entry(v) and then walks the path whose asymmetric color
/// word (2,c,c,1,2) can only be read forward when c = c(v).
inline ReductionReport reduce_dirnode2_to_undiredge2(const WalkInstance& inst) {
    const ColoredGraph& g = inst.graph;
    detail::require_variant(g, true, ColoringMode::node, 2, "red_dirnode2_to_undiredge2");
    WalkInstance out;
    out.graph.directed = false;
    out.graph.mode = ColoringMode::edge;
    out.graph.n = 6 * g.n;
    out.graph.num_colors = 2;
    auto add = [&](int a, int b, int c) {
        out.graph.edges.emplace_back(a, b);
        out.graph.colors.push_back(c);
    };
    for (int v = 0; v < g.n; ++v) {
        auto word = gadget::edge_word(g.colors[(std::size_t)v]);
        add(gadget::in_of(v), gadget::mid_of(v, 1), word[0]);
        add(gadget::mid_of(v, 1), gadget::mid_of(v, 2), word[1]);
        add(gadget::mid_of(v, 2), gadget::mid_of(v, 3), word[2]);
        add(gadget::mid_of(v, 3), gadget::mid_of(v, 4), word[3]);
        add(gadget::mid_of(v, 4), gadget::out_of(v), word[4]);
    }
    for (const auto& e : g.edges) add(gadget::out_of(e.first), gadget::in_of(e.second), 1);
    out.s = gadget::out_of(inst.s);
    out.t = gadget::out_of(inst.t);
    out.seq.reserve(6 * inst.seq.size());
    for (int c : inst.seq) {
        out.seq.push_back(1);
        for (int x : gadget::edge_word(c)) out.seq.push_back(x);
    }
    Params p = params_of(inst);
    return detail::make_report("red_dirnode2_to_undiredge2", p, std::move(out),
                               detail::exact_bound(6 * p.n, "n'=6n"),
                               detail::exact_bound(p.m + 5 * p.n, "m'=m+5n"),
                               detail::exact_bound(6 * p.l, "l'=6l"));
}

/// Same skeleton with node colors: entry/exit 1 and (2,c,2,2) on the path,
/// read as (2,c,2,2,1) walking forward plus the color-1 crossing.
inline ReductionReport reduce_dirnode2_to_undirnode2(const WalkInstance& inst) {
    const ColoredGraph& g = inst.graph;
    detail::require_variant(g, true, ColoringMode::node, 2, "red_dirnode2_to_undirnode2");
    WalkInstance out;
    out.graph.directed = false;
    out.graph.mode = ColoringMode::node;
    out.graph.n = 6 * g.n;
    out.graph.num_colors = 2;
    out.graph.colors.resize((std::size_t)out.graph.n);
    for (int v = 0; v < g.n; ++v) {
        auto word = gadget::node_word(g.colors[(std::size_t)v]);
        out.graph.colors[(std::size_t)gadget::in_of(v)] = 1;
        for (int i = 1; i <= 4; ++i)
            out.graph.colors[(std::size_t)gadget::mid_of(v, i)] = word[(std::size_t)(i - 1)];
        out.graph.colors[(std::size_t)gadget::out_of(v)] = 1;
    }
    for (int v = 0; v < g.n; ++v) {
        out.graph.edges.emplace_back(gadget::in_of(v), gadget::mid_of(v, 1));
        out.graph.edges.emplace_back(gadget::mid_of(v, 1), gadget::mid_of(v, 2));
        out.graph.edges.emplace_back(gadget::mid_of(v, 2), gadget::mid_of(v, 3));
        out.graph.edges.emplace_back(gadget::mid_of(v, 3), gadget::mid_of(v, 4));
        out.graph.edges.emplace_back(gadget::mid_of(v, 4), gadget::out_of(v));
    }
    for (const auto& e : g.edges)
        out.graph.edges.emplace_back(gadget::out_of(e.first), gadget::in_of(e.second));
    out.s = gadget::out_of(inst.s);
    out.t = gadget::out_of(inst.t);
    out.seq.reserve(6 * inst.seq.size());
    for (int c : inst.seq) {
        out.seq.push_back(1);
        for (int x : gadget::node_walk_word(c)) out.seq.push_back(x);
    }
    Params p = params_of(inst);
    return detail::make_report("red_dirnode2_to_undirnode2", p, std::move(out),
                               detail::exact_bound(6 * p.n, "n'=6n"),
                               detail::exact_bound(p.m + 5 * p.n, "m'=m+5n"),
                               detail::exact_bound(6 * p.l, "l'=6l"));
}

/// Each undirected edge replaced by its two directed arcs.
inline ReductionReport reduce_undirected_to_directed(const WalkInstance& inst) {
    const ColoredGraph& g = inst.graph;
    if (g.directed)
        throw precondition_error("red_undirected_to_directed: needs an undirected instance");
    WalkInstance out = inst;
    out.graph.directed = true;
    out.graph.edges.clear();
    if (g.mode == ColoringMode::edge) out.graph.colors.clear();
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        out.graph.edges.emplace_back(g.edges[i].first, g.edges[i].second);
        out.graph.edges.emplace_back(g.edges[i].second, g.edges[i].first);
        if (g.mode == ColoringMode::edge) {
            out.graph.colors.push_back(g.colors[i]);
            out.graph.colors.push_back(g.colors[i]);
        }
    }
    Params p = params_of(inst);
    return detail::make_report("red_undirected_to_directed", p, std::move(out),
                               detail::exact_bound(p.n, "n'=n"),
                               detail::exact_bound(2 * p.m, "m'=2m"),
                               detail::exact_bound(p.l, "l'=l"));
}

/// Endpoints dissolved into the sequence: fresh pendant vertices attached to
/// s and t by uniquely-colored edges 3 and 4 bracketing the sequence.
inline ReductionReport reduce_walk_to_anywalk(const WalkInstance& inst) {
    const ColoredGraph& g = inst.graph;
    detail::require_variant(g, false, ColoringMode::edge, 2, "red_walk_to_anywalk");
    AnyWalkInstance out;
    out.graph = g;
    out.graph.n = g.n + 2;
    out.graph.num_colors = 4;
    out.graph.edges.emplace_back(inst.s, g.n);
    out.graph.colors.push_back(3);
    out.graph.edges.emplace_back(inst.t, g.n + 1);
    out.graph.colors.push_back(4);
    out.seq.reserve(inst.seq.size() + 2);
    out.seq.push_back(3);
    out.seq.insert(out.seq.end(), inst.seq.begin(), inst.seq.end());
    out.seq.push_back(4);
    Params p = params_of(inst);
    return detail::make_report("red_walk_to_anywalk", p, std::move(out),
                               detail::exact_bound(p.n + 2, "n'=n+2"),
                               detail::exact_bound(p.m + 2, "m'=m+2"),
                               detail::exact_bound(p.l + 2, "l'=l+2"));
}

/// Fresh endpoints joined to every vertex by a fresh color bracketing the
/// sequence; the middle portion cannot touch the new edges.
inline ReductionReport reduce_anywalk_to_walk(const AnyWalkInstance& inst) {
    const ColoredGraph& g = inst.graph;
    if (g.directed || g.mode != ColoringMode::edge)
        throw precondition_error("red_anywalk_to_walk: needs an undirected edge-colored instance");
    const int fresh = g.num_colors + 1;
    WalkInstance out;
    out.graph = g;
    out.graph.n = g.n + 2;
    out.graph.num_colors = fresh;
    for (int v = 0; v < g.n; ++v) {
        out.graph.edges.emplace_back(v, g.n);
        out.graph.colors.push_back(fresh);
        out.graph.edges.emplace_back(v, g.n + 1);
        out.graph.colors.push_back(fresh);
    }
    out.s = g.n;
    out.t = g.n + 1;
    out.seq.reserve(inst.seq.size() + 2);
    out.seq.push_back(fresh);
    out.seq.insert(out.seq.end(), inst.seq.begin(), inst.seq.end());
    out.seq.push_back(fresh);
    Params p = params_of(inst);
    return detail::make_report("red_anywalk_to_walk", p, std::move(out),
                               detail::exact_bound(p.n + 2, "n'=n+2"),
                               detail::exact_bound(p.m + 2 * p.n, "m'=m+2n"),
                               detail::exact_bound(p.l + 2, "l'=l+2"));
}

/// Pads n with isolated vertices and l with the two-vertex idle gadget: a
/// color-1 2-cycle s0 <-> s1 plus the launch edge s0 -> s colored 2, driven
/// by the prefix 1^{2k} 2 (so only odd length deltas are reachable; even
/// deltas are rejected rather than silently changing the walk's parity).
/// Optional target_m adds lexicographically-first dummy edges among the
/// isolated pad vertices only.
inline ReductionReport pad_instance(const WalkInstance& inst, std::int64_t target_n,
                                    std::int64_t target_l,
                                    std::optional<std::int64_t> target_m = std::nullopt) {
    const ColoredGraph& g = inst.graph;
    if (!g.directed) throw precondition_error("pad_instance: needs a directed instance");
    const std::int64_t l = (std::int64_t)inst.seq.size();
    if (target_n < g.n)
        throw precondition_error("pad_instance: target n " + std::to_string(target_n) +
                                 " below current n " + std::to_string(g.n));
    if (target_l < l)
        throw precondition_error("pad_instance: target l " + std::to_string(target_l) +
                                 " below current l " + std::to_string(l));
    const std::int64_t delta = target_l - l;
    WalkInstance out = inst;
    int gadget_edges = 0;
    if (delta > 0) {
        if (g.mode != ColoringMode::edge)
            throw precondition_error(
                "pad_instance: length padding needs an edge-colored instance (the idle gadget "
                "carries edge colors)");
        if (delta % 2 == 0)
            throw precondition_error("pad_instance: length delta must be odd (prefix 1^{2k} 2); " +
                                     std::to_string(delta) + " is even");
        if (target_n < g.n + 2)
            throw precondition_error("pad_instance: length padding adds 2 vertices; target n " +
                                     std::to_string(target_n) + " too small");
        const int s0 = g.n, s1 = g.n + 1;
        out.graph.n = g.n + 2;
        out.graph.num_colors = std::max(g.num_colors, 2);
        out.graph.edges.emplace_back(s0, s1);
        out.graph.colors.push_back(1);
        out.graph.edges.emplace_back(s1, s0);
        out.graph.colors.push_back(1);
        out.graph.edges.emplace_back(s0, inst.s);
        out.graph.colors.push_back(2);
        gadget_edges = 3;
        out.s = s0;
        const std::int64_t k = (delta - 1) / 2;
        std::vector<int> seq;
        seq.reserve((std::size_t)target_l);
        for (std::int64_t i = 0; i < 2 * k; ++i) seq.push_back(1);
        seq.push_back(2);
        seq.insert(seq.end(), inst.seq.begin(), inst.seq.end());
        out.seq = std::move(seq);
    }
    const int first_pad = out.graph.n;
    out.graph.n = (int)target_n;
    if (g.mode == ColoringMode::node) out.graph.colors.resize((std::size_t)target_n, 1);

    std::int64_t dummies = 0;
    if (target_m) {
        const std::int64_t base = (std::int64_t)out.graph.edges.size();
        if (*target_m < base)
            throw precondition_error("pad_instance: target m " + std::to_string(*target_m) +
                                     " below current m " + std::to_string(base));
        std::int64_t extra = *target_m - base;
        const std::int64_t pads = target_n - first_pad;
        if (extra > pads * (pads - 1))
            throw precondition_error(
                "pad_instance: not enough isolated pad vertices for " + std::to_string(extra) +
                " dummy edges (capacity " + std::to_string(pads * (pads - 1)) + ")");
        dummies = extra;
        for (int u = first_pad; u < (int)target_n && extra > 0; ++u)
            for (int v = first_pad; v < (int)target_n && extra > 0; ++v) {
                if (u == v) continue;
                out.graph.edges.emplace_back(u, v);
                if (g.mode == ColoringMode::edge) out.graph.colors.push_back(1);
                --extra;
            }
    }

    Params p = params_of(inst);
    return detail::make_report(
        "pad_instance", p, std::move(out), detail::exact_bound(target_n, "n'=target_n"),
        detail::exact_bound(p.m + gadget_edges + dummies,
                            gadget_edges ? "m'=m+3+dummy" : "m'=m+dummy"),
        detail::exact_bound(target_l, "l'=target_l"));
}

// ---------------------------------------------------------------------------
// Cross-problem constructions

/// Edge colors become opening brackets (color c -> terminal 2c-1); a fresh
/// path appended at t reads the matching closers in reverse sequence order
/// (color c -> terminal 2c). An s -> end-of-path walk spells a balanced
/// two-bracket word exactly when the G-portion matches the sequence.
inline ReductionReport reduce_walk_to_cfl(const WalkInstance& inst) {
    const ColoredGraph& g = inst.graph;
    detail::require_variant(g, true, ColoringMode::edge, 2, "red_walk_to_cfl");
    const std::int64_t l = (std::int64_t)inst.seq.size();
    if (l == 0)
        throw precondition_error("red_walk_to_cfl: needs l >= 1 (the bracket language has no "
                                 "empty word)");
    CflInstance out;
    out.graph.directed = true;
    out.graph.mode = ColoringMode::edge;
    out.graph.n = g.n + (int)l;
    out.graph.num_colors = 4;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        out.graph.edges.push_back(g.edges[i]);
        out.graph.colors.push_back(2 * g.colors[i] - 1);
    }
    int prev = inst.t;  // the path head is t itself, no duplicate vertex
    for (std::int64_t i = 1; i <= l; ++i) {
        const int ui = g.n + (int)i - 1;
        out.graph.edges.emplace_back(prev, ui);
        out.graph.colors.push_back(2 * inst.seq[(std::size_t)(l - i)]);
        prev = ui;
    }
    out.s = inst.s;
    out.t = g.n + (int)l - 1;
    out.grammar = dyck2_grammar();
    Params p = params_of(inst);
    return detail::make_report("red_walk_to_cfl", p, std::move(out),
                               detail::exact_bound(p.n + l, "n'=n+l"),
                               detail::exact_bound(p.m + l, "m'=m+l"),
                               detail::exact_bound(0, "l'=0"));
}

/// Text and dictionary over {0,1,2}: with vertices relabeled 1..n, edge
/// (u,v) of color c becomes the word 0^u c 0^(n-v) and the text interleaves
/// the sequence colors with 0^n separators, anchored by s and t at the ends.
/// Any split of the text is forced edge by edge to trace a matching walk.
inline ReductionReport reduce_walk_to_wordbreak(const WalkInstance& inst) {
    const ColoredGraph& g = inst.graph;
    detail::require_variant(g, true, ColoringMode::edge, 2, "red_walk_to_wordbreak");
    const std::int64_t l = (std::int64_t)inst.seq.size();
    if (l == 0)
        throw precondition_error(
            "red_walk_to_wordbreak: needs l >= 1 (an all-zero text has no dictionary split)");
    WordBreakInstance out;
    std::int64_t skew = 0;  // sum of u - v over edges, the exact M correction
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const int u1 = g.edges[i].first + 1, v1 = g.edges[i].second + 1;
        std::vector<int> word((std::size_t)(u1 + 1 + g.n - v1), 0);
        word[(std::size_t)u1] = g.colors[i];
        out.dictionary.push_back(std::move(word));
        skew += g.edges[i].first - g.edges[i].second;
    }
    const int s1 = inst.s + 1, t1 = inst.t + 1;
    out.text.assign((std::size_t)s1, 0);
    for (std::int64_t j = 0; j < l; ++j) {
        out.text.push_back(inst.seq[(std::size_t)j]);
        if (j + 1 < l) out.text.insert(out.text.end(), (std::size_t)g.n, 0);
    }
    out.text.insert(out.text.end(), (std::size_t)(g.n - t1), 0);

    Params p = params_of(inst);
    return detail::make_report(
        "red_walk_to_wordbreak", p, std::move(out),
        detail::exact_bound(l * (p.n + 1) + inst.s - inst.t, "N=l(n+1)+s-t"),
        detail::exact_bound(p.m * (p.n + 1) + skew, "M=m(n+1)+sum(u-v)"),
        detail::exact_bound(0, "l'=0"));
}

enum class OmvMode { two_instance, block_diagonal };

inline const char* to_string(OmvMode m) {
    return m == OmvMode::two_instance ? "two_instance" : "block_diagonal";
}

/// Reduction transcript: the report (whose output is the engine-1 instance,
/// or the single block instance), the engine-2 instance when split, the
/// answer, and the driven frontier trajectory u_0..u_l over N = max(n, l)
/// coordinates (entries past the real vertices stay zero).
struct OmvDrive {
    ReductionReport report;
    std::optional<OmvInstance> second;
    bool answer = false;
    std::vector<BitVec> frontiers;
    std::int64_t rounds_used_1 = 0;
    std::int64_t rounds_used_2 = 0;
};

/// Frontier steps outsourced to matrix-vector rounds: M[c][b][a] = 1 per edge
/// (a,b) of color c (the transposed adjacency), u_i = M[c_i] u_{i-1} starting
/// from the s-indicator, answer u_l[t]. Split mode drives one engine per
/// color; block mode stacks both matrices into one 2N x 2N engine and places
/// each query in the live half. Queries are recorded and padded with zero
/// rounds so the emitted instances carry exactly one round per dimension.
inline OmvDrive reduce_walk_to_omv(const WalkInstance& inst, OmvMode mode) {
    const ColoredGraph& g = inst.graph;
    detail::require_variant(g, true, ColoringMode::edge, 2, "red_walk_to_omv");
    const std::int64_t l = (std::int64_t)inst.seq.size();
    const std::int64_t N = std::max<std::int64_t>(g.n, l);
    const std::size_t un = (std::size_t)N;

    BitMatrix m1(un, un), m2(un, un);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        BitMatrix& m = g.colors[i] == 1 ? m1 : m2;
        m.set((std::size_t)g.edges[i].second, (std::size_t)g.edges[i].first);
    }

    OmvDrive drive;
    BitVec u = BitVec::indicator(un, (std::size_t)inst.s);
    drive.frontiers.push_back(u);
    Params p = params_of(inst);

    if (mode == OmvMode::two_instance) {
        OmvEngine e1(m1), e2(m2);
        std::vector<BitVec> q1, q2;
        for (int c : inst.seq) {
            if (c == 1) {
                q1.push_back(u);
                u = e1.round(u);
            } else {
                q2.push_back(u);
                u = e2.round(u);
            }
            drive.frontiers.push_back(u);
        }
        drive.answer = u.test((std::size_t)inst.t);
        drive.rounds_used_1 = (std::int64_t)q1.size();
        drive.rounds_used_2 = (std::int64_t)q2.size();
        while ((std::int64_t)q1.size() < N) q1.push_back(BitVec(un));
        while ((std::int64_t)q2.size() < N) q2.push_back(BitVec(un));
        OmvInstance i1;
        i1.n = (int)N;
        i1.matrix = m1;
        i1.rounds = std::move(q1);
        OmvInstance i2;
        i2.n = (int)N;
        i2.matrix = std::move(m2);
        i2.rounds = std::move(q2);
        finalize(i2);
        drive.second = std::move(i2);
        drive.report = detail::make_report(
            "red_walk_to_omv", p, std::move(i1), detail::exact_bound(N, "n'=max(n,l)"),
            detail::exact_bound(p.m, "m'=m (split across engines)"),
            detail::exact_bound(N, "l'=max(n,l) rounds per engine"));
        // output carries engine 1 only; the aggregate counts cover both engines
        drive.report.params_out = {N, p.m, N};
    } else {
        BitMatrix d(2 * un, 2 * un);
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
            const std::size_t off = g.colors[i] == 1 ? 0 : un;
            d.set(off + (std::size_t)g.edges[i].second, off + (std::size_t)g.edges[i].first);
        }
        OmvEngine engine(std::move(d));
        std::vector<BitVec> queries;
        for (int c : inst.seq) {
            const std::size_t off = c == 1 ? 0 : un;
            BitVec v(2 * un);
            u.for_each_set([&](std::size_t j) { v.set(off + j); });
            queries.push_back(v);
            BitVec w = engine.round(v);
            BitVec next(un);
            w.for_each_set([&](std::size_t j) {
                if (j >= off && j < off + un) next.set(j - off);
            });
            u = std::move(next);
            drive.frontiers.push_back(u);
        }
        drive.answer = u.test((std::size_t)inst.t);
        drive.rounds_used_1 = l;
        while ((std::int64_t)queries.size() < 2 * N) queries.push_back(BitVec(2 * un));
        OmvInstance blk;
        blk.n = (int)(2 * N);
        BitMatrix stacked(2 * un, 2 * un);
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
            const std::size_t off = g.colors[i] == 1 ? 0 : un;
            stacked.set(off + (std::size_t)g.edges[i].second, off + (std::size_t)g.edges[i].first);
        }
        blk.matrix = std::move(stacked);
        blk.rounds = std::move(queries);
        drive.report = detail::make_report(
            "red_walk_to_omv", p, std::move(blk), detail::exact_bound(2 * N, "n'=2max(n,l)"),
            detail::exact_bound(p.m, "m'=m"),
            detail::exact_bound(2 * N, "l'=2max(n,l) rounds"));
    }
    return drive;
}

/// Automaton states: a looping start 0, a looping accept 1, and one (d+1)-
/// state chain per left vector. Symbol 1 (bit 0) always advances a chain,
/// symbol 2 (bit 1) advances only where the left vector has a 0, symbol 3
/// jumps start -> chain head and chain tail -> accept. The input spells every
/// right vector between 3s, so acceptance is exactly an orthogonal pair.
inline ReductionReport reduce_ov_to_nfa(const OvInstance& inst) {
    if (inst.dim < 1) throw precondition_error("red_ov_to_nfa: needs d >= 1");
    const int d = inst.dim;
    const int A = (int)inst.a_vectors.size();
    auto chain = [d](int i, int kk) { return 2 + i * (d + 1) + kk; };  // kk in 0..d

    NfaInstance out;
    out.nfa.n_states = 2 + A * (d + 1);
    out.nfa.alphabet_size = 3;
    out.nfa.initial = 0;
    out.nfa.accepting = {1};
    std::int64_t zero_bits = 0;
    for (int sym = 1; sym <= 3; ++sym) {
        out.nfa.transitions.push_back({0, sym, 0});
        out.nfa.transitions.push_back({1, sym, 1});
    }
    for (int i = 0; i < A; ++i) {
        for (int kk = 1; kk <= d; ++kk) {
            out.nfa.transitions.push_back({chain(i, kk - 1), 1, chain(i, kk)});
            if (inst.a_vectors[(std::size_t)i][(std::size_t)(kk - 1)] == 0) {
                out.nfa.transitions.push_back({chain(i, kk - 1), 2, chain(i, kk)});
                ++zero_bits;
            }
        }
        out.nfa.transitions.push_back({0, 3, chain(i, 0)});
        out.nfa.transitions.push_back({chain(i, d), 3, 1});
    }
    out.input.push_back(3);
    for (const auto& b : inst.b_vectors) {
        for (auto bit : b) out.input.push_back(bit ? 2 : 1);
        out.input.push_back(3);
    }

    Params p = params_of(inst);  // (|A|, |B|, d)
    return detail::make_report(
        "red_ov_to_nfa", p, std::move(out),
        detail::exact_bound(2 + p.n * (d + 1), "n'=2+|A|(d+1)"),
        detail::exact_bound(p.n * (d + 2) + zero_bits + 6, "m'=|A|(d+2)+z(A)+6"),
        detail::exact_bound(1 + p.m * (d + 1), "l'=1+|B|(d+1)"));
}

namespace detail {

/// all size-k cliques of the graph, lexicographically, with a work guard
inline std::vector<std::vector<int>> enumerate_cliques(int n,
                                                       const std::vector<BitVec>& adj, int k,
                                                       std::int64_t guard) {
    std::vector<std::vector<int>> found;
    std::vector<int> cur;
    std::int64_t work = 0;
    auto rec = [&](auto&& self, int from) -> void {
        if (++work > guard) throw budget_error("clique enumeration guard exceeded");
        if ((int)cur.size() == k) {
            found.push_back(cur);
            return;
        }
        for (int v = from; v < n; ++v) {
            bool ok = true;
            for (int u : cur)
                if (!adj[(std::size_t)u].test((std::size_t)v)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return found;
}

}  // namespace detail

/// Split a (2k+k')-clique search into automaton + input: k-cliques become
/// hard-wired gadget pairs checked against each other by a bridge (present
/// exactly when the two k-sets form a 2k-clique), and k'-cliques are spelled
/// into the input as node-ID blocks read through per-member neighbor
/// automata. No self-loops exist, so a text vertex colliding with a gadget
/// vertex fails its own adjacency check; disjointness comes free.
inline ReductionReport reduce_clique_to_nfa(const CliqueInstance& inst, int k, int k_prime,
                                            std::int64_t guard = 200'000) {
    if (k < 1 || k_prime < 1)
        throw precondition_error("red_clique_to_nfa: needs k >= 1 and k' >= 1");
    if (inst.k != 2 * k + k_prime)
        throw precondition_error("red_clique_to_nfa: instance clique size " +
                                 std::to_string(inst.k) + " must equal 2k+k' = " +
                                 std::to_string(2 * k + k_prime));
    const int n = inst.n;
    std::vector<BitVec> adj((std::size_t)n, BitVec((std::size_t)n));
    for (auto [u, v] : inst.edges) {
        adj[(std::size_t)u].set((std::size_t)v);
        adj[(std::size_t)v].set((std::size_t)u);
    }
    const auto gadget_cliques = detail::enumerate_cliques(n, adj, k, guard);
    const auto text_cliques = detail::enumerate_cliques(n, adj, k_prime, guard);
    const int idlen = n >= 2 ? (int)std::bit_width((unsigned)(n - 1)) : 1;
    const int block = k_prime * k;  // IDs read per gadget traversal

    NfaInstance out;
    out.nfa.alphabet_size = 4;  // 1,2 = ID bits, 3 = entry/exit, 4 = bridge
    out.nfa.initial = 0;
    out.nfa.accepting = {1};
    int next_state = 2;
    for (int sym = 1; sym <= 4; ++sym) {
        out.nfa.transitions.push_back({0, sym, 0});
        out.nfa.transitions.push_back({1, sym, 1});
    }

    auto id_bit = [idlen](int v, int i) { return (int)(((unsigned)v >> (idlen - i)) & 1u) + 1; };

    // One gadget chain: block+1 boundary states; between consecutive
    // boundaries, one parallel ID path per neighbor of the responsible
    // member. Returns (first boundary, last boundary).
    auto build_chain = [&](const std::vector<int>& members) {
        const int first = next_state;
        next_state += block + 1;
        for (int j = 1; j <= block; ++j) {
            const int from = first + j - 1, to = first + j;
            const int member = members[(std::size_t)((j - 1) % k)];
            adj[(std::size_t)member].for_each_set([&](std::size_t w) {
                int cur = from;
                for (int i = 1; i < idlen; ++i) {
                    const int mid = next_state++;
                    out.nfa.transitions.push_back({cur, id_bit((int)w, i), mid});
                    cur = mid;
                }
                out.nfa.transitions.push_back({cur, id_bit((int)w, idlen), to});
            });
        }
        return std::pair<int, int>{first, first + block};
    };

    std::vector<std::pair<int, int>> plain, primed;
    plain.reserve(gadget_cliques.size());
    primed.reserve(gadget_cliques.size());
    for (const auto& members : gadget_cliques) {
        if ((std::int64_t)next_state > guard)
            throw budget_error("clique automaton state guard exceeded");
        plain.push_back(build_chain(members));
        primed.push_back(build_chain(members));
    }
    for (std::size_t a = 0; a < gadget_cliques.size(); ++a) {
        out.nfa.transitions.push_back({0, 3, plain[a].first});
        out.nfa.transitions.push_back({primed[a].second, 3, 1});
    }
    if (!text_cliques.empty()) {
        for (std::size_t a = 0; a < gadget_cliques.size(); ++a)
            for (std::size_t b = 0; b < gadget_cliques.size(); ++b) {
                bool joint = true;
                for (int u : gadget_cliques[a]) {
                    for (int v : gadget_cliques[b])
                        if (u == v || !adj[(std::size_t)u].test((std::size_t)v)) {
                            joint = false;
                            break;
                        }
                    if (!joint) break;
                }
                if (joint)
                    out.nfa.transitions.push_back({plain[a].second, 4, primed[b].first});
            }
    }
    out.nfa.n_states = next_state;

    out.input.push_back(3);
    auto spell = [&](const std::vector<int>& members) {
        for (int v : members)
            for (int rep = 0; rep < k; ++rep)
                for (int i = 1; i <= idlen; ++i) out.input.push_back(id_bit(v, i));
    };
    for (const auto& members : text_cliques) {
        spell(members);
        out.input.push_back(4);
        spell(members);
        out.input.push_back(3);
    }

    Params p = params_of(inst);
    const std::int64_t kp = (std::int64_t)text_cliques.size();
    ReductionReport r = detail::make_report(
        "red_clique_to_nfa", p, std::move(out),
        detail::reported_bound(0, "n'=layout dependent"),
        detail::reported_bound(0, "m'=layout dependent"),
        detail::exact_bound(1 + kp * (2 * (std::int64_t)block * idlen + 2),
                            "l'=1+K'(2k'k*idlen+2)"));
    r.n_bound.value = r.params_out.n;
    r.m_bound.value = r.params_out.m;
    return r;
}

}  // namespace rwlab
