#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "rwlab/bits.hpp"
#include "rwlab/errors.hpp"

namespace rwlab {

enum class ColoringMode { node, edge };
enum class InstanceKind { walk, anywalk, nfa, cfl, wordbreak, omv, ov, clique };

inline const char* to_string(ColoringMode m) {
    return m == ColoringMode::node ? "node" : "edge";
}

inline const char* to_string(InstanceKind k) {
    switch (k) {
        case InstanceKind::walk: return "walk";
        case InstanceKind::anywalk: return "anywalk";
        case InstanceKind::nfa: return "nfa";
        case InstanceKind::cfl: return "cfl";
        case InstanceKind::wordbreak: return "wordbreak";
        case InstanceKind::omv: return "omv";
        case InstanceKind::ov: return "ov";
        case InstanceKind::clique: return "clique";
    }
    return "?";
}

inline std::optional<InstanceKind> kind_from_name(std::string_view s) {
    for (InstanceKind k : {InstanceKind::walk, InstanceKind::anywalk, InstanceKind::nfa,
                           InstanceKind::cfl, InstanceKind::wordbreak, InstanceKind::omv,
                           InstanceKind::ov, InstanceKind::clique})
        if (s == to_string(k)) return k;
    return std::nullopt;
}

/// Colored graph shared by the walk problems. Vertices are 0..n-1, colors
/// 1..num_colors. Undirected edges are stored once with u < v; edge lists are
/// kept sorted (canonical form, relied on by the serializer).
struct ColoredGraph {
    bool directed = true;
    int n = 0;
    ColoringMode mode = ColoringMode::edge;
    int num_colors = 1;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> colors;  // per edge (edge mode) or per vertex (node mode)

    std::int64_t edge_count() const { return (std::int64_t)edges.size(); }
    bool operator==(const ColoredGraph&) const = default;
};

struct WalkInstance {
    ColoredGraph graph;
    int s = 0;
    int t = 0;
    std::vector<int> seq;
    bool operator==(const WalkInstance&) const = default;
};

struct AnyWalkInstance {
    ColoredGraph graph;
    std::vector<int> seq;
    bool operator==(const AnyWalkInstance&) const = default;
};

/// Nondeterministic automaton over symbols 1..alphabet_size. Self-loops and
/// parallel transitions with distinct symbols are allowed; no epsilon moves.
struct Nfa {
    int n_states = 0;
    int alphabet_size = 0;
    std::vector<std::array<int, 3>> transitions;  // (q, symbol, q'), sorted set
    int initial = 0;
    std::vector<int> accepting;  // sorted, unique

    bool operator==(const Nfa&) const = default;
};

struct NfaInstance {
    Nfa nfa;
    std::vector<int> input;
    bool operator==(const NfaInstance&) const = default;
};

/// Normalized grammar: every rule is X -> a (terminal) or X -> Y Z.
/// Nonterminals are 0..num_nonterminals-1, terminals 1..num_terminals.
struct Grammar {
    int num_nonterminals = 0;
    int num_terminals = 0;
    std::vector<std::pair<int, int>> unary;     // (X, a)
    std::vector<std::array<int, 3>> binary;     // (X, Y, Z)
    int start = 0;
    bool operator==(const Grammar&) const = default;
};

/// Dyck-2 over terminals 1..4 read as (1 )1 (2 )2. Normalized with helper
/// nonterminals for the terminals and for the "S followed by closer" suffixes:
///   S -> S S | P1 Q1 | P1 R1 | P2 Q2 | P2 R2
///   R1 -> S Q1, R2 -> S Q2, P1 -> 1, Q1 -> 2, P2 -> 3, Q2 -> 4
inline Grammar dyck2_grammar() {
    enum { S = 0, P1, Q1, P2, Q2, R1, R2 };
    Grammar g;
    g.num_nonterminals = 7;
    g.num_terminals = 4;
    g.start = S;
    g.unary = {{P1, 1}, {Q1, 2}, {P2, 3}, {Q2, 4}};
    g.binary = {{S, S, S},  {S, P1, Q1}, {S, P1, R1}, {S, P2, Q2},
                {S, P2, R2}, {R1, S, Q1}, {R2, S, Q2}};
    return g;
}

/// Graph reachability constrained by a grammar; edge colors are terminals.
struct CflInstance {
    ColoredGraph graph;  // directed, edge mode
    int s = 0;
    int t = 0;
    Grammar grammar;
    bool operator==(const CflInstance&) const = default;
};

/// Text and dictionary over the fixed alphabet {0,1,2}; dictionary is a
/// sorted set of nonempty words.
struct WordBreakInstance {
    std::vector<int> text;
    std::vector<std::vector<int>> dictionary;
    bool operator==(const WordBreakInstance&) const = default;
};

/// Online matrix-vector instance: one n x n boolean matrix and the query
/// vectors, at most n of them (a full instance carries exactly n, padding
/// rounds included).
struct OmvInstance {
    int n = 0;
    BitMatrix matrix;
    std::vector<BitVec> rounds;
    bool operator==(const OmvInstance&) const = default;
};

/// Two sets of 0/1 vectors of equal dimension.
struct OvInstance {
    int dim = 0;
    std::vector<std::vector<std::uint8_t>> a_vectors;
    std::vector<std::vector<std::uint8_t>> b_vectors;
    bool operator==(const OvInstance&) const = default;
};

/// Undirected simple graph (edges u < v, sorted) and a target clique size.
struct CliqueInstance {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    int k = 0;
    bool operator==(const CliqueInstance&) const = default;
};

using Instance = std::variant<WalkInstance, AnyWalkInstance, NfaInstance, CflInstance,
                              WordBreakInstance, OmvInstance, OvInstance, CliqueInstance>;

inline InstanceKind kind_of(const Instance& inst) {
    return std::visit(
        [](const auto& v) -> InstanceKind {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, WalkInstance>) return InstanceKind::walk;
            else if constexpr (std::is_same_v<T, AnyWalkInstance>) return InstanceKind::anywalk;
            else if constexpr (std::is_same_v<T, NfaInstance>) return InstanceKind::nfa;
            else if constexpr (std::is_same_v<T, CflInstance>) return InstanceKind::cfl;
            else if constexpr (std::is_same_v<T, WordBreakInstance>) return InstanceKind::wordbreak;
            else if constexpr (std::is_same_v<T, OmvInstance>) return InstanceKind::omv;
            else if constexpr (std::is_same_v<T, OvInstance>) return InstanceKind::ov;
            else return InstanceKind::clique;
        },
        inst);
}

/// The (n, m, l) triple used by reduction accounting. Meaning per kind:
/// walk/anywalk: vertices, edges, sequence length; nfa: states, transitions,
/// input length; cfl: graph size with l = 0; wordbreak: text length, total
/// dictionary length, 0; omv: dimension, matrix ones, round count;
/// ov: |A|, |B|, dim; clique: vertices, edges, k.
struct Params {
    std::int64_t n = 0, m = 0, l = 0;
    bool operator==(const Params&) const = default;
};

inline Params params_of(const WalkInstance& i) {
    return {i.graph.n, i.graph.edge_count(), (std::int64_t)i.seq.size()};
}
inline Params params_of(const AnyWalkInstance& i) {
    return {i.graph.n, i.graph.edge_count(), (std::int64_t)i.seq.size()};
}
inline Params params_of(const NfaInstance& i) {
    return {i.nfa.n_states, (std::int64_t)i.nfa.transitions.size(), (std::int64_t)i.input.size()};
}
inline Params params_of(const CflInstance& i) {
    return {i.graph.n, i.graph.edge_count(), 0};
}
inline Params params_of(const WordBreakInstance& i) {
    std::int64_t m = 0;
    for (const auto& w : i.dictionary) m += (std::int64_t)w.size();
    return {(std::int64_t)i.text.size(), m, 0};
}
inline Params params_of(const OmvInstance& i) {
    return {i.n, (std::int64_t)i.matrix.count_ones(), (std::int64_t)i.rounds.size()};
}
inline Params params_of(const OvInstance& i) {
    return {(std::int64_t)i.a_vectors.size(), (std::int64_t)i.b_vectors.size(), i.dim};
}
inline Params params_of(const CliqueInstance& i) {
    return {i.n, (std::int64_t)i.edges.size(), i.k};
}
inline Params params_of(const Instance& inst) {
    return std::visit([](const auto& v) { return params_of(v); }, inst);
}

// ---------------------------------------------------------------------------
// Canonical form. normalize() sorts list fields into the order the serializer
// emits; parsing accepts any order and normalizes.

inline void normalize(ColoredGraph& g) {
    if (!g.directed)
        for (auto& e : g.edges)
            if (e.first > e.second) std::swap(e.first, e.second);
    if (g.mode == ColoringMode::edge && g.colors.size() == g.edges.size()) {
        std::vector<std::size_t> idx(g.edges.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::sort(idx.begin(), idx.end(),
                  [&](std::size_t a, std::size_t b) { return g.edges[a] < g.edges[b]; });
        std::vector<std::pair<int, int>> es;
        std::vector<int> cs;
        es.reserve(idx.size());
        cs.reserve(idx.size());
        for (auto i : idx) {
            es.push_back(g.edges[i]);
            cs.push_back(g.colors[i]);
        }
        g.edges = std::move(es);
        g.colors = std::move(cs);
    } else {
        std::sort(g.edges.begin(), g.edges.end());
    }
}

inline void normalize(WalkInstance& i) { normalize(i.graph); }
inline void normalize(AnyWalkInstance& i) { normalize(i.graph); }

inline void normalize(Nfa& m) {
    std::sort(m.transitions.begin(), m.transitions.end());
    m.transitions.erase(std::unique(m.transitions.begin(), m.transitions.end()),
                        m.transitions.end());
    std::sort(m.accepting.begin(), m.accepting.end());
    m.accepting.erase(std::unique(m.accepting.begin(), m.accepting.end()), m.accepting.end());
}
inline void normalize(NfaInstance& i) { normalize(i.nfa); }

inline void normalize(Grammar& g) {
    std::sort(g.unary.begin(), g.unary.end());
    g.unary.erase(std::unique(g.unary.begin(), g.unary.end()), g.unary.end());
    std::sort(g.binary.begin(), g.binary.end());
    g.binary.erase(std::unique(g.binary.begin(), g.binary.end()), g.binary.end());
}
inline void normalize(CflInstance& i) {
    normalize(i.graph);
    normalize(i.grammar);
}

inline void normalize(WordBreakInstance& i) {
    std::sort(i.dictionary.begin(), i.dictionary.end());
}

inline void normalize(OmvInstance&) {}

inline void normalize(OvInstance& i) {
    std::sort(i.a_vectors.begin(), i.a_vectors.end());
    std::sort(i.b_vectors.begin(), i.b_vectors.end());
}

inline void normalize(CliqueInstance& i) {
    for (auto& e : i.edges)
        if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(i.edges.begin(), i.edges.end());
}

inline void normalize(Instance& inst) {
    std::visit([](auto& v) { normalize(v); }, inst);
}

// ---------------------------------------------------------------------------
// Validation. Each violation names the field and the broken invariant.

namespace detail {

inline std::string pair_str(int a, int b) {
    return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

inline void validate_edge_list(const std::vector<std::pair<int, int>>& edges, int n,
                               bool directed, std::vector<std::string>& out) {
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto [u, v] = edges[i];
        if (u < 0 || u >= n || v < 0 || v >= n) {
            out.push_back("edges[" + std::to_string(i) + "]: endpoint out of range [0," +
                          std::to_string(n) + ")");
            continue;
        }
        if (u == v)
            out.push_back("edges[" + std::to_string(i) + "]: loop " + pair_str(u, v) +
                          " forbidden");
        else if (!directed && u > v)
            out.push_back("edges[" + std::to_string(i) + "]: undirected edge not stored with u < v");
    }
    for (std::size_t i = 1; i < edges.size(); ++i) {
        if (edges[i] < edges[i - 1]) {
            out.push_back("edges: not in canonical sorted order");
            break;
        }
    }
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (edges[i] == edges[i - 1])
            out.push_back("edges: duplicate " + pair_str(edges[i].first, edges[i].second));
}

}  // namespace detail

inline void validate_graph(const ColoredGraph& g, std::vector<std::string>& out) {
    if (g.n < 1) out.push_back("n: must be >= 1");
    if (g.num_colors < 1) out.push_back("C: must be >= 1");
    detail::validate_edge_list(g.edges, g.n, g.directed, out);
    const std::size_t expect = g.mode == ColoringMode::edge ? g.edges.size() : (std::size_t)g.n;
    if (g.colors.size() != expect) {
        out.push_back("colors: expected " + std::to_string(expect) + " entries, got " +
                      std::to_string(g.colors.size()));
    } else {
        for (std::size_t i = 0; i < g.colors.size(); ++i)
            if (g.colors[i] < 1 || g.colors[i] > g.num_colors)
                out.push_back("colors[" + std::to_string(i) + "]: color out of range (got " +
                              std::to_string(g.colors[i]) + ", C=" + std::to_string(g.num_colors) +
                              ")");
    }
}

inline void validate_seq(const std::vector<int>& seq, int C, std::vector<std::string>& out) {
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (seq[i] < 1)
            out.push_back("seq[" + std::to_string(i) + "]: color " + std::to_string(seq[i]) +
                          " < 1");
        else if (seq[i] > C)
            out.push_back("seq[" + std::to_string(i) + "]: color " + std::to_string(seq[i]) +
                          " > C=" + std::to_string(C));
    }
}

inline std::vector<std::string> validate_instance(const WalkInstance& i) {
    std::vector<std::string> out;
    validate_graph(i.graph, out);
    if (i.s < 0 || i.s >= i.graph.n) out.push_back("s: out of range [0," + std::to_string(i.graph.n) + ")");
    if (i.t < 0 || i.t >= i.graph.n) out.push_back("t: out of range [0," + std::to_string(i.graph.n) + ")");
    validate_seq(i.seq, i.graph.num_colors, out);
    return out;
}

inline std::vector<std::string> validate_instance(const AnyWalkInstance& i) {
    std::vector<std::string> out;
    validate_graph(i.graph, out);
    validate_seq(i.seq, i.graph.num_colors, out);
    return out;
}

inline std::vector<std::string> validate_instance(const NfaInstance& i) {
    std::vector<std::string> out;
    const Nfa& m = i.nfa;
    if (m.n_states < 1) out.push_back("n: must be >= 1");
    if (m.alphabet_size < 0) out.push_back("sigma: must be >= 0");
    if (m.initial < 0 || m.initial >= m.n_states) out.push_back("q0: out of range");
    for (std::size_t j = 0; j < m.transitions.size(); ++j) {
        auto [q, a, r] = m.transitions[j];
        if (q < 0 || q >= m.n_states || r < 0 || r >= m.n_states)
            out.push_back("trans[" + std::to_string(j) + "]: state out of range");
        if (a < 1 || a > m.alphabet_size)
            out.push_back("trans[" + std::to_string(j) + "]: symbol out of range");
    }
    for (std::size_t j = 1; j < m.transitions.size(); ++j) {
        if (m.transitions[j] < m.transitions[j - 1]) {
            out.push_back("trans: not in canonical sorted order");
            break;
        }
        if (m.transitions[j] == m.transitions[j - 1])
            out.push_back("trans: duplicate (" + std::to_string(m.transitions[j][0]) + "," +
                          std::to_string(m.transitions[j][1]) + "," +
                          std::to_string(m.transitions[j][2]) + ")");
    }
    for (std::size_t j = 0; j < m.accepting.size(); ++j) {
        if (m.accepting[j] < 0 || m.accepting[j] >= m.n_states)
            out.push_back("accept[" + std::to_string(j) + "]: state out of range");
        if (j > 0 && m.accepting[j] <= m.accepting[j - 1])
            out.push_back("accept: not sorted/unique");
    }
    for (std::size_t j = 0; j < i.input.size(); ++j)
        if (i.input[j] < 1 || i.input[j] > m.alphabet_size)
            out.push_back("input[" + std::to_string(j) + "]: symbol " +
                          std::to_string(i.input[j]) + " out of range [1," +
                          std::to_string(m.alphabet_size) + "]");
    return out;
}

inline std::vector<std::string> validate_instance(const CflInstance& i) {
    std::vector<std::string> out;
    validate_graph(i.graph, out);
    if (!i.graph.directed) out.push_back("graph: must be directed");
    if (i.graph.mode != ColoringMode::edge) out.push_back("graph: must be edge-colored");
    if (i.s < 0 || i.s >= i.graph.n) out.push_back("s: out of range");
    if (i.t < 0 || i.t >= i.graph.n) out.push_back("t: out of range");
    const Grammar& g = i.grammar;
    if (g.num_nonterminals < 1) out.push_back("grammar: needs at least one nonterminal");
    if (g.start < 0 || g.start >= g.num_nonterminals) out.push_back("grammar: start out of range");
    if (g.num_terminals != i.graph.num_colors)
        out.push_back("grammar: terminal count differs from graph C");
    for (std::size_t j = 0; j < g.unary.size(); ++j) {
        auto [x, a] = g.unary[j];
        if (x < 0 || x >= g.num_nonterminals)
            out.push_back("unary[" + std::to_string(j) + "]: nonterminal out of range");
        if (a < 1 || a > g.num_terminals)
            out.push_back("unary[" + std::to_string(j) + "]: terminal out of range");
    }
    for (std::size_t j = 0; j < g.binary.size(); ++j)
        for (int x : g.binary[j])
            if (x < 0 || x >= g.num_nonterminals) {
                out.push_back("binary[" + std::to_string(j) + "]: nonterminal out of range");
                break;
            }
    return out;
}

inline std::vector<std::string> validate_instance(const WordBreakInstance& i) {
    std::vector<std::string> out;
    for (std::size_t j = 0; j < i.text.size(); ++j)
        if (i.text[j] < 0 || i.text[j] > 2)
            out.push_back("text[" + std::to_string(j) + "]: symbol " + std::to_string(i.text[j]) +
                          " out of range [0,2]");
    for (std::size_t w = 0; w < i.dictionary.size(); ++w) {
        if (i.dictionary[w].empty()) out.push_back("dictionary[" + std::to_string(w) + "]: empty word");
        for (int sym : i.dictionary[w])
            if (sym < 0 || sym > 2) {
                out.push_back("dictionary[" + std::to_string(w) + "]: symbol out of range [0,2]");
                break;
            }
    }
    for (std::size_t w = 1; w < i.dictionary.size(); ++w) {
        if (i.dictionary[w] < i.dictionary[w - 1]) {
            out.push_back("dictionary: not in canonical sorted order");
            break;
        }
        if (i.dictionary[w] == i.dictionary[w - 1])
            out.push_back("dictionary: duplicate word");
    }
    return out;
}

inline std::vector<std::string> validate_instance(const OmvInstance& i) {
    std::vector<std::string> out;
    if (i.n < 1) out.push_back("n: must be >= 1");
    if ((int)i.matrix.rows() != i.n || (int)i.matrix.cols() != i.n)
        out.push_back("matrix: expected " + std::to_string(i.n) + "x" + std::to_string(i.n));
    if ((int)i.rounds.size() > i.n)
        out.push_back("rounds: more than n query vectors");
    for (std::size_t j = 0; j < i.rounds.size(); ++j)
        if ((int)i.rounds[j].size() != i.n)
            out.push_back("rounds[" + std::to_string(j) + "]: dimension mismatch");
    return out;
}

inline std::vector<std::string> validate_instance(const OvInstance& i) {
    std::vector<std::string> out;
    if (i.dim < 1) out.push_back("d: must be >= 1");
    auto check = [&](const char* name, const std::vector<std::vector<std::uint8_t>>& vs) {
        for (std::size_t j = 0; j < vs.size(); ++j) {
            if ((int)vs[j].size() != i.dim)
                out.push_back(std::string(name) + "[" + std::to_string(j) + "]: dimension mismatch");
            for (auto b : vs[j])
                if (b > 1) {
                    out.push_back(std::string(name) + "[" + std::to_string(j) + "]: entry not 0/1");
                    break;
                }
        }
        for (std::size_t j = 1; j < vs.size(); ++j) {
            if (vs[j] < vs[j - 1]) {
                out.push_back(std::string(name) + ": not in canonical sorted order");
                break;
            }
            if (vs[j] == vs[j - 1]) out.push_back(std::string(name) + ": duplicate vector");
        }
    };
    check("a", i.a_vectors);
    check("b", i.b_vectors);
    return out;
}

inline std::vector<std::string> validate_instance(const CliqueInstance& i) {
    std::vector<std::string> out;
    if (i.n < 1) out.push_back("n: must be >= 1");
    if (i.k < 0) out.push_back("k: must be >= 0");
    detail::validate_edge_list(i.edges, i.n, /*directed=*/false, out);
    return out;
}

inline std::vector<std::string> validate_instance(const Instance& inst) {
    return std::visit([](const auto& v) { return validate_instance(v); }, inst);
}

/// normalize, then throw validation_error listing every violation
template <typename T>
inline void finalize(T& value) {
    normalize(value);
    auto violations = validate_instance(value);
    if (!violations.empty()) {
        std::string msg = violations[0];
        for (std::size_t i = 1; i < violations.size(); ++i) msg += "; " + violations[i];
        throw validation_error(msg);
    }
}

}  // namespace rwlab
