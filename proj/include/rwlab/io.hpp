#pragma once

#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rwlab/errors.hpp"
#include "rwlab/instances.hpp"

namespace rwlab {

// Line-oriented text formats. Blank lines and lines starting with '#' are
// ignored. Every record is a keyword followed by whitespace-separated fields;
// key=value fields fix scalars. See README.md for the grammar per kind.

namespace detail {

struct Line {
    int number = 0;
    std::vector<std::string> tokens;
};

inline std::vector<Line> tokenize(std::string_view text) {
    std::vector<Line> lines;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        ++number;
        pos = end + 1;
        Line line{number, {}};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
            std::size_t j = i;
            while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r') ++j;
            if (j > i) line.tokens.emplace_back(raw.substr(i, j - i));
            i = j;
        }
        if (line.tokens.empty() || line.tokens[0][0] == '#') {
            if (pos > text.size()) break;
            continue;
        }
        lines.push_back(std::move(line));
        if (pos > text.size()) break;
    }
    return lines;
}

inline int parse_int(const Line& line, const std::string& tok) {
    int value = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw parse_error(line.number, "expected integer, got '" + tok + "'");
    return value;
}

/// field of the form key=value; position is the token index
inline int parse_kv(const Line& line, std::size_t pos, std::string_view key) {
    if (pos >= line.tokens.size())
        throw parse_error(line.number, "missing field " + std::string(key) + "=...");
    const std::string& tok = line.tokens[pos];
    auto eq = tok.find('=');
    if (eq == std::string::npos || std::string_view(tok).substr(0, eq) != key)
        throw parse_error(line.number, "expected " + std::string(key) + "=..., got '" + tok + "'");
    return parse_int(line, tok.substr(eq + 1));
}

inline void need_tokens(const Line& line, std::size_t count) {
    if (line.tokens.size() != count)
        throw parse_error(line.number, "expected " + std::to_string(count) + " tokens, got " +
                                           std::to_string(line.tokens.size()));
}

inline std::vector<int> tail_ints(const Line& line, std::size_t from) {
    std::vector<int> out;
    for (std::size_t i = from; i < line.tokens.size(); ++i)
        out.push_back(parse_int(line, line.tokens[i]));
    return out;
}

inline BitVec parse_bitstring(const Line& line, const std::string& tok) {
    for (char c : tok)
        if (c != '0' && c != '1')
            throw parse_error(line.number, "expected bitstring, got '" + tok + "'");
    return BitVec::from_string(tok);
}

/// digits 0..9 packed with no separators ("0102" -> {0,1,0,2}); used by the
/// word-break format where symbols are single digits
inline std::vector<int> parse_digits(const Line& line, const std::string& tok) {
    std::vector<int> out;
    for (char c : tok) {
        if (c < '0' || c > '9')
            throw parse_error(line.number, "expected digit string, got '" + tok + "'");
        out.push_back(c - '0');
    }
    return out;
}

inline std::string digits_to_string(const std::vector<int>& syms) {
    std::string out;
    for (int s : syms) out.push_back(char('0' + s));
    return out;
}

class Cursor {
   public:
    explicit Cursor(std::vector<Line> lines) : lines_(std::move(lines)) {}

    bool done() const { return index_ >= lines_.size(); }
    const Line& peek() const {
        if (done()) throw parse_error(last_number() + 1, "unexpected end of input");
        return lines_[index_];
    }
    Line take() {
        const Line& l = peek();
        ++index_;
        return l;
    }
    /// consume the next line iff its keyword matches
    std::optional<Line> take_if(std::string_view keyword) {
        if (done() || lines_[index_].tokens[0] != keyword) return std::nullopt;
        return take();
    }
    Line expect(std::string_view keyword) {
        const Line& l = peek();
        if (l.tokens[0] != keyword)
            throw parse_error(l.number, "expected '" + std::string(keyword) + "' record, got '" +
                                            l.tokens[0] + "'");
        return take();
    }
    void expect_end() const {
        if (!done())
            throw parse_error(peek().number, "unexpected trailing record '" + peek().tokens[0] + "'");
    }
    int last_number() const { return lines_.empty() ? 0 : lines_.back().number; }

   private:
    std::vector<Line> lines_;
    std::size_t index_ = 0;
};

inline ColoredGraph parse_graph_block(Cursor& cur) {
    Line head = cur.expect("graph");
    if (head.tokens.size() != 5)
        throw parse_error(head.number, "graph needs: graph <directed|undirected> <node|edge> n=... C=...");
    ColoredGraph g;
    if (head.tokens[1] == "directed") g.directed = true;
    else if (head.tokens[1] == "undirected") g.directed = false;
    else throw parse_error(head.number, "expected directed|undirected, got '" + head.tokens[1] + "'");
    if (head.tokens[2] == "node") g.mode = ColoringMode::node;
    else if (head.tokens[2] == "edge") g.mode = ColoringMode::edge;
    else throw parse_error(head.number, "expected node|edge, got '" + head.tokens[2] + "'");
    g.n = parse_kv(head, 3, "n");
    g.num_colors = parse_kv(head, 4, "C");
    while (auto line = cur.take_if("edge")) {
        if (g.mode == ColoringMode::edge) {
            need_tokens(*line, 4);
            g.edges.emplace_back(parse_int(*line, line->tokens[1]), parse_int(*line, line->tokens[2]));
            g.colors.push_back(parse_int(*line, line->tokens[3]));
        } else {
            need_tokens(*line, 3);
            g.edges.emplace_back(parse_int(*line, line->tokens[1]), parse_int(*line, line->tokens[2]));
        }
    }
    if (g.mode == ColoringMode::node) {
        g.colors.assign(g.n > 0 ? g.n : 0, 0);
        int seen = 0;
        while (auto line = cur.take_if("nodecolor")) {
            need_tokens(*line, 3);
            int v = parse_int(*line, line->tokens[1]);
            if (v < 0 || v >= g.n) throw parse_error(line->number, "nodecolor vertex out of range");
            g.colors[v] = parse_int(*line, line->tokens[2]);
            ++seen;
        }
        if (seen != g.n)
            throw parse_error(cur.done() ? cur.last_number() : cur.peek().number,
                              "expected " + std::to_string(g.n) + " nodecolor records, got " +
                                  std::to_string(seen));
    }
    return g;
}

inline std::pair<int, int> parse_st(Cursor& cur) {
    Line line = cur.expect("st");
    need_tokens(line, 3);
    return {parse_int(line, line.tokens[1]), parse_int(line, line.tokens[2])};
}

inline void serialize_graph_block(std::ostringstream& out, const ColoredGraph& g) {
    out << "graph " << (g.directed ? "directed" : "undirected") << ' ' << to_string(g.mode)
        << " n=" << g.n << " C=" << g.num_colors << '\n';
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        out << "edge " << g.edges[i].first << ' ' << g.edges[i].second;
        if (g.mode == ColoringMode::edge) out << ' ' << g.colors[i];
        out << '\n';
    }
    if (g.mode == ColoringMode::node)
        for (int v = 0; v < g.n; ++v) out << "nodecolor " << v << ' ' << g.colors[v] << '\n';
}

inline void serialize_ints(std::ostringstream& out, std::string_view keyword,
                           const std::vector<int>& values) {
    out << keyword;
    for (int v : values) out << ' ' << v;
    out << '\n';
}

}  // namespace detail

inline Instance parse_instance(std::string_view text);

namespace detail {

inline WalkInstance parse_walk(Cursor& cur) {
    WalkInstance inst;
    inst.graph = parse_graph_block(cur);
    std::tie(inst.s, inst.t) = parse_st(cur);
    Line seq = cur.expect("seq");
    inst.seq = tail_ints(seq, 1);
    cur.expect_end();
    return inst;
}

inline AnyWalkInstance parse_anywalk(Cursor& cur) {
    AnyWalkInstance inst;
    inst.graph = parse_graph_block(cur);
    Line seq = cur.expect("seq");
    inst.seq = tail_ints(seq, 1);
    cur.expect_end();
    return inst;
}

inline NfaInstance parse_nfa(Cursor& cur) {
    Line head = cur.expect("nfa");
    if (head.tokens.size() != 4)
        throw parse_error(head.number, "nfa needs: nfa n=... sigma=... q0=...");
    NfaInstance inst;
    inst.nfa.n_states = parse_kv(head, 1, "n");
    inst.nfa.alphabet_size = parse_kv(head, 2, "sigma");
    inst.nfa.initial = parse_kv(head, 3, "q0");
    Line acc = cur.expect("accept");
    inst.nfa.accepting = tail_ints(acc, 1);
    while (auto line = cur.take_if("trans")) {
        need_tokens(*line, 4);
        inst.nfa.transitions.push_back({parse_int(*line, line->tokens[1]),
                                        parse_int(*line, line->tokens[2]),
                                        parse_int(*line, line->tokens[3])});
    }
    Line input = cur.expect("input");
    inst.input = tail_ints(input, 1);
    cur.expect_end();
    return inst;
}

inline CflInstance parse_cfl(Cursor& cur) {
    CflInstance inst;
    inst.graph = parse_graph_block(cur);
    std::tie(inst.s, inst.t) = parse_st(cur);
    Line head = cur.expect("grammar");
    if (head.tokens.size() != 4)
        throw parse_error(head.number, "grammar needs: grammar nonterminals=... terminals=... start=...");
    inst.grammar.num_nonterminals = parse_kv(head, 1, "nonterminals");
    inst.grammar.num_terminals = parse_kv(head, 2, "terminals");
    inst.grammar.start = parse_kv(head, 3, "start");
    while (auto line = cur.take_if("unary")) {
        need_tokens(*line, 3);
        inst.grammar.unary.emplace_back(parse_int(*line, line->tokens[1]),
                                        parse_int(*line, line->tokens[2]));
    }
    while (auto line = cur.take_if("binary")) {
        need_tokens(*line, 4);
        inst.grammar.binary.push_back({parse_int(*line, line->tokens[1]),
                                       parse_int(*line, line->tokens[2]),
                                       parse_int(*line, line->tokens[3])});
    }
    cur.expect_end();
    return inst;
}

inline WordBreakInstance parse_wordbreak(Cursor& cur) {
    WordBreakInstance inst;
    Line text = cur.expect("text");
    if (text.tokens.size() > 2) throw parse_error(text.number, "text takes one digit-string");
    if (text.tokens.size() == 2) inst.text = parse_digits(text, text.tokens[1]);
    while (auto line = cur.take_if("word")) {
        need_tokens(*line, 2);
        inst.dictionary.push_back(parse_digits(*line, line->tokens[1]));
    }
    cur.expect_end();
    return inst;
}

inline OmvInstance parse_omv(Cursor& cur) {
    Line head = cur.expect("omv");
    if (head.tokens.size() != 2) throw parse_error(head.number, "omv needs: omv n=...");
    OmvInstance inst;
    inst.n = parse_kv(head, 1, "n");
    if (inst.n < 1) throw parse_error(head.number, "omv n must be >= 1");
    inst.matrix = BitMatrix((std::size_t)inst.n, (std::size_t)inst.n);
    for (int r = 0; r < inst.n; ++r) {
        Line line = cur.expect("row");
        need_tokens(line, 2);
        BitVec row = parse_bitstring(line, line.tokens[1]);
        if ((int)row.size() != inst.n) throw parse_error(line.number, "row width mismatch");
        row.for_each_set([&](std::size_t c) { inst.matrix.set((std::size_t)r, c); });
    }
    while (auto line = cur.take_if("query")) {
        need_tokens(*line, 2);
        BitVec q = parse_bitstring(*line, line->tokens[1]);
        if ((int)q.size() != inst.n) throw parse_error(line->number, "query width mismatch");
        inst.rounds.push_back(std::move(q));
    }
    cur.expect_end();
    return inst;
}

inline OvInstance parse_ov(Cursor& cur) {
    Line head = cur.expect("ov");
    if (head.tokens.size() != 2) throw parse_error(head.number, "ov needs: ov d=...");
    OvInstance inst;
    inst.dim = parse_kv(head, 1, "d");
    auto read_vec = [&](const Line& line) {
        const std::string& tok = line.tokens[1];
        std::vector<std::uint8_t> v;
        for (char c : tok) {
            if (c != '0' && c != '1') throw parse_error(line.number, "expected bitstring");
            v.push_back(c == '1');
        }
        return v;
    };
    while (auto line = cur.take_if("a")) {
        need_tokens(*line, 2);
        inst.a_vectors.push_back(read_vec(*line));
    }
    while (auto line = cur.take_if("b")) {
        need_tokens(*line, 2);
        inst.b_vectors.push_back(read_vec(*line));
    }
    cur.expect_end();
    return inst;
}

inline CliqueInstance parse_clique(Cursor& cur) {
    Line head = cur.expect("clique");
    if (head.tokens.size() != 3) throw parse_error(head.number, "clique needs: clique n=... k=...");
    CliqueInstance inst;
    inst.n = parse_kv(head, 1, "n");
    inst.k = parse_kv(head, 2, "k");
    while (auto line = cur.take_if("edge")) {
        need_tokens(*line, 3);
        inst.edges.emplace_back(parse_int(*line, line->tokens[1]), parse_int(*line, line->tokens[2]));
    }
    cur.expect_end();
    return inst;
}

}  // namespace detail

inline Instance parse_instance(std::string_view text) {
    detail::Cursor cur(detail::tokenize(text));
    detail::Line head = cur.peek();
    Instance inst;
    if (head.tokens[0] == "kind") {
        detail::need_tokens(head, 2);
        auto kind = kind_from_name(head.tokens[1]);
        if (!kind) throw parse_error(head.number, "unknown kind '" + head.tokens[1] + "'");
        cur.take();
        switch (*kind) {
            case InstanceKind::walk: inst = detail::parse_walk(cur); break;
            case InstanceKind::anywalk: inst = detail::parse_anywalk(cur); break;
            case InstanceKind::nfa: inst = detail::parse_nfa(cur); break;
            case InstanceKind::cfl: inst = detail::parse_cfl(cur); break;
            case InstanceKind::wordbreak: inst = detail::parse_wordbreak(cur); break;
            case InstanceKind::omv: inst = detail::parse_omv(cur); break;
            case InstanceKind::ov: inst = detail::parse_ov(cur); break;
            case InstanceKind::clique: inst = detail::parse_clique(cur); break;
        }
    } else {
        throw parse_error(head.number, "expected 'kind <name>' header, got '" + head.tokens[0] + "'");
    }
    std::visit([](auto& v) { finalize(v); }, inst);
    return inst;
}

inline Instance parse_instance(std::string_view text, InstanceKind expected) {
    Instance inst = parse_instance(text);
    if (kind_of(inst) != expected)
        throw parse_error(1, std::string("expected kind ") + to_string(expected) + ", got " +
                                 to_string(kind_of(inst)));
    return inst;
}

inline std::string serialize_instance(const WalkInstance& inst) {
    std::ostringstream out;
    out << "kind walk\n";
    detail::serialize_graph_block(out, inst.graph);
    out << "st " << inst.s << ' ' << inst.t << '\n';
    detail::serialize_ints(out, "seq", inst.seq);
    return out.str();
}

inline std::string serialize_instance(const AnyWalkInstance& inst) {
    std::ostringstream out;
    out << "kind anywalk\n";
    detail::serialize_graph_block(out, inst.graph);
    detail::serialize_ints(out, "seq", inst.seq);
    return out.str();
}

inline std::string serialize_instance(const NfaInstance& inst) {
    std::ostringstream out;
    out << "kind nfa\n";
    out << "nfa n=" << inst.nfa.n_states << " sigma=" << inst.nfa.alphabet_size
        << " q0=" << inst.nfa.initial << '\n';
    detail::serialize_ints(out, "accept", inst.nfa.accepting);
    for (const auto& t : inst.nfa.transitions)
        out << "trans " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    detail::serialize_ints(out, "input", inst.input);
    return out.str();
}

inline std::string serialize_instance(const CflInstance& inst) {
    std::ostringstream out;
    out << "kind cfl\n";
    detail::serialize_graph_block(out, inst.graph);
    out << "st " << inst.s << ' ' << inst.t << '\n';
    out << "grammar nonterminals=" << inst.grammar.num_nonterminals
        << " terminals=" << inst.grammar.num_terminals << " start=" << inst.grammar.start << '\n';
    for (const auto& [x, a] : inst.grammar.unary) out << "unary " << x << ' ' << a << '\n';
    for (const auto& b : inst.grammar.binary)
        out << "binary " << b[0] << ' ' << b[1] << ' ' << b[2] << '\n';
    return out.str();
}

inline std::string serialize_instance(const WordBreakInstance& inst) {
    std::ostringstream out;
    out << "kind wordbreak\n";
    out << "text";
    if (!inst.text.empty()) out << ' ' << detail::digits_to_string(inst.text);
    out << '\n';
    for (const auto& w : inst.dictionary) out << "word " << detail::digits_to_string(w) << '\n';
    return out.str();
}

inline std::string serialize_instance(const OmvInstance& inst) {
    std::ostringstream out;
    out << "kind omv\n";
    out << "omv n=" << inst.n << '\n';
    for (int r = 0; r < inst.n; ++r) out << "row " << inst.matrix.row((std::size_t)r).to_string() << '\n';
    for (const auto& q : inst.rounds) out << "query " << q.to_string() << '\n';
    return out.str();
}

inline std::string serialize_instance(const OvInstance& inst) {
    std::ostringstream out;
    out << "kind ov\n";
    out << "ov d=" << inst.dim << '\n';
    auto emit = [&](const char* key, const std::vector<std::vector<std::uint8_t>>& vs) {
        for (const auto& v : vs) {
            out << key << ' ';
            for (auto b : v) out << (b ? '1' : '0');
            out << '\n';
        }
    };
    emit("a", inst.a_vectors);
    emit("b", inst.b_vectors);
    return out.str();
}

inline std::string serialize_instance(const CliqueInstance& inst) {
    std::ostringstream out;
    out << "kind clique\n";
    out << "clique n=" << inst.n << " k=" << inst.k << '\n';
    for (const auto& [u, v] : inst.edges) out << "edge " << u << ' ' << v << '\n';
    return out.str();
}

inline std::string serialize_instance(const Instance& inst) {
    return std::visit([](const auto& v) { return serialize_instance(v); }, inst);
}

}  // namespace rwlab
