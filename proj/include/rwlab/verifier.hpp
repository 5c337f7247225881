#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "rwlab/bits.hpp"
#include "rwlab/errors.hpp"
#include "rwlab/instances.hpp"
#include "rwlab/io.hpp"
#include "rwlab/solvers.hpp"

namespace rwlab {

/// Claimed frontier trajectory x0..xl plus the claimed answer. An honest
/// certificate is forced: x0 is pinned to the s-indicator and each step is
/// checked as an exact matrix identity, so for a fixed instance exactly one
/// certificate verifies and its claim is the true answer. Rejection of any
/// tampered certificate is unconditional.
struct Certificate {
    std::vector<BitVec> frontiers;
    bool claim = false;
    bool operator==(const Certificate&) const = default;
};

/// The two per-color adjacency matrices of a directed edge-colored two-color
/// instance; the verifier's only view of the graph.
namespace detail {

inline void require_verifier_form(const WalkInstance& inst) {
    const ColoredGraph& g = inst.graph;
    if (!g.directed || g.mode != ColoringMode::edge || g.num_colors != 2)
        throw precondition_error("verifier needs a directed edge-colored instance with C=2");
}

}  // namespace detail

struct ColorAdjacency {
    BitMatrix a1, a2;

    static ColorAdjacency build(const WalkInstance& inst) {
        detail::require_verifier_form(inst);
        const ColoredGraph& g = inst.graph;
        const std::size_t n = (std::size_t)g.n;
        ColorAdjacency adj{BitMatrix(n, n), BitMatrix(n, n)};
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
            BitMatrix& m = g.colors[i] == 1 ? adj.a1 : adj.a2;
            m.set((std::size_t)g.edges[i].first, (std::size_t)g.edges[i].second);
        }
        return adj;
    }
};

inline Certificate build_certificate(const WalkInstance& inst) {
    detail::require_verifier_form(inst);
    Certificate cert;
    cert.frontiers = walk_frontiers(inst);
    cert.claim = cert.frontiers.back().test((std::size_t)inst.t);
    return cert;
}

/// Step check x_i = A^T applied to x_{i-1}... phrased column-wise: gather the
/// steps using color c into blocks of at most n columns, assemble X (the x_i)
/// and X' (the x_{i-1}), and test A_c^T X' == X with one matrix product per
/// block. Batching changes the arithmetic shape, not the accepted language.
inline bool verify_certificate(const WalkInstance& inst, const Certificate& cert) {
    const std::size_t n = (std::size_t)inst.graph.n;
    const std::size_t l = inst.seq.size();
    ColorAdjacency adj = ColorAdjacency::build(inst);
    if (cert.frontiers.size() != l + 1) throw precondition_error("certificate length mismatch");
    for (const BitVec& x : cert.frontiers)
        if (x.size() != n) throw precondition_error("certificate frontier dimension mismatch");

    if (cert.frontiers[0] != BitVec::indicator(n, (std::size_t)inst.s)) return false;

    for (int color = 1; color <= 2; ++color) {
        std::vector<std::size_t> steps;  // indices i with seq[i-1] == color
        for (std::size_t i = 1; i <= l; ++i)
            if (inst.seq[i - 1] == color) steps.push_back(i);
        if (steps.empty()) continue;
        const BitMatrix at = (color == 1 ? adj.a1 : adj.a2).transposed();
        for (std::size_t base = 0; base < steps.size(); base += n) {
            const std::size_t width = std::min(n, steps.size() - base);
            BitMatrix x(n, width), xp(n, width);
            for (std::size_t j = 0; j < width; ++j) {
                const std::size_t i = steps[base + j];
                cert.frontiers[i].for_each_set([&](std::size_t v) { x.set(v, j); });
                cert.frontiers[i - 1].for_each_set([&](std::size_t v) { xp.set(v, j); });
            }
            if (!(BitMatrix::multiply(at, xp) == x)) return false;
        }
    }

    return cert.claim == cert.frontiers[l].test((std::size_t)inst.t);
}

/// Reference implementation of the same predicate, one A^T x product per
/// step; the batched path is pinned against this.
inline bool verify_certificate_stepwise(const WalkInstance& inst, const Certificate& cert) {
    const std::size_t n = (std::size_t)inst.graph.n;
    const std::size_t l = inst.seq.size();
    ColorAdjacency adj = ColorAdjacency::build(inst);
    if (cert.frontiers.size() != l + 1) throw precondition_error("certificate length mismatch");
    for (const BitVec& x : cert.frontiers)
        if (x.size() != n) throw precondition_error("certificate frontier dimension mismatch");

    if (cert.frontiers[0] != BitVec::indicator(n, (std::size_t)inst.s)) return false;

    for (std::size_t i = 1; i <= l; ++i) {
        // A^T x gathered by rows: row u of A is column u of A^T.
        const BitMatrix& a = inst.seq[i - 1] == 1 ? adj.a1 : adj.a2;
        BitVec expect(n);
        cert.frontiers[i - 1].for_each_set([&](std::size_t v) { a.or_row_into(v, expect); });
        if (!(expect == cert.frontiers[i])) return false;
    }

    return cert.claim == cert.frontiers[l].test((std::size_t)inst.t);
}

inline std::string serialize_certificate(const Certificate& cert) {
    std::ostringstream out;
    const std::size_t n = cert.frontiers.empty() ? 0 : cert.frontiers[0].size();
    out << "certificate n=" << n << " l=" << (cert.frontiers.size() - 1)
        << " claim=" << (cert.claim ? 1 : 0) << '\n';
    for (const BitVec& x : cert.frontiers) out << x.to_string() << '\n';
    return out.str();
}

inline Certificate parse_certificate(std::string_view text) {
    detail::Cursor cur(detail::tokenize(text));
    detail::Line head = cur.expect("certificate");
    if (head.tokens.size() != 4)
        throw parse_error(head.number, "certificate needs: certificate n=... l=... claim=...");
    const int n = detail::parse_kv(head, 1, "n");
    const int l = detail::parse_kv(head, 2, "l");
    const int claim = detail::parse_kv(head, 3, "claim");
    if (n < 0 || l < 0 || (claim != 0 && claim != 1))
        throw parse_error(head.number, "bad certificate header");
    Certificate cert;
    cert.claim = claim == 1;
    for (int i = 0; i <= l; ++i) {
        detail::Line line = cur.take();
        detail::need_tokens(line, 1);
        BitVec x = detail::parse_bitstring(line, line.tokens[0]);
        if ((int)x.size() != n) throw parse_error(line.number, "frontier width mismatch");
        cert.frontiers.push_back(std::move(x));
    }
    cur.expect_end();
    return cert;
}

}  // namespace rwlab
