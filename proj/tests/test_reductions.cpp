#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "rwlab/generate.hpp"
#include "rwlab/harness.hpp"
#include "rwlab/reductions.hpp"
#include "rwlab/rng.hpp"
#include "rwlab/solvers.hpp"
#include "rwlab/verifier.hpp"

#include "fixtures.hpp"

using namespace rwlab;

namespace {

WalkInstance random_walk(SplitMix64& rng, WalkVariant variant, int C, std::int64_t lmin = 0) {
    const int n = 2 + rng.below_int(5);
    const auto m = (std::int64_t)rng.below((std::uint64_t)max_simple_edges(n, variant.directed) + 1);
    const auto l = lmin + (std::int64_t)rng.below((std::uint64_t)(6 - lmin + 1));
    return gen_walk_sized(n, m, l, C, variant, rng);
}

void expect_preserves_answer(const ReductionReport& rep, bool input_answer) {
    INFO("reduction " << rep.name);
    CHECK(solve_instance_ref(rep.output) == input_answer);
    CHECK(report_ok(rep));
    CHECK(reparsed_params(rep.output) == rep.params_out);
}

}  // namespace

TEST_CASE("bound kinds compare as promised") {
    CHECK(bound_ok({5, BoundKind::exact, ""}, 5));
    CHECK_FALSE(bound_ok({5, BoundKind::exact, ""}, 4));
    CHECK(bound_ok({5, BoundKind::upper, ""}, 4));
    CHECK_FALSE(bound_ok({5, BoundKind::upper, ""}, 6));
    CHECK(bound_ok({5, BoundKind::reported, ""}, 999));
}

TEST_CASE("node colors move onto incoming edges") {
    const WalkInstance j = fixtures::make_j0();
    const ReductionReport rep = reduce_dirnode2_to_diredge2(j);
    const WalkInstance& out = std::get<WalkInstance>(rep.output);
    REQUIRE(out.graph.mode == ColoringMode::edge);
    REQUIRE(out.graph.edges == j.graph.edges);
    // edge (u,v) inherits the color of its head v, not its tail
    CHECK(out.graph.colors == std::vector<int>{2, 1});
    CHECK(out.seq == j.seq);
    CHECK(rep.params_out == rep.params_in);
    expect_preserves_answer(rep, solve_walk_dp(j));

    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        SplitMix64 rng(seed + 1000);
        const WalkInstance w = random_walk(rng, kDirNode, 2);
        expect_preserves_answer(reduce_dirnode2_to_diredge2(w), solve_walk_dp(w));
    }
}

TEST_CASE("edge-colored walks become automaton acceptance verbatim") {
    const WalkInstance i0 = fixtures::make_i0();
    const ReductionReport rep = reduce_diredge_to_nfa(i0);
    const NfaInstance& out = std::get<NfaInstance>(rep.output);
    CHECK(out.nfa.n_states == 3);
    CHECK(out.nfa.initial == 0);
    CHECK(out.nfa.accepting == std::vector<int>{2});
    CHECK(out.input == i0.seq);
    CHECK(rep.params_out == rep.params_in);
    expect_preserves_answer(rep, true);
}

TEST_CASE("automaton acceptance folds back into node-colored walks") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        SplitMix64 rng(seed + 41);
        const NfaInstance inst = gen_random_nfa(rng);
        const ReductionReport rep = reduce_nfa_to_dirnode(inst);
        const Params in = params_of(inst);
        const auto sigma = (std::int64_t)inst.nfa.alphabet_size;
        CHECK(rep.params_out.n == (2 * in.n + 1) * sigma);
        CHECK(rep.params_out.m ==
              2 * (in.m + (std::int64_t)inst.nfa.accepting.size()) * sigma);
        CHECK(rep.params_out.l == in.l + 1);
        expect_preserves_answer(rep, nfa_accepts(inst));
    }
}

TEST_CASE("wide palettes compress to two colors through bit spelling") {
    // single edge, head color 3 = binary 010 over three bit slots
    WalkInstance w;
    w.graph.directed = true;
    w.graph.mode = ColoringMode::node;
    w.graph.n = 2;
    w.graph.num_colors = 5;
    w.graph.edges = {{0, 1}};
    w.graph.colors = {1, 3};
    w.s = 0;
    w.t = 1;
    w.seq = {3};
    finalize(w);
    const ReductionReport rep = reduce_dirnodeN_to_dirnode2(w);
    const WalkInstance& out = std::get<WalkInstance>(rep.output);
    CHECK(out.seq == std::vector<int>{1, 2, 1});
    CHECK(rep.params_out == Params{6, 5, 3});
    expect_preserves_answer(rep, true);

    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        SplitMix64 rng(seed + 5003);
        const WalkInstance r = random_walk(rng, kDirNode, 2 + rng.below_int(7));
        const Params in = params_of(r);
        const std::int64_t bits = std::bit_width((unsigned)(r.graph.num_colors - 1));
        const ReductionReport rr = reduce_dirnodeN_to_dirnode2(r);
        CHECK(rr.params_out == Params{in.n * bits, in.m + in.n * (bits - 1), in.l * bits});
        expect_preserves_answer(rr, solve_walk_dp(r));
    }
}

TEST_CASE("a two-color palette passes through the bit spelling unchanged") {
    SplitMix64 rng(77);
    const WalkInstance w = random_walk(rng, kDirNode, 2);
    const ReductionReport rep = reduce_dirnodeN_to_dirnode2(w);
    CHECK(serialize_instance(rep.output) == serialize_instance(Instance(w)));
}

TEST_CASE("direction gadgets reach undirected graphs in both colorings") {
    SplitMix64 seeder(99);
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        SplitMix64 rng(seed + 600);
        const WalkInstance w = random_walk(rng, kDirNode, 2);
        const bool want = solve_walk_dp(w);
        const Params in = params_of(w);
        const ReductionReport e = reduce_dirnode2_to_undiredge2(w);
        CHECK(e.params_out == Params{6 * in.n, in.m + 5 * in.n, 6 * in.l});
        CHECK_FALSE(std::get<WalkInstance>(e.output).graph.directed);
        expect_preserves_answer(e, want);
        const ReductionReport v = reduce_dirnode2_to_undirnode2(w);
        CHECK(v.params_out == Params{6 * in.n, in.m + 5 * in.n, 6 * in.l});
        expect_preserves_answer(v, want);
    }
}

TEST_CASE("direction gadget parameter table example") {
    SplitMix64 rng(12345);
    const WalkInstance w = gen_walk_sized(5, 8, 3, 2, kDirNode, rng);
    REQUIRE(params_of(w) == Params{5, 8, 3});
    const ReductionReport rep = reduce_dirnode2_to_undiredge2(w);
    CHECK(rep.params_out == Params{30, 33, 18});
}

TEST_CASE("vertex gadgets admit exactly the intended traversals") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        SplitMix64 rng(seed * 3 + 1);
        const WalkInstance w = random_walk(rng, kDirNode, 2);
        for (const ColoringMode mode : {ColoringMode::edge, ColoringMode::node}) {
            const ForcingCheck fc = check_gadget_forcing(w, mode);
            INFO("seed=" << seed << " mode=" << to_string(mode));
            CHECK(fc.cases == 2 * w.graph.n);
            CHECK(fc.violations.empty());
        }
    }
}

TEST_CASE("undirected graphs unfold into arc pairs") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        SplitMix64 rng(seed + 7100);
        const WalkVariant variant{false, rng.coin() ? ColoringMode::node : ColoringMode::edge};
        const WalkInstance w = random_walk(rng, variant, 3);
        const Params in = params_of(w);
        const ReductionReport rep = reduce_undirected_to_directed(w);
        CHECK(rep.params_out == Params{in.n, 2 * in.m, in.l});
        CHECK(std::get<WalkInstance>(rep.output).graph.directed);
        expect_preserves_answer(rep, solve_walk_dp(w));
    }
}

TEST_CASE("endpoint brackets pin down the free-endpoint relaxation") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        SplitMix64 rng(seed + 8200);
        const WalkInstance w = random_walk(rng, kUndirEdge, 2);
        const Params in = params_of(w);
        const ReductionReport rep = reduce_walk_to_anywalk(w);
        CHECK(rep.params_out == Params{in.n + 2, in.m + 2, in.l + 2});
        const auto& out = std::get<AnyWalkInstance>(rep.output);
        CHECK(out.graph.num_colors == 4);
        CHECK(solve_anywalk(out) == solve_walk_dp(w));
        CHECK(report_ok(rep));
    }
}

TEST_CASE("fresh-color stars restore endpoints to a free walk") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        SplitMix64 rng(seed + 9300);
        const int n = 2 + rng.below_int(4);
        const auto m = (std::int64_t)rng.below((std::uint64_t)max_simple_edges(n, false) + 1);
        const AnyWalkInstance a =
            gen_anywalk_sized(n, m, (std::int64_t)rng.below(6), 1 + rng.below_int(3), kUndirEdge, rng);
        const Params in = params_of(a);
        const ReductionReport rep = reduce_anywalk_to_walk(a);
        CHECK(rep.params_out == Params{in.n + 2, in.m + 2 * in.n, in.l + 2});
        CHECK(solve_walk_dp(std::get<WalkInstance>(rep.output)) == solve_anywalk(a));
        CHECK(report_ok(rep));
    }
}

TEST_CASE("padding reaches exact parameter targets without changing the answer") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        SplitMix64 rng(seed + 777);
        const WalkInstance w = random_walk(rng, kDirEdge, 2);
        const Params in = params_of(w);
        const std::int64_t delta = 2 * (std::int64_t)rng.below(4) + 1;
        const std::int64_t target_l = in.l + delta;
        const std::int64_t pads = (std::int64_t)rng.below(4);
        const std::int64_t target_n = in.n + 2 + pads;
        std::optional<std::int64_t> target_m;
        if (rng.coin()) target_m = in.m + 3 + (std::int64_t)rng.below((std::uint64_t)(pads * (pads - 1)) + 1);
        const ReductionReport rep = pad_instance(w, target_n, target_l, target_m);
        CHECK(rep.params_out.n == target_n);
        CHECK(rep.params_out.l == target_l);
        if (target_m) CHECK(rep.params_out.m == *target_m);
        expect_preserves_answer(rep, solve_walk_dp(w));
    }
}

TEST_CASE("padding with unchanged length works in both colorings") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SplitMix64 rng(seed + 778);
        const WalkVariant variant{true, rng.coin() ? ColoringMode::node : ColoringMode::edge};
        const WalkInstance w = random_walk(rng, variant, 2);
        const Params in = params_of(w);
        const ReductionReport rep = pad_instance(w, in.n + 3, in.l, std::nullopt);
        CHECK(rep.params_out == Params{in.n + 3, in.m, in.l});
        expect_preserves_answer(rep, solve_walk_dp(w));
    }
}

TEST_CASE("padding rejects shapes it cannot reach") {
    const WalkInstance i0 = fixtures::make_i0();
    REQUIRE_THROWS_WITH(pad_instance(i0, 10, params_of(i0).l + 2, std::nullopt),
                        Catch::Matchers::ContainsSubstring("odd"));
    REQUIRE_THROWS_AS(pad_instance(i0, 2, params_of(i0).l, std::nullopt), precondition_error);
    WalkInstance node = fixtures::make_j0();
    REQUIRE_THROWS_WITH(pad_instance(node, 10, params_of(node).l + 1, std::nullopt),
                        Catch::Matchers::ContainsSubstring("edge-colored"));
}

TEST_CASE("walks compile to bracket reachability") {
    const WalkInstance i0 = fixtures::make_i0();
    const ReductionReport rep = reduce_walk_to_cfl(i0);
    const CflInstance& out = std::get<CflInstance>(rep.output);
    CHECK(rep.params_out == Params{5, 4, 0});
    CHECK(out.s == 0);
    CHECK(out.t == 4);
    CHECK(solve_cfl_reachability(out));

    WalkInstance no = i0;
    no.seq = {2, 1};
    CHECK_FALSE(solve_cfl_reachability(std::get<CflInstance>(reduce_walk_to_cfl(no).output)));

    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        SplitMix64 rng(seed + 404);
        const WalkInstance w = random_walk(rng, kDirEdge, 2, 1);
        const Params in = params_of(w);
        const ReductionReport rr = reduce_walk_to_cfl(w);
        CHECK(rr.params_out == Params{in.n + in.l, in.m + in.l, 0});
        expect_preserves_answer(rr, solve_walk_dp(w));
    }

    WalkInstance empty = i0;
    empty.seq.clear();
    REQUIRE_THROWS_AS(reduce_walk_to_cfl(empty), precondition_error);
}

TEST_CASE("walks compile to text segmentation") {
    const WalkInstance i0 = fixtures::make_i0();
    const ReductionReport rep = reduce_walk_to_wordbreak(i0);
    const WordBreakInstance& out = std::get<WordBreakInstance>(rep.output);
    CHECK(out.text == std::vector<int>{0, 1, 0, 0, 0, 2});
    CHECK(out.dictionary == std::vector<std::vector<int>>{{0, 0, 2}, {0, 1, 0}});
    CHECK(rep.params_out == Params{6, 6, 0});
    CHECK(solve_word_break(out));

    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        SplitMix64 rng(seed + 606);
        const WalkInstance w = random_walk(rng, kDirEdge, 2, 1);
        const Params in = params_of(w);
        std::int64_t skew = 0;
        for (const auto& e : w.graph.edges) skew += e.first - e.second;
        const ReductionReport rr = reduce_walk_to_wordbreak(w);
        CHECK(rr.params_out.n == in.l * (in.n + 1) + w.s - w.t);
        CHECK(rr.params_out.m == in.m * (in.n + 1) + skew);
        expect_preserves_answer(rr, solve_walk_dp(w));
    }

    WalkInstance empty = i0;
    empty.seq.clear();
    REQUIRE_THROWS_AS(reduce_walk_to_wordbreak(empty), precondition_error);
}

TEST_CASE("walks drive matrix-vector rounds in both layouts") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        SplitMix64 rng(seed + 505);
        const WalkInstance w = random_walk(rng, kDirEdge, 2);
        const Params in = params_of(w);
        const std::int64_t N = std::max(in.n, in.l);
        const bool want = solve_walk_dp(w);
        const auto honest = walk_frontiers(w);

        const OmvDrive split = reduce_walk_to_omv(w, OmvMode::two_instance);
        CHECK(split.answer == want);
        CHECK(split.rounds_used_1 + split.rounds_used_2 == in.l);
        CHECK(split.report.params_out == Params{N, in.m, N});
        REQUIRE(split.second.has_value());
        REQUIRE(split.frontiers.size() == honest.size());
        for (std::size_t i = 0; i < honest.size(); ++i) {
            for (std::size_t v = 0; v < (std::size_t)w.graph.n; ++v)
                REQUIRE(split.frontiers[i].test(v) == honest[i].test(v));
            for (std::size_t v = (std::size_t)w.graph.n; v < (std::size_t)N; ++v)
                REQUIRE_FALSE(split.frontiers[i].test(v));
        }

        const OmvDrive block = reduce_walk_to_omv(w, OmvMode::block_diagonal);
        CHECK(block.answer == want);
        CHECK(block.rounds_used_1 == in.l);
        CHECK(block.report.params_out == Params{2 * N, in.m, 2 * N});
        CHECK((std::int64_t)std::get<OmvInstance>(block.report.output).rounds.size() == 2 * N);
    }
}

TEST_CASE("matrix-vector frontiers agree with the walk certificate") {
    SplitMix64 rng(321);
    const WalkInstance w = gen_walk_sized(5, 11, 4, 2, kDirEdge, rng);
    const Certificate cert = build_certificate(w);
    const OmvDrive drive = reduce_walk_to_omv(w, OmvMode::two_instance);
    REQUIRE(cert.frontiers.size() == drive.frontiers.size());
    for (std::size_t i = 0; i < cert.frontiers.size(); ++i)
        for (std::size_t v = 0; v < (std::size_t)w.graph.n; ++v)
            REQUIRE(cert.frontiers[i].test(v) == drive.frontiers[i].test(v));
    CHECK(cert.claim == drive.answer);
}

TEST_CASE("orthogonality searches become automaton acceptance") {
    OvInstance yes;
    yes.dim = 2;
    yes.a_vectors = {{1, 0}};
    yes.b_vectors = {{0, 1}};
    finalize(yes);
    const ReductionReport rep = reduce_ov_to_nfa(yes);
    CHECK(rep.params_out == Params{5, 11, 4});
    CHECK(nfa_accepts(std::get<NfaInstance>(rep.output)));

    OvInstance no;
    no.dim = 2;
    no.a_vectors = {{1, 1}};
    no.b_vectors = {{1, 0}};
    finalize(no);
    CHECK_FALSE(nfa_accepts(std::get<NfaInstance>(reduce_ov_to_nfa(no).output)));

    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        SplitMix64 rng(seed + 202);
        const OvInstance ov = gen_random_ov(rng);
        const Params in = params_of(ov);
        std::int64_t zeros = 0;
        for (const auto& a : ov.a_vectors)
            for (auto bit : a)
                if (!bit) ++zeros;
        const ReductionReport rr = reduce_ov_to_nfa(ov);
        CHECK(rr.params_out.n == 2 + in.n * (in.l + 1));
        CHECK(rr.params_out.m == in.n * (in.l + 2) + zeros + 6);
        CHECK(rr.params_out.l == 1 + in.m * (in.l + 1));
        expect_preserves_answer(rr, ov_bruteforce(ov));
    }
}

TEST_CASE("split cliques become automaton acceptance") {
    CliqueInstance tri;
    tri.n = 3;
    tri.edges = {{0, 1}, {0, 2}, {1, 2}};
    tri.k = 3;
    finalize(tri);
    const ReductionReport rep = reduce_clique_to_nfa(tri, 1, 1);
    CHECK(rep.params_out.l == 19);  // 1 + 3 text cliques * (2*1*2 + 2)
    CHECK(rep.l_bound.kind == BoundKind::exact);
    CHECK(nfa_accepts(std::get<NfaInstance>(rep.output)));
    CHECK(clique_bruteforce(tri));

    CliqueInstance path;
    path.n = 3;
    path.edges = {{0, 1}, {1, 2}};
    path.k = 3;
    finalize(path);
    CHECK_FALSE(nfa_accepts(std::get<NfaInstance>(reduce_clique_to_nfa(path, 1, 1).output)));
    CHECK_FALSE(clique_bruteforce(path));

    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        SplitMix64 rng(seed + 303);
        CliqueInstance g = gen_random_clique(rng);
        constexpr std::array<std::pair<int, int>, 3> splits{{{1, 1}, {1, 2}, {2, 1}}};
        auto [k, kp] = splits[rng.below(splits.size())];
        g.k = 2 * k + kp;
        const ReductionReport rr = reduce_clique_to_nfa(g, k, kp);
        INFO("seed=" << seed << " n=" << g.n << " k=" << k << " k'=" << kp);
        CHECK(solve_instance_ref(rr.output) == clique_bruteforce(g));
        CHECK(report_ok(rr));
    }

    CliqueInstance bad = tri;
    bad.k = 2;
    REQUIRE_THROWS_AS(reduce_clique_to_nfa(bad, 1, 1), precondition_error);
}

TEST_CASE("the equivalence cycle closes with linear blowup") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        SplitMix64 rng(seed + 111);
        const WalkInstance w = random_walk(rng, kDirNode, 2);
        const Params in = params_of(w);
        const ReductionReport rep = run_equivalence_cycle(w);
        const WalkInstance& out = std::get<WalkInstance>(rep.output);
        CHECK(out.graph.mode == ColoringMode::node);
        CHECK(out.graph.num_colors == 2);
        CHECK(rep.params_out == Params{4 * in.n + 2, 4 * (in.m + 1), in.l + 1});
        CHECK(report_ok(rep));
        CHECK(solve_walk_dp(out) == solve_walk_dp(w));
    }
}

TEST_CASE("every required construction is registered") {
    REQUIRE_NOTHROW(assert_registry_complete());
    CHECK(reduction_registry().size() == 16);
    for (const auto& name : kRequiredReductions) CHECK(find_reduction(name).audited);
    CHECK_FALSE(find_reduction("equivalence_cycle").audited);
    REQUIRE_THROWS_AS(find_reduction("red_no_such"), precondition_error);
}

TEST_CASE("crosscheck harness accepts honest runs and flags corrupted ones") {
    HarnessCaps caps;
    caps.max_n = 5;
    caps.max_l = 5;
    for (const char* name : {"red_walk_to_cfl", "red_dirnode2_to_undiredge2", "red_walk_to_omv"}) {
        const CrosscheckResult res = run_crosscheck(find_reduction(name), 25, caps, 2);
        INFO(name << ": " << (res.failures.empty() ? "" : res.failures[0]));
        CHECK(res.failed == 0);
        CHECK(res.passed == 25);
    }
    const CrosscheckResult bad =
        run_crosscheck(find_reduction("red_walk_to_cfl"), 10, caps, 2, true);
    CHECK(bad.failed == 10);
}

TEST_CASE("audit rows hold for every audited construction") {
    HarnessCaps caps;
    caps.max_n = 5;
    caps.max_l = 5;
    for (const auto& red : reduction_registry()) {
        if (!red.audited) continue;
        const auto rows = run_audit(red, 12, caps, 2);
        REQUIRE_FALSE(rows.empty());
        for (const auto& row : rows) {
            INFO(row.name << " seed=" << row.seed << " route=" << row.route);
            REQUIRE(row.ok);
        }
    }
    const std::string csv = audit_csv(run_audit(find_reduction("pad_instance"), 3, caps, 1));
    CHECK(csv.rfind("reduction,route,seed,", 0) == 0);
}

TEST_CASE("reports carry the preconditions of their constructions") {
    const WalkInstance i0 = fixtures::make_i0();  // directed, edge-colored
    REQUIRE_THROWS_AS(reduce_dirnode2_to_diredge2(i0), precondition_error);
    REQUIRE_THROWS_AS(reduce_dirnode2_to_undiredge2(i0), precondition_error);
    REQUIRE_THROWS_AS(reduce_walk_to_anywalk(i0), precondition_error);  // needs undirected
    WalkInstance undirected = i0;
    undirected.graph.directed = false;
    finalize(undirected);
    REQUIRE_THROWS_AS(reduce_diredge_to_nfa(undirected), precondition_error);
    REQUIRE_THROWS_AS(reduce_undirected_to_directed(i0), precondition_error);
}
