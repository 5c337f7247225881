#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "rwlab/cfl.hpp"
#include "rwlab/generate.hpp"
#include "rwlab/instances.hpp"
#include "rwlab/io.hpp"
#include "rwlab/oracle.hpp"
#include "rwlab/reductions.hpp"
#include "rwlab/rng.hpp"
#include "rwlab/solvers.hpp"

namespace rwlab {

/// Size caps for randomized campaign cases; small enough that the
/// enumeration oracles stay feasible on most draws.
struct HarnessCaps {
    int max_n = 6;
    std::int64_t max_l = 6;
};

/// One seeded test case: the input instance plus the knobs of the operations
/// that take extra arguments (padding targets, clique split).
struct RedCase {
    Instance input;
    std::int64_t target_n = 0;
    std::int64_t target_l = 0;
    std::optional<std::int64_t> target_m;
    int k = 0;
    int k_prime = 0;
};

/// One executed route of a case. structural_out re-measures the output after
/// a serialize/parse round trip, so the audit compares the report's promises
/// against an independently recovered object, not the in-memory one.
struct RunOutcome {
    ReductionReport report;
    std::string route;
    bool output_answer = false;
    Params structural_out;
};

struct RegisteredReduction {
    std::string name;
    bool audited = true;
    std::function<RedCase(std::uint64_t, const HarnessCaps&)> make_case;
    std::function<bool(const RedCase&)> solve_input;
    std::function<std::vector<RunOutcome>(const RedCase&)> run_all;
};

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (char ch : s) {
        h ^= (unsigned char)ch;
        h *= 1099511628211ULL;
    }
    return h;
}

/// reference solver per problem kind
inline bool solve_instance_ref(const Instance& inst) {
    return std::visit(
        [](const auto& v) -> bool {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, WalkInstance>) return solve_walk_dp(v);
            else if constexpr (std::is_same_v<T, AnyWalkInstance>) return solve_anywalk(v);
            else if constexpr (std::is_same_v<T, NfaInstance>) return nfa_accepts(v);
            else if constexpr (std::is_same_v<T, CflInstance>) return solve_cfl_reachability(v);
            else if constexpr (std::is_same_v<T, WordBreakInstance>) return solve_word_break(v);
            else if constexpr (std::is_same_v<T, OvInstance>) return ov_bruteforce(v);
            else if constexpr (std::is_same_v<T, CliqueInstance>) return clique_bruteforce(v);
            else
                throw precondition_error(
                    "matrix-vector instances have no standalone boolean answer");
        },
        inst);
}

/// enumeration-oracle answer where one exists and fits the budget
inline std::optional<bool> oracle_answer(const Instance& inst,
                                         std::int64_t budget = std::int64_t{1} << 22) {
    try {
        if (const auto* w = std::get_if<WalkInstance>(&inst)) return walk_enum_oracle(*w, budget);
        if (const auto* a = std::get_if<AnyWalkInstance>(&inst))
            return anywalk_enum_oracle(*a, budget);
        if (const auto* m = std::get_if<NfaInstance>(&inst)) return nfa_enum_oracle(*m, budget);
    } catch (const budget_error&) {
        return std::nullopt;
    }
    return std::nullopt;
}

inline Params reparsed_params(const Instance& inst) {
    return params_of(parse_instance(serialize_instance(inst)));
}

namespace detail {

inline RunOutcome basic_outcome(ReductionReport rep, std::string route = "") {
    RunOutcome o;
    o.route = std::move(route);
    o.structural_out = reparsed_params(rep.output);
    o.output_answer = solve_instance_ref(rep.output);
    o.report = std::move(rep);
    return o;
}

inline WalkInstance small_walk(SplitMix64& rng, const HarnessCaps& caps, WalkVariant variant,
                               int cmin, int cmax, std::int64_t lmin = 0) {
    const int n = 2 + rng.below_int(caps.max_n - 1);
    const std::int64_t m = (std::int64_t)rng.below((std::uint64_t)max_simple_edges(n, variant.directed) + 1);
    const std::int64_t l = lmin + (std::int64_t)rng.below((std::uint64_t)(caps.max_l - lmin + 1));
    const int C = cmin + rng.below_int(cmax - cmin + 1);
    return gen_walk_sized(n, m, l, C, variant, rng);
}

inline AnyWalkInstance small_anywalk(SplitMix64& rng, const HarnessCaps& caps, int cmin, int cmax) {
    const int n = 2 + rng.below_int(caps.max_n - 1);
    const std::int64_t m = (std::int64_t)rng.below((std::uint64_t)max_simple_edges(n, false) + 1);
    const std::int64_t l = (std::int64_t)rng.below((std::uint64_t)caps.max_l + 1);
    const int C = cmin + rng.below_int(cmax - cmin + 1);
    return gen_anywalk_sized(n, m, l, C, kUndirEdge, rng);
}

}  // namespace detail

/// The equivalence chain node-2 -> edge-2 -> automaton -> node-sigma ->
/// node-2; with a two-symbol alphabet the last stage is a renaming, so the
/// composite has closed-form parameters.
inline ReductionReport run_equivalence_cycle(const WalkInstance& start) {
    ReductionReport r1 = reduce_dirnode2_to_diredge2(start);
    ReductionReport r2 = reduce_diredge_to_nfa(std::get<WalkInstance>(r1.output));
    ReductionReport r3 = reduce_nfa_to_dirnode(std::get<NfaInstance>(r2.output));
    ReductionReport r4 = reduce_dirnodeN_to_dirnode2(std::get<WalkInstance>(r3.output));
    Params p = params_of(start);
    ReductionReport rep = std::move(r4);
    rep.name = "equivalence_cycle";
    rep.params_in = p;
    rep.n_bound = {4 * p.n + 2, BoundKind::exact, "n'=4n+2"};
    rep.m_bound = {4 * (p.m + 1), BoundKind::exact, "m'=4m+4"};
    rep.l_bound = {p.l + 1, BoundKind::exact, "l'=l+1"};
    return rep;
}

namespace detail {

inline std::vector<RegisteredReduction> build_registry() {
    std::vector<RegisteredReduction> reg;
    auto rng_for = [](std::string_view name, std::uint64_t seed) {
        return SplitMix64(seed ^ fnv1a(name));
    };
    auto walk_case = [rng_for](std::string name, WalkVariant variant, int cmin, int cmax,
                               std::int64_t lmin, auto reducer) {
        RegisteredReduction r;
        r.name = name;
        r.make_case = [=](std::uint64_t seed, const HarnessCaps& caps) {
            SplitMix64 rng = rng_for(name, seed);
            RedCase cs;
            cs.input = Instance(small_walk(rng, caps, variant, cmin, cmax, lmin));
            return cs;
        };
        r.solve_input = [](const RedCase& cs) {
            return solve_walk_dp(std::get<WalkInstance>(cs.input));
        };
        r.run_all = [reducer](const RedCase& cs) {
            return std::vector<RunOutcome>{
                basic_outcome(reducer(std::get<WalkInstance>(cs.input)))};
        };
        return r;
    };

    reg.push_back(walk_case("red_dirnode2_to_diredge2", kDirNode, 2, 2, 0,
                            [](const WalkInstance& w) { return reduce_dirnode2_to_diredge2(w); }));
    reg.push_back(walk_case("red_diredgeC_to_nfa", kDirEdge, 2, 4, 0,
                            [](const WalkInstance& w) { return reduce_diredge_to_nfa(w); }));

    {
        RegisteredReduction r;
        r.name = "red_nfa_to_dirnodeC";
        r.make_case = [rng_for](std::uint64_t seed, const HarnessCaps&) {
            SplitMix64 rng = rng_for("red_nfa_to_dirnodeC", seed);
            RedCase cs;
            cs.input = Instance(gen_random_nfa(rng));
            return cs;
        };
        r.solve_input = [](const RedCase& cs) { return nfa_accepts(std::get<NfaInstance>(cs.input)); };
        r.run_all = [](const RedCase& cs) {
            return std::vector<RunOutcome>{
                basic_outcome(reduce_nfa_to_dirnode(std::get<NfaInstance>(cs.input)))};
        };
        reg.push_back(std::move(r));
    }

    reg.push_back(walk_case("red_dirnodeN_to_dirnode2", kDirNode, 2, 8, 0,
                            [](const WalkInstance& w) { return reduce_dirnodeN_to_dirnode2(w); }));
    reg.push_back(walk_case("red_dirnode2_to_undiredge2", kDirNode, 2, 2, 0,
                            [](const WalkInstance& w) { return reduce_dirnode2_to_undiredge2(w); }));
    reg.push_back(walk_case("red_dirnode2_to_undirnode2", kDirNode, 2, 2, 0,
                            [](const WalkInstance& w) { return reduce_dirnode2_to_undirnode2(w); }));

    {
        RegisteredReduction r;
        r.name = "red_undirected_to_directed";
        r.make_case = [rng_for](std::uint64_t seed, const HarnessCaps& caps) {
            SplitMix64 rng = rng_for("red_undirected_to_directed", seed);
            const WalkVariant variant{false, rng.coin() ? ColoringMode::node : ColoringMode::edge};
            RedCase cs;
            cs.input = Instance(small_walk(rng, caps, variant, 2, 4));
            return cs;
        };
        r.solve_input = [](const RedCase& cs) {
            return solve_walk_dp(std::get<WalkInstance>(cs.input));
        };
        r.run_all = [](const RedCase& cs) {
            return std::vector<RunOutcome>{
                basic_outcome(reduce_undirected_to_directed(std::get<WalkInstance>(cs.input)))};
        };
        reg.push_back(std::move(r));
    }

    reg.push_back(walk_case("red_walk_to_anywalk", kUndirEdge, 2, 2, 0,
                            [](const WalkInstance& w) { return reduce_walk_to_anywalk(w); }));

    {
        RegisteredReduction r;
        r.name = "red_anywalk_to_walk";
        r.make_case = [rng_for](std::uint64_t seed, const HarnessCaps& caps) {
            SplitMix64 rng = rng_for("red_anywalk_to_walk", seed);
            RedCase cs;
            cs.input = Instance(small_anywalk(rng, caps, 1, 3));
            return cs;
        };
        r.solve_input = [](const RedCase& cs) {
            return solve_anywalk(std::get<AnyWalkInstance>(cs.input));
        };
        r.run_all = [](const RedCase& cs) {
            return std::vector<RunOutcome>{
                basic_outcome(reduce_anywalk_to_walk(std::get<AnyWalkInstance>(cs.input)))};
        };
        reg.push_back(std::move(r));
    }

    {
        RegisteredReduction r;
        r.name = "pad_instance";
        r.make_case = [rng_for](std::uint64_t seed, const HarnessCaps& caps) {
            SplitMix64 rng = rng_for("pad_instance", seed);
            const WalkVariant variant{true, rng.coin() ? ColoringMode::node : ColoringMode::edge};
            RedCase cs;
            WalkInstance w = small_walk(rng, caps, variant, 2, 3);
            const std::int64_t l = (std::int64_t)w.seq.size();
            std::int64_t delta = 0;
            if (variant.mode == ColoringMode::edge && rng.coin())
                delta = 2 * (std::int64_t)rng.below(4) + 1;
            cs.target_l = l + delta;
            const std::int64_t pads = (std::int64_t)rng.below(4);
            cs.target_n = w.graph.n + (delta > 0 ? 2 : 0) + pads;
            if (rng.coin()) {
                const std::int64_t base = (std::int64_t)w.graph.edges.size() + (delta > 0 ? 3 : 0);
                cs.target_m = base + (std::int64_t)rng.below((std::uint64_t)(pads * (pads - 1)) + 1);
            }
            cs.input = Instance(std::move(w));
            return cs;
        };
        r.solve_input = [](const RedCase& cs) {
            return solve_walk_dp(std::get<WalkInstance>(cs.input));
        };
        r.run_all = [](const RedCase& cs) {
            return std::vector<RunOutcome>{basic_outcome(
                pad_instance(std::get<WalkInstance>(cs.input), cs.target_n, cs.target_l,
                             cs.target_m))};
        };
        reg.push_back(std::move(r));
    }

    reg.push_back(walk_case("red_walk_to_cfl", kDirEdge, 2, 2, 1,
                            [](const WalkInstance& w) { return reduce_walk_to_cfl(w); }));
    reg.push_back(walk_case("red_walk_to_wordbreak", kDirEdge, 2, 2, 1,
                            [](const WalkInstance& w) { return reduce_walk_to_wordbreak(w); }));

    {
        RegisteredReduction r;
        r.name = "red_walk_to_omv";
        r.make_case = [rng_for](std::uint64_t seed, const HarnessCaps& caps) {
            SplitMix64 rng = rng_for("red_walk_to_omv", seed);
            RedCase cs;
            cs.input = Instance(small_walk(rng, caps, kDirEdge, 2, 2));
            return cs;
        };
        r.solve_input = [](const RedCase& cs) {
            return solve_walk_dp(std::get<WalkInstance>(cs.input));
        };
        r.run_all = [](const RedCase& cs) {
            const WalkInstance& w = std::get<WalkInstance>(cs.input);
            std::vector<RunOutcome> outs;
            for (OmvMode mode : {OmvMode::two_instance, OmvMode::block_diagonal}) {
                OmvDrive drive = reduce_walk_to_omv(w, mode);
                RunOutcome o;
                o.route = to_string(mode);
                o.output_answer = drive.answer;
                const Params p1 = reparsed_params(drive.report.output);
                if (mode == OmvMode::two_instance) {
                    const Params p2 = reparsed_params(Instance(*drive.second));
                    if (p1.n == p2.n && p1.l == p2.l)
                        o.structural_out = {p1.n, p1.m + p2.m, p1.l};
                    else
                        o.structural_out = {-1, -1, -1};  // engines disagree: poison the audit row
                } else {
                    o.structural_out = p1;
                }
                o.report = std::move(drive.report);
                outs.push_back(std::move(o));
            }
            return outs;
        };
        reg.push_back(std::move(r));
    }

    {
        RegisteredReduction r;
        r.name = "red_ov_to_nfa";
        r.make_case = [rng_for](std::uint64_t seed, const HarnessCaps&) {
            SplitMix64 rng = rng_for("red_ov_to_nfa", seed);
            RedCase cs;
            cs.input = Instance(gen_random_ov(rng));
            return cs;
        };
        r.solve_input = [](const RedCase& cs) { return ov_bruteforce(std::get<OvInstance>(cs.input)); };
        r.run_all = [](const RedCase& cs) {
            return std::vector<RunOutcome>{
                basic_outcome(reduce_ov_to_nfa(std::get<OvInstance>(cs.input)))};
        };
        reg.push_back(std::move(r));
    }

    {
        RegisteredReduction r;
        r.name = "red_clique_to_nfa";
        r.make_case = [rng_for](std::uint64_t seed, const HarnessCaps&) {
            SplitMix64 rng = rng_for("red_clique_to_nfa", seed);
            RedCase cs;
            CliqueInstance g = gen_random_clique(rng);
            constexpr std::array<std::pair<int, int>, 3> splits{{{1, 1}, {1, 2}, {2, 1}}};
            auto [k, kp] = splits[rng.below(splits.size())];
            cs.k = k;
            cs.k_prime = kp;
            g.k = 2 * k + kp;
            cs.input = Instance(std::move(g));
            return cs;
        };
        r.solve_input = [](const RedCase& cs) {
            return clique_bruteforce(std::get<CliqueInstance>(cs.input));
        };
        r.run_all = [](const RedCase& cs) {
            return std::vector<RunOutcome>{basic_outcome(
                reduce_clique_to_nfa(std::get<CliqueInstance>(cs.input), cs.k, cs.k_prime))};
        };
        reg.push_back(std::move(r));
    }

    {
        RegisteredReduction r;
        r.name = "equivalence_cycle";
        r.audited = false;
        r.make_case = [rng_for](std::uint64_t seed, const HarnessCaps& caps) {
            SplitMix64 rng = rng_for("equivalence_cycle", seed);
            RedCase cs;
            cs.input = Instance(small_walk(rng, caps, kDirNode, 2, 2));
            return cs;
        };
        r.solve_input = [](const RedCase& cs) {
            return solve_walk_dp(std::get<WalkInstance>(cs.input));
        };
        r.run_all = [](const RedCase& cs) {
            return std::vector<RunOutcome>{
                basic_outcome(run_equivalence_cycle(std::get<WalkInstance>(cs.input)))};
        };
        reg.push_back(std::move(r));
    }

    return reg;
}

}  // namespace detail

inline const std::vector<RegisteredReduction>& reduction_registry() {
    static const std::vector<RegisteredReduction> reg = detail::build_registry();
    return reg;
}

inline constexpr std::array<std::string_view, 15> kRequiredReductions{
    "red_dirnode2_to_diredge2", "red_diredgeC_to_nfa",        "red_nfa_to_dirnodeC",
    "red_dirnodeN_to_dirnode2", "red_dirnode2_to_undiredge2", "red_dirnode2_to_undirnode2",
    "red_undirected_to_directed", "red_walk_to_anywalk",      "red_anywalk_to_walk",
    "pad_instance",             "red_walk_to_cfl",            "red_walk_to_wordbreak",
    "red_walk_to_omv",          "red_ov_to_nfa",              "red_clique_to_nfa"};

/// startup assertion: every required construction is registered
inline void assert_registry_complete() {
    for (std::string_view need : kRequiredReductions) {
        bool found = false;
        for (const auto& r : reduction_registry())
            if (r.name == need) {
                found = true;
                break;
            }
        if (!found)
            throw std::logic_error("reduction registry is missing '" + std::string(need) + "'");
    }
}

inline const RegisteredReduction& find_reduction(std::string_view name) {
    for (const auto& r : reduction_registry())
        if (r.name == name) return r;
    throw precondition_error("unknown reduction '" + std::string(name) + "'");
}

namespace detail {

/// runs fn(seed) for seeds 0..count-1 over the given worker count
template <typename F>
inline void parallel_seeds(int count, int threads, F&& fn) {
    if (count <= 0) return;
    const int workers = std::max(1, std::min(threads, count));
    if (workers == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve((std::size_t)workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&]() {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= count) break;
                fn(i);
            }
        });
    for (auto& t : pool) t.join();
}

}  // namespace detail

struct CrosscheckResult {
    std::string name;
    int seeds = 0;
    int passed = 0;
    int failed = 0;
    int oracle_checks = 0;
    std::vector<std::string> failures;
};

/// Per seed: build the case, solve the input with the reference solver, run
/// every route, compare answers; consult the enumeration oracle on both
/// sides whenever it fits the budget. corrupt flips the reduced answers (a
/// harness self-test: the run must then fail).
inline CrosscheckResult run_crosscheck(const RegisteredReduction& red, int seeds,
                                       const HarnessCaps& caps, int threads, bool corrupt = false,
                                       std::int64_t oracle_budget = std::int64_t{1} << 22) {
    CrosscheckResult result;
    result.name = red.name;
    result.seeds = seeds;
    struct SeedOut {
        bool ok = true;
        int oracle_checks = 0;
        std::vector<std::string> notes;
    };
    std::vector<SeedOut> outs((std::size_t)std::max(seeds, 0));
    detail::parallel_seeds(seeds, threads, [&](int i) {
        SeedOut& so = outs[(std::size_t)i];
        auto note = [&](std::string text) {
            so.ok = false;
            so.notes.push_back("seed " + std::to_string(i) + ": " + std::move(text));
        };
        try {
            const RedCase cs = red.make_case((std::uint64_t)i, caps);
            const bool expected = red.solve_input(cs);
            if (!corrupt) {
                if (auto oa = oracle_answer(cs.input, oracle_budget)) {
                    ++so.oracle_checks;
                    if (*oa != expected)
                        note("input enumeration oracle disagrees with the reference solver");
                }
            }
            for (const RunOutcome& out : red.run_all(cs)) {
                const bool got = corrupt ? !out.output_answer : out.output_answer;
                const std::string where = out.route.empty() ? "" : " [" + out.route + "]";
                if (got != expected)
                    note("reduced answer " + std::string(got ? "true" : "false") + where +
                         ", input answer " + (expected ? "true" : "false"));
                if (!corrupt) {
                    if (auto ob = oracle_answer(out.report.output, oracle_budget)) {
                        ++so.oracle_checks;
                        if (*ob != expected)
                            note("output enumeration oracle disagrees" + where);
                    }
                }
            }
        } catch (const std::exception& e) {
            note(std::string("exception: ") + e.what());
        }
    });
    for (const SeedOut& so : outs) {
        if (so.ok) ++result.passed;
        else ++result.failed;
        result.oracle_checks += so.oracle_checks;
        for (const auto& n : so.notes) result.failures.push_back(n);
    }
    return result;
}

struct AuditRow {
    std::string name;
    std::string route;
    std::uint64_t seed = 0;
    Params in, out, structural;
    Bound n_bound, m_bound, l_bound;
    bool ok = false;
};

/// One row per seed and route: promised bounds against measured parameters,
/// where "measured" is taken from a serialize/parse round trip.
inline std::vector<AuditRow> run_audit(const RegisteredReduction& red, int seeds,
                                       const HarnessCaps& caps, int threads) {
    std::vector<std::vector<AuditRow>> per_seed((std::size_t)std::max(seeds, 0));
    detail::parallel_seeds(seeds, threads, [&](int i) {
        try {
            const RedCase cs = red.make_case((std::uint64_t)i, caps);
            for (const RunOutcome& out : red.run_all(cs)) {
                AuditRow row;
                row.name = red.name;
                row.route = out.route;
                row.seed = (std::uint64_t)i;
                row.in = out.report.params_in;
                row.out = out.report.params_out;
                row.structural = out.structural_out;
                row.n_bound = out.report.n_bound;
                row.m_bound = out.report.m_bound;
                row.l_bound = out.report.l_bound;
                row.ok = out.structural_out == out.report.params_out && report_ok(out.report);
                per_seed[(std::size_t)i].push_back(std::move(row));
            }
        } catch (const std::exception& e) {
            AuditRow row;
            row.name = red.name;
            row.seed = (std::uint64_t)i;
            row.ok = false;
            row.route = std::string("error: ") + e.what();
            per_seed[(std::size_t)i].push_back(std::move(row));
        }
    });
    std::vector<AuditRow> rows;
    for (auto& group : per_seed)
        for (auto& row : group) rows.push_back(std::move(row));
    return rows;
}

inline std::string audit_csv(const std::vector<AuditRow>& rows) {
    std::ostringstream out;
    out << "reduction,route,seed,n_in,m_in,l_in,n_out,m_out,l_out,"
           "n_kind,n_promise,n_formula,m_kind,m_promise,m_formula,l_kind,l_promise,l_formula,ok\n";
    for (const AuditRow& r : rows) {
        out << r.name << ',' << r.route << ',' << r.seed << ',' << r.in.n << ',' << r.in.m << ','
            << r.in.l << ',' << r.out.n << ',' << r.out.m << ',' << r.out.l << ','
            << to_string(r.n_bound.kind) << ',' << r.n_bound.value << ',' << r.n_bound.formula
            << ',' << to_string(r.m_bound.kind) << ',' << r.m_bound.value << ','
            << r.m_bound.formula << ',' << to_string(r.l_bound.kind) << ',' << r.l_bound.value
            << ',' << r.l_bound.formula << ',' << (r.ok ? 1 : 0) << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Gadget forcing: the undirected vertex gadgets must admit exactly the
// intended forward traversal, checked by exhaustive walk enumeration.

namespace detail {

inline void collect_walks(const ColoredGraph& g, int v, std::span<const int> seq,
                          std::size_t depth, std::vector<int>& cur,
                          std::vector<std::vector<int>>& out) {
    if (depth == seq.size()) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        auto [a, b] = g.edges[i];
        int head = -1;
        if (a == v) head = b;
        else if (!g.directed && b == v) head = a;
        if (head < 0) continue;
        const int color = g.mode == ColoringMode::edge ? g.colors[i] : g.colors[(std::size_t)head];
        if (color != seq[depth]) continue;
        cur.push_back(head);
        collect_walks(g, head, seq, depth + 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace detail

/// every walk from start matching seq, as full vertex sequences
inline std::vector<std::vector<int>> enumerate_colored_walks(const ColoredGraph& g, int start,
                                                             std::span<const int> seq) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur{start};
    detail::collect_walks(g, start, seq, 0, cur, out);
    return out;
}

struct ForcingCheck {
    int cases = 0;
    std::vector<std::string> violations;
};

/// For every original vertex v and color c: a length-5 walk from the gadget
/// entry matching the per-step color word exists iff c is v's color, and
/// then it is exactly the internal path entry -> exit.
inline ForcingCheck check_gadget_forcing(const WalkInstance& original, ColoringMode gadget_mode) {
    const ReductionReport rep = gadget_mode == ColoringMode::edge
                                    ? reduce_dirnode2_to_undiredge2(original)
                                    : reduce_dirnode2_to_undirnode2(original);
    const WalkInstance& out = std::get<WalkInstance>(rep.output);
    ForcingCheck fc;
    for (int v = 0; v < original.graph.n; ++v) {
        for (int c = 1; c <= 2; ++c) {
            const std::array<int, 5> word = gadget_mode == ColoringMode::edge
                                                ? gadget::edge_word(c)
                                                : gadget::node_walk_word(c);
            const auto walks = enumerate_colored_walks(out.graph, gadget::in_of(v), word);
            ++fc.cases;
            const bool should = original.graph.colors[(std::size_t)v] == c;
            auto complain = [&](std::string what) {
                fc.violations.push_back("v=" + std::to_string(v) + " c=" + std::to_string(c) +
                                        ": " + std::move(what));
            };
            if (!should) {
                if (!walks.empty())
                    complain("spurious walk exists for a color the vertex does not have");
                continue;
            }
            const std::vector<int> expected{gadget::in_of(v),  gadget::mid_of(v, 1),
                                            gadget::mid_of(v, 2), gadget::mid_of(v, 3),
                                            gadget::mid_of(v, 4), gadget::out_of(v)};
            if (walks.size() != 1) complain("expected exactly one walk, got " +
                                            std::to_string(walks.size()));
            else if (walks[0] != expected) complain("walk is not the intended internal path");
        }
    }
    return fc;
}

}  // namespace rwlab
