// Release gate: one line per criterion, [PASS] or [FAIL], exit code counts
// the failures. Thresholds and campaign sizes are pinned here on purpose.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rwlab/bench.hpp"
#include "rwlab/harness.hpp"
#include "rwlab/verifier.hpp"

using namespace rwlab;

namespace {

constexpr int kSolverSeedsPerClass = 500;
constexpr int kFamilySeeds = 200;
constexpr int kForcingGraphs = 50;
constexpr int kAuditSeeds = 100;
constexpr int kHonestCerts = 300;
constexpr int kTamperInstances = 40;
constexpr int kDishonestCerts = 300;
constexpr double kSolverBudgetSec = 60.0;
constexpr double kHardnessBudgetSec = 300.0;
constexpr double kBenchBudgetSec = 600.0;
constexpr double kSlopeLo = 0.8;
constexpr double kSlopeHi = 1.2;
constexpr double kChainRatioMin = 2.0;

struct Criterion {
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

class Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

   public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

int auto_threads() {
    int hw = (int)std::thread::hardware_concurrency();
    if (hw <= 0) hw = 1;
    int t = hw < 8 ? hw : 8;
    if (const char* env = std::getenv("RW_LAB_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0 && v < t) t = v;
    }
    return t;
}

// 1. The frontier solver agrees with exhaustive enumeration on every walk
// variant and palette size, on a large tiny-instance campaign.
Criterion solver_agreement() {
    Timer timer;
    const std::array<WalkVariant, 4> variants{kDirNode, kDirEdge, kUndirNode, kUndirEdge};
    const std::array<int, 3> palettes{2, 3, 4};
    constexpr int kClasses = 12;
    const int seeds_per_class = kSolverSeedsPerClass + 20;  // headroom for budget skips
    std::array<std::atomic<int>, kClasses> completed{};
    std::atomic<long long> mismatches{0}, skipped{0};
    detail::parallel_seeds(kClasses * seeds_per_class, auto_threads(), [&](int task) {
        const int cls = task % kClasses;
        const WalkVariant variant = variants[(std::size_t)(cls / 3)];
        const int C = palettes[(std::size_t)(cls % 3)];
        for (int attempt = 0; attempt < 3; ++attempt) {
            SplitMix64 rng(fnv1a("solver-agreement") ^ (std::uint64_t)(task * 3 + attempt));
            const int n = 2 + rng.below_int(7);
            const auto m =
                (std::int64_t)rng.below((std::uint64_t)max_simple_edges(n, variant.directed) + 1);
            const auto l = (std::int64_t)rng.below(9);
            const WalkInstance w = gen_walk_sized(n, m, l, C, variant, rng);
            try {
                const bool oracle = walk_enum_oracle(w);
                if (solve_walk_dp(w) != oracle) ++mismatches;
                ++completed[(std::size_t)cls];
                return;
            } catch (const budget_error&) {
                continue;
            }
        }
        ++skipped;
    });
    int min_completed = completed[0].load();
    for (const auto& c : completed) min_completed = std::min(min_completed, c.load());
    Criterion out;
    out.seconds = timer.seconds();
    out.pass = mismatches == 0 && min_completed >= kSolverSeedsPerClass &&
               out.seconds < kSolverBudgetSec;
    std::ostringstream d;
    d << "12 variant/palette classes, >=" << min_completed << " tiny instances each, "
      << mismatches.load() << " solver/oracle mismatches";
    if (skipped > 0) d << ", " << skipped.load() << " skipped past the enumeration budget";
    out.detail = d.str();
    return out;
}

// 2. Every equivalence-family construction preserves answers across a seeded
// campaign, including the four-step composition back to two node colors.
Criterion family_crosscheck() {
    Timer timer;
    const std::array<const char*, 11> names{
        "red_dirnode2_to_diredge2", "red_diredgeC_to_nfa",        "red_nfa_to_dirnodeC",
        "red_dirnodeN_to_dirnode2", "red_dirnode2_to_undiredge2", "red_dirnode2_to_undirnode2",
        "red_undirected_to_directed", "red_walk_to_anywalk",      "red_anywalk_to_walk",
        "pad_instance",             "equivalence_cycle"};
    const HarnessCaps caps;
    long long failed = 0, oracle_checks = 0;
    std::string first_failure;
    for (const char* name : names) {
        const CrosscheckResult res =
            run_crosscheck(find_reduction(name), kFamilySeeds, caps, auto_threads());
        failed += res.failed;
        oracle_checks += res.oracle_checks;
        if (!res.failures.empty() && first_failure.empty())
            first_failure = res.name + " " + res.failures[0];
    }
    Criterion out;
    out.seconds = timer.seconds();
    out.pass = failed == 0;
    std::ostringstream d;
    d << "11 constructions x " << kFamilySeeds << " seeds, " << failed << " mismatches, "
      << oracle_checks << " oracle confirmations";
    if (!first_failure.empty()) d << "; first: " << first_failure;
    out.detail = d.str();
    return out;
}

// 3. The undirected vertex gadgets admit exactly the intended traversals,
// shown by exhaustive walk enumeration inside the reduced graphs.
Criterion gadget_forcing() {
    Timer timer;
    long long cases = 0, violations = 0;
    std::string first;
    for (int g = 0; g < kForcingGraphs; ++g) {
        SplitMix64 rng(fnv1a("gadget-forcing") ^ (std::uint64_t)g);
        const int n = 2 + rng.below_int(5);
        const auto m = (std::int64_t)rng.below((std::uint64_t)max_simple_edges(n, true) + 1);
        const WalkInstance w = gen_walk_sized(n, m, 0, 2, kDirNode, rng);
        for (const ColoringMode mode : {ColoringMode::edge, ColoringMode::node}) {
            const ForcingCheck fc = check_gadget_forcing(w, mode);
            cases += fc.cases;
            violations += (long long)fc.violations.size();
            if (!fc.violations.empty() && first.empty()) first = fc.violations[0];
        }
    }
    Criterion out;
    out.seconds = timer.seconds();
    out.pass = violations == 0 && cases > 0;
    std::ostringstream d;
    d << kForcingGraphs << " graphs, both gadget flavors, " << cases
      << " vertex/color cases enumerated, " << violations << " violations";
    if (!first.empty()) d << "; first: " << first;
    out.detail = d.str();
    return out;
}

// 4. The cross-problem constructions preserve answers: grammar reachability,
// text segmentation, matrix-vector rounds in both layouts, orthogonality,
// and split cliques.
Criterion hardness_crosscheck() {
    Timer timer;
    const std::array<std::pair<const char*, int>, 5> plan{{{"red_walk_to_cfl", 200},
                                                           {"red_walk_to_wordbreak", 200},
                                                           {"red_walk_to_omv", 300},
                                                           {"red_ov_to_nfa", 300},
                                                           {"red_clique_to_nfa", 100}}};
    const HarnessCaps caps;
    long long failed = 0, total = 0;
    std::string first_failure;
    for (const auto& [name, seeds] : plan) {
        const CrosscheckResult res =
            run_crosscheck(find_reduction(name), seeds, caps, auto_threads());
        failed += res.failed;
        total += res.seeds;
        if (!res.failures.empty() && first_failure.empty())
            first_failure = res.name + " " + res.failures[0];
    }
    Criterion out;
    out.seconds = timer.seconds();
    out.pass = failed == 0 && out.seconds < kHardnessBudgetSec;
    std::ostringstream d;
    d << total << " seeded cases across 5 target problems (matrix-vector runs both layouts), "
      << failed << " mismatches";
    if (!first_failure.empty()) d << "; first: " << first_failure;
    out.detail = d.str();
    return out;
}

// 5. Every registered construction's parameter report holds exactly, with
// the output re-measured after a serialize/parse round trip.
Criterion parameter_audit() {
    Timer timer;
    long long rows = 0, bad = 0;
    std::string first;
    const HarnessCaps caps;
    for (const auto& red : reduction_registry()) {
        if (!red.audited) continue;
        for (const AuditRow& row : run_audit(red, kAuditSeeds, caps, auto_threads())) {
            ++rows;
            if (!row.ok) {
                ++bad;
                if (first.empty())
                    first = row.name + " seed " + std::to_string(row.seed) + " " + row.route;
            }
        }
    }
    Criterion out;
    out.seconds = timer.seconds();
    out.pass = bad == 0 && rows >= 15LL * kAuditSeeds;
    std::ostringstream d;
    d << "15 constructions x " << kAuditSeeds << " seeds, " << rows << " audit rows, " << bad
      << " formula violations";
    if (!first.empty()) d << "; first: " << first;
    out.detail = d.str();
    return out;
}

// 6. The certificate checker accepts exactly the honest frontier trace:
// honest certificates verify, every single-bit or claim tamper is rejected,
// and the batched checker matches the per-step checker on dishonest input.
Criterion certificate_checks() {
    Timer timer;
    long long honest_bad = 0, tamper_missed = 0, tampers = 0, divergence = 0;
    for (int i = 0; i < kHonestCerts; ++i) {
        SplitMix64 rng(fnv1a("honest-certs") ^ (std::uint64_t)i);
        const int n = 2 + rng.below_int(9);
        const auto m = (std::int64_t)rng.below((std::uint64_t)max_simple_edges(n, true) + 1);
        const WalkInstance w = gen_walk_sized(n, m, (std::int64_t)rng.below(11), 2, kDirEdge, rng);
        const Certificate cert = build_certificate(w);
        if (!verify_certificate(w, cert) || !verify_certificate_stepwise(w, cert) ||
            cert.claim != solve_walk_dp(w))
            ++honest_bad;
    }
    for (int i = 0; i < kTamperInstances; ++i) {
        SplitMix64 rng(fnv1a("tamper-certs") ^ (std::uint64_t)i);
        const int n = 2 + rng.below_int(4);  // n <= 5: exhaustive over every bit
        const auto m = (std::int64_t)rng.below((std::uint64_t)max_simple_edges(n, true) + 1);
        const WalkInstance w = gen_walk_sized(n, m, (std::int64_t)rng.below(5), 2, kDirEdge, rng);
        const Certificate honest = build_certificate(w);
        for (std::size_t f = 0; f < honest.frontiers.size(); ++f)
            for (std::size_t v = 0; v < (std::size_t)n; ++v) {
                Certificate tampered = honest;
                tampered.frontiers[f].flip(v);
                ++tampers;
                const bool batched = verify_certificate(w, tampered);
                if (batched) ++tamper_missed;
                if (batched != verify_certificate_stepwise(w, tampered)) ++divergence;
            }
        Certificate lied = honest;
        lied.claim = !lied.claim;
        ++tampers;
        if (verify_certificate(w, lied)) ++tamper_missed;
    }
    for (int i = 0; i < kDishonestCerts; ++i) {
        SplitMix64 rng(fnv1a("dishonest-certs") ^ (std::uint64_t)i);
        const int n = 2 + rng.below_int(5);
        const auto m = (std::int64_t)rng.below((std::uint64_t)max_simple_edges(n, true) + 1);
        const WalkInstance w = gen_walk_sized(n, m, (std::int64_t)rng.below(6), 2, kDirEdge, rng);
        Certificate guess;
        guess.claim = rng.coin();
        for (std::size_t f = 0; f <= w.seq.size(); ++f) {
            BitVec x((std::size_t)n);
            for (int v = 0; v < n; ++v)
                if (rng.coin()) x.set((std::size_t)v);
            guess.frontiers.push_back(x);
        }
        if (verify_certificate(w, guess) != verify_certificate_stepwise(w, guess)) ++divergence;
    }
    Criterion out;
    out.seconds = timer.seconds();
    out.pass = honest_bad == 0 && tamper_missed == 0 && divergence == 0;
    std::ostringstream d;
    d << kHonestCerts << " honest certificates verified, " << tampers << " tampers all rejected ("
      << tamper_missed << " missed), batched vs stepwise divergences: " << divergence;
    out.detail = d.str();
    return out;
}

// 7. The frontier solver's runtime scales like m*l on a power-law sweep, and
// the matrix-chain baseline falls behind by a widening factor.
Criterion bench_scaling() {
    Timer timer;
    BenchConfig cfg;
    cfg.ns = {128, 256, 512};
    cfg.alpha = 2.0;
    cfg.beta = 1.0;
    cfg.num_colors = 2;
    cfg.variant = kDirEdge;
    cfg.solvers = {"dp", "chain"};
    cfg.reps = 5;
    cfg.seed = 12345;
    const std::vector<BenchRecord> records = run_bench(cfg);
    std::map<std::pair<std::string, int>, const BenchRecord*> cell;
    bool answers_ok = true;
    for (const BenchRecord& r : records) {
        cell[{r.solver, r.n}] = &r;
        if (r.answer != "YES" && r.answer != "NO") answers_ok = false;
    }
    for (int n : cfg.ns) {
        const auto* a = cell[{"dp", n}];
        const auto* b = cell[{"chain", n}];
        if (!a || !b || a->answer != b->answer) answers_ok = false;
    }
    const SlopeFit fit = fit_loglog_slope(records, "dp");
    bool ratios_ok = true;
    double ratio256 = 0, ratio512 = 0;
    if (cell[{"dp", 256}] && cell[{"chain", 256}] && cell[{"dp", 256}]->time_ns > 0)
        ratio256 = (double)cell[{"chain", 256}]->time_ns / (double)cell[{"dp", 256}]->time_ns;
    if (cell[{"dp", 512}] && cell[{"chain", 512}] && cell[{"dp", 512}]->time_ns > 0)
        ratio512 = (double)cell[{"chain", 512}]->time_ns / (double)cell[{"dp", 512}]->time_ns;
    ratios_ok = ratio256 > kChainRatioMin && ratio512 > kChainRatioMin;
    Criterion out;
    out.seconds = timer.seconds();
    out.pass = fit.points == 3 && fit.slope >= kSlopeLo && fit.slope <= kSlopeHi && ratios_ok &&
               answers_ok && out.seconds < kBenchBudgetSec;
    std::ostringstream d;
    d.precision(3);
    d << "frontier solver log-log slope " << fit.slope << " vs m*l over n=128,256,512 (accept "
      << kSlopeLo << ".." << kSlopeHi << "), chain/frontier ratio " << ratio256 << " at 256, "
      << ratio512 << " at 512" << (answers_ok ? "" : ", answer disagreement between solvers");
    out.detail = d.str();
    return out;
}

}  // namespace

int main() {
    assert_registry_complete();
    struct Entry {
        const char* label;
        Criterion (*fn)();
    };
    const std::array<Entry, 7> entries{{{"solver and oracle agreement", solver_agreement},
                                        {"equivalence family crosscheck", family_crosscheck},
                                        {"vertex gadget forcing", gadget_forcing},
                                        {"target problem crosscheck", hardness_crosscheck},
                                        {"parameter accounting audit", parameter_audit},
                                        {"certificate soundness and completeness",
                                         certificate_checks},
                                        {"runtime scaling", bench_scaling}}};
    int failures = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const Criterion c = entries[i].fn();
        if (!c.pass) ++failures;
        std::printf("[%s] %zu. %s: %s (%.1fs)\n", c.pass ? "PASS" : "FAIL", i + 1,
                    entries[i].label, c.detail.c_str(), c.seconds);
        std::fflush(stdout);
    }
    std::printf("%d/7 criteria passed\n", 7 - failures);
    return failures;
}
