#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rwlab/errors.hpp"
#include "rwlab/generate.hpp"
#include "rwlab/instances.hpp"
#include "rwlab/solvers.hpp"

namespace rwlab {

struct BenchRecord {
    std::string solver;
    int n = 0;
    std::int64_t m = 0;
    std::int64_t l = 0;
    std::string variant;
    std::uint64_t seed = 0;
    std::int64_t time_ns = 0;  // median per-solve wall time; 0 when the cell was skipped
    std::string answer;        // YES / NO / skipped
};

struct BenchConfig {
    std::vector<int> ns;
    double alpha = 2.0;
    double beta = 1.0;
    int num_colors = 2;
    WalkVariant variant = kDirEdge;
    std::vector<std::string> solvers{"dp", "chain"};
    int reps = 5;
    std::uint64_t seed = 1;
    std::int64_t mem_cap_bytes = std::int64_t{2} << 30;
};

namespace detail {

inline void bench_sink(bool v) {
    // keep the solve from being optimized away between timer reads
    asm volatile("" : : "r"((int)v) : "memory");
}

template <typename F>
inline std::int64_t time_batch_ns(F&& fn, int iters) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < iters; ++i) bench_sink(fn());
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
}

/// rough working-set size, used only for the out-of-memory guard
inline std::int64_t solver_bytes_estimate(std::string_view solver, int n, int num_colors) {
    const std::int64_t words = ((std::int64_t)n + 63) / 64;
    const std::int64_t mat = (std::int64_t)n * words * 8;
    if (solver == "chain" || solver == "power") return (num_colors + 4) * mat;
    return (num_colors + 1) * mat + 8 * words * 8;
}

}  // namespace detail

/// Sequential protocol per cell: one instance shared by all solvers, inner
/// iteration count calibrated until a batch takes ~10ms, one untimed run
/// discarded as warmup, then the median per-solve time over reps batches.
inline std::vector<BenchRecord> run_bench(const BenchConfig& cfg) {
    std::vector<BenchRecord> records;
    const int reps = std::max(cfg.reps, 1);
    for (int n : cfg.ns) {
        const std::uint64_t cell_seed =
            cfg.seed ^ (0x9e3779b97f4a7c15ULL * (std::uint64_t)(n + 1));
        const WalkInstance inst = gen_random_walk_instance(n, cfg.alpha, cfg.beta,
                                                           cfg.num_colors, cfg.variant, cell_seed);
        const Params p = params_of(inst);
        for (const std::string& solver : cfg.solvers) {
            BenchRecord rec;
            rec.solver = solver;
            rec.n = n;
            rec.m = p.m;
            rec.l = p.l;
            rec.variant = variant_name(cfg.variant);
            rec.seed = cell_seed;
            if (detail::solver_bytes_estimate(solver, n, cfg.num_colors) > cfg.mem_cap_bytes) {
                rec.answer = "skipped";
                records.push_back(std::move(rec));
                continue;
            }
            std::function<bool()> run;
            if (solver == "dp") run = [&]() { return solve_walk_dp(inst); };
            else if (solver == "chain") run = [&]() { return solve_walk_matrix_chain(inst); };
            else if (solver == "power") run = [&]() { return solve_uniform_color_power(inst); };
            else throw precondition_error("unknown bench solver '" + solver + "'");

            const bool answer = run();  // correctness check doubles as cache warmup
            int iters = 1;
            std::int64_t batch = detail::time_batch_ns(run, iters);
            while (batch < 10'000'000 && iters < (1 << 20)) {
                iters *= 2;
                batch = detail::time_batch_ns(run, iters);
            }
            std::vector<std::int64_t> samples;
            samples.reserve((std::size_t)reps);
            for (int r = 0; r < reps; ++r)
                samples.push_back(detail::time_batch_ns(run, iters) / iters);
            std::nth_element(samples.begin(), samples.begin() + reps / 2, samples.end());
            rec.time_ns = samples[(std::size_t)reps / 2];
            rec.answer = answer ? "YES" : "NO";
            records.push_back(std::move(rec));
        }
    }
    return records;
}

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    int points = 0;
};

/// least-squares slope of log(time) against log(m*l) for one solver
inline SlopeFit fit_loglog_slope(const std::vector<BenchRecord>& records,
                                 std::string_view solver) {
    std::vector<double> xs, ys;
    for (const BenchRecord& r : records) {
        if (r.solver != solver || r.time_ns <= 0) continue;
        const double work = (double)r.m * (double)r.l;
        if (work <= 0.0) continue;
        xs.push_back(std::log(work));
        ys.push_back(std::log((double)r.time_ns));
    }
    SlopeFit fit;
    fit.points = (int)xs.size();
    if (fit.points < 2) return fit;
    double mx = 0, my = 0;
    for (int i = 0; i < fit.points; ++i) {
        mx += xs[(std::size_t)i];
        my += ys[(std::size_t)i];
    }
    mx /= fit.points;
    my /= fit.points;
    double num = 0, den = 0;
    for (int i = 0; i < fit.points; ++i) {
        num += (xs[(std::size_t)i] - mx) * (ys[(std::size_t)i] - my);
        den += (xs[(std::size_t)i] - mx) * (xs[(std::size_t)i] - mx);
    }
    fit.slope = num / den;
    fit.intercept = my - fit.slope * mx;
    return fit;
}

inline std::string bench_csv(const std::vector<BenchRecord>& records) {
    std::ostringstream out;
    out << "solver,n,m,l,variant,seed,time_ns,answer\n";
    for (const BenchRecord& r : records)
        out << r.solver << ',' << r.n << ',' << r.m << ',' << r.l << ',' << r.variant << ','
            << r.seed << ',' << r.time_ns << ',' << r.answer << '\n';
    return out.str();
}

}  // namespace rwlab
