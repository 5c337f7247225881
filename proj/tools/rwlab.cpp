// Command line front end: generate, solve, reduce, verify, crosscheck,
// audit, and bench over the instance formats documented in the README.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "rwlab/bench.hpp"
#include "rwlab/harness.hpp"
#include "rwlab/verifier.hpp"

namespace {

using namespace rwlab;

std::string read_all_input(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw precondition_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_all_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw precondition_error("cannot write '" + path + "'");
    f << text;
}

template <typename T>
const T& expect_kind(const Instance& inst, const std::string& who) {
    if (const T* p = std::get_if<T>(&inst)) return *p;
    throw precondition_error(who + ": unexpected input instance kind '" +
                             std::string(to_string(kind_of(inst))) + "'");
}

WalkVariant variant_or_throw(const std::string& name) {
    if (const auto v = variant_from_name(name)) return *v;
    throw precondition_error("unknown variant '" + name +
                             "' (expected dir-node, dir-edge, undir-node, or undir-edge)");
}

int resolve_threads(int requested) {
    int hw = (int)std::thread::hardware_concurrency();
    if (hw <= 0) hw = 1;
    int threads = requested > 0 ? requested : std::min(hw, 8);
    if (const char* env = std::getenv("RW_LAB_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) threads = std::min(threads, cap);
    }
    return std::max(1, threads);
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item));
    }
    return out;
}

std::vector<std::string> parse_name_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string reduction_header(const ReductionReport& r) {
    std::ostringstream os;
    os << "# reduction " << r.name << " params_in " << r.params_in.n << ' ' << r.params_in.m
       << ' ' << r.params_in.l << " params_out " << r.params_out.n << ' ' << r.params_out.m << ' '
       << r.params_out.l << " bound " << r.n_bound.formula << " ; " << r.m_bound.formula << " ; "
       << r.l_bound.formula << '\n';
    return os.str();
}

struct GenOpts {
    int n = 4;
    double alpha = 1.0;
    double beta = 1.0;
    int num_colors = 2;
    std::string variant = "dir-edge";
    std::string kind = "walk";
    std::uint64_t seed = 1;
    std::string out;
};

int cmd_gen(const GenOpts& o) {
    const WalkVariant variant = variant_or_throw(o.variant);
    WalkInstance w = gen_random_walk_instance(o.n, o.alpha, o.beta, o.num_colors, variant, o.seed);
    std::string text;
    if (o.kind == "walk") {
        text = serialize_instance(w);
    } else if (o.kind == "anywalk") {
        AnyWalkInstance a;
        a.graph = w.graph;
        a.seq = w.seq;
        text = serialize_instance(a);
    } else {
        throw precondition_error("gen supports kinds 'walk' and 'anywalk'");
    }
    write_all_output(o.out, text);
    return 0;
}

struct SolveOpts {
    std::string file = "-";
    std::string solver = "dp";
};

int cmd_solve(const SolveOpts& o) {
    const Instance inst = parse_instance(read_all_input(o.file));
    if (const auto* omv = std::get_if<OmvInstance>(&inst)) {
        for (const BitVec& row : solve_omv(*omv)) std::cout << row.to_string() << '\n';
        return 0;
    }
    bool answer = false;
    if (o.solver == "dp") {
        answer = solve_instance_ref(inst);
    } else if (o.solver == "chain") {
        answer = solve_walk_matrix_chain(expect_kind<WalkInstance>(inst, "chain solver"));
    } else if (o.solver == "power") {
        answer = solve_uniform_color_power(expect_kind<WalkInstance>(inst, "power solver"));
    } else if (o.solver == "oracle") {
        if (const auto* w = std::get_if<WalkInstance>(&inst)) answer = walk_enum_oracle(*w);
        else if (const auto* a = std::get_if<AnyWalkInstance>(&inst))
            answer = anywalk_enum_oracle(*a);
        else if (const auto* m = std::get_if<NfaInstance>(&inst)) answer = nfa_enum_oracle(*m);
        else
            throw precondition_error("no enumeration oracle for kind '" +
                                     std::string(to_string(kind_of(inst))) + "'");
    } else {
        throw precondition_error("unknown solver '" + o.solver +
                                 "' (expected dp, chain, power, or oracle)");
    }
    std::cout << (answer ? "YES" : "NO") << '\n';
    return 0;
}

struct ReduceOpts {
    std::string name;
    std::string file = "-";
    std::string out;
    std::string out2;
    std::string mode = "two_instance";
    std::int64_t target_n = -1;
    std::int64_t target_l = -1;
    std::int64_t target_m = -1;
    int k = 0;
    int k_prime = 0;
};

int cmd_reduce(const ReduceOpts& o) {
    const Instance inst = parse_instance(read_all_input(o.file));
    const std::string& name = o.name;

    if (name == "red_walk_to_omv") {
        OmvMode mode;
        if (o.mode == "two_instance") mode = OmvMode::two_instance;
        else if (o.mode == "block_diagonal") mode = OmvMode::block_diagonal;
        else throw precondition_error("unknown mode '" + o.mode + "'");
        OmvDrive drive = reduce_walk_to_omv(expect_kind<WalkInstance>(inst, name), mode);
        write_all_output(o.out,
                         reduction_header(drive.report) + serialize_instance(drive.report.output));
        if (mode == OmvMode::two_instance) {
            if (o.out2.empty())
                throw precondition_error("two_instance mode writes a second engine: pass --out2");
            write_all_output(o.out2, serialize_instance(Instance(*drive.second)));
        }
        return 0;
    }

    ReductionReport rep;
    if (name == "red_dirnode2_to_diredge2")
        rep = reduce_dirnode2_to_diredge2(expect_kind<WalkInstance>(inst, name));
    else if (name == "red_diredgeC_to_nfa")
        rep = reduce_diredge_to_nfa(expect_kind<WalkInstance>(inst, name));
    else if (name == "red_nfa_to_dirnodeC")
        rep = reduce_nfa_to_dirnode(expect_kind<NfaInstance>(inst, name));
    else if (name == "red_dirnodeN_to_dirnode2")
        rep = reduce_dirnodeN_to_dirnode2(expect_kind<WalkInstance>(inst, name));
    else if (name == "red_dirnode2_to_undiredge2")
        rep = reduce_dirnode2_to_undiredge2(expect_kind<WalkInstance>(inst, name));
    else if (name == "red_dirnode2_to_undirnode2")
        rep = reduce_dirnode2_to_undirnode2(expect_kind<WalkInstance>(inst, name));
    else if (name == "red_undirected_to_directed")
        rep = reduce_undirected_to_directed(expect_kind<WalkInstance>(inst, name));
    else if (name == "red_walk_to_anywalk")
        rep = reduce_walk_to_anywalk(expect_kind<WalkInstance>(inst, name));
    else if (name == "red_anywalk_to_walk")
        rep = reduce_anywalk_to_walk(expect_kind<AnyWalkInstance>(inst, name));
    else if (name == "pad_instance") {
        if (o.target_n < 0 || o.target_l < 0)
            throw precondition_error("pad_instance needs --target-n and --target-l");
        std::optional<std::int64_t> tm;
        if (o.target_m >= 0) tm = o.target_m;
        rep = pad_instance(expect_kind<WalkInstance>(inst, name), o.target_n, o.target_l, tm);
    } else if (name == "red_walk_to_cfl")
        rep = reduce_walk_to_cfl(expect_kind<WalkInstance>(inst, name));
    else if (name == "red_walk_to_wordbreak")
        rep = reduce_walk_to_wordbreak(expect_kind<WalkInstance>(inst, name));
    else if (name == "red_ov_to_nfa")
        rep = reduce_ov_to_nfa(expect_kind<OvInstance>(inst, name));
    else if (name == "red_clique_to_nfa")
        rep = reduce_clique_to_nfa(expect_kind<CliqueInstance>(inst, name), o.k, o.k_prime);
    else
        throw precondition_error("unknown reduction '" + name + "'");

    write_all_output(o.out, reduction_header(rep) + serialize_instance(rep.output));
    return 0;
}

struct VerifyOpts {
    std::string instance_file;
    std::string certificate_file;
    std::string out;
    bool emit = false;
    bool stepwise = false;
};

int cmd_verify(const VerifyOpts& o) {
    const Instance inst = parse_instance(read_all_input(o.instance_file));
    const WalkInstance& w = expect_kind<WalkInstance>(inst, "verify");
    if (o.emit) {
        write_all_output(o.out, serialize_certificate(build_certificate(w)));
        return 0;
    }
    if (o.certificate_file.empty())
        throw precondition_error("verify needs --certificate FILE (or --emit)");
    const Certificate cert = parse_certificate(read_all_input(o.certificate_file));
    const bool ok =
        o.stepwise ? verify_certificate_stepwise(w, cert) : verify_certificate(w, cert);
    std::cout << (ok ? "VALID" : "INVALID") << '\n';
    return ok ? 0 : 1;
}

struct CrosscheckOpts {
    std::string name = "all";
    int seeds = 100;
    int max_n = 6;
    std::int64_t max_l = 6;
    int threads = 0;
    bool corrupt = false;
    bool verbose = false;
};

int cmd_crosscheck(const CrosscheckOpts& o) {
    HarnessCaps caps;
    caps.max_n = o.max_n;
    caps.max_l = o.max_l;
    const int threads = resolve_threads(o.threads);
    std::vector<const RegisteredReduction*> picked;
    if (o.name == "all")
        for (const auto& r : reduction_registry()) picked.push_back(&r);
    else
        picked.push_back(&find_reduction(o.name));
    bool any_failed = false;
    for (const RegisteredReduction* red : picked) {
        const CrosscheckResult res = run_crosscheck(*red, o.seeds, caps, threads, o.corrupt);
        std::cout << res.name << ": " << res.passed << '/' << res.seeds
                  << (res.failed == 0 ? " ok" : " FAILED") << " (oracle checks: "
                  << res.oracle_checks << ")\n";
        const std::size_t show = o.verbose ? res.failures.size()
                                           : std::min<std::size_t>(res.failures.size(), 10);
        for (std::size_t i = 0; i < show; ++i) std::cout << "  " << res.failures[i] << '\n';
        if (!o.verbose && res.failures.size() > show)
            std::cout << "  ... " << (res.failures.size() - show) << " more\n";
        if (res.failed > 0) any_failed = true;
    }
    return any_failed ? 1 : 0;
}

struct AuditOpts {
    std::string name = "all";
    int seeds = 100;
    int max_n = 6;
    std::int64_t max_l = 6;
    int threads = 0;
};

int cmd_audit(const AuditOpts& o) {
    HarnessCaps caps;
    caps.max_n = o.max_n;
    caps.max_l = o.max_l;
    const int threads = resolve_threads(o.threads);
    std::vector<const RegisteredReduction*> picked;
    if (o.name == "all") {
        for (const auto& r : reduction_registry())
            if (r.audited) picked.push_back(&r);
    } else {
        picked.push_back(&find_reduction(o.name));
    }
    std::vector<AuditRow> rows;
    for (const RegisteredReduction* red : picked)
        for (AuditRow& row : run_audit(*red, o.seeds, caps, threads)) rows.push_back(std::move(row));
    std::cout << audit_csv(rows);
    for (const AuditRow& row : rows)
        if (!row.ok) return 1;
    return 0;
}

struct BenchOpts {
    std::string ns = "64,128,256";
    double alpha = 2.0;
    double beta = 1.0;
    int num_colors = 2;
    std::string variant = "dir-edge";
    std::string solvers = "dp,chain";
    int reps = 5;
    std::uint64_t seed = 1;
    std::int64_t mem_cap_mb = 2048;
    bool fit = false;
};

int cmd_bench(const BenchOpts& o) {
    BenchConfig cfg;
    cfg.ns = parse_int_list(o.ns);
    cfg.alpha = o.alpha;
    cfg.beta = o.beta;
    cfg.num_colors = o.num_colors;
    cfg.variant = variant_or_throw(o.variant);
    cfg.solvers = parse_name_list(o.solvers);
    cfg.reps = o.reps;
    cfg.seed = o.seed;
    cfg.mem_cap_bytes = o.mem_cap_mb << 20;
    const std::vector<BenchRecord> records = run_bench(cfg);
    std::cout << bench_csv(records);
    if (o.fit) {
        for (const std::string& solver : cfg.solvers) {
            const SlopeFit f = fit_loglog_slope(records, solver);
            std::cerr << "fit " << solver << ": slope=" << f.slope << " intercept=" << f.intercept
                      << " points=" << f.points << '\n';
        }
    }
    return 0;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"reduction laboratory for colored walk problems"};
    app.require_subcommand(1);

    GenOpts gen;
    auto* cgen = app.add_subcommand("gen", "generate a random instance");
    cgen->add_option("--n", gen.n, "vertex count")->required();
    cgen->add_option("--alpha", gen.alpha, "edge exponent: m ~ n^alpha");
    cgen->add_option("--beta", gen.beta, "length exponent: l ~ n^beta");
    cgen->add_option("--C", gen.num_colors, "number of colors");
    cgen->add_option("--variant", gen.variant,
                     "dir-node, dir-edge, undir-node, or undir-edge");
    cgen->add_option("--kind", gen.kind, "walk or anywalk");
    cgen->add_option("--seed", gen.seed, "generator seed");
    cgen->add_option("--out", gen.out, "output file (default stdout)");

    SolveOpts solve;
    auto* csolve = app.add_subcommand("solve", "solve an instance, print YES or NO");
    csolve->add_option("file", solve.file, "instance file, or - for stdin");
    csolve->add_option("--solver", solve.solver, "dp, chain, power, or oracle");

    ReduceOpts reduce;
    auto* creduce = app.add_subcommand("reduce", "apply a named reduction");
    creduce->add_option("--name", reduce.name, "registered reduction name")->required();
    creduce->add_option("file", reduce.file, "instance file, or - for stdin");
    creduce->add_option("--out", reduce.out, "output file (default stdout)");
    creduce->add_option("--out2", reduce.out2, "second engine output (red_walk_to_omv)");
    creduce->add_option("--mode", reduce.mode, "two_instance or block_diagonal");
    creduce->add_option("--target-n", reduce.target_n, "pad_instance vertex target");
    creduce->add_option("--target-l", reduce.target_l, "pad_instance length target");
    creduce->add_option("--target-m", reduce.target_m, "pad_instance edge target (optional)");
    creduce->add_option("--k", reduce.k, "red_clique_to_nfa chain clique size");
    creduce->add_option("--kprime", reduce.k_prime, "red_clique_to_nfa text clique size");

    VerifyOpts verify;
    auto* cverify = app.add_subcommand("verify", "check or emit a frontier certificate");
    cverify->add_option("--instance", verify.instance_file, "walk instance file")->required();
    cverify->add_option("--certificate", verify.certificate_file, "certificate file");
    cverify->add_option("--out", verify.out, "output file for --emit");
    cverify->add_flag("--emit", verify.emit, "emit the honest certificate instead of checking");
    cverify->add_flag("--stepwise", verify.stepwise, "use the per-step checker");

    CrosscheckOpts cross;
    auto* ccross = app.add_subcommand("crosscheck",
                                      "compare reduced answers against the input answer");
    ccross->add_option("name", cross.name, "reduction name, or all");
    ccross->add_option("--seeds", cross.seeds, "number of random cases");
    ccross->add_option("--max-n", cross.max_n, "input size cap");
    ccross->add_option("--max-l", cross.max_l, "input length cap");
    ccross->add_option("--threads", cross.threads, "worker threads (0 = auto)");
    ccross->add_flag("--corrupt", cross.corrupt, "flip reduced answers (self test, must fail)");
    ccross->add_flag("--verbose", cross.verbose, "print every failure");

    AuditOpts audit;
    auto* caudit = app.add_subcommand("audit", "emit the parameter accounting table as CSV");
    caudit->add_option("--name", audit.name, "reduction name, or all");
    caudit->add_option("--seeds", audit.seeds, "number of random cases");
    caudit->add_option("--max-n", audit.max_n, "input size cap");
    caudit->add_option("--max-l", audit.max_l, "input length cap");
    caudit->add_option("--threads", audit.threads, "worker threads (0 = auto)");

    BenchOpts bench;
    auto* cbench = app.add_subcommand("bench", "time solvers over a size sweep, CSV output");
    cbench->add_option("--n", bench.ns, "comma separated vertex counts");
    cbench->add_option("--alpha", bench.alpha, "edge exponent: m ~ n^alpha");
    cbench->add_option("--beta", bench.beta, "length exponent: l ~ n^beta");
    cbench->add_option("--C", bench.num_colors, "number of colors");
    cbench->add_option("--variant", bench.variant, "graph variant");
    cbench->add_option("--solvers", bench.solvers, "comma separated solver names");
    cbench->add_option("--reps", bench.reps, "timed repetitions per cell");
    cbench->add_option("--seed", bench.seed, "generator seed");
    cbench->add_option("--mem-cap-mb", bench.mem_cap_mb, "skip cells above this estimate");
    cbench->add_flag("--fit", bench.fit, "print log-log slope fits to stderr");

    CLI11_PARSE(app, argc, argv);

    if (cgen->parsed()) return cmd_gen(gen);
    if (csolve->parsed()) return cmd_solve(solve);
    if (creduce->parsed()) return cmd_reduce(reduce);
    if (cverify->parsed()) return cmd_verify(verify);
    if (ccross->parsed()) return cmd_crosscheck(cross);
    if (caudit->parsed()) return cmd_audit(audit);
    if (cbench->parsed()) return cmd_bench(bench);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        rwlab::assert_registry_complete();
        return run_cli(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
