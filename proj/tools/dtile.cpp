// dtile: generate, solve and verify D-tilings of 3-graphs (D = K4^3 - 2e).

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "dtile/constructions.hpp"
#include "dtile/driver.hpp"
#include "dtile/errors.hpp"
#include "dtile/io.hpp"
#include "dtile/rng.hpp"

using namespace dtile;
using nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_infeasible = 2;
constexpr int exit_exhausted = 3;
constexpr int exit_usage = 64;
constexpr int exit_data = 65;
constexpr int exit_internal = 70;

int exit_for(SearchStatus s) {
    switch (s) {
        case SearchStatus::found: return exit_ok;
        case SearchStatus::infeasible: return exit_infeasible;
        case SearchStatus::exhausted: return exit_exhausted;
    }
    return exit_exhausted;
}

struct SolveOptions {
    std::string file;
    std::string cert;
    std::string mode = "auto";
    double alpha = 0.3, gamma = 0.1, eps = 0.25;
    std::uint64_t seed = 0;
    bool strict = false, timings = false, asymptotic_constants = false;
    double node_limit = 1e7, time_limit = 60.0;
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path);
    out << text;
    if (!out) throw InputError("write failed: " + path);
}

/// Writes the certificate and checks that the file on disk validates.
json emit_certificate(const Hypergraph3& g, const std::string& path, const std::optional<Tiling>& tiling) {
    json verdict = {{"ok", false}};
    if (!tiling) return verdict;
    if (path.empty()) {
        verdict["ok"] = validate_tiling(g, *tiling, true).ok;
        return verdict;
    }
    write_file(path, certificate_string(*tiling, true));
    Certificate back = read_certificate_file(path);
    Verdict v = validate_tiling(g, back.tiling, true);
    verdict["ok"] = v.ok && back.perfect;
    verdict["revalidated_from_disk"] = true;
    if (!v.ok) verdict["violations"] = v.violations;
    return verdict;
}

SearchBudget make_budget(double nodes, double seconds) {
    SearchBudget b;
    b.node_limit = static_cast<std::uint64_t>(nodes);
    b.time_limit_seconds = seconds;
    return b;
}

int run_solve(const SolveOptions& o) {
    Hypergraph3 g = read_instance_file(o.file);
    DriverParams p;
    p.mode = parse_driver_mode(o.mode);
    p.alpha = o.alpha;
    p.gamma = o.gamma;
    p.eps = o.eps;
    p.seed = o.seed;
    p.strict = o.strict;
    p.budget = make_budget(o.node_limit, o.time_limit);
    std::vector<std::string> warnings;
    if (o.asymptotic_constants) {
        p.eps = 1e-18;
        p.alpha = std::cbrt(p.eps);
        warnings.push_back("asymptotic constants installed: eps0 = 1e-18, alpha = eps0^(1/3); stages degenerate at feasible n");
        std::cerr << "warning: " << warnings.back() << '\n';
    }
    DriverResult r = solve_driver(g, p);
    json report = {{"instance", {{"path", o.file}, {"n", g.n()}, {"edges", g.edge_count()}}},
                   {"status", to_string(r.status)},
                   {"branch", to_string(r.branch)},
                   {"certificate", o.cert.empty() ? json(nullptr) : json(o.cert)},
                   {"driver", r.report}};
    for (auto& w : warnings) report["driver"]["warnings"].push_back(w);
    if (o.timings) report["timings_ms"] = r.timings_ms;
    json verdict = emit_certificate(g, o.cert, r.tiling);
    report["verdict"] = verdict;
    std::cout << report.dump(2) << '\n';
    if (r.status == SearchStatus::found && !verdict["ok"].get<bool>()) {
        std::cerr << "error: certificate failed revalidation\n";
        return exit_violation;
    }
    return exit_for(r.status);
}

int run_oracle(const std::string& file, const std::string& cert, double nodes, double seconds) {
    Hypergraph3 g = read_instance_file(file);
    if (g.n() % 4 != 0) throw InputError("n = " + std::to_string(g.n()) + " is not divisible by 4");
    auto r = perfect_tiling_exact(g, make_budget(nodes, seconds));
    json report = {{"instance", {{"path", file}, {"n", g.n()}, {"edges", g.edge_count()}}},
                   {"status", to_string(r.status)},
                   {"nodes", r.stats.nodes}};
    if (r.tiling) report["verdict"] = emit_certificate(g, cert, r.tiling);
    std::cout << report.dump(2) << '\n';
    return exit_for(r.status);
}

int run_verify(const std::string& file, const std::string& cert_path, bool perfect) {
    Hypergraph3 g = read_instance_file(file);
    Certificate cert;
    try {
        cert = read_certificate_file(cert_path);
    } catch (const InputError& e) {
        std::cout << "violation: " << e.what() << '\n';
        return exit_violation;
    }
    Verdict v = validate_tiling(g, cert.tiling, perfect || cert.perfect);
    if (v.ok) {
        std::cout << "ok: " << cert.tiling.size() << " copies" << '\n';
        return exit_ok;
    }
    for (const auto& msg : v.violations) std::cout << "violation: " << msg << '\n';
    return exit_violation;
}

struct ScanOptions {
    std::string range;
    int trials = 10;
    int d_offset = 0;
    std::uint64_t seed = 0;
    std::string mode = "auto";
    unsigned threads = 0;
    double node_limit = 1e6, time_limit = 10.0;
};

std::vector<int> parse_range(const std::string& s) {
    int a = 0, b = 0, step = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(s);
    if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0 || a > b || a <= 0)
        throw CLI::ValidationError("--n-range", "expected A:B:STEP with 0 < A <= B and STEP > 0");
    std::vector<int> out;
    for (int n = a; n <= b; n += step) {
        if (n % 4 != 0) throw CLI::ValidationError("--n-range", "every n in the range must be divisible by 4");
        out.push_back(n);
    }
    return out;
}

int run_scan(const ScanOptions& o, const std::vector<int>& ns) {
    struct Trial {
        int n, t;
        SearchStatus status = SearchStatus::exhausted;
        double ms = 0;
    };
    std::vector<Trial> jobs;
    for (int n : ns)
        for (int t = 0; t < o.trials; ++t) jobs.push_back({n, t});
    DriverParams base;
    base.mode = parse_driver_mode(o.mode);
    base.budget = make_budget(o.node_limit, o.time_limit);
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::string first_error;
    auto worker = [&] {
        for (std::size_t i; (i = next++) < jobs.size();) {
            Trial& job = jobs[i];
            const auto trial_seed = Rng::derive_seed(o.seed, static_cast<std::uint64_t>(job.n), static_cast<std::uint64_t>(job.t));
            const int d = std::max(0, job.n / 4 + o.d_offset);
            const auto start = std::chrono::steady_clock::now();
            try {
                auto inst = random_codegree_instance(job.n, d, trial_seed);
                DriverParams p = base;
                p.seed = trial_seed;
                job.status = solve_driver(inst.graph, p).status;
            } catch (const std::exception& e) {
                std::lock_guard lock(err_mutex);
                if (first_error.empty()) first_error = e.what();
            }
            job.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        }
    };
    const unsigned threads = o.threads ? o.threads : std::max(1U, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (!first_error.empty()) throw std::runtime_error("scan trial failed: " + first_error);

    for (int n : ns) {
        int solved = 0, infeasible = 0, exhausted = 0;
        double total = 0;
        for (const Trial& j : jobs) {
            if (j.n != n) continue;
            solved += j.status == SearchStatus::found;
            infeasible += j.status == SearchStatus::infeasible;
            exhausted += j.status == SearchStatus::exhausted;
            total += j.ms;
        }
        json line = {{"n", n},
                     {"d", std::max(0, n / 4 + o.d_offset)},
                     {"trials", o.trials},
                     {"solved", solved},
                     {"infeasible", infeasible},
                     {"exhausted", exhausted},
                     {"fraction_solved", o.trials ? static_cast<double>(solved) / o.trials : 0.0},
                     {"mean_ms", o.trials ? total / o.trials : 0.0}};
        std::cout << line.dump() << '\n';
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"D-tilings of 3-uniform hypergraphs (D = K4^3 - 2e)"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "generate an instance");
    std::string kind, gen_out;
    int gen_n = 0, gen_d = -1;
    std::uint64_t gen_seed = 0;
    gen->add_option("--kind", kind, "g0|g1|sts|complete|tripartite|random|planted")->required();
    gen->add_option("--n", gen_n, "order")->required();
    gen->add_option("--d", gen_d, "target min codegree (random; default n/4)");
    gen->add_option("--seed", gen_seed, "seed (random)");
    gen->add_option("--out", gen_out, "output file (default stdout)");

    SolveOptions so;
    auto* solve = app.add_subcommand("solve", "solve an instance; JSON report on stdout");
    solve->add_option("file", so.file, "instance file")->required();
    solve->add_option("--mode", so.mode, "auto|extremal|absorb|exact")->check(CLI::IsMember({"auto", "extremal", "absorb", "exact"}));
    solve->add_option("--alpha", so.alpha, "XYZ threshold and |A| <= alpha n")->check(CLI::Range(0.0, 1.0));
    solve->add_option("--gamma", so.gamma, "near-perfect tiling parameter")->check(CLI::PositiveNumber);
    solve->add_option("--eps", so.eps, "extremality slack")->check(CLI::Range(0.0, 1.0));
    solve->add_option("--seed", so.seed, "seed for all randomized stages");
    solve->add_option("--cert", so.cert, "certificate output file");
    solve->add_option("--node-limit", so.node_limit, "exact search node budget")->check(CLI::PositiveNumber);
    solve->add_option("--time-limit", so.time_limit, "exact search time budget (s)")->check(CLI::PositiveNumber);
    solve->add_flag("--strict", so.strict, "full 4-set scan when pruning the absorbing family (n <= 30)");
    solve->add_flag("--timings", so.timings, "include per-stage timings in the report");
    solve->add_flag("--paper-constants", so.asymptotic_constants, "eps0 = 1e-18, alpha = eps0^(1/3)");

    std::string v_file, v_cert;
    bool v_perfect = false;
    auto* verify = app.add_subcommand("verify", "check a certificate against an instance");
    verify->add_option("file", v_file, "instance file")->required();
    verify->add_option("--cert", v_cert, "certificate file")->required();
    verify->add_flag("--perfect", v_perfect, "require a perfect tiling");

    ScanOptions sc;
    auto* scan = app.add_subcommand("scan", "solve random instances at min codegree n/4 + offset; JSON lines");
    scan->add_option("--n-range", sc.range, "A:B:STEP")->required();
    scan->add_option("--trials", sc.trials, "trials per n")->check(CLI::NonNegativeNumber);
    scan->add_option("--d-offset", sc.d_offset, "-1, 0 or +1")->check(CLI::IsMember({-1, 0, 1}));
    scan->add_option("--seed", sc.seed, "base seed");
    scan->add_option("--mode", sc.mode, "auto|extremal|absorb|exact")->check(CLI::IsMember({"auto", "extremal", "absorb", "exact"}));
    scan->add_option("--threads", sc.threads, "worker threads (default: hardware)");
    scan->add_option("--node-limit", sc.node_limit, "exact search node budget")->check(CLI::PositiveNumber);
    scan->add_option("--time-limit", sc.time_limit, "exact search time budget (s)")->check(CLI::PositiveNumber);

    std::string o_file, o_cert;
    double o_nodes = 1e7, o_seconds = 60.0;
    auto* oracle = app.add_subcommand("oracle", "exact solver only");
    oracle->add_option("file", o_file, "instance file")->required();
    oracle->add_option("--cert", o_cert, "certificate output file");
    oracle->add_option("--node-limit", o_nodes, "node budget")->check(CLI::PositiveNumber);
    oracle->add_option("--time-limit", o_seconds, "time budget (s)")->check(CLI::PositiveNumber);

    std::vector<int> scan_ns;
    try {
        app.parse(argc, argv);
        if (scan->parsed()) scan_ns = parse_range(sc.range);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (gen->parsed()) {
            ConstructionSpec spec;
            spec.kind = parse_construction_kind(kind);
            spec.n = gen_n;
            spec.seed = gen_seed;
            spec.target_codegree = gen_d >= 0 ? gen_d : gen_n / 4;
            Hypergraph3 g = generate(spec);
            if (gen_out.empty()) {
                write_instance(std::cout, g);
            } else {
                std::ostringstream text;
                write_instance(text, g);
                write_file(gen_out, text.str());
            }
            return exit_ok;
        }
        if (solve->parsed()) return run_solve(so);
        if (verify->parsed()) return run_verify(v_file, v_cert, v_perfect);
        if (scan->parsed()) return run_scan(sc, scan_ns);
        if (oracle->parsed()) return run_oracle(o_file, o_cert, o_nodes, o_seconds);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_data;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_internal;
    }
    return exit_usage;
}
