// Command-line front end: point-set generation, exact star discrepancy,
// threshold-accepting lower bounds with the best-of-10 protocol, and the
// theory self-test battery.
//
// Exit codes: 0 success, 1 invalid input, 2 enumeration budget refused.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stardisc/stardisc.hpp"

using namespace stardisc;

namespace {

PointSet load_pointset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return read_pointset(in);
}

DirectionTable load_directions(const std::string& path) {
    if (path.empty()) return parse_sobol_directions(std::string(kDefaultSobolDirections));
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return parse_sobol_directions(in);
}

std::string join_coords(const std::vector<double>& y) {
    std::string s;
    char buf[32];
    for (std::size_t j = 0; j < y.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%.17g", y[j]);
        if (j) s += ";";
        s += buf;
    }
    return s;
}

int cmd_generate(const std::string& family, std::size_t n, std::size_t d,
                 const std::vector<std::uint64_t>& vec, std::uint64_t start,
                 bool start_given, const std::string& directions, const std::string& out_path) {
    PointSet X = [&] {
        if (family == "glp") {
            if (vec.empty())
                throw std::invalid_argument("glp needs --vector h1,h2,...");
            return generate_glp(n, vec);
        }
        if (family == "halton") return generate_halton(n, d, start_given ? start : 1);
        if (family == "faure") {
            const std::uint64_t s = start_given ? start : 1;
            if (s > 1) throw std::invalid_argument("faure supports --start 0 or 1 only");
            return generate_faure(n, d, s == 1);
        }
        if (family == "sobol")
            return generate_sobol(n, d, load_directions(directions), start_given ? start : 0);
        throw std::invalid_argument("unknown family " + family);
    }();
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    write_pointset(out, X);
    std::printf("wrote %zu points, d=%zu to %s\n", X.size(), X.dimension(), out_path.c_str());
    return 0;
}

int cmd_exact(const std::string& path, std::uint64_t budget) {
    const PointSet X = load_pointset(path);
    const ExactResult r = exact_star_discrepancy(X, budget);
    std::printf("d_inf_star = %.17g\n", r.value);
    std::printf("side = %s\n", r.side == Side::delta ? "delta" : "delta_bar");
    std::printf("witness = %s\n", join_coords(r.witness).c_str());
    std::printf("delta_max = %.17g\ndelta_bar_max = %.17g\n", r.delta_max, r.delta_bar_max);
    return 0;
}

int cmd_estimate(const std::string& path, const std::string& algo_name,
                 std::uint64_t iterations, std::uint64_t trials, std::uint64_t seed,
                 std::optional<double> reference, const std::string& csv_path,
                 unsigned threads) {
    const PointSet X = load_pointset(path);
    Algorithm algo;
    if (algo_name == "wf") algo = Algorithm::wf;
    else if (algo_name == "ta-basic") algo = Algorithm::ta_basic;
    else if (algo_name == "ta-improved") algo = Algorithm::ta_improved;
    else throw std::invalid_argument("unknown --algo " + algo_name);

    const auto rep = run_experiment(X, path, algo, trials, iterations, seed, reference, threads);
    double best = 0.0;
    for (const auto& t : rep.trials) best = std::max(best, t.value);
    std::printf("instance       %s (n=%zu d=%zu)\n", path.c_str(), X.size(), X.dimension());
    std::printf("algorithm      %s\n", algorithm_name(algo));
    std::printf("trials         %llu x %llu iterations, master seed %llu\n",
                (unsigned long long)trials, (unsigned long long)iterations,
                (unsigned long long)seed);
    std::printf("best found     %.17g\n", best);
    std::printf("best-of-10     %.17g\n", rep.best_of_10);
    if (rep.hits)
        std::printf("hits           %llu/%llu (reference %.17g)\n",
                    (unsigned long long)*rep.hits, (unsigned long long)trials, *rep.reference);
    std::printf("sec/trial      %.3f\n", rep.seconds_per_trial);
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw std::invalid_argument("cannot write " + csv_path);
        write_csv(out, rep);
    }
    return 0;
}

int cmd_theory_selftest(std::uint64_t samples, std::uint64_t seed) {
    const auto results = theory_selftest(samples, seed);
    std::size_t failed = 0;
    for (const auto& r : results) {
        std::printf("%-52s %s%s%s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL",
                    r.detail.empty() ? "" : "  ", r.detail.c_str());
        if (!r.pass) ++failed;
    }
    std::printf("%zu/%zu checks passed\n", results.size() - failed, results.size());
    return failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"star discrepancy: exact enumeration and threshold-accepting lower bounds"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "generate a point-set instance");
    std::string family, directions, out_path;
    std::size_t n = 0, d = 0;
    std::vector<std::uint64_t> vec;
    std::uint64_t start = 0;
    gen->add_option("--family", family, "glp|halton|faure|sobol")->required();
    gen->add_option("--n", n, "number of points")->required();
    gen->add_option("--d", d, "dimension");
    gen->add_option("--vector", vec, "GLP generating vector h1,h2,...")->delimiter(',');
    auto* start_opt = gen->add_option("--start", start,
                                      "start index (halton: default 1; sobol: skip, default 0; "
                                      "faure: 0 keeps the origin, default 1)");
    gen->add_option("--directions", directions, "Joe-Kuo direction file (sobol)");
    gen->add_option("--out", out_path, "output file")->required();

    // exact
    auto* ex = app.add_subcommand("exact", "exact star discrepancy by enumeration");
    std::string exact_file;
    std::uint64_t budget = kDefaultNodeBudget;
    ex->add_option("file", exact_file, "point-set file")->required();
    ex->add_option("--budget", budget, "lattice node budget (default 1e9)");

    // estimate
    auto* est = app.add_subcommand("estimate", "threshold-accepting lower bound");
    std::string est_file, algo_name, csv_path;
    std::uint64_t iterations = 100000, trials = 100, seed = 0;
    double reference = 0.0;
    unsigned threads = 0;
    est->add_option("file", est_file, "point-set file")->required();
    est->add_option("--algo", algo_name, "wf|ta-basic|ta-improved")->required();
    est->add_option("--iterations", iterations, "iterations per trial")->required();
    est->add_option("--trials", trials, "number of independent trials")->required();
    est->add_option("--seed", seed, "master seed")->required();
    auto* ref_opt = est->add_option("--reference", reference, "reference value for hit counting");
    est->add_option("--csv", csv_path, "write per-trial CSV");
    est->add_option("--threads", threads, "worker pool size (default: hardware)");

    // theory
    auto* theory = app.add_subcommand("theory", "analysis formulas");
    auto* self = theory->add_subcommand("selftest", "run the verifier battery");
    std::uint64_t samples = 1000000, tseed = 20120521;
    self->add_option("--samples", samples, "Monte Carlo samples per check");
    self->add_option("--seed", tseed, "RNG seed");
    theory->require_subcommand(1);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return cmd_generate(family, n, d, vec, start, !start_opt->empty(), directions,
                                out_path);
        if (ex->parsed()) return cmd_exact(exact_file, budget);
        if (est->parsed())
            return cmd_estimate(est_file, algo_name, iterations, trials, seed,
                                ref_opt->empty() ? std::optional<double>{}
                                                 : std::optional<double>{reference},
                                csv_path, threads);
        if (theory->parsed() && self->parsed()) return cmd_theory_selftest(samples, tseed);
    } catch (const budget_exceeded& e) {
        std::fprintf(stderr, "refused: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
