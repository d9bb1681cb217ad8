// teleopt command-line front end.
//
// Subcommands:
//   analyze    <input.json>  -> JSON analysis report on stdout
//   bounds     --nu-min --nu-max --steps  -> CSV bound curves
//   verify     --count N     -> randomized verification campaign
//   swap-demo  --n-opt --r-max --steps    -> CSV entanglement-swapping curve
//
// Exit codes:
//   0  success
//   1  usage, file or parse error
//   2  unphysical input state
//   3  numerical failure inside a solver
//   4  verification property failure

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "CLI11.hpp"
#include "teleopt/errors.hpp"
#include "teleopt/report.hpp"
#include "teleopt/symplectic.hpp"

namespace {

using namespace teleopt;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitUnphysical = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitVerifyFailed = 4;

int cmd_analyze(const std::string& path, const AnalyzeOptions& opts) {
    json doc;
    try {
        if (path == "-") {
            doc = json::parse(std::cin);
        } else {
            std::ifstream in(path);
            if (!in) {
                std::cerr << "error: cannot open '" << path << "'\n";
                return kExitUsage;
            }
            doc = json::parse(in);
        }
    } catch (const json::parse_error& e) {
        std::cerr << "error: invalid JSON: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        const CmDocument cm = parse_cm_document(doc, opts.tol);
        std::cout << analyze_report(cm.state, cm.label, opts).dump(2) << "\n";
        return kExitOk;
    } catch (const UnphysicalStateError& e) {
        json err;
        err["error"] = {{"type", "unphysical-state"},
                        {"message", e.what()},
                        {"williamson_eigenvalue", e.williamson_eigenvalue}};
        std::cout << err.dump(2) << "\n";
        return kExitUnphysical;
    } catch (const InvalidInputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericalFailureError& e) {
        std::cerr << "error: numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
}

int cmd_bounds(double nu_min, double nu_max, int steps) {
    if (!(nu_min > 0.0 && nu_min <= nu_max && nu_max <= 1.0) || steps < 2) {
        std::cerr << "error: require 0 < nu-min <= nu-max <= 1 and steps >= 2\n";
        return kExitUsage;
    }
    std::cout << "nu,lower,upper,gap\n";
    for (int k = 0; k < steps; ++k) {
        const double nu = nu_min + (nu_max - nu_min) * k / (steps - 1);
        const FidelityBounds b = fidelity_bounds(nu);
        std::cout << format_double(nu) << ',' << format_double(b.lower) << ','
                  << format_double(b.upper) << ',' << format_double(b.upper - b.lower) << "\n";
    }
    return kExitOk;
}

int cmd_swap_demo(double n_opt, double r_max, int steps) {
    if (!(n_opt >= 0.0) || !(r_max > 0.0) || steps < 1) {
        std::cerr << "error: require n-opt >= 0, r-max > 0, steps >= 1\n";
        return kExitUsage;
    }
    std::cout << "r,nu_swap\n";
    for (int k = 1; k <= steps; ++k) {
        const double r = r_max * k / steps;
        const double nu = pt_spectrum(swap_cm(n_opt, r)).nu;
        std::cout << format_double(r) << ',' << format_double(nu) << "\n";
    }
    return kExitOk;
}

TwoModeCM seeded_entangled_state(std::uint64_t seed) {
    for (std::uint64_t bump = 0;; ++bump) {
        const TwoModeCM v =
            random_physical_cm(seed + 0x9e3779b97f4a7c15ULL * bump, 0.3, 1.4);
        if (pt_spectrum(v).nu < 0.98) return v;
    }
}

int cmd_verify(int count, std::uint64_t seed, int oracle_budget) {
    std::printf("%-6s %-22s %-10s %-10s %-7s %-7s %-7s %-7s\n", "idx", "seed", "nu", "f_opt",
                "bounds", "oracle", "lemma1", "fixedpt");
    std::vector<std::uint64_t> failing;
    for (int i = 0; i < count; ++i) {
        const std::uint64_t state_seed = seed + static_cast<std::uint64_t>(i);
        const TwoModeCM v = seeded_entangled_state(state_seed);
        const PtSpectrum spec = pt_spectrum(v);
        bool ok_bounds = false, ok_oracle = false, ok_lemma1 = false, ok_fixed = false;
        double f_opt = 0.0;
        try {
            const OptimizationReport rep = optimal_tgcp(v);
            f_opt = rep.f_opt;
            ok_bounds = rep.f_opt >= rep.bounds.lower - 1e-9 &&
                        rep.f_opt <= rep.bounds.upper + 1e-9;

            BruteForceOptions bf;
            bf.seed = state_seed;
            bf.starts = oracle_budget;
            const BruteForceResult oracle = brute_force_optimal(v, bf);
            ok_oracle = std::fabs(oracle.fidelity - rep.f_opt) < 1e-4;

            const TwoModeCM iso = apply_local_tgcp(v, isotropize_noise(v));
            const Mat2 n_iso = noise_matrix(iso).n;
            const Mat2 n_orig = noise_matrix(v).n;
            const double iso_gap =
                std::fabs(n_iso.trace() - 2.0 * std::sqrt(n_iso.det()));
            ok_lemma1 = iso_gap <= 1e-9 * std::max(1.0, n_iso.trace()) &&
                        std::fabs(n_iso.det() / n_orig.det() - 1.0) <= 1e-9 &&
                        fidelity_coherent(iso) >= fidelity_coherent(v) - 1e-12;

            const OptimizationReport rep2 = optimal_tgcp(rep.output_cm);
            const Mat4& w = rep2.output_cm.matrix();
            const double res_constr = std::max(
                {std::fabs((w(0, 0) - w(1, 1)) - (w(2, 2) - w(3, 3))),
                 std::fabs((w(0, 0) - w(1, 1)) - (-w(0, 2) - w(1, 3)))});
            ok_fixed = rep2.attenuation_side == Side::none &&
                       std::fabs(rep2.f_opt - rep.f_opt) < 1e-8 && res_constr < 1e-8;
        } catch (const Error& e) {
            std::fprintf(stderr, "seed %llu: %s\n",
                         static_cast<unsigned long long>(state_seed), e.what());
        }
        std::printf("%-6d %-22llu %-10.7f %-10.7f %-7s %-7s %-7s %-7s\n", i,
                    static_cast<unsigned long long>(state_seed), spec.nu, f_opt,
                    ok_bounds ? "ok" : "FAIL", ok_oracle ? "ok" : "FAIL",
                    ok_lemma1 ? "ok" : "FAIL", ok_fixed ? "ok" : "FAIL");
        if (!(ok_bounds && ok_oracle && ok_lemma1 && ok_fixed)) failing.push_back(state_seed);
    }
    if (failing.empty()) {
        std::printf("all %d states passed\n", count);
        return kExitOk;
    }
    std::printf("%zu failing state(s); replay seeds:", failing.size());
    for (std::uint64_t s : failing) std::printf(" %llu", static_cast<unsigned long long>(s));
    std::printf("\n");
    return kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-mode Gaussian teleportation-fidelity analysis"};
    app.require_subcommand(1);

    auto* analyze = app.add_subcommand("analyze", "Analyze a covariance-matrix document");
    std::string input_path;
    AnalyzeOptions aopts;
    analyze->add_option("input", input_path, "Input JSON file ('-' for stdin)")->required();
    analyze->add_flag("--oracle", aopts.oracle, "Run the brute-force oracle cross-check");
    analyze->add_option("--seed", aopts.seed, "Oracle seed");
    analyze->add_option("--oracle-starts", aopts.oracle_starts, "Oracle multistart budget");
    analyze->add_option("--tol", aopts.tol, "Input validation tolerance");

    auto* bounds = app.add_subcommand("bounds", "Emit the fidelity bound curves as CSV");
    double nu_min = 0.001, nu_max = 1.0;
    int steps = 1000;
    std::string format = "csv";
    bounds->add_option("--nu-min", nu_min, "Lowest nu");
    bounds->add_option("--nu-max", nu_max, "Highest nu");
    bounds->add_option("--steps", steps, "Number of rows");
    bounds->add_option("--format", format, "Output format (csv)");

    auto* verify = app.add_subcommand("verify", "Randomized verification campaign");
    int count = 0;
    std::uint64_t vseed = 12345;
    int oracle_budget = 32;
    verify->add_option("--count", count, "Number of random states")->required();
    verify->add_option("--seed", vseed, "Base seed");
    verify->add_option("--oracle-budget", oracle_budget, "Oracle multistart budget");

    auto* swap_demo = app.add_subcommand("swap-demo", "Entanglement-swapping PT eigenvalue curve");
    double n_opt = 0.0, r_max = 15.0;
    int swap_steps = 100;
    swap_demo->add_option("--n-opt", n_opt, "Noise parameter n_opt");
    swap_demo->add_option("--r-max", r_max, "Largest squeezing parameter");
    swap_demo->add_option("--steps", swap_steps, "Number of rows");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(input_path, aopts);
        if (bounds->parsed()) {
            if (format != "csv") {
                std::cerr << "error: unsupported format '" << format << "'\n";
                return kExitUsage;
            }
            return cmd_bounds(nu_min, nu_max, steps);
        }
        if (verify->parsed()) {
            if (count < 1) {
                std::cerr << "error: --count must be >= 1\n";
                return kExitUsage;
            }
            return cmd_verify(count, vseed, oracle_budget);
        }
        if (swap_demo->parsed()) return cmd_swap_demo(n_opt, r_max, swap_steps);
    } catch (const UnphysicalStateError& e) {
        std::cerr << "error: unphysical state: " << e.what() << "\n";
        return kExitUnphysical;
    } catch (const NumericalFailureError& e) {
        std::cerr << "error: numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
