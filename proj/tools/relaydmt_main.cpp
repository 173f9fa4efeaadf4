#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <charconv>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "relaydmt/montecarlo.hpp"
#include "relaydmt/serialize.hpp"
#include "relaydmt/solver.hpp"

using namespace relaydmt;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kNoData = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot open output file: " + path);
    out << content;
}

// --seed wins, then DMT_SEED, then the default
std::uint64_t resolve_seed(bool flag_given, std::uint64_t flag_value) {
    if (flag_given) return flag_value;
    const char* env = std::getenv("DMT_SEED");
    if (!env) return 42;
    std::uint64_t v = 0;
    auto res = std::from_chars(env, env + std::strlen(env), v);
    if (res.ec != std::errc{} || *res.ptr != '\0')
        throw UsageError(std::string("DMT_SEED is not an unsigned integer: ") + env);
    return v;
}

struct CurveArgs {
    int p = 0, m = 0, n = 0;
    std::vector<std::string> modes;
    double r_step = 0.25;
    std::string format = "csv";
    std::string output;
};

int run_curve(const CurveArgs& a) {
    if (a.modes.size() > 1 && a.format != "svg")
        throw UsageError("several modes need --format svg to share one chart");

    AntennaConfig cfg{a.p, a.m, a.n};
    std::vector<std::pair<std::string, PiecewiseLinearCurve>> curves;
    for (const auto& mode : a.modes) {
        if (mode == "hd-analytic") {
            if (a.p != a.n) throw UsageError("mode hd-analytic requires p == n");
            curves.emplace_back(mode, symmetric_half_duplex_dmt(a.n, a.m));
        } else if (mode == "hd-solver") {
            curves.emplace_back(mode, half_duplex_dmt(cfg, a.r_step));
        } else if (mode == "fd") {
            curves.emplace_back(mode, full_duplex_dmt(cfg));
        } else {
            curves.emplace_back(mode, ptp_dmt(a.p, a.n));
        }
    }

    if (a.format == "csv")
        emit(a.output, curve_csv(curves.front().second));
    else if (a.format == "json")
        emit(a.output, curve_json(curves.front().first, cfg, curves.front().second));
    else
        emit(a.output, curves_svg(curves));
    return kOk;
}

struct SolveArgs {
    int p = 0, m = 0, n = 0;
    std::string cut = "dest";
    double t = 0.5;
    double r = 0.0;
    std::string format = "json";
    std::string output;
};

int run_solve(const SolveArgs& a) {
    if (a.format != "json") throw UsageError("solve reports json only");
    DiversityProgram prog{{a.p, a.m, a.n}, a.cut == "dest" ? Cut::destination : Cut::source, a.t};
    auto result = solve_program(prog, a.r);
    emit(a.output, solve_json(prog, a.r, result));
    return kOk;
}

struct SimulateArgs {
    OutageSpec spec;
    std::string cut = "dest";
    std::string format = "csv";
    std::string output;
};

int run_simulate(SimulateArgs& a) {
    a.spec.cut = a.cut == "dest" ? Cut::destination : Cut::source;
    auto series = outage_probability(a.spec);
    double reference = diversity_order(a.spec.config, a.spec.cut, a.spec.t, a.spec.r);

    SlopeFit fit;
    bool have_fit = true;
    try {
        fit = diversity_slope(series);
    } catch (const insufficient_data&) {
        have_fit = false;
    }
    const SlopeFit* fp = have_fit ? &fit : nullptr;
    if (a.format == "csv")
        emit(a.output, outage_csv(series, fp, reference));
    else
        emit(a.output, outage_json(a.spec, series, fp, reference));
    return have_fit ? kOk : kNoData;
}

struct SphericalArgs {
    SphericalSpec spec;
    std::vector<double> powers;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 42;
    std::string format = "csv";
    std::string output;
};

int run_spherical(const SphericalArgs& a) {
    SphericalRun run;
    run.spec = a.spec;
    run.powers = a.powers;
    run.predicted = spherical_exponent(a.spec);
    if (run.predicted.super_polynomial) {
        run.suppol = superpoly_decay_check(a.spec, a.powers, a.trials, a.seed);
    } else {
        std::vector<double> xs, ys;
        for (double p : a.powers) {
            auto est = spherical_integral_estimate(a.spec, p, a.trials, a.seed);
            run.estimates.push_back(est);
            if (est.mean > 0) {
                xs.push_back(std::log10(p));
                ys.push_back(std::log10(est.mean));
            }
        }
        if (xs.size() >= 2) {
            double mx = 0, my = 0;
            for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i], my += ys[i];
            mx /= xs.size();
            my /= xs.size();
            double sxx = 0, sxy = 0, ss = 0;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                sxx += (xs[i] - mx) * (xs[i] - mx);
                sxy += (xs[i] - mx) * (ys[i] - my);
            }
            if (sxx > 0) {
                run.fitted_slope = sxy / sxx;
                for (std::size_t i = 0; i < xs.size(); ++i) {
                    double resid = ys[i] - my - run.fitted_slope * (xs[i] - mx);
                    ss += resid * resid;
                }
                run.fit_stderr = xs.size() > 2 ? std::sqrt(ss / double(xs.size() - 2) / sxx) : 0.0;
                run.has_fit = true;
            }
        }
    }
    emit(a.output, a.format == "csv" ? spherical_csv(run) : spherical_json(run));
    return kOk;
}

struct VerifyArgs {
    std::string scope = "all";
    std::uint64_t trials = 0;  // 0 = per-check defaults
    std::uint64_t seed = 42;
    std::string format = "table";
    std::string output;
};

void verify_witness(std::vector<VerifyCheck>& checks) {
    for (int n = 1; n <= 3; ++n) {
        for (int m = 1; m <= 7; ++m) {
            int l0 = symmetric_pivot(n, m);
            int count = 0;
            bool ok = true;
            double worst = 0;
            auto probe = [&](WitnessRegime reg, int l) {
                auto w = witness_check(n, m, reg, l);
                double lp = diversity_order({n, m, n}, Cut::destination, 0.5, w.r);
                worst = std::max({worst, std::abs(w.value - w.expected), std::abs(lp - w.value)});
                ok = ok && w.feasible && std::abs(w.value - w.expected) <= 1e-12 &&
                     std::abs(lp - w.value) <= 1e-9;
                ++count;
            };
            for (int l = 0; l <= l0; ++l) probe(WitnessRegime::low, l);
            for (int l = 0; l <= n - l0; ++l) probe(WitnessRegime::mid, l);
            for (int l = 0; l <= l0; ++l) probe(WitnessRegime::high, l);
            checks.push_back({"witness n=" + std::to_string(n) + " m=" + std::to_string(m), ok,
                              std::to_string(count) + " corners, worst gap " +
                                  format_double(worst)});
        }
    }
}

void verify_oracle(std::vector<VerifyCheck>& checks) {
    const int res = 32;
    for (int p = 1; p <= 2; ++p) {
        for (int m = 1; m <= 2; ++m) {
            for (int n = 1; n <= 2; ++n) {
                bool ok = true;
                double worst = 0;
                int solved = 0;
                for (auto cut : {Cut::destination, Cut::source}) {
                    for (double t : {0.0, 0.5, 1.0}) {
                        DiversityProgram prog{{p, m, n}, cut, t};
                        double slack = coefficient_mass(prog) / res;
                        double rmax = std::min(p, n);
                        for (double frac : {0.0, 0.5, 1.0}) {
                            double r = frac * rmax;
                            double lp = solve_program(prog, r).value;
                            double lattice = grid_oracle(prog, r, res);
                            ok = ok && lattice >= lp - 1e-9 && lattice <= lp + slack + 1e-9;
                            worst = std::max(worst, lattice - lp);
                            ++solved;
                        }
                    }
                }
                checks.push_back({"oracle p=" + std::to_string(p) + " m=" + std::to_string(m) +
                                      " n=" + std::to_string(n),
                                  ok,
                                  std::to_string(solved) + " programs, worst lattice excess " +
                                      format_double(worst)});
            }
        }
    }
}

void verify_haar(std::vector<VerifyCheck>& checks, std::uint64_t trials, std::uint64_t seed) {
    {
        std::uint64_t draws = trials ? std::max<std::uint64_t>(trials / 100, 10) : 300;
        double worst = 0;
        RngStream rng(seed, 1);
        for (int n = 1; n <= 4; ++n) {
            for (std::uint64_t i = 0; i < draws; ++i) {
                auto u = sample_haar_unitary(n, rng);
                auto g = matmul(adjoint(u), u);
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b)
                        worst = std::max(worst,
                                         std::abs(g(a, b) - (a == b ? cxd(1) : cxd(0))));
            }
        }
        checks.push_back({"haar unitarity", worst <= 1e-10,
                          "max defect " + format_double(worst)});
    }
    {
        std::uint64_t draws = trials ? trials : 20000;
        RngStream rng(seed, 2);
        std::vector<double> xs(draws);
        for (auto& x : xs) x = std::norm(sample_haar_unitary(2, rng)(0, 0));
        std::sort(xs.begin(), xs.end());
        double d = 0;
        for (std::uint64_t i = 0; i < draws; ++i) {
            d = std::max(d, std::abs(xs[i] - double(i) / draws));
            d = std::max(d, std::abs(double(i + 1) / draws - xs[i]));
        }
        double stat = std::sqrt(double(draws)) * d;
        checks.push_back({"haar corner entry law", stat <= 1.63,
                          "scaled KS distance " + format_double(stat)});
    }
    {
        std::uint64_t draws = trials ? trials : 10000;
        auto res = antidiagonal_min_check({2, 1}, {3, 1}, 2, draws, seed);
        checks.push_back({"rotation floor", res.pass,
                          "floor " + format_double(res.floor) + ", min observed " +
                              format_double(res.min_observed) + ", violations " +
                              std::to_string(res.violations)});
    }
}

void verify_tailbound(std::vector<VerifyCheck>& checks, std::uint64_t trials,
                      std::uint64_t seed) {
    std::uint64_t n_trials = trials ? trials : 100000;
    auto scalar = [&](double v) {
        ComplexMatrix a(1, 1);
        a(0, 0) = v;
        return a;
    };
    ComplexMatrix diag(2, 2);
    diag(0, 0) = 2;
    diag(1, 1) = 3;
    struct Case {
        const char* name;
        ComplexMatrix a;
        int n;
    } cases[] = {{"tail bound 1x1", scalar(4.0), 1},
                 {"tail bound diag", diag, 1},
                 {"tail bound wide", scalar(4.0), 2}};
    for (auto& c : cases) {
        auto res = tail_bound_check(c.a, c.n, n_trials, seed);
        checks.push_back({c.name, res.pass,
                          "det * estimate " + format_double(res.det_product) + " in [" +
                              format_double(res.c_lower) + ", " + format_double(res.c_upper) +
                              "]"});
    }
}

void verify_covariance(std::vector<VerifyCheck>& checks, std::uint64_t trials,
                       std::uint64_t seed) {
    std::uint64_t n_trials = trials ? trials : 20000;
    auto res = covariance_bound_check(2, 2, 100.0, n_trials, seed);
    checks.push_back({"covariance relaxation", res.pass,
                      "violations " + std::to_string(res.violations) + ", max excess " +
                          format_double(res.max_excess)});
}

void verify_identity(std::vector<VerifyCheck>& checks, std::uint64_t trials,
                     std::uint64_t seed) {
    std::uint64_t n_trials = trials ? trials : 1000;
    auto res = mutual_info_identity_check(2, 2, 2, 0.37, 100.0, n_trials, seed);
    checks.push_back({"split information identity", res.pass,
                      "max residual " + format_double(res.max_residual) + " over " +
                          std::to_string(res.draws) + " draws"});
}

int run_verify(const VerifyArgs& a) {
    std::vector<VerifyCheck> checks;
    bool all = a.scope == "all";
    if (all || a.scope == "witness") verify_witness(checks);
    if (all || a.scope == "oracle") verify_oracle(checks);
    if (all || a.scope == "haar") verify_haar(checks, a.trials, a.seed);
    if (all || a.scope == "tailbound") verify_tailbound(checks, a.trials, a.seed);
    if (all || a.scope == "covariance") verify_covariance(checks, a.trials, a.seed);
    if (all || a.scope == "identity") verify_identity(checks, a.trials, a.seed);

    emit(a.output, a.format == "table" ? verify_table(checks) : verify_json(checks));
    for (const auto& c : checks)
        if (!c.pass) return kCheckFailed;
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"diversity-multiplexing tradeoff tools for the MIMO half-duplex relay channel"};
    app.require_subcommand(1);

    CurveArgs curve_args;
    auto* curve = app.add_subcommand("curve", "tradeoff curves as csv, json or svg");
    curve->add_option("-p,--source", curve_args.p, "source antennas")->required();
    curve->add_option("-m,--relay", curve_args.m, "relay antennas")->required();
    curve->add_option("-n,--dest", curve_args.n, "destination antennas")->required();
    curve->add_option("--mode", curve_args.modes, "curve family (repeatable)")
        ->required()
        ->check(CLI::IsMember({"hd-analytic", "hd-solver", "fd", "ptp"}));
    curve->add_option("--r-step", curve_args.r_step, "solver grid pitch (1/2, 1/4 or 1/8)");
    curve->add_option("--format", curve_args.format, "output format")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    curve->add_option("-o,--output", curve_args.output, "write to file instead of stdout");

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "one cut-set program at fixed t and r");
    solve->add_option("-p,--source", solve_args.p, "source antennas")->required();
    solve->add_option("-m,--relay", solve_args.m, "relay antennas")->required();
    solve->add_option("-n,--dest", solve_args.n, "destination antennas")->required();
    solve->add_option("--cut", solve_args.cut, "which cut")
        ->check(CLI::IsMember({"dest", "source"}));
    solve->add_option("-t", solve_args.t, "listening fraction");
    solve->add_option("-r", solve_args.r, "multiplexing gain")->required();
    solve->add_option("--format", solve_args.format, "output format (json)");
    solve->add_option("-o,--output", solve_args.output, "write to file instead of stdout");

    SimulateArgs sim_args;
    std::uint64_t sim_seed = 42;
    auto* sim = app.add_subcommand("simulate", "Monte Carlo outage estimates against the curve");
    sim->add_option("-p,--source", sim_args.spec.config.source, "source antennas")->required();
    sim->add_option("-m,--relay", sim_args.spec.config.relay, "relay antennas")->required();
    sim->add_option("-n,--dest", sim_args.spec.config.dest, "destination antennas")->required();
    sim->add_option("--cut", sim_args.cut, "which cut")->check(CLI::IsMember({"dest", "source"}));
    sim->add_option("-t", sim_args.spec.t, "listening fraction");
    sim->add_option("-r", sim_args.spec.r, "multiplexing gain");
    sim->add_option("--snr-db", sim_args.spec.snr_db, "SNR grid in dB")->delimiter(',');
    sim->add_option("--trials", sim_args.spec.trials, "trials per SNR point");
    auto* sim_seed_opt = sim->add_option("--seed", sim_seed, "RNG master seed");
    sim->add_option("--workers", sim_args.spec.workers, "worker threads, 0 = all cores");
    sim->add_option("--format", sim_args.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sim->add_option("-o,--output", sim_args.output, "write to file instead of stdout");

    SphericalArgs sph_args;
    std::uint64_t sph_seed = 42;
    auto* sph = app.add_subcommand("spherical", "rotation average of the exponent kernel");
    sph->add_option("-n", sph_args.spec.n, "unitary dimension")->required();
    sph->add_option("-p", sph_args.spec.p, "direct side count")->required();
    sph->add_option("-m", sph_args.spec.m, "relay side count")->required();
    sph->add_option("--alphas", sph_args.spec.alphas, "direct exponents, ascending")
        ->required()
        ->delimiter(',');
    sph->add_option("--betas", sph_args.spec.betas, "relay exponents, ascending")
        ->required()
        ->delimiter(',');
    sph->add_option("--powers", sph_args.powers, "powers to evaluate")
        ->required()
        ->delimiter(',');
    sph->add_option("--trials", sph_args.trials, "draws per power");
    auto* sph_seed_opt = sph->add_option("--seed", sph_seed, "RNG master seed");
    sph->add_option("--format", sph_args.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sph->add_option("-o,--output", sph_args.output, "write to file instead of stdout");

    VerifyArgs ver_args;
    std::uint64_t ver_seed = 42;
    auto* ver = app.add_subcommand("verify", "self-checks for the solver and the samplers");
    ver->add_option("--scope", ver_args.scope, "which checks to run")
        ->check(CLI::IsMember(
            {"all", "witness", "oracle", "haar", "tailbound", "covariance", "identity"}));
    ver->add_option("--trials", ver_args.trials, "Monte Carlo draws, 0 = per-check defaults");
    auto* ver_seed_opt = ver->add_option("--seed", ver_seed, "RNG master seed");
    ver->add_option("--format", ver_args.format, "output format")
        ->check(CLI::IsMember({"table", "json"}));
    ver->add_option("-o,--output", ver_args.output, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e) ? kUsage : kOk;
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e) ? kUsage : kOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (curve->parsed()) return run_curve(curve_args);
        if (solve->parsed()) return run_solve(solve_args);
        if (sim->parsed()) {
            sim_args.spec.seed = resolve_seed(sim_seed_opt->count() > 0, sim_seed);
            return run_simulate(sim_args);
        }
        if (sph->parsed()) {
            sph_args.seed = resolve_seed(sph_seed_opt->count() > 0, sph_seed);
            return run_spherical(sph_args);
        }
        if (ver->parsed()) {
            ver_args.seed = resolve_seed(ver_seed_opt->count() > 0, ver_seed);
            return run_verify(ver_args);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
