#include "relaydmt/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace relaydmt {

namespace {

double pos(double v) { return v > 0 ? v : 0.0; }

void validate_params(const DiversityProgram& prog, double r) {
    const auto& c = prog.config;
    if (c.source < 1 || c.relay < 1 || c.dest < 1)
        throw std::invalid_argument("antenna counts must be >= 1");
    if (!(prog.t >= 0.0 && prog.t <= 1.0))
        throw std::invalid_argument("listening fraction must lie in [0, 1]");
    double rmax = std::min(c.source, c.dest);
    if (!(r >= 0.0 && r <= rmax))
        throw std::invalid_argument("rate must lie in [0, min(source, dest)]");
}

// rate constraint left side at a box point
double rate_load(const DiversityProgram& prog, const ExponentPoint& pt) {
    double s = 0;
    for (double a : pt.alphas) s += pos(1.0 - a);
    double sb = 0;
    for (double b : pt.betas) sb += pos(1.0 - b);
    return s + prog.rate_weight() * sb;
}

}  // namespace

int DiversityProgram::dim_direct() const { return std::min(config.dest, config.source); }

int DiversityProgram::dim_relay() const {
    int anchor = cut == Cut::destination ? config.dest : config.source;
    return std::min(anchor, config.relay);
}

double DiversityProgram::direct_coeff(int j) const {
    return config.dest + config.source - 2 * j + 1;
}

double DiversityProgram::relay_coeff(int k) const {
    int anchor = cut == Cut::destination ? config.dest : config.source;
    return anchor + config.relay - 2 * k + 1;
}

double DiversityProgram::rate_weight() const { return cut == Cut::destination ? 1.0 - t : t; }

int DiversityProgram::antidiagonal_sum() const {
    return (cut == Cut::destination ? config.dest : config.source) + 1;
}

double objective(const DiversityProgram& prog, const ExponentPoint& point) {
    int dj = prog.dim_direct();
    int dk = prog.dim_relay();
    if ((int)point.alphas.size() != dj || (int)point.betas.size() != dk)
        throw std::invalid_argument("exponent point has wrong arity");
    double v = 0;
    for (int j = 1; j <= dj; ++j) {
        v += prog.direct_coeff(j) * point.alphas[j - 1];
        v -= prog.config.relay * pos(1.0 - point.alphas[j - 1]);
    }
    for (int k = 1; k <= dk; ++k) v += prog.relay_coeff(k) * point.betas[k - 1];
    for (int j = 0; j < dj; ++j)
        for (int k = 0; k < dk; ++k) v += pos(1.0 - point.alphas[j] - point.betas[k]);
    return v;
}

FeasibilityReport check_feasible(const DiversityProgram& prog, const ExponentPoint& point,
                                 double r) {
    int dj = prog.dim_direct();
    int dk = prog.dim_relay();
    if ((int)point.alphas.size() != dj || (int)point.betas.size() != dk)
        throw std::invalid_argument("exponent point has wrong arity");
    const double tol = 1e-9;
    FeasibilityReport rep;
    auto flag = [&](std::string msg) {
        rep.feasible = false;
        rep.violations.push_back(std::move(msg));
    };

    auto scan = [&](const std::vector<double>& v, const char* side) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] < -tol) flag(std::string(side) + " exponent " + std::to_string(i + 1) + " is negative");
            if (i + 1 < v.size() && v[i + 1] < v[i] - tol)
                flag(std::string(side) + " exponents break ascending order at " + std::to_string(i + 1));
        }
    };
    scan(point.alphas, "direct");
    scan(point.betas, "relay");

    if (rate_load(prog, point) > r + tol) flag("rate constraint exceeded");

    int target = prog.antidiagonal_sum();
    for (int j = 1; j <= dj; ++j) {
        int k = target - j;
        if (k < 1 || k > dk) continue;
        if (point.alphas[j - 1] + point.betas[k - 1] < 1.0 - tol)
            flag("anti-diagonal pair (" + std::to_string(j) + ", " + std::to_string(k) +
                 ") sums below one");
    }
    return rep;
}

LinearProgram build_lp(const DiversityProgram& prog, double r) {
    validate_params(prog, r);
    int dj = prog.dim_direct();
    int dk = prog.dim_relay();
    int nz = dj * dk;
    LinearProgram lp;
    lp.num_vars = dj + dk + nz;
    lp.objective.assign(lp.num_vars, 0.0);
    for (int j = 0; j < dj; ++j) lp.objective[j] = prog.direct_coeff(j + 1) + prog.config.relay;
    for (int k = 0; k < dk; ++k) lp.objective[dj + k] = prog.relay_coeff(k + 1);
    for (int i = 0; i < nz; ++i) lp.objective[dj + dk + i] = 1.0;
    lp.objective_offset = -double(prog.config.relay) * dj;

    auto zcol = [&](int j, int k) { return dj + dk + j * dk + k; };  // 0-based

    for (int j = 0; j < dj; ++j) {
        for (int k = 0; k < dk; ++k) {
            std::vector<double> row(lp.num_vars, 0.0);
            row[j] = 1.0;
            row[dj + k] = 1.0;
            row[zcol(j, k)] = 1.0;
            lp.add_row(std::move(row), 1.0, LpRowKind::epigraph);
        }
    }
    {
        std::vector<double> row(lp.num_vars, 0.0);
        double w = prog.rate_weight();
        for (int j = 0; j < dj; ++j) row[j] = 1.0;
        for (int k = 0; k < dk; ++k) row[dj + k] = w;
        lp.add_row(std::move(row), dj + w * dk - r, LpRowKind::rate);
    }
    for (int j = 0; j + 1 < dj; ++j) {
        std::vector<double> row(lp.num_vars, 0.0);
        row[j] = -1.0;
        row[j + 1] = 1.0;
        lp.add_row(std::move(row), 0.0, LpRowKind::ordering);
    }
    for (int k = 0; k + 1 < dk; ++k) {
        std::vector<double> row(lp.num_vars, 0.0);
        row[dj + k] = -1.0;
        row[dj + k + 1] = 1.0;
        lp.add_row(std::move(row), 0.0, LpRowKind::ordering);
    }
    int target = prog.antidiagonal_sum();
    for (int j = 1; j <= dj; ++j) {
        int k = target - j;
        if (k < 1 || k > dk) continue;
        std::vector<double> row(lp.num_vars, 0.0);
        row[j - 1] = 1.0;
        row[dj + k - 1] = 1.0;
        lp.add_row(std::move(row), 1.0, LpRowKind::antidiagonal);
    }
    for (int i = 0; i < dj + dk; ++i) {
        std::vector<double> row(lp.num_vars, 0.0);
        row[i] = -1.0;
        lp.add_row(std::move(row), -1.0, LpRowKind::bound);
    }
    return lp;
}

SolverResult solve_program(const DiversityProgram& prog, double r) {
    auto lp = build_lp(prog, r);
    auto sol = solve_lp(lp);
    int dj = prog.dim_direct();
    int dk = prog.dim_relay();

    SolverResult res;
    res.value = sol.value;
    auto clamp01 = [](double v) {
        if (v < 1e-11) return 0.0;
        if (v > 1.0 - 1e-11) return 1.0;
        return v;
    };
    res.point.alphas.resize(dj);
    res.point.betas.resize(dk);
    for (int j = 0; j < dj; ++j) res.point.alphas[j] = clamp01(sol.x[j]);
    for (int k = 0; k < dk; ++k) res.point.betas[k] = clamp01(sol.x[dj + k]);
    // scrub numerical dust off the ordering
    for (int j = 1; j < dj; ++j)
        res.point.alphas[j] = std::max(res.point.alphas[j], res.point.alphas[j - 1]);
    for (int k = 1; k < dk; ++k)
        res.point.betas[k] = std::max(res.point.betas[k], res.point.betas[k - 1]);

    for (int j = 0; j < dj; ++j)
        for (int k = 0; k < dk; ++k)
            if (1.0 - res.point.alphas[j] - res.point.betas[k] > 1e-7)
                res.active_hinges.push_back({j + 1, k + 1});
    return res;
}

double coefficient_mass(const DiversityProgram& prog) {
    int dj = prog.dim_direct();
    int dk = prog.dim_relay();
    double mass = double(prog.config.relay) * dj + double(dj) * dk;
    for (int j = 1; j <= dj; ++j) mass += prog.direct_coeff(j);
    for (int k = 1; k <= dk; ++k) mass += prog.relay_coeff(k);
    return mass;
}

double grid_oracle(const DiversityProgram& prog, double r, int resolution) {
    validate_params(prog, r);
    if (resolution < 1) throw std::invalid_argument("resolution must be >= 1");
    int dj = prog.dim_direct();
    int dk = prog.dim_relay();
    if (dj + dk > 6) throw std::invalid_argument("lattice search refuses more than 6 exponents");

    // all ascending tuples with entries i/resolution, i = 0..resolution
    auto tuples = [&](int len) {
        std::vector<std::vector<double>> out;
        std::vector<double> cur(len);
        auto rec = [&](auto&& self, int pos, int lo) -> void {
            if (pos == len) {
                out.push_back(cur);
                return;
            }
            for (int i = lo; i <= resolution; ++i) {
                cur[pos] = double(i) / resolution;
                self(self, pos + 1, i);
            }
        };
        rec(rec, 0, 0);
        return out;
    };
    auto as = tuples(dj);
    auto bs = tuples(dk);

    double w = prog.rate_weight();
    int target = prog.antidiagonal_sum();
    const double eps = 1e-12;

    // per-tuple rate load and the separable part of the objective
    std::vector<double> a_load(as.size()), a_part(as.size());
    for (std::size_t i = 0; i < as.size(); ++i) {
        double load = 0, part = 0;
        for (int j = 0; j < dj; ++j) {
            load += 1.0 - as[i][j];
            part += prog.direct_coeff(j + 1) * as[i][j] - prog.config.relay * (1.0 - as[i][j]);
        }
        a_load[i] = load;
        a_part[i] = part;
    }
    std::vector<double> b_load(bs.size()), b_part(bs.size());
    for (std::size_t i = 0; i < bs.size(); ++i) {
        double load = 0, part = 0;
        for (int k = 0; k < dk; ++k) {
            load += 1.0 - bs[i][k];
            part += prog.relay_coeff(k + 1) * bs[i][k];
        }
        b_load[i] = load;
        b_part[i] = part;
    }

    double best = 1e300;
    for (std::size_t ia = 0; ia < as.size(); ++ia) {
        const auto& a = as[ia];
        for (std::size_t ib = 0; ib < bs.size(); ++ib) {
            if (a_load[ia] + w * b_load[ib] > r + eps) continue;
            const auto& b = bs[ib];
            bool ok = true;
            for (int j = 1; j <= dj && ok; ++j) {
                int k = target - j;
                if (k >= 1 && k <= dk && a[j - 1] + b[k - 1] < 1.0 - eps) ok = false;
            }
            if (!ok) continue;
            double v = a_part[ia] + b_part[ib];
            for (int j = 0; j < dj; ++j)
                for (int k = 0; k < dk; ++k) v += pos(1.0 - a[j] - b[k]);
            best = std::min(best, v);
        }
    }
    if (best > 1e299) throw std::runtime_error("lattice search found no feasible point");
    return best;
}

double diversity_order(const AntennaConfig& cfg, Cut cut, double t, double r) {
    return solve_program({cfg, cut, t}, r).value;
}

OptimalSplit optimal_t(const AntennaConfig& cfg, double r, double tol) {
    validate_params({cfg, Cut::destination, 0.5}, r);
    auto gap = [&](double t) {
        return diversity_order(cfg, Cut::source, t, r) - diversity_order(cfg, Cut::destination, t, r);
    };
    auto level = [&](double t) {
        return std::min(diversity_order(cfg, Cut::source, t, r),
                        diversity_order(cfg, Cut::destination, t, r));
    };
    const double eps = 1e-9;

    OptimalSplit best{0.0, level(0.0)};
    auto consider = [&](double t) {
        double d = level(t);
        if (d > best.d + 1e-12) best = {t, d};
    };
    consider(1.0);

    double f0 = gap(0.0);
    double f1 = gap(1.0);
    if (f0 > eps) {
        // source side already dominates everywhere, the bottleneck is the
        // destination order which never increases: stay at t = 0
    } else if (f1 < -eps) {
        // mirror case, stay at t = 1
    } else {
        double lo = 0.0, hi = 1.0;
        bool hit = false;
        while (hi - lo > tol) {
            double mid = 0.5 * (lo + hi);
            double fm = gap(mid);
            if (std::abs(fm) <= eps) {
                consider(mid);
                hit = true;
                break;
            }
            (fm < 0 ? lo : hi) = mid;
        }
        if (!hit) {
            consider(lo);
            consider(hi);
            consider(0.5 * (lo + hi));
        }
    }

    // monotonicity can be degraded by ties; a coarse sweep guards the result
    if (best.d < level(0.5) - 1e-9) {
        for (double t = 0.0; t <= 1.0 + 1e-12; t += std::max(tol, 1e-3))
            consider(std::min(t, 1.0));
    }
    return best;
}

PiecewiseLinearCurve half_duplex_dmt(const AntennaConfig& cfg, double r_step) {
    validate_params({cfg, Cut::destination, 0.5}, 0.0);
    if (r_step != 0.5 && r_step != 0.25 && r_step != 0.125)
        throw std::invalid_argument("r_step must be 1/2, 1/4 or 1/8");
    double rmax = std::min(cfg.source, cfg.dest);
    int steps = (int)std::lround(rmax / r_step);

    std::vector<Corner> pts;
    for (int i = 0; i <= steps; ++i) {
        double r = std::min(i * r_step, rmax);
        pts.push_back({r, optimal_t(cfg, r).d});
    }
    if (std::abs(pts.back().d) <= 1e-7) pts.back().d = 0.0;

    std::vector<Corner> kept;
    for (const auto& c : pts) {
        while (kept.size() >= 2) {
            const Corner& p = kept[kept.size() - 2];
            const Corner& q = kept.back();
            double interp = p.d + (q.r - p.r) / (c.r - p.r) * (c.d - p.d);
            if (std::abs(interp - q.d) <= 1e-9)
                kept.pop_back();
            else
                break;
        }
        kept.push_back(c);
    }
    return PiecewiseLinearCurve::from_corners(std::move(kept), cfg.source == cfg.dest);
}

WitnessResult witness_check(int n, int m, WitnessRegime regime, int l) {
    Corner corner = symmetric_corner(n, m, regime, l);  // also validates the range
    DiversityProgram prog{{n, m, n}, Cut::destination, 0.5};
    int dj = prog.dim_direct();
    int dk = prog.dim_relay();
    int l0 = symmetric_pivot(n, m);

    auto step_vector = [](int len, int zeros) {
        std::vector<double> v(len, 1.0);
        for (int i = 0; i < zeros && i < len; ++i) v[i] = 0.0;
        return v;
    };

    WitnessResult w;
    switch (regime) {
        case WitnessRegime::low:
            w.point = {step_vector(dj, 0), step_vector(dk, l)};
            break;
        case WitnessRegime::mid:
            w.point = {step_vector(dj, l), step_vector(dk, l0)};
            break;
        case WitnessRegime::high:
            w.point = {step_vector(dj, n - l), step_vector(dk, l)};
            break;
    }
    w.r = corner.r;
    w.expected = corner.d;
    w.value = objective(prog, w.point);
    w.feasible = check_feasible(prog, w.point, w.r).feasible;
    return w;
}

}  // namespace relaydmt
