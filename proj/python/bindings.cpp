#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "relaydmt/montecarlo.hpp"
#include "relaydmt/solver.hpp"

namespace py = pybind11;
using namespace relaydmt;

namespace {

Cut parse_cut(const std::string& name) {
    if (name == "dest") return Cut::destination;
    if (name == "source") return Cut::source;
    throw std::invalid_argument("cut must be 'dest' or 'source'");
}

WitnessRegime parse_regime(const std::string& name) {
    if (name == "low") return WitnessRegime::low;
    if (name == "mid") return WitnessRegime::mid;
    if (name == "high") return WitnessRegime::high;
    throw std::invalid_argument("regime must be 'low', 'mid' or 'high'");
}

ComplexMatrix to_matrix(const std::vector<std::vector<cxd>>& rows) {
    if (rows.empty()) throw std::invalid_argument("matrix must be non-empty");
    std::size_t cols = rows.front().size();
    ComplexMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("matrix rows have unequal length");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

std::vector<std::vector<cxd>> from_matrix(const ComplexMatrix& m) {
    std::vector<std::vector<cxd>> rows(m.rows(), std::vector<cxd>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
    return rows;
}

py::list corner_list(const PiecewiseLinearCurve& curve) {
    py::list out;
    for (const auto& c : curve.corners()) out.append(py::make_tuple(c.r, c.d));
    return out;
}

py::dict series_dict(const EstimateSeries& series) {
    py::list points;
    for (const auto& pt : series.points) {
        py::dict d;
        d["snr_db"] = pt.snr_db;
        d["p_linear"] = pt.p_linear;
        d["outage"] = pt.estimate;
        d["ci_low"] = pt.ci_low;
        d["ci_high"] = pt.ci_high;
        d["events"] = pt.events;
        d["trials"] = pt.trials;
        points.append(d);
    }
    py::dict out;
    out["points"] = points;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "diversity-multiplexing tradeoff tools for the MIMO half-duplex relay channel";

    py::class_<PiecewiseLinearCurve>(m, "Curve")
        .def("corners", &corner_list)
        .def("eval", &PiecewiseLinearCurve::eval, py::arg("r"))
        .def("r_max", &PiecewiseLinearCurve::r_max)
        .def("__repr__", [](const PiecewiseLinearCurve& c) {
            return "Curve(" + std::to_string(c.corners().size()) + " corners)";
        });

    m.def("ptp_dmt", &ptp_dmt, py::arg("tx"), py::arg("rx"));
    m.def(
        "full_duplex_dmt",
        [](int p, int mm, int n) { return full_duplex_dmt({p, mm, n}); },
        py::arg("p"), py::arg("m"), py::arg("n"));
    m.def("symmetric_half_duplex_dmt", &symmetric_half_duplex_dmt, py::arg("n"), py::arg("m"));
    m.def("curve_min", &curve_min, py::arg("a"), py::arg("b"));
    m.def(
        "half_duplex_dmt",
        [](int p, int mm, int n, double r_step) { return half_duplex_dmt({p, mm, n}, r_step); },
        py::arg("p"), py::arg("m"), py::arg("n"), py::arg("r_step") = 0.25);

    m.def(
        "solve_program",
        [](int p, int mm, int n, const std::string& cut, double t, double r) {
            DiversityProgram prog{{p, mm, n}, parse_cut(cut), t};
            auto res = solve_program(prog, r);
            py::list hinges;
            for (const auto& [j, k] : res.active_hinges) hinges.append(py::make_tuple(j, k));
            py::dict out;
            out["value"] = res.value;
            out["alphas"] = res.point.alphas;
            out["betas"] = res.point.betas;
            out["active_hinges"] = hinges;
            return out;
        },
        py::arg("p"), py::arg("m"), py::arg("n"), py::arg("cut"), py::arg("t"), py::arg("r"));
    m.def(
        "diversity_order",
        [](int p, int mm, int n, const std::string& cut, double t, double r) {
            return diversity_order({p, mm, n}, parse_cut(cut), t, r);
        },
        py::arg("p"), py::arg("m"), py::arg("n"), py::arg("cut"), py::arg("t"), py::arg("r"));
    m.def(
        "optimal_t",
        [](int p, int mm, int n, double r, double tol) {
            auto split = optimal_t({p, mm, n}, r, tol);
            return py::make_tuple(split.t, split.d);
        },
        py::arg("p"), py::arg("m"), py::arg("n"), py::arg("r"), py::arg("tol") = 1e-4);
    m.def(
        "grid_oracle",
        [](int p, int mm, int n, const std::string& cut, double t, double r, int resolution) {
            return grid_oracle({{p, mm, n}, parse_cut(cut), t}, r, resolution);
        },
        py::arg("p"), py::arg("m"), py::arg("n"), py::arg("cut"), py::arg("t"), py::arg("r"),
        py::arg("resolution"));
    m.def(
        "witness_check",
        [](int n, int mm, const std::string& regime, int l) {
            auto w = witness_check(n, mm, parse_regime(regime), l);
            py::dict out;
            out["alphas"] = w.point.alphas;
            out["betas"] = w.point.betas;
            out["r"] = w.r;
            out["value"] = w.value;
            out["expected"] = w.expected;
            out["feasible"] = w.feasible;
            return out;
        },
        py::arg("n"), py::arg("m"), py::arg("regime"), py::arg("l"));

    m.def(
        "spherical_exponent",
        [](int n, int p, int mm, std::vector<double> alphas, std::vector<double> betas) {
            auto res = spherical_exponent({n, p, mm, std::move(alphas), std::move(betas)});
            py::dict out;
            out["super_polynomial"] = res.super_polynomial;
            out["value"] = res.value;
            return out;
        },
        py::arg("n"), py::arg("p"), py::arg("m"), py::arg("alphas"), py::arg("betas"));
    m.def(
        "spherical_integral_estimate",
        [](int n, int p, int mm, std::vector<double> alphas, std::vector<double> betas,
           double power, std::uint64_t trials, std::uint64_t seed) {
            auto est = spherical_integral_estimate({n, p, mm, std::move(alphas), std::move(betas)},
                                                   power, trials, seed);
            return py::make_tuple(est.mean, est.stderr_);
        },
        py::arg("n"), py::arg("p"), py::arg("m"), py::arg("alphas"), py::arg("betas"),
        py::arg("power"), py::arg("trials"), py::arg("seed"));

    m.def(
        "sample_haar_unitary",
        [](int n, std::uint64_t seed, std::uint64_t stream) {
            if (n < 1) throw std::invalid_argument("dimension must be >= 1");
            RngStream rng(seed, stream);
            return from_matrix(sample_haar_unitary(std::size_t(n), rng));
        },
        py::arg("n"), py::arg("seed"), py::arg("stream") = 0);
    m.def(
        "hermitian_eigenvalues",
        [](const std::vector<std::vector<cxd>>& rows) {
            return hermitian_eigenvalues(to_matrix(rows));
        },
        py::arg("matrix"));
    m.def(
        "log_det_shifted",
        [](const std::vector<std::vector<cxd>>& rows, double p) {
            return log_det_shifted(to_matrix(rows), p);
        },
        py::arg("matrix"), py::arg("p"));

    m.def(
        "run_outage",
        [](int p, int mm, int n, const std::string& cut, double t, double r,
           std::vector<double> snr_db, std::uint64_t trials, std::uint64_t seed, int workers) {
            OutageSpec spec;
            spec.config = {p, mm, n};
            spec.cut = parse_cut(cut);
            spec.t = t;
            spec.r = r;
            spec.snr_db = std::move(snr_db);
            spec.trials = trials;
            spec.seed = seed;
            spec.workers = workers;
            auto series = outage_probability(spec);
            auto out = series_dict(series);
            try {
                auto fit = diversity_slope(series);
                py::dict f;
                f["slope"] = fit.diversity;
                f["stderr"] = fit.stderr_;
                f["points_used"] = fit.points_used;
                out["fit"] = f;
            } catch (const insufficient_data&) {
                out["fit"] = py::none();
            }
            return out;
        },
        py::arg("p"), py::arg("m"), py::arg("n"), py::arg("cut") = "dest", py::arg("t") = 0.5,
        py::arg("r") = 0.5, py::arg("snr_db") = std::vector<double>{10, 15, 20, 25, 30, 35, 40},
        py::arg("trials") = 1000000, py::arg("seed") = 42, py::arg("workers") = 0);

    m.def(
        "antidiagonal_min_check",
        [](const std::vector<double>& lambdas, const std::vector<double>& mus, int n,
           std::uint64_t trials, std::uint64_t seed) {
            auto res = antidiagonal_min_check(lambdas, mus, n, trials, seed);
            py::dict out;
            out["floor"] = res.floor;
            out["min_observed"] = res.min_observed;
            out["violations"] = res.violations;
            out["pass"] = res.pass;
            return out;
        },
        py::arg("lambdas"), py::arg("mus"), py::arg("n"), py::arg("trials"), py::arg("seed"));
    m.def(
        "tail_bound_check",
        [](const std::vector<std::vector<cxd>>& rows, int n, std::uint64_t trials,
           std::uint64_t seed, double lambda0) {
            auto res = tail_bound_check(to_matrix(rows), n, trials, seed, lambda0);
            py::dict out;
            out["m"] = res.m;
            out["n"] = res.n;
            out["estimate"] = res.estimate;
            out["stderr"] = res.stderr_;
            out["det_a"] = res.det_a;
            out["det_product"] = res.det_product;
            out["c_lower"] = res.c_lower;
            out["c_upper"] = res.c_upper;
            out["in_regime"] = res.in_regime;
            out["pass"] = res.pass;
            return out;
        },
        py::arg("matrix"), py::arg("n"), py::arg("trials"), py::arg("seed"),
        py::arg("lambda0") = 0.05);
    m.def(
        "mutual_info_identity_check",
        [](int n, int p_antennas, int mm, double t, double power, std::uint64_t trials,
           std::uint64_t seed, double tol) {
            auto res = mutual_info_identity_check(n, p_antennas, mm, t, power, trials, seed, tol);
            py::dict out;
            out["draws"] = res.draws;
            out["max_residual"] = res.max_residual;
            out["pass"] = res.pass;
            return out;
        },
        py::arg("n"), py::arg("p"), py::arg("m"), py::arg("t"), py::arg("power"),
        py::arg("trials"), py::arg("seed"), py::arg("tol") = 1e-8);
}
