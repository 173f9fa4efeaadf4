#pragma once

#include <string>
#include <utility>
#include <vector>

#include "relaydmt/curves.hpp"
#include "relaydmt/montecarlo.hpp"
#include "relaydmt/solver.hpp"

namespace relaydmt {

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

std::string curve_csv(const PiecewiseLinearCurve& curve);
std::string curve_json(const std::string& mode, const AntennaConfig& cfg,
                       const PiecewiseLinearCurve& curve);

// Fixed 640x480 chart, multiplexing gain r on the horizontal axis. One
// polyline plus corner markers per labelled curve.
std::string curves_svg(const std::vector<std::pair<std::string, PiecewiseLinearCurve>>& curves);

std::string solve_json(const DiversityProgram& prog, double r, const SolverResult& result);

std::string outage_csv(const EstimateSeries& series, const SlopeFit* fit, double reference);
std::string outage_json(const OutageSpec& spec, const EstimateSeries& series,
                        const SlopeFit* fit, double reference);

struct SphericalRun {
    SphericalSpec spec;
    std::vector<double> powers;
    std::vector<SphericalEstimate> estimates;
    SphericalExponent predicted;
    // polynomial branch
    double fitted_slope = 0.0;
    double fit_stderr = 0.0;
    bool has_fit = false;
    // super-polynomial branch
    std::vector<SuppolCheckPoint> suppol;
};

std::string spherical_csv(const SphericalRun& run);
std::string spherical_json(const SphericalRun& run);

struct VerifyCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

std::string verify_table(const std::vector<VerifyCheck>& checks);
std::string verify_json(const std::vector<VerifyCheck>& checks);

}  // namespace relaydmt
