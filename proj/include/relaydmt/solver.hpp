#pragma once

#include <string>
#include <utility>
#include <vector>

#include "relaydmt/curves.hpp"
#include "relaydmt/lp.hpp"

namespace relaydmt {

enum class Cut { destination, source };

// One cut-set diversity minimization. With antenna counts (p, m, n) and
// listening fraction t, the destination cut has J = min(n,p) direct exponents
// weighted c_j = n+p-2j+1 and K = min(n,m) relay exponents weighted
// e_k = n+m-2k+1, rate weight w = 1-t, and anti-diagonal threshold j+k = n+1.
// The source cut swaps the relay side: K = min(p,m), e_k = p+m-2k+1, w = t,
// threshold j+k = p+1. The objective in both cuts is
//   sum_j c_j a_j + sum_k e_k b_k - m sum_j (1-a_j)^+ + sum_jk (1-a_j-b_k)^+
// minimized over ordered nonnegative exponents subject to
//   sum_j (1-a_j)^+ + w sum_k (1-b_k)^+ <= r  and  a_j + b_k >= 1 on the
// anti-diagonal.
struct DiversityProgram {
    AntennaConfig config;
    Cut cut = Cut::destination;
    double t = 0.5;

    int dim_direct() const;             // J
    int dim_relay() const;              // K
    double direct_coeff(int j) const;   // c_j, 1-based
    double relay_coeff(int k) const;    // e_k, 1-based
    double rate_weight() const;         // w
    int antidiagonal_sum() const;       // constrained pairs satisfy j+k == this
};

// Exponent vectors, ascending order expected: a_1 <= ... <= a_J.
struct ExponentPoint {
    std::vector<double> alphas;
    std::vector<double> betas;
};

struct FeasibilityReport {
    bool feasible = true;
    std::vector<std::string> violations;
};

struct SolverResult {
    double value = 0.0;
    ExponentPoint point;
    // 1-based (j, k) pairs whose hinge term (1 - a_j - b_k)^+ is positive at
    // the optimum.
    std::vector<std::pair<int, int>> active_hinges;
};

double objective(const DiversityProgram& prog, const ExponentPoint& point);

FeasibilityReport check_feasible(const DiversityProgram& prog, const ExponentPoint& point,
                                 double r);

// Exact linear reduction: exponents may be clamped to [0,1] without changing
// the minimum (objective coefficients are positive past 1 and no constraint
// tightens), which makes -m(1-a_j)^+ affine; the remaining hinges get epigraph
// variables z_jk >= max(0, 1 - a_j - b_k). Variables are ordered
// a_1..a_J, b_1..b_K, z_11..z_JK (z row-major over (j,k)).
LinearProgram build_lp(const DiversityProgram& prog, double r);

SolverResult solve_program(const DiversityProgram& prog, double r);

// Brute-force lattice minimization of the raw objective over feasible points
// with coordinates in {0, 1/resolution, ..., 1}. Refuses J + K > 6. The
// result is within (sum of coefficient magnitudes)/resolution of the true
// minimum: rounding each coordinate of an optimal point up to the lattice
// preserves feasibility.
double grid_oracle(const DiversityProgram& prog, double r, int resolution);

// Objective-coefficient mass: sum_j c_j + sum_k e_k + m J + J K. Bounds the
// lattice discretization error of grid_oracle via L / resolution.
double coefficient_mass(const DiversityProgram& prog);

double diversity_order(const AntennaConfig& cfg, Cut cut, double t, double r);

struct OptimalSplit {
    double t = 0.5;
    double d = 0.0;
};

// Best listening fraction at rate r: maximizes min(d_source(t), d_dest(t)).
// d_source is non-decreasing and d_dest non-increasing in t, so the optimum is
// bracketed by bisection on their difference; if numerical monotonicity ever
// fails, falls back to a uniform grid of pitch tol.
OptimalSplit optimal_t(const AntennaConfig& cfg, double r, double tol = 1e-4);

// Half-duplex tradeoff assembled from optimal_t over an r grid of pitch r_step
// (one of 1/2, 1/4, 1/8), with collinear grid points collapsed into corners.
PiecewiseLinearCurve half_duplex_dmt(const AntennaConfig& cfg, double r_step = 0.25);

struct WitnessResult {
    ExponentPoint point;
    double r = 0.0;
    double value = 0.0;     // objective at the witness
    double expected = 0.0;  // closed-form corner value
    bool feasible = false;
};

// Closed-form optimizer candidates for the symmetric case p == n at t = 1/2.
//   low  (r = l/2):      a = (1,...,1),           b = (0^l, 1,...)
//   mid  (r = l0/2 + l): a = (0^l, 1,...),        b = (0^l0, 1,...)
//   high (r = n - l/2):  a = (0^(n-l), 1,...),    b = (0^l, 1,...)
// Evaluates the destination-cut objective at the witness and reports it next
// to the corner formula value.
WitnessResult witness_check(int n, int m, WitnessRegime regime, int l);

}  // namespace relaydmt
