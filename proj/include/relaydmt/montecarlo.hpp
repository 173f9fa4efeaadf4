#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "relaydmt/curves.hpp"
#include "relaydmt/rand_matrix.hpp"
#include "relaydmt/solver.hpp"

namespace relaydmt {

// Thrown when a slope fit does not have enough usable points. The CLI maps it
// to its own exit code.
struct insufficient_data : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One fading realization for a cut at a fixed power. direct is the n x p
// source-destination matrix. For the destination cut relay_side is the n x m
// relay-destination matrix; for the source cut it is the m x p source-relay
// matrix.
struct ChannelSample {
    ComplexMatrix direct;
    ComplexMatrix relay_side;
    double snr = 1.0;  // linear scale
};

ChannelSample sample_channel(const AntennaConfig& cfg, Cut cut, double snr, RngStream& rng);

// Cut-set mutual information in bits for listening fraction t at p = snr:
//   destination: t log2 det(I + p G G*) + (1-t) log2 det(I + p [G H][G H]*)
//   source:      t log2 det(I + p [G; H] [G; H]*) + (1-t) log2 det(I + p G G*)
double mutual_info_sample(const AntennaConfig& cfg, Cut cut, double t,
                          const ChannelSample& sample);

struct OutageSpec {
    AntennaConfig config;
    Cut cut = Cut::destination;
    double t = 0.5;
    double r = 0.5;
    std::vector<double> snr_db = {10, 15, 20, 25, 30, 35, 40};
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 42;
    int workers = 0;  // 0 = hardware concurrency
};

struct EstimatePoint {
    double snr_db = 0.0;
    double p_linear = 0.0;
    std::uint64_t events = 0;
    std::uint64_t trials = 0;
    double estimate = 0.0;  // events / trials
    double ci_low = 0.0;    // Wilson 95%
    double ci_high = 0.0;
};

struct EstimateSeries {
    std::vector<EstimatePoint> points;
};

// Empirical P(mutual info < r log2 p) per SNR point. Trials are split into
// fixed 8192-trial blocks; block b of SNR point i always consumes stream
// point_count * 0 + ... = i * n_blocks + b, so the event counts (and hence all
// derived output) are identical for any worker count.
EstimateSeries outage_probability(const OutageSpec& spec);

// 95% Wilson score interval.
std::pair<double, double> wilson_interval(std::uint64_t events, std::uint64_t trials);

struct SlopeFit {
    double diversity = 0.0;  // negated log-log OLS slope
    double stderr_ = 0.0;
    int points_used = 0;
};

// OLS of log10(estimate) on log10(p) over every point with a nonzero
// estimate. Refuses to fit (insufficient_data) unless at least three points
// have min_events events or more: a series that sparse has no trustworthy
// slope, even though the lightly-populated points still enter the fit.
SlopeFit diversity_slope(const EstimateSeries& series, std::uint64_t min_events = 50);

struct SphericalSpec {
    int n = 1;
    int p = 1;
    int m = 1;
    std::vector<double> alphas;  // ascending, length min(n,p)
    std::vector<double> betas;   // ascending, length min(n,m)
};

struct SphericalEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
};

// Monte Carlo mean of exp(-sum_jk p^(1-a_j-b_k) |u_jk|^2) over Haar unitary
// U(n), summing over j <= min(n,p), k <= min(n,m).
SphericalEstimate spherical_integral_estimate(const SphericalSpec& spec, double p,
                                              std::uint64_t trials, std::uint64_t seed);

struct SphericalExponent {
    bool super_polynomial = false;  // integral decays faster than any power
    double value = 0.0;             // polynomial decay exponent otherwise
};

// Predicted large-p behavior: super-polynomial when some anti-diagonal pair
// j+k = n+1 has a_j + b_k < 1, else polynomial with exponent
// -sum_jk (1 - a_j - b_k)^+.
SphericalExponent spherical_exponent(const SphericalSpec& spec);

struct SuppolCheckPoint {
    double p = 0.0;
    double mean = 0.0;
    double stderr_ = 0.0;
    double bound = 0.0;  // exp(-p^c) with c the largest anti-diagonal deficit
    bool pass = false;
};

// For super-polynomial specs: checks estimate(p) <= exp(-p^c) + 3 sigma at
// each requested power. Throws std::invalid_argument on polynomial specs.
std::vector<SuppolCheckPoint> superpoly_decay_check(const SphericalSpec& spec,
                                                    const std::vector<double>& powers,
                                                    std::uint64_t trials, std::uint64_t seed);

struct AntidiagResult {
    double floor = 0.0;  // sum of lambda_j mu_k over pairs j+k = n+1
    double min_observed = 0.0;
    std::uint64_t violations = 0;
    bool pass = false;
};

// Verifies min_U sum_jk lambda_j mu_k |u_jk|^2 = anti-diagonal pairing for
// descending weight vectors: draws Haar unitaries and checks no draw beats the
// floor (within 1e-9), which the anti-diagonal permutation attains.
AntidiagResult antidiagonal_min_check(const std::vector<double>& lambda_desc,
                                      const std::vector<double>& mu_desc, int n,
                                      std::uint64_t trials, std::uint64_t seed);

struct CovarianceCheckResult {
    std::uint64_t violations = 0;
    double max_excess = 0.0;
    bool pass = false;
};

// Replacing an arbitrary trace-bounded input covariance with white power can
// only raise log det: checks log2 det(I + H Q H*) <= log2 det(I + p H H*) per
// draw, with Q = p * W / tr(W) scaled by a uniform factor in (0,1], W Wishart.
CovarianceCheckResult covariance_bound_check(int n, int m, double p, std::uint64_t trials,
                                             std::uint64_t seed);

struct TailBoundResult {
    int m = 0;
    int n = 0;
    double estimate = 0.0;
    double stderr_ = 0.0;
    double det_a = 0.0;
    double det_product = 0.0;  // estimate * det_a
    double c_lower = 0.0;
    double c_upper = 0.0;
    bool in_regime = true;
    bool pass = false;
};

// Two-sided tail bound for a Hermitian PD m x m matrix a:
//   C1 / det(a) <= P(y* a y <= ||z||^2) <= C2 / det(a)
// with y, z standard complex Gaussian of lengths m, n,
// C2 = (m+n-1)!/(m!(n-1)!) and C1 = C2 (lmin/(1+lmin))^(m+n). Estimates the
// probability by Monte Carlo and checks det_product against [C1, C2] with 3
// sigma slack. Matrices with lmin < lambda0 are flagged out-of-regime and not
// scored.
TailBoundResult tail_bound_check(const ComplexMatrix& a, int n, std::uint64_t trials,
                                 std::uint64_t seed, double lambda0 = 0.05);

struct IdentityCheckResult {
    std::uint64_t draws = 0;
    double max_residual = 0.0;
    bool pass = false;
};

// Per-draw consistency of the destination-cut mutual information with its
// whitened form: t L1 + (1-t) L2 = L1 + (1-t) log2 det(I + p B B*) where
// L1 = log2 det(I + p G G*), L2 = log2 det(I + p G G* + p H H*) and
// B = (I + p G G*)^(-1/2) H built from the Jacobi eigendecomposition.
// Exercises the eigensolver, Cholesky and samplers together.
IdentityCheckResult mutual_info_identity_check(int n, int p_antennas, int m, double t,
                                               double p, std::uint64_t trials,
                                               std::uint64_t seed, double tol = 1e-8);

}  // namespace relaydmt
