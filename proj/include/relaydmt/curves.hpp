#pragma once

#include <algorithm>
#include <vector>

namespace relaydmt {

// Antenna counts: source p, relay m, destination n.
struct AntennaConfig {
    int source = 1;
    int relay = 1;
    int dest = 1;
};

struct Corner {
    double r;  // multiplexing gain
    double d;  // diversity gain
};

// Piecewise-linear diversity-multiplexing curve, stored as its corner list.
// Invariants enforced on construction: corners non-empty, r strictly
// increasing, d non-increasing, final d == 0. Convexity (non-decreasing
// slopes) is enforced only when requested; pointwise minima of convex curves
// need not be convex.
class PiecewiseLinearCurve {
public:
    static PiecewiseLinearCurve from_corners(std::vector<Corner> corners,
                                             bool require_convex = false);

    const std::vector<Corner>& corners() const { return corners_; }
    double r_min() const { return corners_.front().r; }
    double r_max() const { return corners_.back().r; }

    // Linear interpolation; throws std::domain_error outside [r_min, r_max].
    double eval(double r) const;

private:
    std::vector<Corner> corners_;
};

// Point-to-point MIMO tradeoff with tx transmit and rx receive antennas:
// corners at integer k with d = (tx - k)(rx - k), k = 0..min(tx, rx).
PiecewiseLinearCurve ptp_dmt(int tx, int rx);

// Pointwise minimum over the common domain. Corner abscissae are the union of
// both corner sets plus every segment crossing; crossings are solved in exact
// rational arithmetic and rounded once at the end.
PiecewiseLinearCurve curve_min(const PiecewiseLinearCurve& a, const PiecewiseLinearCurve& b);

// Cut-set benchmark for a relay that could listen and transmit simultaneously:
// min of the (p+m, n) and (p, n+m) point-to-point curves.
PiecewiseLinearCurve full_duplex_dmt(const AntennaConfig& cfg);

// Closed-form half-duplex tradeoff for the symmetric case p == n. Corner
// formulas are indexed by the pivot l0 = min(n, floor((m+1)/3)):
//   low  regime, r = l/2,        l = 0..l0:      d = n^2 + (m-l)(n-l)
//   mid  regime, r = l0/2 + l,   l = 0..n-l0:    d = l0^2 + (n+m-l)(n-l0-l)
//   high regime, r = n - l/2,    l = 0..l0:      d = l^2
PiecewiseLinearCurve symmetric_half_duplex_dmt(int n, int m);

enum class WitnessRegime { low, mid, high };

inline int symmetric_pivot(int n, int m) { return std::min(n, (m + 1) / 3); }

// Corner (r, d) of the symmetric closed form for one regime and index l.
Corner symmetric_corner(int n, int m, WitnessRegime regime, int l);

}  // namespace relaydmt
