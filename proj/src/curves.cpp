#include "relaydmt/curves.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace relaydmt {

namespace {

using i128 = __int128;

i128 iabs(i128 v) { return v < 0 ? -v : v; }

i128 gcd128(i128 a, i128 b) {
    a = iabs(a);
    b = iabs(b);
    while (b) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a ? a : 1;
}

int bit_width128(i128 v) {
    v = iabs(v);
    int w = 0;
    while (v) {
        ++w;
        v >>= 1;
    }
    return w;
}

// Exact rational with 128-bit terms. Doubles are dyadic rationals, so corner
// coordinates convert losslessly; overflow during crossing arithmetic is
// detected and reported so the caller can fall back to long double.
struct Rat {
    i128 num = 0;
    i128 den = 1;

    void reduce() {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        i128 g = gcd128(num, den);
        num /= g;
        den /= g;
    }
};

bool mul_ok(i128 a, i128 b) { return bit_width128(a) + bit_width128(b) <= 125; }

bool rat_mul(const Rat& a, const Rat& b, Rat& out) {
    Rat x = a, y = b;
    i128 g1 = gcd128(x.num, y.den);
    x.num /= g1;
    y.den /= g1;
    i128 g2 = gcd128(y.num, x.den);
    y.num /= g2;
    x.den /= g2;
    if (!mul_ok(x.num, y.num) || !mul_ok(x.den, y.den)) return false;
    out = {x.num * y.num, x.den * y.den};
    out.reduce();
    return true;
}

bool rat_sub(const Rat& a, const Rat& b, Rat& out) {
    i128 g = gcd128(a.den, b.den);
    i128 bd = b.den / g;
    i128 ad = a.den / g;
    if (!mul_ok(a.num, bd) || !mul_ok(b.num, ad) || !mul_ok(a.den, bd)) return false;
    i128 lhs = a.num * bd;
    i128 rhs = b.num * ad;
    if ((lhs > 0 && rhs < 0 && lhs - rhs < 0) || (lhs < 0 && rhs > 0 && lhs - rhs > 0))
        return false;
    out = {lhs - rhs, a.den * bd};
    out.reduce();
    return true;
}

bool rat_div(const Rat& a, const Rat& b, Rat& out) {
    if (b.num == 0) return false;
    return rat_mul(a, {b.den, b.num}, out);
}

Rat to_rat(double v) {
    if (v == 0.0) return {0, 1};
    int exp = 0;
    double mant = std::frexp(v, &exp);  // v = mant * 2^exp, |mant| in [0.5, 1)
    auto scaled = (std::int64_t)std::ldexp(mant, 53);
    int shift = exp - 53;
    Rat r;
    if (shift >= 0) {
        r.num = i128(scaled) << shift;
        r.den = 1;
    } else {
        r.num = scaled;
        r.den = i128(1) << (-shift);
    }
    r.reduce();
    return r;
}

double to_double(const Rat& r) { return double(r.num) / double(r.den); }

bool rat_less(const Rat& a, const Rat& b) {
    Rat d;
    if (!rat_sub(a, b, d)) return to_double(a) < to_double(b);
    return d.num < 0;
}

struct Segment {
    double r0, d0, r1, d1;
};

// Abscissa where two non-parallel segments meet, if it lies inside both
// r-intervals. Exact rational arithmetic, one rounding at the end; falls back
// to long double if 128 bits ever overflow (never for the dyadic corner
// values this library produces).
bool segment_crossing(const Segment& a, const Segment& b, double& out) {
    bool exact = true;
    Rat slope_a, slope_b, icept_a, icept_b, r_star;
    auto line = [&](const Segment& s, Rat& slope, Rat& icept) {
        Rat dr, dd, tmp;
        exact = exact && rat_sub(to_rat(s.r1), to_rat(s.r0), dr);
        exact = exact && rat_sub(to_rat(s.d1), to_rat(s.d0), dd);
        exact = exact && rat_div(dd, dr, slope);
        exact = exact && rat_mul(slope, to_rat(s.r0), tmp);
        exact = exact && rat_sub(to_rat(s.d0), tmp, icept);
    };
    line(a, slope_a, icept_a);
    line(b, slope_b, icept_b);
    Rat dslope, dicept;
    exact = exact && rat_sub(slope_a, slope_b, dslope);
    exact = exact && rat_sub(icept_b, icept_a, dicept);
    if (exact && dslope.num == 0) return false;  // parallel or identical
    if (exact) exact = rat_div(dicept, dslope, r_star);

    if (exact) {
        Rat lo = to_rat(std::max(a.r0, b.r0));
        Rat hi = to_rat(std::min(a.r1, b.r1));
        if (rat_less(r_star, lo) || rat_less(hi, r_star)) return false;
        out = to_double(r_star);
        return true;
    }

    long double sa = (long double)(a.d1 - a.d0) / (a.r1 - a.r0);
    long double sb = (long double)(b.d1 - b.d0) / (b.r1 - b.r0);
    if (sa == sb) return false;
    long double ia = a.d0 - sa * a.r0;
    long double ib = b.d0 - sb * b.r0;
    long double rs = (ib - ia) / (sa - sb);
    if (rs < std::max(a.r0, b.r0) || rs > std::min(a.r1, b.r1)) return false;
    out = double(rs);
    return true;
}

}  // namespace

PiecewiseLinearCurve PiecewiseLinearCurve::from_corners(std::vector<Corner> corners,
                                                        bool require_convex) {
    if (corners.empty()) throw std::invalid_argument("curve: no corners");
    for (const auto& c : corners)
        if (!(std::isfinite(c.r) && std::isfinite(c.d)) || c.r < 0 || c.d < -1e-9)
            throw std::invalid_argument("curve: corners must be finite and non-negative");
    for (std::size_t i = 0; i + 1 < corners.size(); ++i) {
        if (corners[i + 1].r <= corners[i].r)
            throw std::invalid_argument("curve: abscissae must strictly increase");
        if (corners[i + 1].d > corners[i].d + 1e-9)
            throw std::invalid_argument("curve: diversity must not increase");
    }
    if (std::abs(corners.back().d) > 1e-9)
        throw std::invalid_argument("curve: must end at zero diversity");
    corners.back().d = 0.0;
    if (require_convex) {
        double prev = -1e300;
        for (std::size_t i = 0; i + 1 < corners.size(); ++i) {
            double slope = (corners[i + 1].d - corners[i].d) / (corners[i + 1].r - corners[i].r);
            if (slope < prev - 1e-9)
                throw std::invalid_argument("curve: slopes must be non-decreasing");
            prev = std::max(prev, slope);
        }
    }
    PiecewiseLinearCurve out;
    out.corners_ = std::move(corners);
    return out;
}

double PiecewiseLinearCurve::eval(double r) const {
    if (r < r_min() || r > r_max()) throw std::domain_error("curve: abscissa out of range");
    std::size_t hi = 1;
    while (hi < corners_.size() && corners_[hi].r < r) ++hi;
    if (hi == corners_.size()) return corners_.back().d;
    const Corner& b = corners_[hi];
    const Corner& a = corners_[hi - 1];
    if (r == b.r) return b.d;
    double frac = (r - a.r) / (b.r - a.r);
    return a.d + frac * (b.d - a.d);
}

PiecewiseLinearCurve ptp_dmt(int tx, int rx) {
    if (tx < 1 || rx < 1) throw std::invalid_argument("ptp_dmt: antenna counts must be >= 1");
    std::vector<Corner> corners;
    int kmax = std::min(tx, rx);
    for (int k = 0; k <= kmax; ++k)
        corners.push_back({double(k), double((tx - k) * (rx - k))});
    return PiecewiseLinearCurve::from_corners(std::move(corners), true);
}

PiecewiseLinearCurve curve_min(const PiecewiseLinearCurve& a, const PiecewiseLinearCurve& b) {
    double lo = std::max(a.r_min(), b.r_min());
    double hi = std::min(a.r_max(), b.r_max());
    if (lo > hi) throw std::invalid_argument("curve_min: domains do not overlap");

    std::vector<double> xs = {lo, hi};
    for (const auto& c : a.corners())
        if (c.r > lo && c.r < hi) xs.push_back(c.r);
    for (const auto& c : b.corners())
        if (c.r > lo && c.r < hi) xs.push_back(c.r);

    auto segments = [](const PiecewiseLinearCurve& c) {
        std::vector<Segment> segs;
        const auto& cs = c.corners();
        for (std::size_t i = 0; i + 1 < cs.size(); ++i)
            segs.push_back({cs[i].r, cs[i].d, cs[i + 1].r, cs[i + 1].d});
        return segs;
    };
    for (const auto& sa : segments(a)) {
        for (const auto& sb : segments(b)) {
            double cross;
            if (segment_crossing(sa, sb, cross) && cross >= lo && cross <= hi)
                xs.push_back(cross);
        }
    }

    std::sort(xs.begin(), xs.end());
    std::vector<Corner> merged;
    for (double x : xs) {
        if (!merged.empty() && x - merged.back().r <= 1e-12) continue;
        merged.push_back({x, std::min(a.eval(x), b.eval(x))});
    }

    // drop interior points that sit on the segment through their neighbors
    std::vector<Corner> kept;
    for (std::size_t i = 0; i < merged.size(); ++i) {
        while (kept.size() >= 2) {
            const Corner& p = kept[kept.size() - 2];
            const Corner& q = kept.back();
            double interp = p.d + (q.r - p.r) / (merged[i].r - p.r) * (merged[i].d - p.d);
            if (std::abs(interp - q.d) <= 1e-9)
                kept.pop_back();
            else
                break;
        }
        kept.push_back(merged[i]);
    }
    return PiecewiseLinearCurve::from_corners(std::move(kept), false);
}

PiecewiseLinearCurve full_duplex_dmt(const AntennaConfig& cfg) {
    if (cfg.source < 1 || cfg.relay < 1 || cfg.dest < 1)
        throw std::invalid_argument("full_duplex_dmt: antenna counts must be >= 1");
    return curve_min(ptp_dmt(cfg.source + cfg.relay, cfg.dest),
                     ptp_dmt(cfg.source, cfg.dest + cfg.relay));
}

Corner symmetric_corner(int n, int m, WitnessRegime regime, int l) {
    if (n < 1 || m < 1) throw std::invalid_argument("symmetric_corner: antenna counts must be >= 1");
    int l0 = symmetric_pivot(n, m);
    switch (regime) {
        case WitnessRegime::low:
            if (l < 0 || l > l0) throw std::invalid_argument("symmetric_corner: index out of range");
            return {0.5 * l, double(n * n + (m - l) * (n - l))};
        case WitnessRegime::mid:
            if (l < 0 || l > n - l0)
                throw std::invalid_argument("symmetric_corner: index out of range");
            return {0.5 * l0 + l, double(l0 * l0 + (n + m - l) * (n - l0 - l))};
        case WitnessRegime::high:
            if (l < 0 || l > l0) throw std::invalid_argument("symmetric_corner: index out of range");
            return {n - 0.5 * l, double(l * l)};
    }
    throw std::invalid_argument("symmetric_corner: bad regime");
}

PiecewiseLinearCurve symmetric_half_duplex_dmt(int n, int m) {
    if (n < 1 || m < 1)
        throw std::invalid_argument("symmetric_half_duplex_dmt: antenna counts must be >= 1");
    int l0 = symmetric_pivot(n, m);
    std::vector<Corner> corners;
    auto push = [&](Corner c) {
        if (!corners.empty() && c.r <= corners.back().r) return;  // regime boundary repeat
        corners.push_back(c);
    };
    for (int l = 0; l <= l0; ++l) push(symmetric_corner(n, m, WitnessRegime::low, l));
    for (int l = 0; l <= n - l0; ++l) push(symmetric_corner(n, m, WitnessRegime::mid, l));
    for (int l = l0; l >= 0; --l) push(symmetric_corner(n, m, WitnessRegime::high, l));
    return PiecewiseLinearCurve::from_corners(std::move(corners), true);
}

}  // namespace relaydmt
