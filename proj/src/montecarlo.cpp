#include "relaydmt/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace relaydmt {

namespace {

constexpr std::uint64_t kBlock = 8192;
constexpr double kZ95 = 1.959963984540054;

double pos(double v) { return v > 0 ? v : 0.0; }

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void validate_spherical(const SphericalSpec& spec) {
    require(spec.n >= 1 && spec.p >= 1 && spec.m >= 1, "antenna counts must be >= 1");
    std::size_t dj = std::min(spec.n, spec.p);
    std::size_t dk = std::min(spec.n, spec.m);
    require(spec.alphas.size() == dj, "alpha list must have min(n, p) entries");
    require(spec.betas.size() == dk, "beta list must have min(n, m) entries");
    auto ascending = [](const std::vector<double>& v) {
        for (std::size_t i = 0; i + 1 < v.size(); ++i)
            if (v[i + 1] < v[i]) return false;
        for (double x : v)
            if (!std::isfinite(x)) return false;
        return true;
    };
    require(ascending(spec.alphas), "alpha exponents must ascend");
    require(ascending(spec.betas), "beta exponents must ascend");
}

ComplexMatrix inverse_sqrt(const ComplexMatrix& m) {
    auto eig = hermitian_eigen(m);
    std::size_t n = m.rows();
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            cxd s = 0;
            for (std::size_t k = 0; k < n; ++k) {
                double lk = eig.values[k];
                s += eig.vectors(i, k) * std::conj(eig.vectors(j, k)) / std::sqrt(lk);
            }
            out(i, j) = s;
        }
    }
    return out;
}

}  // namespace

ChannelSample sample_channel(const AntennaConfig& cfg, Cut cut, double snr, RngStream& rng) {
    ChannelSample s;
    s.direct = sample_complex_gaussian(cfg.dest, cfg.source, rng);
    if (cut == Cut::destination)
        s.relay_side = sample_complex_gaussian(cfg.dest, cfg.relay, rng);
    else
        s.relay_side = sample_complex_gaussian(cfg.relay, cfg.source, rng);
    s.snr = snr;
    return s;
}

double mutual_info_sample(const AntennaConfig& cfg, Cut cut, double t,
                          const ChannelSample& sample) {
    (void)cfg;
    double p = sample.snr;
    double direct_term = log_det_shifted(sample.direct, p);
    if (cut == Cut::destination) {
        double joint = log_det_shifted(hcat(sample.direct, sample.relay_side), p);
        return t * direct_term + (1.0 - t) * joint;
    }
    double joint = log_det_shifted(vcat(sample.direct, sample.relay_side), p);
    return t * joint + (1.0 - t) * direct_term;
}

EstimateSeries outage_probability(const OutageSpec& spec) {
    const auto& c = spec.config;
    require(c.source >= 1 && c.relay >= 1 && c.dest >= 1, "antenna counts must be >= 1");
    require(spec.t >= 0.0 && spec.t <= 1.0, "listening fraction must lie in [0, 1]");
    require(spec.r >= 0.0 && spec.r <= std::min(c.source, c.dest),
            "rate must lie in [0, min(source, dest)]");
    require(spec.trials >= 1, "need at least one trial");
    require(spec.snr_db.size() >= 3, "need at least 3 SNR points");
    for (std::size_t i = 0; i + 1 < spec.snr_db.size(); ++i)
        require(spec.snr_db[i + 1] > spec.snr_db[i], "SNR points must strictly increase");
    require(spec.workers >= 0, "workers must be >= 0");

    std::size_t n_points = spec.snr_db.size();
    std::uint64_t n_blocks = (spec.trials + kBlock - 1) / kBlock;
    std::uint64_t total_tasks = n_points * n_blocks;

    std::vector<std::atomic<std::uint64_t>> events(n_points);
    std::atomic<std::uint64_t> next_task{0};

    auto worker = [&] {
        for (;;) {
            std::uint64_t task = next_task.fetch_add(1);
            if (task >= total_tasks) return;
            std::size_t point = task / n_blocks;
            std::uint64_t block = task % n_blocks;
            std::uint64_t count = std::min(kBlock, spec.trials - block * kBlock);
            double p_lin = std::pow(10.0, spec.snr_db[point] / 10.0);
            double rate = spec.r * std::log2(p_lin);
            RngStream rng(spec.seed, point * n_blocks + block);
            std::uint64_t hits = 0;
            for (std::uint64_t i = 0; i < count; ++i) {
                auto sample = sample_channel(spec.config, spec.cut, p_lin, rng);
                if (mutual_info_sample(spec.config, spec.cut, spec.t, sample) < rate) ++hits;
            }
            events[point] += hits;
        }
    };

    unsigned n_workers = spec.workers > 0 ? unsigned(spec.workers)
                                          : std::max(1u, std::thread::hardware_concurrency());
    n_workers = unsigned(std::min<std::uint64_t>(n_workers, total_tasks));
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n_workers; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    EstimateSeries series;
    for (std::size_t i = 0; i < n_points; ++i) {
        EstimatePoint pt;
        pt.snr_db = spec.snr_db[i];
        pt.p_linear = std::pow(10.0, spec.snr_db[i] / 10.0);
        pt.events = events[i].load();
        pt.trials = spec.trials;
        pt.estimate = double(pt.events) / double(pt.trials);
        std::tie(pt.ci_low, pt.ci_high) = wilson_interval(pt.events, pt.trials);
        series.points.push_back(pt);
    }
    return series;
}

std::pair<double, double> wilson_interval(std::uint64_t events, std::uint64_t trials) {
    require(trials >= 1, "need at least one trial");
    require(events <= trials, "more events than trials");
    double n = double(trials);
    double phat = double(events) / n;
    double z2 = kZ95 * kZ95;
    double denom = 1.0 + z2 / n;
    double center = (phat + z2 / (2 * n)) / denom;
    double half = kZ95 / denom * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

SlopeFit diversity_slope(const EstimateSeries& series, std::uint64_t min_events) {
    std::size_t solid = 0;
    for (const auto& pt : series.points)
        if (pt.events >= min_events) ++solid;
    if (solid < 3) throw insufficient_data("slope fit needs at least 3 well-populated points");

    std::vector<double> xs, ys;
    for (const auto& pt : series.points) {
        if (!(pt.estimate > 0)) continue;
        xs.push_back(std::log10(pt.p_linear));
        ys.push_back(std::log10(pt.estimate));
    }
    std::size_t k = xs.size();
    if (k < 3) throw insufficient_data("slope fit needs at least 3 nonzero points");

    double mx = 0, my = 0;
    for (std::size_t i = 0; i < k; ++i) mx += xs[i], my += ys[i];
    mx /= k;
    my /= k;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    double slope = sxy / sxx;
    double ss_res = 0;
    for (std::size_t i = 0; i < k; ++i) {
        double resid = ys[i] - my - slope * (xs[i] - mx);
        ss_res += resid * resid;
    }
    SlopeFit fit;
    fit.diversity = -slope;
    fit.points_used = int(k);
    fit.stderr_ = k > 2 ? std::sqrt(ss_res / double(k - 2) / sxx) : 0.0;
    return fit;
}

SphericalEstimate spherical_integral_estimate(const SphericalSpec& spec, double p,
                                              std::uint64_t trials, std::uint64_t seed) {
    validate_spherical(spec);
    require(p > 0, "power must be positive");
    require(trials >= 1, "need at least one trial");
    std::size_t dj = std::min(spec.n, spec.p);
    std::size_t dk = std::min(spec.n, spec.m);

    std::vector<double> weight(dj * dk);
    for (std::size_t j = 0; j < dj; ++j)
        for (std::size_t k = 0; k < dk; ++k)
            weight[j * dk + k] = std::pow(p, 1.0 - spec.alphas[j] - spec.betas[k]);

    RngStream rng(seed, 0);
    // Welford accumulation: the naive sum-of-squares form cancels badly when
    // the integrand is (near) constant, as it is for n = 1.
    double mean = 0, m2 = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        auto u = sample_haar_unitary(spec.n, rng);
        double s = 0;
        for (std::size_t j = 0; j < dj; ++j)
            for (std::size_t k = 0; k < dk; ++k) s += weight[j * dk + k] * std::norm(u(j, k));
        double v = std::exp(-s);
        double delta = v - mean;
        mean += delta / double(i + 1);
        m2 += delta * (v - mean);
    }
    SphericalEstimate est;
    est.mean = mean;
    if (trials > 1)
        est.stderr_ = std::sqrt(std::max(0.0, m2) / double(trials - 1) / double(trials));
    return est;
}

SphericalExponent spherical_exponent(const SphericalSpec& spec) {
    validate_spherical(spec);
    int dj = std::min(spec.n, spec.p);
    int dk = std::min(spec.n, spec.m);
    SphericalExponent out;
    for (int j = 1; j <= dj; ++j) {
        int k = spec.n + 1 - j;
        if (k < 1 || k > dk) continue;
        if (spec.alphas[j - 1] + spec.betas[k - 1] < 1.0 - 1e-12) out.super_polynomial = true;
    }
    if (out.super_polynomial) return out;
    double total = 0;
    for (int j = 0; j < dj; ++j)
        for (int k = 0; k < dk; ++k) total += pos(1.0 - spec.alphas[j] - spec.betas[k]);
    out.value = total > 0 ? -total : 0.0;
    return out;
}

std::vector<SuppolCheckPoint> superpoly_decay_check(const SphericalSpec& spec,
                                                    const std::vector<double>& powers,
                                                    std::uint64_t trials, std::uint64_t seed) {
    auto pred = spherical_exponent(spec);
    require(pred.super_polynomial, "spec decays only polynomially");
    int dj = std::min(spec.n, spec.p);
    int dk = std::min(spec.n, spec.m);
    double c = 0;
    for (int j = 1; j <= dj; ++j) {
        int k = spec.n + 1 - j;
        if (k < 1 || k > dk) continue;
        c = std::max(c, 1.0 - spec.alphas[j - 1] - spec.betas[k - 1]);
    }
    std::vector<SuppolCheckPoint> out;
    for (double p : powers) {
        auto est = spherical_integral_estimate(spec, p, trials, seed);
        SuppolCheckPoint pt;
        pt.p = p;
        pt.mean = est.mean;
        pt.stderr_ = est.stderr_;
        pt.bound = std::exp(-std::pow(p, c));
        pt.pass = est.mean <= pt.bound + 3 * est.stderr_ + 1e-15;
        out.push_back(pt);
    }
    return out;
}

AntidiagResult antidiagonal_min_check(const std::vector<double>& lambda_desc,
                                      const std::vector<double>& mu_desc, int n,
                                      std::uint64_t trials, std::uint64_t seed) {
    require(n >= 1, "dimension must be >= 1");
    require(!lambda_desc.empty() && !mu_desc.empty(), "weight lists must be non-empty");
    require((int)lambda_desc.size() <= n && (int)mu_desc.size() <= n,
            "weight lists cannot exceed the dimension");
    auto descending = [](const std::vector<double>& v) {
        for (std::size_t i = 0; i + 1 < v.size(); ++i)
            if (v[i + 1] > v[i] + 1e-12) return false;
        return true;
    };
    require(descending(lambda_desc) && descending(mu_desc), "weights must descend");
    require(trials >= 1, "need at least one trial");

    int dj = int(lambda_desc.size());
    int dk = int(mu_desc.size());
    AntidiagResult res;
    for (int j = 1; j <= dj; ++j) {
        int k = n + 1 - j;
        if (k >= 1 && k <= dk) res.floor += lambda_desc[j - 1] * mu_desc[k - 1];
    }

    RngStream rng(seed, 0);
    res.min_observed = 1e300;
    for (std::uint64_t i = 0; i < trials; ++i) {
        auto u = sample_haar_unitary(n, rng);
        double s = 0;
        for (int j = 0; j < dj; ++j)
            for (int k = 0; k < dk; ++k) s += lambda_desc[j] * mu_desc[k] * std::norm(u(j, k));
        res.min_observed = std::min(res.min_observed, s);
        if (s < res.floor - 1e-9) ++res.violations;
    }
    res.pass = res.violations == 0;
    return res;
}

CovarianceCheckResult covariance_bound_check(int n, int m, double p, std::uint64_t trials,
                                             std::uint64_t seed) {
    require(n >= 1 && m >= 1, "antenna counts must be >= 1");
    require(p > 0, "power must be positive");
    require(trials >= 1, "need at least one trial");

    RngStream rng(seed, 0);
    CovarianceCheckResult res;
    res.max_excess = -1e300;
    for (std::uint64_t i = 0; i < trials; ++i) {
        auto h = sample_complex_gaussian(n, m, rng);
        auto w = gram(sample_complex_gaussian(m, m, rng));
        double tr = 0;
        for (int j = 0; j < m; ++j) tr += w(j, j).real();
        double scale = p / tr * rng.next_uniform_pos();
        // H Q H* with Q = scale * W
        auto hw = matmul(h, w);
        auto hqh = matmul(hw, adjoint(h));
        for (auto& v : hqh.data()) v *= scale;
        double lhs = log2_det_identity_plus(hqh);
        double rhs = log_det_shifted(h, p);
        double excess = lhs - rhs;
        res.max_excess = std::max(res.max_excess, excess);
        if (excess > 1e-9) ++res.violations;
    }
    res.pass = res.violations == 0;
    return res;
}

TailBoundResult tail_bound_check(const ComplexMatrix& a, int n, std::uint64_t trials,
                                 std::uint64_t seed, double lambda0) {
    require(n >= 1, "reference vector length must be >= 1");
    require(trials >= 1, "need at least one trial");
    auto lambda = hermitian_eigenvalues(a);  // descending; checks shape and symmetry
    require(!lambda.empty(), "matrix must be non-empty");
    for (double l : lambda) require(l > 0, "matrix must be positive definite");

    int m = int(lambda.size());
    TailBoundResult res;
    res.m = m;
    res.n = n;
    res.det_a = 1.0;
    for (double l : lambda) res.det_a *= l;
    double lmin = lambda.back();
    res.in_regime = lmin >= lambda0;

    RngStream rng(seed, 0);
    std::uint64_t hits = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        double q = 0;
        for (int j = 0; j < m; ++j) q += lambda[j] * std::norm(rng.next_complex_gaussian());
        double zsq = 0;
        for (int j = 0; j < n; ++j) zsq += std::norm(rng.next_complex_gaussian());
        if (q <= zsq) ++hits;
    }
    res.estimate = double(hits) / double(trials);
    res.stderr_ = std::sqrt(res.estimate * (1.0 - res.estimate) / double(trials));
    res.det_product = res.estimate * res.det_a;

    double c2 = 1.0;  // (m+n-1)! / (m! (n-1)!) built as a product of ratios
    for (int i = 1; i <= m; ++i) c2 *= double(n - 1 + i) / double(i);
    res.c_upper = c2;
    res.c_lower = c2 * std::pow(lmin / (1.0 + lmin), m + n);

    double slack = 3.0 * res.stderr_ * res.det_a;
    res.pass = res.in_regime && res.det_product >= res.c_lower - slack &&
               res.det_product <= res.c_upper + slack;
    return res;
}

IdentityCheckResult mutual_info_identity_check(int n, int p_antennas, int m, double t,
                                               double p, std::uint64_t trials,
                                               std::uint64_t seed, double tol) {
    require(n >= 1 && p_antennas >= 1 && m >= 1, "antenna counts must be >= 1");
    require(t >= 0.0 && t <= 1.0, "listening fraction must lie in [0, 1]");
    require(p > 0, "power must be positive");
    require(trials >= 1, "need at least one trial");

    RngStream rng(seed, 0);
    IdentityCheckResult res;
    res.draws = trials;
    for (std::uint64_t i = 0; i < trials; ++i) {
        auto g = sample_complex_gaussian(n, p_antennas, rng);
        auto h = sample_complex_gaussian(n, m, rng);

        double l1 = log_det_shifted(g, p);
        auto joint = gram(g);
        auto hh = gram(h);
        for (std::size_t idx = 0; idx < joint.data().size(); ++idx)
            joint.data()[idx] = p * (joint.data()[idx] + hh.data()[idx]);
        double l2 = log2_det_identity_plus(joint);

        auto shifted = gram(g);
        for (auto& v : shifted.data()) v *= p;
        for (int j = 0; j < n; ++j) shifted(j, j) += 1.0;
        auto b = matmul(inverse_sqrt(shifted), h);

        double lhs = t * l1 + (1.0 - t) * l2;
        double rhs = l1 + (1.0 - t) * log_det_shifted(b, p);
        res.max_residual = std::max(res.max_residual, std::abs(lhs - rhs));
    }
    res.pass = res.max_residual <= tol;
    return res;
}

}  // namespace relaydmt
