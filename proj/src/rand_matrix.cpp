#include "relaydmt/rand_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace relaydmt {

namespace {

// splitmix64 finalizer; full-period bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index) {
    key1_ = mix64(master_seed ^ 0x243f6a8885a308d3ULL);
    key2_ = mix64(key1_ ^ mix64(stream_index ^ 0x13198a2e03707344ULL));
}

std::uint64_t RngStream::next_u64() {
    std::uint64_t c = counter_++;
    return mix64(mix64(c ^ key1_) ^ key2_);
}

double RngStream::next_uniform() {
    return double(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::next_uniform_pos() {
    return double((next_u64() >> 11) + 1) * 0x1.0p-53;
}

cxd RngStream::next_complex_gaussian() {
    // Box-Muller with radius scaled so E|z|^2 = 1.
    double u = next_uniform_pos();
    double v = next_uniform();
    double radius = std::sqrt(-std::log(u));
    double angle = 2.0 * std::numbers::pi * v;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

ComplexMatrix sample_complex_gaussian(std::size_t rows, std::size_t cols, RngStream& rng) {
    ComplexMatrix m(rows, cols);
    for (auto& v : m.data()) v = rng.next_complex_gaussian();
    return m;
}

namespace {

cxd column_dot(const ComplexMatrix& m, std::size_t a, std::size_t b) {
    cxd s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) s += std::conj(m(i, a)) * m(i, b);
    return s;
}

void orthogonalize_column(ComplexMatrix& m, std::size_t col) {
    for (std::size_t prev = 0; prev < col; ++prev) {
        cxd proj = column_dot(m, prev, col);
        for (std::size_t i = 0; i < m.rows(); ++i) m(i, col) -= proj * m(i, prev);
    }
}

}  // namespace

ComplexMatrix sample_haar_unitary(std::size_t n, RngStream& rng) {
    if (n == 0) throw std::invalid_argument("sample_haar_unitary: empty dimension");
    ComplexMatrix m = sample_complex_gaussian(n, n, rng);
    for (std::size_t col = 0; col < n; ++col) {
        orthogonalize_column(m, col);
        orthogonalize_column(m, col);  // second pass for near-degenerate draws
        double norm = 0.0;             // hypot chain, immune to overflow
        for (std::size_t i = 0; i < n; ++i) norm = std::hypot(norm, std::abs(m(i, col)));
        // Fix the triangular factor's phase: scale by conj(phase of the
        // pivot)/norm, putting a positive number on the R diagonal. The pivot
        // itself is written directly so it lands exactly on the real axis.
        cxd pivot = m(col, col);
        double pmag = std::abs(pivot);
        cxd scale = (pmag > 0) ? std::conj(pivot) / (pmag * norm) : cxd(1.0 / norm);
        for (std::size_t i = 0; i < n; ++i) m(i, col) *= scale;
        m(col, col) = pmag / norm;
    }
    return m;
}

namespace {

ComplexMatrix symmetrized(const ComplexMatrix& m) {
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    return out;
}

double offdiag_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

}  // namespace

HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_eigen: not square");
    std::size_t n = m.rows();
    double scale = std::max(1.0, frobenius_norm(m));
    if (hermitian_defect(m) > 1e-12 * scale)
        throw std::invalid_argument("hermitian_eigen: input is not Hermitian");

    ComplexMatrix a = symmetrized(m);
    ComplexMatrix v = ComplexMatrix::identity(n);
    double target = 1e-13 * std::max(frobenius_norm(a), 1e-300);

    for (int sweep = 0; sweep < 100 && offdiag_norm(a) > target; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                cxd g = a(p, q);
                double gmag = std::abs(g);
                if (gmag == 0.0) continue;
                double phi = std::arg(g);
                double tau = (std::real(a(q, q)) - std::real(a(p, p))) / (2.0 * gmag);
                // smaller-magnitude root of t^2 - 2 tau t - 1 = 0, for stability
                double t = (tau >= 0 ? -1.0 : 1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                cxd ephi = std::polar(1.0, phi);

                // Right rotation by [[c, -s e^{i phi}], [s e^{-i phi}, c]] on
                // columns (p, q), then its adjoint on rows.
                for (std::size_t i = 0; i < n; ++i) {
                    cxd aip = a(i, p);
                    cxd aiq = a(i, q);
                    a(i, p) = c * aip + s * std::conj(ephi) * aiq;
                    a(i, q) = -s * ephi * aip + c * aiq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    cxd apj = a(p, j);
                    cxd aqj = a(q, j);
                    a(p, j) = c * apj + s * ephi * aqj;
                    a(q, j) = -s * std::conj(ephi) * apj + c * aqj;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    cxd vip = v(i, p);
                    cxd viq = v(i, q);
                    v(i, p) = c * vip + s * std::conj(ephi) * viq;
                    v(i, q) = -s * ephi * vip + c * viq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = std::real(a(i, i));
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return diag[x] > diag[y]; });

    HermitianEigen out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = diag[order[k]];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    return hermitian_eigen(m).values;
}

namespace {

// Cholesky log2 det of a Hermitian positive definite matrix.
double log2_det_cholesky(ComplexMatrix a) {
    std::size_t n = a.rows();
    double log2det = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double d = std::real(a(j, j));
        for (std::size_t k = 0; k < j; ++k) d -= std::norm(a(j, k));
        if (d <= 0.0) throw std::runtime_error("cholesky: matrix not positive definite");
        double l = std::sqrt(d);
        log2det += 2.0 * std::log2(l);
        a(j, j) = l;
        for (std::size_t i = j + 1; i < n; ++i) {
            cxd s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= a(i, k) * std::conj(a(j, k));
            a(i, j) = s / l;
        }
    }
    return log2det;
}

}  // namespace

double log_det_shifted(const ComplexMatrix& m, double p) {
    if (p < 0) throw std::invalid_argument("log_det_shifted: negative power");
    if (p == 0 || m.rows() == 0 || m.cols() == 0) return 0.0;
    // det(I + p M M*) = det(I + p M* M); work on the smaller side.
    const bool wide = m.cols() < m.rows();
    std::size_t k = wide ? m.cols() : m.rows();
    ComplexMatrix a(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            cxd s = 0.0;
            std::size_t inner = wide ? m.rows() : m.cols();
            for (std::size_t x = 0; x < inner; ++x)
                s += wide ? std::conj(m(x, i)) * m(x, j) : m(i, x) * std::conj(m(j, x));
            a(i, j) = p * s + (i == j ? 1.0 : 0.0);
            a(j, i) = std::conj(a(i, j));
        }
    }
    return log2_det_cholesky(std::move(a));
}

double log2_det_identity_plus(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("log2_det_identity_plus: not square");
    ComplexMatrix shifted = symmetrized(a);
    for (std::size_t i = 0; i < shifted.rows(); ++i) shifted(i, i) += 1.0;
    return log2_det_cholesky(std::move(shifted));
}

}  // namespace relaydmt
