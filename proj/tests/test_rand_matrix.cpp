#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "relaydmt/rand_matrix.hpp"

using namespace relaydmt;

TEST_CASE("streams are reproducible and distinct") {
    RngStream a(42, 0);
    RngStream b(42, 0);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    RngStream c(42, 1);
    RngStream d(43, 0);
    int same_c = 0, same_d = 0;
    RngStream a2(42, 0);
    for (int i = 0; i < 64; ++i) {
        std::uint64_t ref = a2.next_u64();
        if (c.next_u64() == ref) ++same_c;
        if (d.next_u64() == ref) ++same_d;
    }
    CHECK(same_c == 0);
    CHECK(same_d == 0);
}

TEST_CASE("uniform draws live in the right intervals") {
    RngStream rng(7, 0);
    for (int i = 0; i < 10000; ++i) {
        double u = rng.next_uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        double v = rng.next_uniform_pos();
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("complex gaussian moments") {
    RngStream rng(1, 0);
    const int n = 200000;
    double sum_re = 0, sum_im = 0, sum_sq = 0, sum_re_sq = 0;
    for (int i = 0; i < n; ++i) {
        cxd z = rng.next_complex_gaussian();
        sum_re += z.real();
        sum_im += z.imag();
        sum_sq += std::norm(z);
        sum_re_sq += z.real() * z.real();
    }
    // 5 sigma tolerances
    CHECK(std::abs(sum_re / n) < 5.0 / std::sqrt(2.0 * n));
    CHECK(std::abs(sum_im / n) < 5.0 / std::sqrt(2.0 * n));
    CHECK(std::abs(sum_sq / n - 1.0) < 5.0 / std::sqrt(double(n)));
    CHECK(std::abs(sum_re_sq / n - 0.5) < 5.0 / std::sqrt(double(n)));
}

TEST_CASE("gaussian matrices have independent entries across calls") {
    RngStream rng(3, 5);
    ComplexMatrix g = sample_complex_gaussian(3, 4, rng);
    ComplexMatrix h = sample_complex_gaussian(3, 4, rng);
    REQUIRE(g.rows() == 3);
    REQUIRE(g.cols() == 4);
    double diff = 0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 4; ++j) diff += std::abs(g(i, j) - h(i, j));
    CHECK(diff > 1e-6);
}

TEST_CASE("haar samples are unitary") {
    RngStream rng(42, 0);
    for (std::size_t n = 1; n <= 5; ++n) {
        for (int rep = 0; rep < 100; ++rep) {
            ComplexMatrix u = sample_haar_unitary(n, rng);
            ComplexMatrix p = matmul(adjoint(u), u);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    cxd want = (i == j) ? cxd(1, 0) : cxd(0, 0);
                    CHECK(std::abs(p(i, j) - want) < 1e-10);
                }
        }
    }
}

TEST_CASE("haar entry moments: E|u_jk|^2 = 1/n") {
    const std::size_t n = 3;
    const int reps = 20000;
    RngStream rng(9, 0);
    std::vector<double> acc(n * n, 0.0);
    for (int rep = 0; rep < reps; ++rep) {
        ComplexMatrix u = sample_haar_unitary(n, rng);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) acc[i * n + j] += std::norm(u(i, j));
    }
    for (double v : acc) CHECK(std::abs(v / reps - 1.0 / n) < 0.01);
}

namespace {

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double stat = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        double fa = double(i) / a.size();
        double fb = double(j) / b.size();
        stat = std::max(stat, std::abs(fa - fb));
    }
    return stat;
}

}  // namespace

TEST_CASE("haar distribution is invariant under fixed unitary multiplication") {
    const std::size_t n = 2;
    const int reps = 100000;
    RngStream rng(1234, 0);
    ComplexMatrix v = sample_haar_unitary(n, rng);
    std::vector<double> plain, rotated;
    plain.reserve(reps);
    rotated.reserve(reps);
    for (int rep = 0; rep < reps; ++rep) {
        ComplexMatrix u = sample_haar_unitary(n, rng);
        plain.push_back(std::norm(u(0, 0)));
        ComplexMatrix vu = matmul(v, u);
        rotated.push_back(std::norm(vu(0, 0)));
    }
    double stat = ks_statistic(plain, rotated);
    // asymptotic two-sample critical value at the 1% level
    double crit = 1.62762 * std::sqrt(2.0 / reps);
    CHECK(stat < crit);
}

TEST_CASE("eigenvalues of fixed matrices") {
    SUBCASE("diagonal") {
        ComplexMatrix m(3, 3);
        m(0, 0) = 2.0;
        m(1, 1) = 7.0;
        m(2, 2) = -1.0;
        auto ev = hermitian_eigenvalues(m);
        REQUIRE(ev.size() == 3);
        CHECK(ev[0] == doctest::Approx(7.0).epsilon(1e-12));
        CHECK(ev[1] == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(ev[2] == doctest::Approx(-1.0).epsilon(1e-12));
    }
    SUBCASE("identity") {
        auto ev = hermitian_eigenvalues(ComplexMatrix::identity(4));
        for (double v : ev) CHECK(v == doctest::Approx(1.0).epsilon(1e-13));
    }
    SUBCASE("2x2 with complex off-diagonal") {
        // [[2, i], [-i, 2]] has eigenvalues 3 and 1
        ComplexMatrix m(2, 2);
        m(0, 0) = 2.0;
        m(1, 1) = 2.0;
        m(0, 1) = cxd(0, 1);
        m(1, 0) = cxd(0, -1);
        auto ev = hermitian_eigenvalues(m);
        CHECK(ev[0] == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(ev[1] == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("eigendecomposition reconstructs random hermitian matrices") {
    RngStream rng(5, 0);
    for (int rep = 0; rep < 20; ++rep) {
        ComplexMatrix g = sample_complex_gaussian(4, 4, rng);
        ComplexMatrix m = gram(g);  // Hermitian PSD
        HermitianEigen eig = hermitian_eigen(m);
        REQUIRE(eig.values.size() == 4);
        for (std::size_t i = 0; i + 1 < 4; ++i) CHECK(eig.values[i] >= eig.values[i + 1]);
        for (double v : eig.values) CHECK(v >= -1e-12);

        double trace = 0;
        for (std::size_t i = 0; i < 4; ++i) trace += m(i, i).real();
        double sum = 0;
        for (double v : eig.values) sum += v;
        CHECK(trace == doctest::Approx(sum).epsilon(1e-10));

        // V D V* == M
        ComplexMatrix vd(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) vd(i, j) = eig.vectors(i, j) * eig.values[j];
        ComplexMatrix rec = matmul(vd, adjoint(eig.vectors));
        double resid = 0, scale = frobenius_norm(m);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) resid += std::norm(rec(i, j) - m(i, j));
        CHECK(std::sqrt(resid) <= 1e-9 * scale);
    }
}

TEST_CASE("eigen solver rejects bad input") {
    CHECK_THROWS(hermitian_eigenvalues(ComplexMatrix(2, 3)));
    ComplexMatrix m(2, 2);
    m(0, 1) = cxd(1, 0);
    m(1, 0) = cxd(0.5, 0);  // clearly not Hermitian
    CHECK_THROWS(hermitian_eigenvalues(m));
}

TEST_CASE("shifted log-determinant on fixed inputs") {
    ComplexMatrix one(1, 1);
    one(0, 0) = 1.0;
    CHECK(log_det_shifted(one, 3.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(log_det_shifted(one, 0.0) == doctest::Approx(0.0).epsilon(1e-12));

    CHECK(log_det_shifted(ComplexMatrix::identity(2), 1.0) == doctest::Approx(2.0).epsilon(1e-12));

    ComplexMatrix zero(3, 2);
    CHECK(log_det_shifted(zero, 100.0) == doctest::Approx(0.0));
}

TEST_CASE("shifted log-determinant properties") {
    RngStream rng(11, 0);
    for (int rep = 0; rep < 10; ++rep) {
        ComplexMatrix m = sample_complex_gaussian(3, 5, rng);

        // same value from either Gram side
        CHECK(log_det_shifted(m, 2.5) == doctest::Approx(log_det_shifted(adjoint(m), 2.5)).epsilon(1e-10));

        // monotone in the power
        double prev = -1;
        for (double p : {0.0, 0.5, 1.0, 10.0, 1000.0}) {
            double v = log_det_shifted(m, p);
            CHECK(v >= prev - 1e-12);
            CHECK(v >= 0.0);
            prev = v;
        }

        // agreement with the eigenvalue route
        auto ev = hermitian_eigenvalues(gram(m));
        double via_eig = 0;
        for (double lam : ev) via_eig += std::log2(1.0 + 2.5 * std::max(lam, 0.0));
        CHECK(log_det_shifted(m, 2.5) == doctest::Approx(via_eig).epsilon(1e-9));

        // identity-plus form matches
        ComplexMatrix g = gram(m);
        CHECK(log2_det_identity_plus(g) == doctest::Approx(log_det_shifted(m, 1.0)).epsilon(1e-10));
    }
}
