#include "relaydmt/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace relaydmt {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: inner dimensions differ");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            cxd aik = a(i, k);
            if (aik == cxd(0.0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix& m) {
    ComplexMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
    return out;
}

ComplexMatrix gram(const ComplexMatrix& m) {
    ComplexMatrix out(m.rows(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            cxd s = 0.0;
            for (std::size_t k = 0; k < m.cols(); ++k) s += m(i, k) * std::conj(m(j, k));
            out(i, j) = s;
            out(j, i) = std::conj(s);
        }
    }
    return out;
}

ComplexMatrix hcat(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hcat: row counts differ");
    ComplexMatrix out(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
    }
    return out;
}

ComplexMatrix vcat(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vcat: column counts differ");
    ComplexMatrix out(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, j) = b(i, j);
    return out;
}

double frobenius_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (const auto& v : m.data()) s += std::norm(v);
    return std::sqrt(s);
}

double hermitian_defect(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_defect: not square");
    double worst = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    return worst;
}

}  // namespace relaydmt
