#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace relaydmt {

using cxd = std::complex<double>;

// Dense row-major complex matrix. Dimensions in this library are tiny (antenna
// counts), so everything is kept simple and allocation-friendly rather than
// fast.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cxd& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cxd& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<cxd>& data() const { return data_; }
    std::vector<cxd>& data() { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cxd> data_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix adjoint(const ComplexMatrix& m);

// m * adjoint(m), a rows x rows Hermitian PSD matrix.
ComplexMatrix gram(const ComplexMatrix& m);

// Horizontal [a b] and vertical [a; b] concatenation.
ComplexMatrix hcat(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix vcat(const ComplexMatrix& a, const ComplexMatrix& b);

double frobenius_norm(const ComplexMatrix& m);

// max_ij |m_ij - conj(m_ji)|; 0 for exactly Hermitian input.
double hermitian_defect(const ComplexMatrix& m);

}  // namespace relaydmt
