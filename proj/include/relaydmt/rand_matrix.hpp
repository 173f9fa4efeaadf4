#pragma once

#include <cstdint>
#include <vector>

#include "relaydmt/matrix.hpp"

namespace relaydmt {

// Counter-based random stream. A stream is fully determined by
// (master_seed, stream_index), so parallel workers can be handed disjoint
// streams and reproduce results regardless of scheduling. Each output is two
// keyed finalizer rounds over an incrementing counter, which keeps streams on
// unrelated orbits (unlike offsetting a shared sequence).
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

    std::uint64_t next_u64();
    double next_uniform();      // [0, 1)
    double next_uniform_pos();  // (0, 1]

    // Standard complex Gaussian: real and imaginary parts N(0, 1/2), so
    // E|z|^2 = 1. One Box-Muller pair per call.
    cxd next_complex_gaussian();

private:
    std::uint64_t key1_;
    std::uint64_t key2_;
    std::uint64_t counter_ = 0;
};

// i.i.d. entries, each standard complex Gaussian.
ComplexMatrix sample_complex_gaussian(std::size_t rows, std::size_t cols, RngStream& rng);

// Haar-distributed unitary via modified Gram-Schmidt on a Gaussian matrix,
// with one re-orthogonalization pass. The positive-diagonal triangular factor
// makes the result exactly Haar.
ComplexMatrix sample_haar_unitary(std::size_t n, RngStream& rng);

struct HermitianEigen {
    std::vector<double> values;  // descending
    ComplexMatrix vectors;       // columns, same order as values
};

// Cyclic Jacobi for Hermitian matrices. Input must be square and Hermitian to
// within 1e-12 * max(1, ||m||_F); it is symmetrized before iterating.
// Eigenvalues are returned in descending order.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);
HermitianEigen hermitian_eigen(const ComplexMatrix& m);

// log2 det(I + p * m * adjoint(m)), computed on the smaller Gram side via
// Cholesky. Always >= 0 for p >= 0.
double log_det_shifted(const ComplexMatrix& m, double p);

// log2 det(I + a) for Hermitian PSD a.
double log2_det_identity_plus(const ComplexMatrix& a);

}  // namespace relaydmt
