#pragma once

#include <cstddef>
#include <vector>

namespace relaydmt {

enum class LpRowKind { epigraph, rate, ordering, antidiagonal, bound };

// Minimize objective . x  subject to  rows . x >= rhs, x >= 0.
// objective_offset is added to the reported value.
struct LinearProgram {
    std::size_t num_vars = 0;
    std::vector<double> objective;
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    std::vector<LpRowKind> row_kinds;
    double objective_offset = 0.0;

    void add_row(std::vector<double> coeffs, double bound, LpRowKind kind);
};

struct LpSolution {
    double value = 0.0;
    std::vector<double> x;
    int iterations = 0;
};

// Two-phase dense simplex with Bland's rule (guaranteed termination on the
// degenerate programs produced here). Throws std::runtime_error on infeasible
// or unbounded input; the programs this library builds are always feasible and
// bounded, so either indicates an internal error.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace relaydmt
