#include "relaydmt/lp.hpp"

#include <cmath>
#include <stdexcept>

namespace relaydmt {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-9;

// Dense tableau for rows . x = rhs with rhs >= 0. Column layout: structural
// variables, then one surplus per row, then artificials. basis[i] is the
// column currently basic in row i.
struct Tableau {
    std::size_t cols = 0;
    std::vector<std::vector<double>> a;
    std::vector<double> rhs;
    std::vector<std::size_t> basis;

    void pivot(std::size_t row, std::size_t col) {
        double p = a[row][col];
        for (auto& v : a[row]) v /= p;
        rhs[row] /= p;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == row) continue;
            double f = a[i][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[row][j];
            a[i][col] = 0.0;
            rhs[i] -= f * rhs[row];
            if (rhs[i] < 0 && rhs[i] > -1e-12) rhs[i] = 0;
        }
    }
};

// Bland's rule: entering column is the lowest-index one with negative reduced
// cost, the leaving row breaks ratio ties by lowest basis index. Returns the
// number of pivots.
int run_simplex(Tableau& t, const std::vector<double>& cost, std::size_t usable_cols) {
    int iters = 0;
    std::size_t m = t.a.size();
    for (;;) {
        if (++iters > 100000) throw std::runtime_error("simplex: iteration limit");

        // reduced cost r_j = c_j - c_B . column_j, scanned in index order
        std::vector<double> dual(m);
        for (std::size_t i = 0; i < m; ++i) dual[i] = cost[t.basis[i]];
        std::size_t enter = usable_cols;
        for (std::size_t j = 0; j < usable_cols; ++j) {
            double rc = cost[j];
            for (std::size_t i = 0; i < m; ++i) rc -= dual[i] * t.a[i][j];
            if (rc < -kCostTol) {
                enter = j;
                break;
            }
        }
        if (enter == usable_cols) return iters;

        std::size_t leave = m;
        double best = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (t.a[i][enter] <= kPivotTol) continue;
            double ratio = t.rhs[i] / t.a[i][enter];
            if (leave == m || ratio < best - 1e-12 ||
                (ratio <= best + 1e-12 && t.basis[i] < t.basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) throw std::runtime_error("simplex: unbounded");
        t.pivot(leave, enter);
        t.basis[leave] = enter;
    }
}

}  // namespace

void LinearProgram::add_row(std::vector<double> coeffs, double bound, LpRowKind kind) {
    if (coeffs.size() != num_vars) throw std::invalid_argument("lp row has wrong arity");
    rows.push_back(std::move(coeffs));
    rhs.push_back(bound);
    row_kinds.push_back(kind);
}

LpSolution solve_lp(const LinearProgram& lp) {
    std::size_t n = lp.num_vars;
    std::size_t m = lp.rows.size();
    if (lp.objective.size() != n) throw std::invalid_argument("lp objective has wrong arity");

    // a . x >= b becomes a . x - s = b; rows with b <= 0 are negated so the
    // surplus itself can start basic, the rest get an artificial
    std::vector<std::size_t> art_rows;
    for (std::size_t i = 0; i < m; ++i)
        if (lp.rhs[i] > 0) art_rows.push_back(i);

    Tableau t;
    t.cols = n + m + art_rows.size();
    t.a.assign(m, std::vector<double>(t.cols, 0.0));
    t.rhs.resize(m);
    t.basis.resize(m);
    std::size_t next_art = n + m;
    for (std::size_t i = 0; i < m; ++i) {
        double sign = lp.rhs[i] > 0 ? 1.0 : -1.0;
        for (std::size_t j = 0; j < n; ++j) t.a[i][j] = sign * lp.rows[i][j];
        t.a[i][n + i] = -sign;
        t.rhs[i] = sign * lp.rhs[i];
        if (lp.rhs[i] > 0) {
            t.a[i][next_art] = 1.0;
            t.basis[i] = next_art++;
        } else {
            t.basis[i] = n + i;
        }
    }

    int iters = 0;
    if (!art_rows.empty()) {
        std::vector<double> phase1(t.cols, 0.0);
        for (std::size_t j = n + m; j < t.cols; ++j) phase1[j] = 1.0;
        iters += run_simplex(t, phase1, t.cols);
        double infeas = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (t.basis[i] >= n + m) infeas += t.rhs[i];
        if (infeas > 1e-7) throw std::runtime_error("simplex: infeasible");
        // drive leftover zero-level artificials out where possible
        for (std::size_t i = 0; i < m; ++i) {
            if (t.basis[i] < n + m) continue;
            for (std::size_t j = 0; j < n + m; ++j) {
                if (std::abs(t.a[i][j]) > 1e-9) {
                    t.pivot(i, j);
                    t.basis[i] = j;
                    break;
                }
            }
        }
    }

    std::vector<double> phase2(t.cols, 0.0);
    for (std::size_t j = 0; j < n; ++j) phase2[j] = lp.objective[j];
    // artificial columns are barred from re-entering
    iters += run_simplex(t, phase2, n + m);

    LpSolution sol;
    sol.x.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (t.basis[i] < n) sol.x[t.basis[i]] = t.rhs[i];
    sol.value = lp.objective_offset;
    for (std::size_t j = 0; j < n; ++j) sol.value += lp.objective[j] * sol.x[j];
    sol.iterations = iters;
    return sol;
}

}  // namespace relaydmt
