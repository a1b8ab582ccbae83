#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"

namespace syndisc {

struct LpSolution {
    double value = 0.0;            // objective at the optimum
    std::vector<double> x;         // primal solution
    std::vector<std::size_t> basis;
};

namespace detail {

/// Bland's rule pivoting on a dense tableau. Objective row is tableau row `rows`,
/// stored as reduced costs; minimization.
class SimplexTableau {
public:
    SimplexTableau(const Matrix& a, const std::vector<double>& b, const std::vector<double>& cost)
        : m_(a.rows), n_(a.cols), t_(a.rows + 1, a.cols + 1) {
        for (std::size_t r = 0; r < m_; ++r) {
            for (std::size_t c = 0; c < n_; ++c) t_.at(r, c) = a.at(r, c);
            t_.at(r, n_) = b[r];
        }
        for (std::size_t c = 0; c < n_; ++c) t_.at(m_, c) = cost[c];
        basis_.assign(m_, std::size_t(-1));
    }

    void set_basis(const std::vector<std::size_t>& basis) {
        basis_ = basis;
        for (std::size_t r = 0; r < m_; ++r) price_out(r, basis_[r]);
    }

    /// Iterate until optimal. Bland's rule: smallest eligible indices.
    void run() {
        const double eps = 1e-11;
        for (std::size_t iter = 0; iter < 100000; ++iter) {
            std::size_t enter = std::size_t(-1);
            for (std::size_t c = 0; c < n_; ++c)
                if (t_.at(m_, c) < -eps) { enter = c; break; }
            if (enter == std::size_t(-1)) return; // optimal
            std::size_t leave = std::size_t(-1);
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < m_; ++r) {
                double a = t_.at(r, enter);
                if (a <= eps) continue;
                double ratio = t_.at(r, n_) / a;
                if (ratio < best_ratio - eps ||
                    (ratio < best_ratio + eps &&
                     (leave == std::size_t(-1) || basis_[r] < basis_[leave]))) {
                    best_ratio = ratio;
                    leave = r;
                }
            }
            if (leave == std::size_t(-1))
                throw internal_error("simplex: unbounded objective");
            pivot(leave, enter);
        }
        throw internal_error("simplex: iteration limit reached");
    }

    double objective() const { return -t_.at(m_, n_); }

    std::vector<double> solution() const {
        std::vector<double> x(n_, 0.0);
        for (std::size_t r = 0; r < m_; ++r)
            if (basis_[r] < n_) x[basis_[r]] = t_.at(r, n_);
        return x;
    }

    const std::vector<std::size_t>& basis() const { return basis_; }
    double rhs(std::size_t r) const { return t_.at(r, n_); }
    double coef(std::size_t r, std::size_t c) const { return t_.at(r, c); }
    std::size_t num_rows() const { return m_; }

    void pivot(std::size_t leave, std::size_t enter) {
        double piv = t_.at(leave, enter);
        for (std::size_t c = 0; c <= n_; ++c) t_.at(leave, c) /= piv;
        for (std::size_t r = 0; r <= m_; ++r) {
            if (r == leave) continue;
            double f = t_.at(r, enter);
            if (f == 0.0) continue;
            for (std::size_t c = 0; c <= n_; ++c) t_.at(r, c) -= f * t_.at(leave, c);
        }
        basis_[leave] = enter;
    }

private:
    void price_out(std::size_t row, std::size_t col) {
        double f = t_.at(m_, col);
        if (f == 0.0) return;
        for (std::size_t c = 0; c <= n_; ++c) t_.at(m_, c) -= f * t_.at(row, c);
    }

    std::size_t m_, n_;
    Matrix t_;
    std::vector<std::size_t> basis_;
};

} // namespace detail

/// maximize c^T x subject to A x = b, x >= 0.
/// A is row-reduced internally; the system must be feasible (the callers
/// construct b inside the column cone by design, so infeasibility is a bug).
inline LpSolution lp_maximize(Matrix a, std::vector<double> b, const std::vector<double>& c) {
    if (a.cols != c.size() || a.rows != b.size())
        throw input_error("lp_maximize: dimension mismatch");
    // The columns are numerically computed polytope vertices: nearly dependent
    // rows carry ~1e-9 noise, while genuinely independent rows can live many
    // decades below the largest row (tiny probability masses). Equilibrating
    // each row to unit max makes the rank tolerance relative per row, so the
    // reduction neither pivots on noise nor discards small constraints.
    // The matrix entries are numerically computed polytope vertices, so each
    // coefficient carries ~1e-9 absolute noise while genuine row scales span
    // many decades (tiny probability masses). Equilibrate each row to unit
    // max and track its noise floor through the elimination: a residual below
    // a row's accumulated noise is rank deficiency, not a new constraint.
    {
        const double kNoise = 1e-12;
        const std::size_t rows = a.rows, cols = a.cols;
        std::vector<double> scale(rows), eta(rows);
        for (std::size_t r = 0; r < rows; ++r) {
            double s = std::abs(b[r]);
            for (std::size_t col = 0; col < cols; ++col) s = std::max(s, std::abs(a.at(r, col)));
            scale[r] = std::max(s, kNoise);
            double inv = 1.0 / scale[r];
            for (std::size_t col = 0; col < cols; ++col) a.at(r, col) *= inv;
            b[r] *= inv;
            eta[r] = kNoise * inv; // absolute noise in equilibrated units
        }
        std::vector<char> used(rows, 0);
        std::vector<std::size_t> keep;
        for (;;) {
            // choose the pivot with the best magnitude-to-noise ratio so the
            // solution is pinned by the most trustworthy constraints
            std::size_t br = rows, bc = cols;
            double best_score = 0.0;
            for (std::size_t r = 0; r < rows; ++r) {
                if (used[r]) continue;
                for (std::size_t col = 0; col < cols; ++col) {
                    double v = std::abs(a.at(r, col));
                    if (v <= std::max(50.0 * eta[r], 1e-7)) continue;
                    double score = v / eta[r];
                    if (score > best_score) {
                        best_score = score;
                        br = r;
                        bc = col;
                    }
                }
            }
            if (br == rows) break;
            double piv = a.at(br, bc);
            for (std::size_t col = 0; col < cols; ++col) a.at(br, col) /= piv;
            b[br] /= piv;
            eta[br] /= std::abs(piv);
            for (std::size_t r = 0; r < rows; ++r) {
                if (used[r] || r == br) continue;
                double f = a.at(r, bc);
                if (f == 0.0) continue;
                for (std::size_t col = 0; col < cols; ++col) a.at(r, col) -= f * a.at(br, col);
                b[r] -= f * b[br];
                a.at(r, bc) = 0.0;
                eta[r] += std::abs(f) * eta[br];
            }
            used[br] = 1;
            keep.push_back(br);
        }
        // leftover rows are rank-deficient residue; a residue that would
        // misallocate real probability mass is a bug, not noise
        for (std::size_t r = 0; r < rows; ++r) {
            if (used[r]) continue;
            double amax = 0.0;
            for (std::size_t col = 0; col < cols; ++col)
                amax = std::max(amax, std::abs(a.at(r, col)));
            if ((amax + std::abs(b[r])) * scale[r] > 1e-6)
                throw internal_error("lp_maximize: inconsistent constraint system");
        }
        Matrix ak(keep.size(), cols);
        std::vector<double> bk(keep.size());
        for (std::size_t i = 0; i < keep.size(); ++i) {
            for (std::size_t col = 0; col < cols; ++col) ak.at(i, col) = a.at(keep[i], col);
            bk[i] = b[keep[i]];
        }
        a = std::move(ak);
        b = std::move(bk);
    }
    const std::size_t m = a.rows, n = a.cols;
    for (std::size_t r = 0; r < m; ++r)
        if (b[r] < 0.0) {
            for (std::size_t col = 0; col < n; ++col) a.at(r, col) = -a.at(r, col);
            b[r] = -b[r];
        }

    // Phase I: minimize the sum of artificial variables.
    Matrix a1(m, n + m);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t col = 0; col < n; ++col) a1.at(r, col) = a.at(r, col);
        a1.at(r, n + r) = 1.0;
    }
    std::vector<double> cost1(n + m, 0.0);
    for (std::size_t r = 0; r < m; ++r) cost1[n + r] = 1.0;
    detail::SimplexTableau t1(a1, b, cost1);
    std::vector<std::size_t> basis(m);
    for (std::size_t r = 0; r < m; ++r) basis[r] = n + r;
    t1.set_basis(basis);
    t1.run();
    if (t1.objective() > 1e-7)
        throw internal_error("lp_maximize: infeasible program (solver bug)");

    // Drive any artificial variables left in the basis out (degenerate rows).
    basis = t1.basis();
    for (std::size_t r = 0; r < m; ++r) {
        if (basis[r] < n) continue;
        std::size_t enter = std::size_t(-1);
        for (std::size_t col = 0; col < n; ++col)
            if (std::abs(t1.coef(r, col)) > 1e-9) { enter = col; break; }
        if (enter != std::size_t(-1)) t1.pivot(r, enter);
        basis = t1.basis();
    }

    // Phase II on the original columns with the feasible basis found above.
    std::vector<double> xstart(n, 0.0);
    Matrix a2(m, n);
    std::vector<double> b2(m);
    std::vector<std::size_t> basis2;
    std::vector<std::size_t> rows_kept;
    for (std::size_t r = 0; r < m; ++r) {
        if (basis[r] >= n) continue; // redundant degenerate row, drop it
        rows_kept.push_back(r);
        basis2.push_back(basis[r]);
    }
    Matrix a3(rows_kept.size(), n);
    std::vector<double> b3(rows_kept.size());
    for (std::size_t i = 0; i < rows_kept.size(); ++i) {
        for (std::size_t col = 0; col < n; ++col) a3.at(i, col) = t1.coef(rows_kept[i], col);
        b3[i] = t1.rhs(rows_kept[i]);
    }
    std::vector<double> cost2(n);
    for (std::size_t col = 0; col < n; ++col) cost2[col] = -c[col]; // maximize -> minimize
    detail::SimplexTableau t2(a3, b3, cost2);
    t2.set_basis(basis2);
    t2.run();

    LpSolution sol;
    sol.value = -t2.objective();
    sol.x = t2.solution();
    sol.basis = t2.basis();

    // The tableau accumulates round-off over pivots; re-solve the final basis
    // against the (pre-pivot) reduced system with iterative refinement.
    {
        const auto& basis_f = sol.basis;
        Matrix ab(a3.rows, basis_f.size());
        for (std::size_t r = 0; r < a3.rows; ++r)
            for (std::size_t j = 0; j < basis_f.size(); ++j) ab.at(r, j) = a3.at(r, basis_f[j]);
        std::vector<double> xb;
        if (solve_subsystem(ab, b3, xb, kPivotTol, 1e-7)) {
            bool nonneg = true;
            for (double v : xb)
                if (v < -1e-9) { nonneg = false; break; }
            if (nonneg) {
                std::fill(sol.x.begin(), sol.x.end(), 0.0);
                double value = 0.0;
                for (std::size_t j = 0; j < basis_f.size(); ++j) {
                    double w = std::max(0.0, xb[j]);
                    sol.x[basis_f[j]] = w;
                    value += c[basis_f[j]] * w;
                }
                sol.value = value;
            }
        }
    }
    return sol;
}

} // namespace syndisc
