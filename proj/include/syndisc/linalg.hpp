#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "errors.hpp"

namespace syndisc {

/// Minimal dense row-major matrix. Only what the polytope and LP code needs.
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

inline constexpr double kPivotTol = 1e-10;

namespace detail {

/// In-place Gauss-Jordan reduction with partial pivoting.
/// Returns the pivot column of each eliminated row (row echelon order).
inline std::vector<std::size_t> rref(Matrix& m, double tol = kPivotTol) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t best = row;
        for (std::size_t r = row + 1; r < m.rows; ++r)
            if (std::abs(m.at(r, col)) > std::abs(m.at(best, col))) best = r;
        if (std::abs(m.at(best, col)) <= tol) continue;
        if (best != row)
            for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(best, c), m.at(row, c));
        double piv = m.at(row, col);
        for (std::size_t c = 0; c < m.cols; ++c) m.at(row, c) /= piv;
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r == row) continue;
            double f = m.at(r, col);
            if (f == 0.0) continue;
            for (std::size_t c = 0; c < m.cols; ++c) m.at(r, c) -= f * m.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace detail

inline std::size_t rank(Matrix m, double tol = kPivotTol) {
    return detail::rref(m, tol).size();
}

/// Row-reduce [A | b] and keep only the independent rows; throws if inconsistent.
/// The reduced system has the same solution set as the original.
inline void reduce_system(Matrix& a, std::vector<double>& b, double tol = kPivotTol) {
    Matrix aug(a.rows, a.cols + 1);
    for (std::size_t r = 0; r < a.rows; ++r) {
        for (std::size_t c = 0; c < a.cols; ++c) aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols) = b[r];
    }
    auto pivots = detail::rref(aug, tol);
    for (std::size_t p : pivots)
        if (p == a.cols) throw internal_error("reduce_system: inconsistent constraints");
    Matrix out(pivots.size(), a.cols);
    std::vector<double> bout(pivots.size());
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        for (std::size_t c = 0; c < a.cols; ++c) out.at(r, c) = aug.at(r, c);
        bout[r] = aug.at(r, a.cols);
    }
    a = std::move(out);
    b = std::move(bout);
}

/// Solve A x = b where A is rows x k with full column rank k (rows >= k).
/// Returns false when the subsystem is singular or inconsistent beyond tol.
inline bool solve_subsystem(const Matrix& a, const std::vector<double>& b, std::vector<double>& x,
                            double pivot_tol = kPivotTol, double resid_tol = 1e-9) {
    auto solve_once = [&](const std::vector<double>& rhs, std::vector<double>& out) -> bool {
        Matrix aug(a.rows, a.cols + 1);
        for (std::size_t r = 0; r < a.rows; ++r) {
            for (std::size_t c = 0; c < a.cols; ++c) aug.at(r, c) = a.at(r, c);
            aug.at(r, a.cols) = rhs[r];
        }
        auto pivots = detail::rref(aug, pivot_tol);
        std::size_t rank_a = 0;
        for (std::size_t p : pivots) {
            if (p == a.cols) return false; // inconsistent
            ++rank_a;
        }
        if (rank_a < a.cols) return false; // column-rank deficient
        out.assign(a.cols, 0.0);
        for (std::size_t r = 0; r < rank_a; ++r) out[pivots[r]] = aug.at(r, a.cols);
        return true;
    };
    if (!solve_once(b, x)) return false;
    // Iterative refinement: a mildly ill-conditioned subsystem loses several
    // digits; one or two correction solves recover near-full precision, which
    // downstream tolerances rely on.
    std::vector<double> resid(a.rows), dx;
    for (int round = 0; round < 2; ++round) {
        for (std::size_t r = 0; r < a.rows; ++r) {
            double s = b[r];
            for (std::size_t c = 0; c < a.cols; ++c) s -= a.at(r, c) * x[c];
            resid[r] = s;
        }
        if (!solve_once(resid, dx)) break;
        for (std::size_t c = 0; c < a.cols; ++c) x[c] += dx[c];
    }
    // residual check against the original rows
    for (std::size_t r = 0; r < a.rows; ++r) {
        double s = -b[r];
        for (std::size_t c = 0; c < a.cols; ++c) s += a.at(r, c) * x[c];
        if (std::abs(s) > resid_tol) return false;
    }
    return true;
}

/// Basis of the null space of A (columns of the returned matrix).
inline std::vector<std::vector<double>> null_space(Matrix a, double tol = kPivotTol) {
    auto pivots = detail::rref(a, tol);
    std::vector<bool> is_pivot(a.cols, false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    std::vector<std::vector<double>> basis;
    for (std::size_t free = 0; free < a.cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<double> v(a.cols, 0.0);
        v[free] = 1.0;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a.at(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace syndisc
