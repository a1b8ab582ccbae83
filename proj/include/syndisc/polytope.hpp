#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "errors.hpp"
#include "lattice.hpp"
#include "linalg.hpp"
#include "prob.hpp"

namespace syndisc {

/// Binary marginalization matrix P_α over the source support X̂.
/// One row block per subset in α; applying a block to a pmf on X̂ yields the
/// pmf's marginal over that subset. The block of the empty subset is a single
/// all-ones row.
struct ConstraintMatrix {
    Matrix m;                                // rows x |X̂|, entries in {0,1}
    std::vector<std::size_t> support;        // X̂: flat source-state indices
    std::vector<SubsetMask> row_block;       // owning subset of each row
};

inline ConstraintMatrix build_constraint_matrix(const SystemDistribution& dist,
                                                const SourceSet& alpha,
                                                double support_eps = kProbSumTol) {
    if (alpha.n != dist.num_sources())
        throw input_error("build_constraint_matrix: alpha source count mismatch");
    auto px = dist.source_marginal();
    ConstraintMatrix cm;
    for (std::size_t x = 0; x < px.size(); ++x)
        if (px[x] > support_eps) cm.support.push_back(x);
    const std::size_t n_cols = cm.support.size();

    std::size_t n_rows = 0;
    std::vector<std::size_t> block_sizes;
    for (SubsetMask s : alpha.subsets) {
        std::size_t card = 1;
        for (std::size_t i = 0; i < dist.num_sources(); ++i)
            if (s >> i & 1) card *= dist.source_alphabet(i);
        block_sizes.push_back(card);
        n_rows += card;
    }

    cm.m = Matrix(n_rows, n_cols);
    cm.row_block.resize(n_rows);
    std::size_t row0 = 0;
    for (std::size_t k = 0; k < alpha.subsets.size(); ++k) {
        SubsetMask s = alpha.subsets[k];
        for (std::size_t j = 0; j < n_cols; ++j) {
            auto xs = dist.decode_source_state(cm.support[j]);
            std::size_t idx = 0;
            for (std::size_t i = 0; i < dist.num_sources(); ++i)
                if (s >> i & 1) idx = idx * dist.source_alphabet(i) + xs[i];
            cm.m.at(row0 + idx, j) = 1.0;
        }
        for (std::size_t r = 0; r < block_sizes[k]; ++r) cm.row_block[row0 + r] = s;
        row0 += block_sizes[k];
    }
    return cm;
}

/// Extreme points of {x >= 0, 1ᵀx = 1, P x = P p_x} over the support X̂.
struct DisclosurePolytope {
    std::size_t ambient_dim = 0;
    std::vector<std::vector<double>> vertices;
    bool degeneracy_warning = false;
};

namespace detail {

inline bool next_combination(std::vector<std::size_t>& comb, std::size_t n) {
    const std::size_t k = comb.size();
    for (std::size_t i = k; i-- > 0;) {
        if (comb[i] < n - k + i) {
            ++comb[i];
            for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
            return true;
        }
    }
    return false;
}

} // namespace detail

/// Basic-feasible-solution search: every vertex has a support extendable to a
/// set of rank-many linearly independent columns, so enumerating those subsets
/// finds all extreme points.
inline DisclosurePolytope polytope_vertices(const ConstraintMatrix& p,
                                            const std::vector<double>& p_x) {
    const std::size_t n = p.support.size();
    if (p_x.size() != n)
        throw input_error("polytope_vertices: p_x must be restricted to the support");

    Matrix a(p.m.rows + 1, n);
    for (std::size_t c = 0; c < n; ++c) a.at(0, c) = 1.0;
    for (std::size_t r = 0; r < p.m.rows; ++r)
        for (std::size_t c = 0; c < n; ++c) a.at(r + 1, c) = p.m.at(r, c);
    std::vector<double> b(a.rows, 0.0);
    for (std::size_t r = 0; r < a.rows; ++r)
        for (std::size_t c = 0; c < n; ++c) b[r] += a.at(r, c) * p_x[c];

    // Independent rows only; keeps the per-subset solves small.
    Matrix ar = a;
    std::vector<double> br = b;
    reduce_system(ar, br);
    const std::size_t rho = ar.rows;

    DisclosurePolytope poly;
    poly.ambient_dim = n;
    if (rho >= n) {
        poly.vertices.push_back(p_x); // fully determined: the polytope is a point
        return poly;
    }

    // vertex solves are iteratively refined, so distinct vertices of even a
    // very thin polytope separate cleanly from duplicate solves
    const double dedup_tol = 1e-12;
    std::vector<std::size_t> comb(rho);
    for (std::size_t i = 0; i < rho; ++i) comb[i] = i;
    Matrix sub(rho, rho);
    std::vector<double> xs;
    do {
        for (std::size_t r = 0; r < rho; ++r)
            for (std::size_t c = 0; c < rho; ++c) sub.at(r, c) = ar.at(r, comb[c]);
        if (!solve_subsystem(sub, br, xs)) continue;
        bool feasible = true;
        for (double v : xs)
            if (v < -1e-9) { feasible = false; break; }
        if (!feasible) continue;
        std::vector<double> full(n, 0.0);
        for (std::size_t c = 0; c < rho; ++c) full[comb[c]] = std::max(0.0, xs[c]);
        bool dup = false;
        for (const auto& v : poly.vertices) {
            double dist = 0.0;
            for (std::size_t c = 0; c < n; ++c) dist = std::max(dist, std::abs(v[c] - full[c]));
            if (dist < dedup_tol) { dup = true; break; }
        }
        if (!dup) {
            // residual against the full original system
            double resid = 0.0;
            for (std::size_t r = 0; r < a.rows; ++r) {
                double s = -b[r];
                for (std::size_t c = 0; c < n; ++c) s += a.at(r, c) * full[c];
                resid = std::max(resid, std::abs(s));
            }
            if (resid <= 1e-9)
                poly.vertices.push_back(std::move(full));
            else
                poly.degeneracy_warning = true;
        }
    } while (detail::next_combination(comb, n));

    if (poly.vertices.empty())
        throw internal_error("polytope_vertices: no feasible vertex (solver bug)");
    return poly;
}

} // namespace syndisc
