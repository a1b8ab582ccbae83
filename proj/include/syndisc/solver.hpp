#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"
#include "lattice.hpp"
#include "polytope.hpp"
#include "prob.hpp"
#include "simplex.hpp"

namespace syndisc {

enum class Objective { KL, TotalVariation };

inline Objective parse_objective(const std::string& name) {
    if (name == "kl" || name == "KL") return Objective::KL;
    if (name == "tv" || name == "TV") return Objective::TotalVariation;
    throw input_error("unknown objective kind: " + name);
}

/// D_f(p || q) = sum_x f(p/q) q. KL in bits; TV is half the L1 distance.
/// q must be strictly positive.
inline double f_divergence(const std::vector<double>& p, const std::vector<double>& q,
                           Objective kind) {
    if (p.size() != q.size()) throw input_error("f_divergence: size mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (q[i] <= 0.0) throw input_error("f_divergence: q must be strictly positive");
        switch (kind) {
            case Objective::KL:
                if (p[i] > 0.0) acc += p[i] * std::log2(p[i] / q[i]);
                break;
            case Objective::TotalVariation:
                acc += 0.5 * std::abs(p[i] - q[i]);
                break;
        }
    }
    return acc;
}

/// Value of S^α plus the optimal disclosure channel.
struct SynergySolution {
    double value = 0.0;                       // bits (or f-information units)
    std::vector<double> weights;              // pmf of V over the polytope vertices
    std::vector<std::size_t> used_vertices;   // indices with weight > 0
    std::vector<std::vector<double>> reverse_channel; // p_{X|V=v} columns, one per vertex
    Channel forward_channel;                  // p_{V|X} on the support, used vertices only
    std::vector<std::size_t> support;         // X̂ as flat source-state indices
    std::vector<double> vertex_objectives;    // D_f(q_j || p_Y) per vertex
    bool degeneracy_warning = false;
};

namespace detail {

struct SupportView {
    std::vector<std::size_t> support;
    std::vector<double> px;       // p_X on the support
    std::vector<double> py;       // p_Y restricted to positive-mass symbols
    std::vector<std::size_t> y_symbols;
    std::vector<double> pyx;      // pyx[j * |y_symbols| + y] = p(y|x_j)
};

inline SupportView make_support_view(const SystemDistribution& dist,
                                     const std::vector<std::size_t>& support) {
    SupportView sv;
    sv.support = support;
    auto py_full = dist.target_marginal();
    for (std::size_t y = 0; y < py_full.size(); ++y)
        if (py_full[y] > 0.0) {
            sv.y_symbols.push_back(y);
            sv.py.push_back(py_full[y]);
        }
    auto px_full = dist.source_marginal();
    sv.px.reserve(support.size());
    sv.pyx.assign(support.size() * sv.y_symbols.size(), 0.0);
    for (std::size_t j = 0; j < support.size(); ++j) {
        double px = px_full[support[j]];
        sv.px.push_back(px);
        for (std::size_t k = 0; k < sv.y_symbols.size(); ++k)
            sv.pyx[j * sv.y_symbols.size() + k] = dist.prob(support[j], sv.y_symbols[k]) / px;
    }
    return sv;
}

/// Image of a reverse-channel column through p_{Y|X}.
inline std::vector<double> target_image(const SupportView& sv, const std::vector<double>& x) {
    std::vector<double> q(sv.y_symbols.size(), 0.0);
    for (std::size_t j = 0; j < sv.support.size(); ++j)
        for (std::size_t k = 0; k < sv.y_symbols.size(); ++k)
            q[k] += x[j] * sv.pyx[j * sv.y_symbols.size() + k];
    return q;
}

} // namespace detail

/// S^α(X→Y): maximize Σ_j w_j D_f(q_j || p_Y) over vertex mixtures with
/// Σ_j w_j x_j = p_X, w >= 0.
inline SynergySolution solve_synergy(const SystemDistribution& dist, const SourceSet& alpha,
                                     Objective objective = Objective::KL) {
    auto cm = build_constraint_matrix(dist, alpha);
    std::vector<double> px;
    {
        auto px_full = dist.source_marginal();
        for (std::size_t s : cm.support) px.push_back(px_full[s]);
    }
    auto poly = polytope_vertices(cm, px);
    auto sv = detail::make_support_view(dist, cm.support);

    const std::size_t m = poly.vertices.size();
    std::vector<double> cost(m);
    for (std::size_t j = 0; j < m; ++j)
        cost[j] = f_divergence(detail::target_image(sv, poly.vertices[j]), sv.py, objective);

    Matrix a(cm.support.size(), m);
    for (std::size_t r = 0; r < cm.support.size(); ++r)
        for (std::size_t j = 0; j < m; ++j) a.at(r, j) = poly.vertices[j][r];
    auto lp = lp_maximize(std::move(a), px, cost);

    SynergySolution sol;
    sol.value = lp.value;
    if (sol.value < 0.0) {
        // divergence costs can reach ~1e2 bits on near-degenerate inputs, so
        // LP round-off scales accordingly
        if (sol.value < -1e-9)
            throw internal_error("solve_synergy: negative objective beyond round-off");
        sol.value = 0.0;
    }
    sol.weights = lp.x;
    sol.reverse_channel = poly.vertices;
    sol.support = cm.support;
    sol.vertex_objectives = cost;
    sol.degeneracy_warning = poly.degeneracy_warning;
    for (std::size_t j = 0; j < m; ++j)
        if (sol.weights[j] > 1e-12) sol.used_vertices.push_back(j);

    // Forward channel by Bayes on the support: p(v=j|x) = w_j x_j(x) / p_X(x).
    sol.forward_channel.input_support = cm.support;
    sol.forward_channel.output_alphabet = sol.used_vertices.size();
    sol.forward_channel.matrix.assign(sol.used_vertices.size() * cm.support.size(), 0.0);
    for (std::size_t v = 0; v < sol.used_vertices.size(); ++v) {
        std::size_t j = sol.used_vertices[v];
        for (std::size_t x = 0; x < cm.support.size(); ++x)
            sol.forward_channel.matrix[v * cm.support.size() + x] =
                sol.weights[j] * poly.vertices[j][x] / px[x];
    }
    // Round-off in w_j x_j / p_x can leave columns slightly off 1; rescale.
    // The deviation is judged by misallocated probability mass: a state of
    // mass 1e-12 cannot (and need not) resolve its posterior to 1e-6 in
    // relative terms, but contributes nothing measurable to any information.
    for (std::size_t x = 0; x < cm.support.size(); ++x) {
        double col = 0.0;
        for (std::size_t v = 0; v < sol.used_vertices.size(); ++v)
            col += sol.forward_channel.matrix[v * cm.support.size() + x];
        double err = std::abs(col - 1.0);
        if (err <= 1e-10) continue;
        if (err * px[x] > 1e-9)
            throw internal_error("solve_synergy: forward channel columns badly normalized");
        if (col > 1e-12) {
            for (std::size_t v = 0; v < sol.used_vertices.size(); ++v)
                sol.forward_channel.matrix[v * cm.support.size() + x] /= col;
        } else {
            // negligible-mass state with no resolvable posterior: fall back to
            // the marginal weights of the disclosure variable
            double wsum = 0.0;
            for (std::size_t j : sol.used_vertices) wsum += sol.weights[j];
            for (std::size_t v = 0; v < sol.used_vertices.size(); ++v)
                sol.forward_channel.matrix[v * cm.support.size() + x] =
                    sol.weights[sol.used_vertices[v]] / wsum;
        }
    }
    return sol;
}

inline SynergySolution solve_synergy(const SystemDistribution& dist,
                                     const std::vector<SubsetMask>& alpha,
                                     Objective objective = Objective::KL) {
    return solve_synergy(dist, canonicalize(alpha, dist.num_sources()), objective);
}

/// min_j I(Y; X^{-α_j} | X^{α_j}).
inline double upper_bound(const SystemDistribution& dist, const SourceSet& alpha) {
    if (alpha.n != dist.num_sources()) throw input_error("upper_bound: source count mismatch");
    double best = std::numeric_limits<double>::infinity();
    for (SubsetMask s : alpha.subsets) {
        VarSet in, out;
        for (std::size_t i = 0; i < dist.num_sources(); ++i)
            (s >> i & 1 ? in : out).push_back(i);
        double bound = conditional_mutual_information(dist, {SystemDistribution::kTarget}, out, in);
        best = std::min(best, bound);
    }
    return best;
}

/// Leakage check: max over α_i of I(X^{α_i}; V) under the joint induced by ch.
struct ChannelReport {
    double max_leakage = 0.0;
    bool pass = false;
    std::vector<double> per_subset_leakage;
};

inline ChannelReport verify_channel(const Channel& ch, const SystemDistribution& dist,
                                    const SourceSet& alpha, double tol = 1e-9) {
    if (alpha.n != dist.num_sources()) throw input_error("verify_channel: source count mismatch");
    auto px_full = dist.source_marginal();
    for (std::size_t j = 0; j < ch.input_support.size(); ++j)
        if (ch.input_support[j] >= px_full.size())
            throw input_error("verify_channel: channel support outside distribution");
    double covered = 0.0;
    for (std::size_t j = 0; j < ch.input_support.size(); ++j)
        covered += px_full[ch.input_support[j]];
    if (covered < 1.0 - 1e-9)
        throw input_error("verify_channel: channel does not cover the source support");

    ChannelReport rep;
    for (SubsetMask s : alpha.subsets) {
        // joint p(x^s, v), then I(X^s; V)
        std::size_t card = 1;
        for (std::size_t i = 0; i < dist.num_sources(); ++i)
            if (s >> i & 1) card *= dist.source_alphabet(i);
        std::vector<double> joint(card * ch.output_alphabet, 0.0);
        for (std::size_t j = 0; j < ch.input_support.size(); ++j) {
            auto xs = dist.decode_source_state(ch.input_support[j]);
            std::size_t idx = 0;
            for (std::size_t i = 0; i < dist.num_sources(); ++i)
                if (s >> i & 1) idx = idx * dist.source_alphabet(i) + xs[i];
            for (std::size_t v = 0; v < ch.output_alphabet; ++v)
                joint[idx * ch.output_alphabet + v] += px_full[ch.input_support[j]] * ch.at(v, j);
        }
        std::vector<double> pa(card, 0.0), pv(ch.output_alphabet, 0.0);
        for (std::size_t i = 0; i < card; ++i)
            for (std::size_t v = 0; v < ch.output_alphabet; ++v) {
                pa[i] += joint[i * ch.output_alphabet + v];
                pv[v] += joint[i * ch.output_alphabet + v];
            }
        double mi = entropy(pa) + entropy(pv) - entropy(joint);
        rep.per_subset_leakage.push_back(mi);
        rep.max_leakage = std::max(rep.max_leakage, mi);
    }
    rep.pass = rep.max_leakage <= tol;
    return rep;
}

/// Null-space test for zero synergy: S^α = 0 iff Null(P_α) ⊆ Null(P_{Y|X}).
inline bool is_zero_synergy(const SystemDistribution& dist, const SourceSet& alpha) {
    auto cm = build_constraint_matrix(dist, alpha);
    auto basis = null_space(cm.m);
    if (basis.empty()) return true;
    auto sv = detail::make_support_view(dist, cm.support);
    for (const auto& v : basis) {
        // P_{Y|X} v: rows indexed by y over the support columns
        for (std::size_t k = 0; k < sv.y_symbols.size(); ++k) {
            double s = 0.0;
            for (std::size_t j = 0; j < cm.support.size(); ++j)
                s += sv.pyx[j * sv.y_symbols.size() + k] * v[j];
            if (std::abs(s) > 1e-9) return false;
        }
    }
    return true;
}

/// Closed-form optimal {{1},{2}}-synergistic channel for two (possibly
/// correlated) bits with P{X1=1}=a, P{X2=1}=b, P{X1=1,X2=1}=r, a >= b.
/// Derived from the one-parameter family of feasible reverse channels
/// x(t) = (r+t, a-r-t, b-r-t, 1-a-b+r+t) over states (11),(10),(01),(00):
/// the two endpoints of the feasible t-interval are the polytope vertices,
/// and the mixture weights follow in closed form. Independent of the LP path.
inline Channel bivariate_binary_optimal_channel(double a, double b, double r) {
    if (a < b) throw input_error("bivariate_binary_optimal_channel: requires a >= b");
    double cells[4] = {r, a - r, b - r, 1.0 - a - b + r};
    for (double c : cells)
        if (c < -1e-12 || c > 1.0 + 1e-12)
            throw input_error("bivariate_binary_optimal_channel: parameters outside the simplex");
    const double t_hi = std::min(a - r, b - r);
    const double t_lo = std::max(-r, a + b - 1.0 - r);
    auto point = [&](double t) {
        return std::vector<double>{r + t, a - r - t, b - r - t, 1.0 - a - b + r + t};
    };
    // state order (11),(10),(01),(00) -> flat source index 2*x1 + x2 reversed bits:
    // flat = x1*2 + x2 with 1-bits first here; map to flat indices {3,2,1,0}.
    const std::size_t flat_of[4] = {3, 2, 1, 0};

    std::vector<std::size_t> support_states;
    std::vector<std::size_t> support_pos(4, std::size_t(-1));
    for (std::size_t i = 0; i < 4; ++i)
        if (cells[i] > kProbSumTol) {
            support_pos[i] = support_states.size();
            support_states.push_back(i);
        }

    Channel ch;
    for (std::size_t i : support_states) ch.input_support.push_back(flat_of[i]);

    if (t_hi - t_lo <= 1e-12 || support_states.size() < 4) {
        // Degenerate boundary: with any zero-mass cell the support has at most
        // three states against three independent marginal constraints, so the
        // polytope is a point and V is constant.
        ch.output_alphabet = 1;
        ch.matrix.assign(support_states.size(), 1.0);
        return ch;
    }
    auto v_hi = point(t_hi);
    auto v_lo = point(t_lo);
    // weight w on v_hi from the coordinate with the largest spread
    std::size_t k = 0;
    double spread = 0.0;
    for (std::size_t i = 0; i < 4; ++i)
        if (std::abs(v_hi[i] - v_lo[i]) > spread) {
            spread = std::abs(v_hi[i] - v_lo[i]);
            k = i;
        }
    double w_hi = (cells[k] - v_lo[k]) / (v_hi[k] - v_lo[k]);

    ch.output_alphabet = 2;
    ch.matrix.assign(2 * support_states.size(), 0.0);
    for (std::size_t i : support_states) {
        std::size_t j = support_pos[i];
        ch.matrix[0 * support_states.size() + j] = w_hi * v_hi[i] / cells[i];
        ch.matrix[1 * support_states.size() + j] = (1.0 - w_hi) * v_lo[i] / cells[i];
    }
    return ch;
}

} // namespace syndisc
