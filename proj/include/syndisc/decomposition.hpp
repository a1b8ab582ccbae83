#pragma once

#include <cmath>
#include <cstddef>
#include <mutex>
#include <string>
#include <vector>

#include "errors.hpp"
#include "lattice.hpp"
#include "parallel.hpp"
#include "prob.hpp"
#include "solver.hpp"

namespace syndisc {

enum class DecompositionMode { FullLattice, Backbone, Self };

/// Cumulative values S^α and Möbius atoms S_∂^α over a node collection.
struct DecompositionReport {
    DecompositionMode mode = DecompositionMode::FullLattice;
    std::vector<SourceSet> nodes;
    std::vector<double> cumulative; // bits
    std::vector<double> atoms;      // bits; negatives reported as-is
    double total_information = 0.0; // I(X;Y)

    double atom_of(const SourceSet& a) const {
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (nodes[i] == a) return atoms[i];
        throw input_error("report: node not found: " + to_string(a));
    }
    double cumulative_of(const SourceSet& a) const {
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (nodes[i] == a) return cumulative[i];
        throw input_error("report: node not found: " + to_string(a));
    }
};

/// B^m and the successive differences B_∂^m = B^{m-1} - B^m.
struct BackboneReport {
    DecompositionMode mode = DecompositionMode::Backbone;
    std::vector<double> cumulative; // B^0 .. B^n
    std::vector<double> atoms;      // B_∂^1 .. B_∂^n
    double total_information = 0.0;
};

inline double total_mutual_information(const SystemDistribution& dist) {
    VarSet sources;
    for (std::size_t i = 0; i < dist.num_sources(); ++i) sources.push_back(i);
    return mutual_information(dist, sources, {SystemDistribution::kTarget});
}

inline DecompositionReport full_decomposition(const SystemDistribution& dist,
                                              Objective objective = Objective::KL) {
    auto lat = enumerate_lattice(dist.num_sources());
    std::vector<double> values(lat.nodes.size(), 0.0);
    parallel_for(lat.nodes.size(),
                 [&](std::size_t i) { values[i] = solve_synergy(dist, lat.nodes[i], objective).value; });
    DecompositionReport rep;
    rep.mode = DecompositionMode::FullLattice;
    rep.nodes = lat.nodes;
    rep.cumulative = values;
    rep.atoms = mobius_atoms(lat, values);
    rep.total_information = total_mutual_information(dist);
    return rep;
}

/// Never materializes the full lattice; one solve per γ_m.
inline BackboneReport backbone_decomposition(const SystemDistribution& dist,
                                             Objective objective = Objective::KL) {
    const std::size_t n = dist.num_sources();
    auto chain = backbone(n);
    BackboneReport rep;
    rep.cumulative.assign(n + 1, 0.0);
    parallel_for(n + 1, [&](std::size_t m) {
        rep.cumulative[m] = solve_synergy(dist, chain.nodes[m], objective).value;
    });
    for (std::size_t m = 1; m <= n; ++m)
        rep.atoms.push_back(rep.cumulative[m - 1] - rep.cumulative[m]);
    rep.total_information = total_mutual_information(dist);
    return rep;
}

/// Y := X restricted to the support of p_X (one target symbol per supported tuple).
inline SystemDistribution self_target_distribution(const SystemDistribution& sources) {
    auto px = sources.source_marginal();
    std::vector<std::size_t> sup;
    for (std::size_t x = 0; x < px.size(); ++x)
        if (px[x] > kProbSumTol) sup.push_back(x);
    std::vector<double> probs(px.size() * sup.size(), 0.0);
    for (std::size_t j = 0; j < sup.size(); ++j) probs[sup[j] * sup.size() + j] = px[sup[j]];
    return SystemDistribution(sources.source_alphabets(), sup.size(), std::move(probs));
}

inline DecompositionReport self_full_decomposition(const SystemDistribution& sources,
                                                   Objective objective = Objective::KL) {
    auto rep = full_decomposition(self_target_distribution(sources), objective);
    rep.mode = DecompositionMode::Self;
    return rep;
}

inline BackboneReport self_backbone_decomposition(const SystemDistribution& sources,
                                                  Objective objective = Objective::KL) {
    auto rep = backbone_decomposition(self_target_distribution(sources), objective);
    rep.mode = DecompositionMode::Self;
    return rep;
}

/// α-self-synergy S^α(X) of a sources-only distribution.
inline double self_synergy_value(const SystemDistribution& sources, const SourceSet& alpha,
                                 Objective objective = Objective::KL) {
    return solve_synergy(self_target_distribution(sources), alpha, objective).value;
}

struct CapacityBounds {
    double lower = 0.0; // synergy toward the provided target
    double upper = 0.0; // H(X) - max_j H(X^{α_j})
};

inline CapacityBounds capacity_bounds(const SystemDistribution& dist, const SourceSet& alpha,
                                      Objective objective = Objective::KL) {
    if (alpha.n != dist.num_sources()) throw input_error("capacity_bounds: source count mismatch");
    VarSet all;
    for (std::size_t i = 0; i < dist.num_sources(); ++i) all.push_back(i);
    double hx = entropy(marginal(dist, all));
    double max_part = 0.0;
    for (SubsetMask s : alpha.subsets) {
        VarSet vars;
        for (std::size_t i = 0; i < dist.num_sources(); ++i)
            if (s >> i & 1) vars.push_back(i);
        max_part = std::max(max_part, entropy(marginal(dist, vars)));
    }
    CapacityBounds cb;
    cb.upper = hx - max_part;
    cb.lower = solve_synergy(dist, alpha, objective).value;
    return cb;
}

} // namespace syndisc
