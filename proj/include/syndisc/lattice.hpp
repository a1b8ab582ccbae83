#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "errors.hpp"

namespace syndisc {

using SubsetMask = std::uint32_t; // bit i set <=> source i+1 belongs to the subset

/// Canonical antichain of source-index subsets. The bottom element is {∅}
/// (a single empty subset), the top is {[n]}.
struct SourceSet {
    std::vector<SubsetMask> subsets; // sorted ascending, pairwise incomparable
    std::size_t n = 0;

    bool operator==(const SourceSet& o) const { return n == o.n && subsets == o.subsets; }
    bool operator<(const SourceSet& o) const { return subsets < o.subsets; }
};

/// Drop subsets contained in another; the unique canonical representative.
inline SourceSet canonicalize(std::vector<SubsetMask> subsets, std::size_t n) {
    if (n == 0 || n > 31) throw input_error("canonicalize: need 1 <= n <= 31");
    SubsetMask full = (n == 31) ? 0x7fffffffu : ((SubsetMask{1} << n) - 1);
    for (SubsetMask s : subsets)
        if ((s & ~full) != 0) throw input_error("canonicalize: subset index out of range");
    if (subsets.empty()) throw input_error("canonicalize: empty family");
    std::vector<SubsetMask> keep;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        bool maximal = true;
        for (std::size_t j = 0; j < subsets.size(); ++j) {
            if (i == j) continue;
            bool contained = (subsets[i] & subsets[j]) == subsets[i];
            bool equal = subsets[i] == subsets[j];
            if (contained && (!equal || j < i)) { maximal = false; break; }
        }
        if (maximal) keep.push_back(subsets[i]);
    }
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    return SourceSet{std::move(keep), n};
}

inline SourceSet bottom_source_set(std::size_t n) { return canonicalize({0}, n); }
inline SourceSet top_source_set(std::size_t n) {
    return canonicalize({static_cast<SubsetMask>((SubsetMask{1} << n) - 1)}, n);
}

/// a ⪯_c b: every subset of a fits inside some subset of b.
inline bool leq_c(const SourceSet& a, const SourceSet& b) {
    if (a.n != b.n) throw input_error("leq_c: mismatched source counts");
    for (SubsetMask x : a.subsets) {
        bool found = false;
        for (SubsetMask y : b.subsets)
            if ((x & y) == x) { found = true; break; }
        if (!found) return false;
    }
    return true;
}

/// Printed form: brace groups of 1-based digit indices, e.g. "{1}{2}", "{12}{3}";
/// "{}" is the bottom element.
inline std::string to_string(const SourceSet& a) {
    std::vector<std::string> groups;
    for (SubsetMask s : a.subsets) {
        std::string g = "{";
        for (std::size_t i = 0; i < a.n; ++i)
            if (s >> i & 1) g += std::to_string(i + 1);
        g += "}";
        groups.push_back(std::move(g));
    }
    std::sort(groups.begin(), groups.end());
    std::string out;
    for (const auto& g : groups) out += g;
    return out;
}

/// Parse the printed form back. Canonicalizes the result.
inline SourceSet parse_source_set(const std::string& text, std::size_t n) {
    std::vector<SubsetMask> subsets;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '{') throw input_error("source-set parse: expected '{'");
        ++i;
        SubsetMask mask = 0;
        while (i < text.size() && text[i] != '}') {
            char c = text[i];
            if (c < '1' || c > '9') throw input_error("source-set parse: expected digit 1-9");
            std::size_t idx = static_cast<std::size_t>(c - '1');
            if (idx >= n) throw input_error("source-set parse: index exceeds source count");
            mask |= SubsetMask{1} << idx;
            ++i;
        }
        if (i == text.size()) throw input_error("source-set parse: unterminated group");
        ++i; // '}'
        subsets.push_back(mask);
    }
    if (subsets.empty()) throw input_error("source-set parse: empty spec");
    return canonicalize(std::move(subsets), n);
}

/// The poset of all antichains over 2^[n] (empty family excluded), with the
/// ⪯_c comparability materialized and a top-first topological order.
struct ConstraintLattice {
    std::size_t n = 0;
    std::vector<SourceSet> nodes;
    std::vector<std::vector<bool>> leq;     // leq[i][j] <=> nodes[i] ⪯_c nodes[j]
    std::vector<std::size_t> topo_order;    // descending: each node precedes all below it

    std::size_t index_of(const SourceSet& a) const {
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (nodes[i] == a) return i;
        throw input_error("lattice: node not found: " + to_string(a));
    }
};

inline constexpr std::size_t kLatticeMaxSources = 4;

inline ConstraintLattice enumerate_lattice(std::size_t n) {
    if (n < 1) throw input_error("enumerate_lattice: need n >= 1");
    if (n > kLatticeMaxSources)
        throw capacity_error("enumerate_lattice: full lattice limited to n <= 4");

    const std::size_t num_subsets = std::size_t{1} << n; // includes the empty subset
    // strict_supersets[s]: family-bitmask of subsets strictly containing s
    std::vector<std::uint32_t> strict_supersets(num_subsets, 0);
    for (std::size_t s = 0; s < num_subsets; ++s)
        for (std::size_t t = 0; t < num_subsets; ++t)
            if (s != t && (s & t) == s) strict_supersets[s] |= std::uint32_t{1} << t;

    ConstraintLattice lat;
    lat.n = n;
    const std::uint64_t num_families = std::uint64_t{1} << num_subsets;
    for (std::uint64_t fam = 1; fam < num_families; ++fam) {
        bool antichain = true;
        for (std::size_t s = 0; s < num_subsets && antichain; ++s)
            if ((fam >> s & 1) && (fam & strict_supersets[s])) antichain = false;
        if (!antichain) continue;
        std::vector<SubsetMask> subsets;
        for (std::size_t s = 0; s < num_subsets; ++s)
            if (fam >> s & 1) subsets.push_back(static_cast<SubsetMask>(s));
        lat.nodes.push_back(SourceSet{std::move(subsets), n});
    }

    const std::size_t m = lat.nodes.size();
    lat.leq.assign(m, std::vector<bool>(m, false));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) lat.leq[i][j] = leq_c(lat.nodes[i], lat.nodes[j]);

    // top-first: sort by number of nodes strictly above, ties broken canonically
    std::vector<std::size_t> above(m, 0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (i != j && lat.leq[i][j]) ++above[i];
    lat.topo_order.resize(m);
    for (std::size_t i = 0; i < m; ++i) lat.topo_order[i] = i;
    std::sort(lat.topo_order.begin(), lat.topo_order.end(), [&](std::size_t a, std::size_t b) {
        if (above[a] != above[b]) return above[a] < above[b];
        return lat.nodes[a] < lat.nodes[b];
    });
    return lat;
}

/// Möbius inversion: one top-down pass, atom(a) = value(a) - sum of atoms strictly above.
inline std::vector<double> mobius_atoms(const ConstraintLattice& lat,
                                        const std::vector<double>& values) {
    if (values.size() != lat.nodes.size())
        throw input_error("mobius_atoms: values must cover every lattice node");
    std::vector<double> atoms(values.size(), 0.0);
    for (std::size_t i : lat.topo_order) {
        double acc = values[i];
        for (std::size_t j = 0; j < lat.nodes.size(); ++j)
            if (j != i && lat.leq[i][j]) acc -= atoms[j];
        atoms[i] = acc;
    }
    return atoms;
}

inline std::vector<double> mobius_atoms(const ConstraintLattice& lat,
                                        const std::map<SourceSet, double>& values) {
    std::vector<double> v(lat.nodes.size());
    for (std::size_t i = 0; i < lat.nodes.size(); ++i) {
        auto it = values.find(lat.nodes[i]);
        if (it == values.end())
            throw input_error("mobius_atoms: missing node " + to_string(lat.nodes[i]));
        v[i] = it->second;
    }
    return mobius_atoms(lat, v);
}

/// γ_0 ⪯_c γ_1 ⪯_c ... ⪯_c γ_n, with γ_m = all size-m subsets of [n].
struct BackboneChain {
    std::size_t n = 0;
    std::vector<SourceSet> nodes; // nodes[m] = γ_m, m = 0..n
};

inline SourceSet backbone_level(std::size_t n, std::size_t m) {
    if (m > n) throw input_error("backbone_level: m > n");
    std::vector<SubsetMask> subsets;
    SubsetMask full = (SubsetMask{1} << n) - 1;
    for (SubsetMask s = 0; s <= full; ++s)
        if (static_cast<std::size_t>(std::popcount(s)) == m) subsets.push_back(s);
    return canonicalize(std::move(subsets), n);
}

inline BackboneChain backbone(std::size_t n) {
    if (n < 1) throw input_error("backbone: need n >= 1");
    BackboneChain chain;
    chain.n = n;
    for (std::size_t m = 0; m <= n; ++m) chain.nodes.push_back(backbone_level(n, m));
    return chain;
}

} // namespace syndisc
