#pragma once

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"
#include "prob.hpp"
#include "rng.hpp"

namespace syndisc {

// ---------------------------------------------------------------------------
// Deterministic reference gates (uniform independent binary inputs unless the
// gate itself states otherwise).
// ---------------------------------------------------------------------------

inline SystemDistribution gate(const std::string& name) {
    std::string up(name);
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
    if (up == "XOR" || up == "AND" || up == "UNQ1") {
        std::size_t tgt = 2;
        std::vector<double> probs(4 * tgt, 0.0);
        for (std::size_t x1 = 0; x1 < 2; ++x1)
            for (std::size_t x2 = 0; x2 < 2; ++x2) {
                std::size_t y = up == "XOR" ? (x1 ^ x2) : up == "AND" ? (x1 & x2) : x1;
                probs[((x1 * 2 + x2) * tgt) + y] = 0.25;
            }
        return SystemDistribution({2, 2}, tgt, std::move(probs));
    }
    if (up == "COPY") {
        // fully redundant pair: X1 = X2 fair, Y copies them
        std::vector<double> probs(4 * 2, 0.0);
        probs[(0 * 2 + 0) * 2 + 0] = 0.5;
        probs[(1 * 2 + 1) * 2 + 1] = 0.5;
        return SystemDistribution({2, 2}, 2, std::move(probs));
    }
    if (up == "TBC") {
        std::vector<double> probs(4 * 4, 0.0);
        for (std::size_t x1 = 0; x1 < 2; ++x1)
            for (std::size_t x2 = 0; x2 < 2; ++x2)
                probs[(x1 * 2 + x2) * 4 + (x1 * 2 + x2)] = 0.25;
        return SystemDistribution({2, 2}, 4, std::move(probs));
    }
    throw input_error("unknown gate: " + name);
}

/// AND gate with spin-correlated inputs: over ±1 spin values <x1 x2> = r, so
/// p(1,1)=p(0,0)=(1+r)/4 and p(0,1)=p(1,0)=(1-r)/4.
inline SystemDistribution correlated_and(double r) {
    double same = (1.0 + r) / 4.0, diff = (1.0 - r) / 4.0;
    if (same < -1e-12 || diff < -1e-12)
        throw input_error("correlated_and: correlation outside [-1, 1]");
    same = std::max(0.0, same);
    diff = std::max(0.0, diff);
    std::vector<double> probs(4 * 2, 0.0);
    auto put = [&](std::size_t x1, std::size_t x2, double p) {
        probs[(x1 * 2 + x2) * 2 + (x1 & x2)] = p;
    };
    put(0, 0, same);
    put(1, 1, same);
    put(0, 1, diff);
    put(1, 0, diff);
    return SystemDistribution({2, 2}, 2, std::move(probs));
}

/// Sources-only pair of bits with P{X1=1}=P{X2=1}=p and P{X1=1,X2=1}=r.
inline SystemDistribution correlated_bits(double p, double r) {
    double cells[4] = {1.0 - 2.0 * p + r, p - r, p - r, r}; // (0,0),(0,1),(1,0),(1,1)
    for (double c : cells)
        if (c < -1e-12) throw input_error("correlated_bits: infeasible (p, r)");
    std::vector<double> probs;
    for (double c : cells) probs.push_back(std::max(0.0, c));
    double sum = probs[0] + probs[1] + probs[2] + probs[3];
    for (double& v : probs) v /= sum;
    return SystemDistribution({2, 2}, 1, std::move(probs));
}

// ---------------------------------------------------------------------------
// Gibbs / Ising ensembles over n source spins plus one target spin.
// ---------------------------------------------------------------------------

struct GibbsSpec {
    std::size_t n = 4;            // source spins; the (n+1)-th spin is the target
    std::size_t order = 2;        // interaction order k
    enum class Mode { UpToK, OnlyK } mode = Mode::UpToK;
    double beta = 1.0;
    double coupling_std = 0.1;
    std::uint64_t seed = 0;
};

/// Exact Boltzmann pmf by enumeration of all 2^(n+1) spin states. Couplings
/// are drawn i.i.d. normal in a fixed subset order, so a spec is a pure
/// function of its fields.
inline SystemDistribution gibbs(const GibbsSpec& spec) {
    const std::size_t total = spec.n + 1;
    if (total > 12) throw capacity_error("gibbs: n + 1 spins limited to 12");
    if (spec.order < 1 || spec.order > total) throw input_error("gibbs: invalid order");

    Rng rng(spec.seed);
    std::vector<std::pair<std::uint32_t, double>> couplings; // (spin mask, J)
    const std::uint32_t full = (std::uint32_t{1} << total) - 1;
    if (spec.mode == GibbsSpec::Mode::UpToK) {
        for (std::size_t k = 1; k <= spec.order; ++k)
            for (std::uint32_t m = 1; m <= full; ++m)
                if (static_cast<std::size_t>(std::popcount(m)) == k)
                    couplings.emplace_back(m, spec.coupling_std * rng.normal());
    } else {
        // target spin coupled to every size-k source group, nothing else
        const std::uint32_t target_bit = std::uint32_t{1} << spec.n;
        for (std::uint32_t m = 1; m < target_bit; ++m)
            if (static_cast<std::size_t>(std::popcount(m)) == spec.order)
                couplings.emplace_back(m | target_bit, spec.coupling_std * rng.normal());
    }

    const std::size_t states = std::size_t{1} << total;
    std::vector<double> energy(states, 0.0);
    for (std::size_t s = 0; s < states; ++s) {
        double h = 0.0;
        for (const auto& [mask, j] : couplings) {
            // product of ±1 spins over the mask: sign = parity of 0-bits in mask
            int par = std::popcount(static_cast<std::uint32_t>(~s) & mask) & 1;
            h -= j * (par ? -1.0 : 1.0);
        }
        energy[s] = h;
    }
    double emin = *std::min_element(energy.begin(), energy.end());
    std::vector<double> probs(states);
    double z = 0.0;
    for (std::size_t s = 0; s < states; ++s) {
        probs[s] = std::exp(-spec.beta * (energy[s] - emin));
        z += probs[s];
    }
    for (double& p : probs) p /= z;

    // state bit i = spin i; reorder so the flat layout is sources then target
    // with the target fastest. Bit 0 here is spin 1, so build explicitly.
    std::vector<double> out(states, 0.0);
    for (std::size_t s = 0; s < states; ++s) {
        std::size_t flat = 0;
        for (std::size_t i = 0; i < spec.n; ++i) flat = flat * 2 + (s >> i & 1);
        flat = flat * 2 + (s >> spec.n & 1);
        out[flat] = probs[s];
    }
    double sum = 0.0;
    for (double p : out) sum += p;
    for (double& p : out) p /= sum;
    return SystemDistribution(std::vector<std::size_t>(spec.n, 2), 2, std::move(out));
}

// ---------------------------------------------------------------------------
// Dirichlet sampling with an entropy-spreading prior on the concentration.
// ---------------------------------------------------------------------------

/// Trigamma via the recurrence + asymptotic series.
inline double trigamma(double x) {
    if (x <= 0.0) throw input_error("trigamma: requires x > 0");
    double acc = 0.0;
    while (x < 10.0) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    const double inv = 1.0 / x, inv2 = inv * inv;
    // 1/x + 1/(2x^2) + 1/(6x^3) - 1/(30x^5) + 1/(42x^7) - 1/(30x^9)
    double series = inv + 0.5 * inv2 +
                    inv * inv2 * (1.0 / 6.0 + inv2 * (-1.0 / 30.0 + inv2 * (1.0 / 42.0 - inv2 / 30.0)));
    return acc + series;
}

/// Density of the concentration prior for alphabet size K:
/// g(α) = K ψ₁(Kα + 1) − ψ₁(α + 1)  (the derivative of the expected entropy).
inline double nsb_density(double alpha, double k) {
    return k * trigamma(k * alpha + 1.0) - trigamma(alpha + 1.0);
}

/// Inverse-CDF draw of α on a log-spaced grid over [1e-3, 1e3].
inline double sample_nsb_alpha(Rng& rng, double k, std::size_t grid_points = 2048) {
    const double lo = std::log(1e-3), hi = std::log(1e3);
    std::vector<double> xs(grid_points), dens(grid_points);
    for (std::size_t i = 0; i < grid_points; ++i) {
        xs[i] = std::exp(lo + (hi - lo) * static_cast<double>(i) / (grid_points - 1));
        dens[i] = nsb_density(xs[i], k);
    }
    std::vector<double> cdf(grid_points, 0.0);
    for (std::size_t i = 1; i < grid_points; ++i)
        cdf[i] = cdf[i - 1] + 0.5 * (dens[i] + dens[i - 1]) * (xs[i] - xs[i - 1]);
    double total = cdf.back();
    double u = rng.uniform() * total;
    std::size_t i = 1;
    while (i < grid_points - 1 && cdf[i] < u) ++i;
    double t = (u - cdf[i - 1]) / std::max(cdf[i] - cdf[i - 1], 1e-300);
    return xs[i - 1] + t * (xs[i] - xs[i - 1]);
}

/// Random joint distribution of `num_source_vars` binary sources and a binary
/// target: symmetric Dirichlet with concentration drawn from the
/// entropy-spreading prior for K = 2^n.
inline SystemDistribution dirichlet_nsb(std::size_t num_source_vars, std::uint64_t seed) {
    if (num_source_vars < 1 || num_source_vars > 16)
        throw input_error("dirichlet_nsb: need 1 <= n <= 16 binary sources");
    const double k = static_cast<double>(std::size_t{1} << num_source_vars);
    Rng rng(seed);
    double alpha = sample_nsb_alpha(rng, k);
    const std::size_t dim = (std::size_t{1} << num_source_vars) * 2;
    std::vector<double> probs(dim);
    double sum = 0.0;
    for (double& p : probs) {
        p = rng.gamma(alpha);
        sum += p;
    }
    if (sum <= 0.0) throw internal_error("dirichlet_nsb: degenerate gamma draws");
    for (double& p : probs) p /= sum;
    return SystemDistribution(std::vector<std::size_t>(num_source_vars, 2), 2, std::move(probs));
}

} // namespace syndisc
