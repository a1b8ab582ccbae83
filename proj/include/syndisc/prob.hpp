#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <vector>

#include "errors.hpp"

namespace syndisc {

inline constexpr double kProbSumTol = 1e-12;

inline double log2_safe(double x) { return std::log2(x); }

/// -p log2 p with the 0 log 0 := 0 convention.
inline double plog2p(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

/// A pmf over a single finite alphabet.
struct ProbVector {
    std::vector<double> values;

    ProbVector() = default;
    explicit ProbVector(std::vector<double> v) : values(std::move(v)) { validate(); }

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }

    void validate() const {
        double sum = 0.0;
        for (double p : values) {
            if (p < 0.0) throw input_error("ProbVector: negative entry");
            sum += p;
        }
        if (std::abs(sum - 1.0) > kProbSumTol)
            throw input_error("ProbVector: entries do not sum to 1");
    }
};

/// H(p) in bits.
inline double entropy(const ProbVector& p) {
    double h = 0.0;
    for (double v : p.values) h += plog2p(v);
    return h;
}

inline double entropy(const std::vector<double>& p) {
    double h = 0.0;
    for (double v : p) h += plog2p(v);
    return h;
}

/// Indices with p > eps.
inline std::vector<std::size_t> support(const ProbVector& p, double eps) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p.values[i] > eps) idx.push_back(i);
    return idx;
}

/// Joint pmf over n discrete sources and one target.
///
/// Storage is a flat row-major tensor with the target as the fastest-varying
/// index: flat = ((x_1 |X_2| + x_2) |X_3| + ...) |Y| + y.  This layout is the
/// wire format used by the distribution files, bit for bit.
class SystemDistribution {
public:
    /// Placeholder index naming the target in variable index-sets.
    static constexpr std::size_t kTarget = static_cast<std::size_t>(-1);

    SystemDistribution(std::vector<std::size_t> source_alphabets,
                       std::size_t target_alphabet,
                       std::vector<double> probs)
        : source_alphabets_(std::move(source_alphabets)),
          target_alphabet_(target_alphabet),
          probs_(std::move(probs)) {
        if (source_alphabets_.empty()) throw input_error("SystemDistribution: need n >= 1 sources");
        if (target_alphabet_ < 1) throw input_error("SystemDistribution: target alphabet must be >= 1");
        std::size_t expect = target_alphabet_;
        for (std::size_t c : source_alphabets_) {
            if (c < 1) throw input_error("SystemDistribution: source alphabet must be >= 1");
            expect *= c;
        }
        if (probs_.size() != expect)
            throw input_error("SystemDistribution: probs length does not match alphabets");
        double sum = 0.0;
        for (double p : probs_) {
            if (p < 0.0) throw input_error("SystemDistribution: negative probability");
            sum += p;
        }
        if (std::abs(sum - 1.0) > kProbSumTol)
            throw input_error("SystemDistribution: probabilities do not sum to 1");
    }

    std::size_t num_sources() const { return source_alphabets_.size(); }
    const std::vector<std::size_t>& source_alphabets() const { return source_alphabets_; }
    std::size_t source_alphabet(std::size_t i) const { return source_alphabets_.at(i); }
    std::size_t target_alphabet() const { return target_alphabet_; }
    const std::vector<double>& probs() const { return probs_; }

    /// Number of joint source states (product of source cardinalities).
    std::size_t num_source_states() const {
        std::size_t s = 1;
        for (std::size_t c : source_alphabets_) s *= c;
        return s;
    }

    /// Flat source-state index -> per-source symbol values.
    std::vector<std::size_t> decode_source_state(std::size_t flat) const {
        std::vector<std::size_t> x(num_sources());
        for (std::size_t i = num_sources(); i-- > 0;) {
            x[i] = flat % source_alphabets_[i];
            flat /= source_alphabets_[i];
        }
        return x;
    }

    double prob(std::size_t source_state, std::size_t y) const {
        return probs_[source_state * target_alphabet_ + y];
    }

    /// Marginal pmf of the source tuple.
    std::vector<double> source_marginal() const {
        std::vector<double> px(num_source_states(), 0.0);
        for (std::size_t x = 0; x < px.size(); ++x)
            for (std::size_t y = 0; y < target_alphabet_; ++y) px[x] += prob(x, y);
        return px;
    }

    std::vector<double> target_marginal() const {
        std::vector<double> py(target_alphabet_, 0.0);
        for (std::size_t x = 0; x < num_source_states(); ++x)
            for (std::size_t y = 0; y < target_alphabet_; ++y) py[y] += prob(x, y);
        return py;
    }

    /// Same distribution with probabilities scaled to sum exactly to 1.
    SystemDistribution renormalized() const {
        double sum = std::accumulate(probs_.begin(), probs_.end(), 0.0);
        if (sum <= 0.0) throw input_error("renormalize: total mass is zero");
        std::vector<double> q(probs_);
        for (double& v : q) v /= sum;
        return SystemDistribution(source_alphabets_, target_alphabet_, std::move(q));
    }

    /// Relaxed-tolerance constructor for file input; renormalizes residual rounding.
    static SystemDistribution from_file_data(std::vector<std::size_t> src, std::size_t tgt,
                                             std::vector<double> probs, double tol = 1e-9) {
        double sum = 0.0;
        for (double p : probs) {
            if (p < 0.0) throw input_error("distribution file: negative probability");
            sum += p;
        }
        if (std::abs(sum - 1.0) > tol)
            throw input_error("distribution file: probabilities do not sum to 1");
        for (double& p : probs) p /= sum;
        return SystemDistribution(std::move(src), tgt, std::move(probs));
    }

private:
    std::vector<std::size_t> source_alphabets_;
    std::size_t target_alphabet_;
    std::vector<double> probs_;
};

using VarSet = std::vector<std::size_t>; // source indices, or SystemDistribution::kTarget

namespace detail {

inline void check_vars(const SystemDistribution& d, const VarSet& vars) {
    for (std::size_t v : vars)
        if (v != SystemDistribution::kTarget && v >= d.num_sources())
            throw input_error("variable index out of range");
}

inline bool disjoint(const VarSet& a, const VarSet& b) {
    for (std::size_t x : a)
        for (std::size_t y : b)
            if (x == y) return false;
    return true;
}

} // namespace detail

/// Exact marginal over the given variables, index order preserved.
/// The empty set yields the scalar distribution (1.0).
inline ProbVector marginal(const SystemDistribution& d, const VarSet& vars) {
    detail::check_vars(d, vars);
    std::vector<std::size_t> cards;
    for (std::size_t v : vars)
        cards.push_back(v == SystemDistribution::kTarget ? d.target_alphabet()
                                                         : d.source_alphabet(v));
    std::size_t out_size = 1;
    for (std::size_t c : cards) out_size *= c;
    std::vector<double> out(out_size, 0.0);
    const std::size_t nx = d.num_source_states();
    for (std::size_t x = 0; x < nx; ++x) {
        auto xs = d.decode_source_state(x);
        for (std::size_t y = 0; y < d.target_alphabet(); ++y) {
            double p = d.prob(x, y);
            if (p == 0.0) continue;
            std::size_t idx = 0;
            for (std::size_t k = 0; k < vars.size(); ++k) {
                std::size_t sym = vars[k] == SystemDistribution::kTarget ? y : xs[vars[k]];
                idx = idx * cards[k] + sym;
            }
            out[idx] += p;
        }
    }
    ProbVector pv;
    pv.values = std::move(out);
    return pv;
}

/// I(A;B) in bits.
inline double mutual_information(const SystemDistribution& d, const VarSet& a, const VarSet& b) {
    if (!detail::disjoint(a, b)) throw input_error("mutual_information: overlapping variable sets");
    VarSet ab(a);
    ab.insert(ab.end(), b.begin(), b.end());
    return entropy(marginal(d, a)) + entropy(marginal(d, b)) - entropy(marginal(d, ab));
}

/// I(A;B|C) in bits, via H-form of the chain rule.
inline double conditional_mutual_information(const SystemDistribution& d, const VarSet& a,
                                             const VarSet& b, const VarSet& c) {
    if (!detail::disjoint(a, b) || !detail::disjoint(a, c) || !detail::disjoint(b, c))
        throw input_error("conditional_mutual_information: overlapping variable sets");
    auto join = [](const VarSet& u, const VarSet& v) {
        VarSet w(u);
        w.insert(w.end(), v.begin(), v.end());
        return w;
    };
    double h_ac = entropy(marginal(d, join(a, c)));
    double h_bc = entropy(marginal(d, join(b, c)));
    double h_abc = entropy(marginal(d, join(join(a, b), c)));
    double h_c = entropy(marginal(d, c));
    return h_ac + h_bc - h_abc - h_c;
}

/// Conditional channel p(output | input) over an explicit input support.
struct Channel {
    std::vector<std::size_t> input_support; // flat source-state indices
    std::size_t output_alphabet = 0;
    /// matrix[v * input_support.size() + j] = p(v | input_support[j])
    std::vector<double> matrix;

    double at(std::size_t v, std::size_t j) const { return matrix[v * input_support.size() + j]; }

    void validate(double tol = 1e-10) const {
        for (std::size_t j = 0; j < input_support.size(); ++j) {
            double col = 0.0;
            for (std::size_t v = 0; v < output_alphabet; ++v) {
                double p = at(v, j);
                if (p < -tol) throw input_error("Channel: negative conditional probability");
                col += p;
            }
            if (std::abs(col - 1.0) > tol)
                throw input_error("Channel: column does not sum to 1");
        }
    }
};

} // namespace syndisc
