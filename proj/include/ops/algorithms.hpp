#pragma once

#include "ops/estimators.hpp"
#include "ops/oracles.hpp"
#include "ops/rng.hpp"
#include "ops/sampling.hpp"
#include "ops/set_function.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace ops {

struct SelectionResult {
    ElementSet set;
    std::vector<std::string> warnings;
};

// Highest-value sample among those of size <= k; empty set when none qualify.
inline SelectionResult best_sample(const SampleSet& samples, uint32_t k) {
    SelectionResult res;
    res.set = ElementSet(samples.n);
    const SampleRecord* best = nullptr;
    for (const auto& r : samples.records) {
        if (r.set.size() > k) continue;
        if (!best || r.value > best->value) best = &r;
    }
    if (best)
        res.set = best->set;
    else
        res.warnings.push_back("no sample of size <= " + std::to_string(k) +
                               "; returning empty set");
    return res;
}

// Top-k elements by estimated expected marginal contribution; ties go to the
// smaller index.
inline SelectionResult max_marg_cont(const SampleSet& samples, uint32_t k, bool exact = false) {
    MarginalEstimates est = eemc(samples, exact);
    const uint32_t n = samples.n;
    std::vector<uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    if (exact) {
        std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
            return est.v_hat_exact[a] > est.v_hat_exact[b];
        });
    } else {
        std::stable_sort(order.begin(), order.end(),
                         [&](uint32_t a, uint32_t b) { return est.v_hat[a] > est.v_hat[b]; });
    }
    SelectionResult res;
    res.set = ElementSet(n);
    for (uint32_t j = 0; j < std::min(k, n); ++j) res.set.add(order[j]);
    res.warnings = std::move(est.warnings);
    return res;
}

// Geometric bins below the largest estimate: bin j (1-based) holds elements
// with v_max/2^j < v_hat <= v_max/2^(j-1). Elements with non-positive
// estimates or below v_max/2^J are dropped.
template <typename Value>
std::vector<std::vector<uint32_t>> geometric_bins(const std::vector<Value>& v_hat, uint32_t J) {
    std::vector<std::vector<uint32_t>> bins(J);
    if (v_hat.empty()) return bins;
    const Value* vmax = &v_hat[0];
    for (const auto& v : v_hat)
        if (v > *vmax) vmax = &v;
    if (!(*vmax > Value(0))) return bins;
    for (uint32_t i = 0; i < v_hat.size(); ++i) {
        if (!(v_hat[i] > Value(0))) continue;
        Value lo = *vmax;
        for (uint32_t j = 1; j <= J; ++j) {
            Value next = lo / Value(2);
            if (v_hat[i] > next && v_hat[i] <= lo) {
                bins[j - 1].push_back(i);
                break;
            }
            lo = next;
        }
        // below v_max / 2^J: discarded
    }
    return bins;
}

// Sampling-only maximization for monotone submodular objectives under
// size-concentrated distributions: fair coin between (a) the best sample of
// size exactly k and (b) a uniformly chosen geometric estimate bin, from
// which a uniform subset of size min(|bin|, k) is returned.
inline SelectionResult algo2_submodular(const SampleSet& samples, uint32_t k, Rng& rng,
                                        bool exact = false) {
    const uint32_t n = samples.n;
    SelectionResult res;
    res.set = ElementSet(n);
    bool use_best_sample = rng.below(2) == 0;

    if (use_best_sample) {
        const SampleRecord* best = nullptr;
        for (const auto& r : samples.records) {
            if (r.set.size() != k) continue;
            if (!best || r.value > best->value) best = &r;
        }
        if (best) {
            res.set = best->set;
            return res;
        }
        res.warnings.push_back("no size-k sample available; falling back to the bin branch");
    }

    const auto s = static_cast<uint32_t>(integer_sqrt(n));
    MarginalEstimates est = eemc_paired(samples, s, exact);
    for (auto& w : est.warnings) res.warnings.push_back(std::move(w));

    const uint32_t J = 3 * static_cast<uint32_t>(std::ceil(std::log2(double(std::max(n, 2u)))));
    std::vector<std::vector<uint32_t>> bins;
    if (exact)
        bins = geometric_bins(est.v_hat_exact, J);
    else
        bins = geometric_bins(est.v_hat, J);

    const uint64_t pick = rng.below(J);
    const auto& bin = bins[pick];
    if (bin.empty()) {
        res.warnings.push_back("chosen bin " + std::to_string(pick + 1) +
                               " is empty; returning empty set");
        return res;
    }
    std::vector<uint32_t> pool = bin;  // ascending element order, deterministic
    const auto take = std::min<uint32_t>(k, static_cast<uint32_t>(pool.size()));
    for (uint32_t j = 0; j < take; ++j) {
        uint64_t swap_with = j + rng.below(pool.size() - j);
        std::swap(pool[j], pool[swap_with]);
        res.set.add(pool[j]);
    }
    return res;
}

struct RecoveredSurrogate {
    SetFunction surrogate;
    MarginalEstimates estimates;
};

// Additive surrogate built from per-element estimates: f~(S) = sum of v_hat.
inline RecoveredSurrogate recover_additive(const SampleSet& samples, bool exact = false) {
    MarginalEstimates est = eemc(samples, exact);
    const uint32_t n = samples.n;
    std::vector<Rational> values(n);
    for (uint32_t i = 0; i < n; ++i)
        values[i] = est.exact ? est.v_hat_exact[i] : rational_from_double(est.v_hat[i]);
    SetFunction surrogate = make_additive(std::move(values));
    return RecoveredSurrogate{std::move(surrogate), std::move(est)};
}

// Greedy maximization of the surrogate; callers score the result on the true
// function.
inline GreedyResult greedy_on_surrogate(const SetFunction& surrogate, uint32_t k) {
    return greedy_oracle(surrogate, k);
}

}  // namespace ops
