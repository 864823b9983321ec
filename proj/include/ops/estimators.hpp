#pragma once

#include "ops/rational.hpp"
#include "ops/sampling.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ops {

// Per-element estimates of expected marginal contribution, from the
// difference of conditional sample-value means. Float accumulation is the
// default; exact mode keeps every mean as a rational.
struct MarginalEstimates {
    std::vector<double> v_hat;
    std::vector<Rational> v_hat_exact;  // filled only in exact mode
    bool exact = false;
    std::vector<std::pair<uint64_t, uint64_t>> bucket_counts;  // (with e_i, without e_i)
    std::vector<uint32_t> undefined;  // elements with an empty bucket; their v_hat is 0
    std::string provenance;
    std::vector<std::string> warnings;

    double value(uint32_t i) const { return v_hat[i]; }
};

namespace detail {

// with_filter(record) / without_filter(record) decide bucket membership of a
// record for a given element; membership of the element itself is checked
// separately.
template <typename FlagIn, typename FlagOut>
MarginalEstimates estimate_marginals(const SampleSet& samples, bool exact,
                                     std::string provenance, FlagIn in_scope,
                                     FlagOut out_scope) {
    const uint32_t n = samples.n;
    MarginalEstimates est;
    est.exact = exact;
    est.provenance = std::move(provenance);
    est.v_hat.assign(n, 0.0);
    est.bucket_counts.assign(n, {0, 0});

    if (exact) {
        std::vector<Rational> in_sum(n, Rational(0)), out_sum(n, Rational(0));
        for (const auto& r : samples.records) {
            bool scope_in = in_scope(r), scope_out = out_scope(r);
            if (!scope_in && !scope_out) continue;
            for (uint32_t i = 0; i < n; ++i) {
                if (r.set.test(i)) {
                    if (scope_in) {
                        in_sum[i] += r.value;
                        ++est.bucket_counts[i].first;
                    }
                } else if (scope_out) {
                    out_sum[i] += r.value;
                    ++est.bucket_counts[i].second;
                }
            }
        }
        est.v_hat_exact.assign(n, Rational(0));
        for (uint32_t i = 0; i < n; ++i) {
            auto [cin, cout] = est.bucket_counts[i];
            if (cin == 0 || cout == 0) {
                est.undefined.push_back(i);
                continue;
            }
            est.v_hat_exact[i] = in_sum[i] / Rational(cin) - out_sum[i] / Rational(cout);
            est.v_hat[i] = to_double(est.v_hat_exact[i]);
        }
    } else {
        std::vector<double> in_sum(n, 0.0), out_sum(n, 0.0);
        for (const auto& r : samples.records) {
            bool scope_in = in_scope(r), scope_out = out_scope(r);
            if (!scope_in && !scope_out) continue;
            const double v = to_double(r.value);
            for (uint32_t i = 0; i < n; ++i) {
                if (r.set.test(i)) {
                    if (scope_in) {
                        in_sum[i] += v;
                        ++est.bucket_counts[i].first;
                    }
                } else if (scope_out) {
                    out_sum[i] += v;
                    ++est.bucket_counts[i].second;
                }
            }
        }
        for (uint32_t i = 0; i < n; ++i) {
            auto [cin, cout] = est.bucket_counts[i];
            if (cin == 0 || cout == 0) {
                est.undefined.push_back(i);
                continue;
            }
            est.v_hat[i] = in_sum[i] / double(cin) - out_sum[i] / double(cout);
        }
    }
    for (uint32_t i : est.undefined)
        est.warnings.push_back("element " + std::to_string(i) +
                               ": empty estimate bucket, v_hat defaulted to 0");
    return est;
}

}  // namespace detail

// v_hat_i = mean value of samples containing e_i minus mean value of samples
// excluding e_i.
inline MarginalEstimates eemc(const SampleSet& samples, bool exact = false) {
    return detail::estimate_marginals(
        samples, exact, "eemc",
        [](const SampleRecord&) { return true; }, [](const SampleRecord&) { return true; });
}

// Size-paired variant: the containing mean uses only samples of size s+1, the
// excluding mean only samples of size s. Intended for size-concentrated
// distributions where plain conditioning mixes set sizes.
inline MarginalEstimates eemc_paired(const SampleSet& samples, uint32_t s, bool exact = false) {
    return detail::estimate_marginals(
        samples, exact, "eemc-paired:s=" + std::to_string(s),
        [s](const SampleRecord& r) { return r.set.size() == s + 1; },
        [s](const SampleRecord& r) { return r.set.size() == s; });
}

}  // namespace ops
