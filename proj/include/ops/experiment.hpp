#pragma once

#include "ops/algorithms.hpp"
#include "ops/distributions.hpp"
#include "ops/hardness.hpp"
#include "ops/oracles.hpp"
#include "ops/sampling.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ops {

// Stream ids for deriving independent generators from one experiment seed;
// dataset records use streams 0..m-1 of the seed itself.
inline constexpr uint64_t kAlgoStream = 0xA1600001;
inline constexpr uint64_t kIndexStream = 0xA1600002;

struct ExperimentConfig {
    std::optional<HardInstance> instance;  // scored against the planted weighting
    std::optional<SetFunction> fn;         // used when no instance is given
    std::optional<SubsetDistribution> dist;
    uint64_t m = 1000;
    uint32_t k = 1;
    std::string algo = "best-sample";
    bool exact = false;
    bool resample_index = true;  // re-plant the good part per seed
    uint64_t budget = default_enum_budget();
    std::vector<uint64_t> seeds;
};

struct RatioRecord {
    uint64_t seed = 0;
    Rational value;
    Rational baseline;
    Rational ratio;
    double ms = 0;
    std::string baseline_kind;
    std::vector<std::string> warnings;
};

inline SelectionResult dispatch_algorithm(const std::string& algo, const SampleSet& samples,
                                          uint32_t k, Rng& rng, bool exact) {
    if (algo == "best-sample") return best_sample(samples, k);
    if (algo == "max-marg-cont") return max_marg_cont(samples, k, exact);
    if (algo == "algo2") return algo2_submodular(samples, k, rng, exact);
    if (algo == "greedy-surrogate") {
        RecoveredSurrogate rec = recover_additive(samples, exact);
        GreedyResult g = greedy_on_surrogate(rec.surrogate, k);
        SelectionResult res;
        res.set = std::move(g.set);
        res.warnings = std::move(rec.estimates.warnings);
        return res;
    }
    throw std::invalid_argument("unknown algorithm: " + algo +
                                " (expected best-sample, max-marg-cont, algo2, "
                                "greedy-surrogate)");
}

inline RatioRecord run_single_seed(const ExperimentConfig& cfg, uint64_t seed) {
    RatioRecord rec;
    rec.seed = seed;

    SetFunction f = [&] {
        if (cfg.instance) {
            HardInstance inst = *cfg.instance;
            if (cfg.resample_index && inst.r > 1) {
                Rng idx_rng = Rng::substream(seed, kIndexStream);
                inst = with_good_index(std::move(inst), static_cast<uint32_t>(idx_rng.below(inst.r)));
            }
            return make_set_function(inst);
        }
        if (!cfg.fn) throw std::invalid_argument("experiment needs an instance or a function");
        return *cfg.fn;
    }();
    if (!cfg.dist) throw std::invalid_argument("experiment: no sampling distribution given");
    if (f.n() != cfg.dist->n())
        throw std::invalid_argument("experiment: distribution dimension differs from function");

    SampleSet samples = generate_dataset(f, *cfg.dist, cfg.m, seed);

    Rng algo_rng = Rng::substream(seed, kAlgoStream);
    const auto t0 = std::chrono::steady_clock::now();
    SelectionResult sel = dispatch_algorithm(cfg.algo, samples, cfg.k, algo_rng, cfg.exact);
    const auto t1 = std::chrono::steady_clock::now();
    rec.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    rec.warnings = std::move(sel.warnings);
    rec.value = f(sel.set);

    // Baseline: exhaustive optimum when enumerable, else the planted optimum
    // of a hard instance, else greedy on the true function (labeled as such).
    try {
        OptResult opt = brute_force_opt(f, cfg.k, cfg.budget);
        rec.baseline = opt.value;
        rec.baseline_kind = "brute-force";
    } catch (const BudgetError&) {
        if (cfg.instance) {
            rec.baseline = instance_opt(*cfg.instance);
            rec.baseline_kind = "instance-opt";
        } else {
            rec.baseline = greedy_oracle(f, cfg.k).value;
            rec.baseline_kind = "greedy";
        }
    }
    if (rec.baseline > 0) {
        rec.ratio = rec.value / rec.baseline;
    } else {
        rec.ratio = 0;
        rec.warnings.push_back("baseline is not positive; ratio reported as 0");
    }
    return rec;
}

inline std::vector<RatioRecord> run_experiment(const ExperimentConfig& cfg) {
    if (cfg.seeds.empty()) throw std::invalid_argument("experiment: no seeds given");
    std::vector<RatioRecord> records;
    records.reserve(cfg.seeds.size());
    for (uint64_t seed : cfg.seeds) records.push_back(run_single_seed(cfg, seed));
    return records;
}

// ---------------------------------------------------------------------------
// Rendering. Values print as exact fractions so repeated exact-mode runs are
// byte-identical; the ms column is zeroed in exact mode for the same reason.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string ms_field(double ms, bool exact) {
    if (exact) return "0";
    std::ostringstream os;
    os << std::fixed << std::setprecision(3) << ms;
    return os.str();
}

struct RatioSummary {
    Rational mean, min, max;
};

inline RatioSummary summarize(const std::vector<RatioRecord>& records) {
    RatioSummary s;
    s.mean = 0;
    s.min = records.front().ratio;
    s.max = records.front().ratio;
    for (const auto& r : records) {
        s.mean += r.ratio;
        if (r.ratio < s.min) s.min = r.ratio;
        if (r.ratio > s.max) s.max = r.ratio;
    }
    s.mean /= Rational(static_cast<uint64_t>(records.size()));
    return s;
}

}  // namespace detail

inline void render_csv(const std::vector<RatioRecord>& records, bool exact, std::ostream& os) {
    os << "seed,value,baseline,ratio,ms\n";
    for (const auto& r : records)
        os << r.seed << "," << format_rational(r.value) << "," << format_rational(r.baseline)
           << "," << format_rational(r.ratio) << "," << detail::ms_field(r.ms, exact) << "\n";
    if (records.size() >= 2) {
        auto s = detail::summarize(records);
        os << "mean=" << format_rational(s.mean) << ", min=" << format_rational(s.min)
           << ", max=" << format_rational(s.max) << "\n";
    }
}

inline void render_table(const std::vector<RatioRecord>& records, bool exact, std::ostream& os) {
    os << std::left << std::setw(10) << "seed" << std::setw(16) << "value" << std::setw(16)
       << "baseline" << std::setw(12) << "ratio" << std::setw(10) << "ms"
       << "baseline-kind\n";
    for (const auto& r : records) {
        std::ostringstream ratio;
        ratio << std::fixed << std::setprecision(6) << to_double(r.ratio);
        os << std::left << std::setw(10) << r.seed << std::setw(16) << format_rational(r.value)
           << std::setw(16) << format_rational(r.baseline) << std::setw(12) << ratio.str()
           << std::setw(10) << detail::ms_field(r.ms, exact) << r.baseline_kind << "\n";
    }
    if (records.size() >= 2) {
        auto s = detail::summarize(records);
        os << "mean=" << format_rational(s.mean) << ", min=" << format_rational(s.min)
           << ", max=" << format_rational(s.max) << "\n";
    }
}

// Two columns "seed ratio", sorted by seed, for plotting tools.
inline void render_plotdata(std::vector<RatioRecord> records, std::ostream& os) {
    std::sort(records.begin(), records.end(),
              [](const RatioRecord& a, const RatioRecord& b) { return a.seed < b.seed; });
    for (const auto& r : records) {
        std::ostringstream y;
        y << std::setprecision(10) << to_double(r.ratio);
        os << r.seed << " " << y.str() << "\n";
    }
}

inline void render_report(const std::vector<RatioRecord>& records, const std::string& format,
                          bool exact, std::ostream& os) {
    if (records.empty()) throw std::invalid_argument("render_report: no records");
    if (format == "csv")
        render_csv(records, exact, os);
    else if (format == "table")
        render_table(records, exact, os);
    else if (format == "plotdata")
        render_plotdata(records, os);
    else
        throw std::invalid_argument("unknown format: " + format +
                                    " (expected csv, table, plotdata)");
}

}  // namespace ops
