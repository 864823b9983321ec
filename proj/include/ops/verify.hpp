#pragma once

#include "ops/hardness.hpp"
#include "ops/oracles.hpp"
#include "ops/rng.hpp"
#include "ops/zeta.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace ops {

// One verified property. verdict is "pass"/"fail" for checks with a defined
// outcome and "measured" for quantities that are reported, not judged.
struct PropertyReport {
    std::string property;
    std::string verdict;
    std::vector<std::pair<std::string, std::string>> values;
    std::string witness;  // space-free description of a failing case

    void add(const std::string& key, const std::string& val) { values.emplace_back(key, val); }
    void add(const std::string& key, const Rational& val) {
        values.emplace_back(key, format_rational(val));
    }
    void add(const std::string& key, uint64_t val) {
        values.emplace_back(key, std::to_string(val));
    }
    void add(const std::string& key, double val) {
        std::ostringstream os;
        os << val;
        values.emplace_back(key, os.str());
    }
};

inline std::string report_line(const PropertyReport& r) {
    std::string line = "property=" + r.property + " verdict=" + r.verdict;
    for (const auto& [k, v] : r.values) line += " " + k + "=" + v;
    if (!r.witness.empty()) line += " witness=" + r.witness;
    return line;
}

inline void render_reports(const std::vector<PropertyReport>& reports, std::ostream& os) {
    for (const auto& r : reports) os << report_line(r) << "\n";
}

inline bool any_failure(const std::vector<PropertyReport>& reports) {
    for (const auto& r : reports)
        if (r.verdict == "fail") return true;
    return false;
}

struct VerifyConfig {
    uint64_t trials = 2000;
    uint32_t t_identical = 0;  // 0 = auto: ~n/13, at least 1
    uint32_t t_masking = 0;    // 0 = auto: coupon-collector estimate
    double identical_threshold = 1e-3;  // max fraction of differing draws
    double masking_threshold = 0.05;    // max fraction of not-fully-masked draws
    uint64_t budget = default_enum_budget();
    uint64_t seed = 12345;
};

namespace detail {

// True when every family's evaluation of S is provably index-independent:
// all part intersections at most ell for the coverage families, total part
// content at most log2(n) for the submodular family.
inline bool agreement_condition(const HardInstance& inst, const ElementSet& S) {
    if (inst.family == HardFamily::Submodular) {
        uint64_t total = 0;
        for (const auto& ids : inst.partition.part_ids)
            for (uint32_t e : ids) total += S.test(e) ? 1 : 0;
        return total <= inst.log2_n;
    }
    for (const auto& ids : inst.partition.part_ids) {
        uint32_t cnt = 0;
        for (uint32_t e : ids) cnt += S.test(e) ? 1 : 0;
        if (cnt > inst.ell) return false;
    }
    return true;
}

inline std::vector<HardInstance> index_variants(const HardInstance& inst) {
    std::vector<HardInstance> out;
    out.reserve(inst.r);
    for (uint32_t i = 0; i < inst.r; ++i) out.push_back(with_good_index(inst, i));
    return out;
}

inline uint32_t auto_t_identical(const HardInstance& inst) {
    return std::max<uint32_t>(1, inst.n / 13);
}

inline uint32_t auto_t_masking(const HardInstance& inst) {
    const auto mask_size = static_cast<uint32_t>(inst.partition.mask_ids.size());
    if (mask_size == 0) return inst.n;
    double need;
    if (inst.family == HardFamily::Submodular) {
        need = 2.0 * double(inst.sqrt_n);  // want |S ∩ M| >= sqrt(n)
    } else {
        const double sigma = inst.sigma;
        need = sigma * (std::log(std::max(2.0, sigma)) + 7.0);  // want all columns hit
    }
    double t = need * double(inst.n) / double(mask_size);
    return static_cast<uint32_t>(std::min<double>(inst.n, std::ceil(t)));
}

// Largest bad-side value per intersection size for one part.
inline std::vector<Rational> bad_size_table(const HardInstance& inst, uint64_t budget) {
    std::vector<Rational> best(inst.k + 1, Rational(0));
    if (inst.family == HardFamily::CoveragePoly) {
        require_budget(uint64_t(1) << inst.k, budget, "gap check (bad-side table)");
        for (uint32_t s = 0; s <= inst.k; ++s)
            for_each_mask_of_size(inst.k, s, [&](uint64_t mask) {
                Rational v = inst.bad_local.value(ElementSet::from_mask(inst.k, mask));
                if (v > best[s]) best[s] = v;
            });
    } else {
        for (uint32_t s = 0; s <= inst.k; ++s) best[s] = inst.weights.bad_single(s);
    }
    return best;
}

// Largest good-side value over subsets of the given size within one part.
inline Rational good_size_max(const HardInstance& inst, uint32_t s, uint64_t budget) {
    if (inst.family == HardFamily::CoveragePoly) {
        require_budget(binomial_capped(inst.k, s, budget), budget, "curvature check");
        Rational best(0);
        for_each_mask_of_size(inst.k, s, [&](uint64_t mask) {
            Rational v = inst.good_local.value(ElementSet::from_mask(inst.k, mask));
            if (v > best) best = v;
        });
        return best;
    }
    if (inst.family == HardFamily::Submodular) return Rational(s);
    return inst.weights.good(s);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Individual checks
// ---------------------------------------------------------------------------

// Structural soundness of the instance: parts disjoint and complete, sizes
// right, every mask element carrying a valid column.
inline PropertyReport check_structure(const HardInstance& inst) {
    PropertyReport rep;
    rep.property = "structure";
    rep.verdict = "pass";
    std::vector<uint32_t> seen(inst.n, 0);
    auto complain = [&](const std::string& why) {
        rep.verdict = "fail";
        if (rep.witness.empty()) rep.witness = why;
    };
    if (inst.partition.part_ids.size() != inst.r) complain("part-count");
    for (const auto& ids : inst.partition.part_ids) {
        if (ids.size() != inst.k) complain("part-size");
        for (uint32_t e : ids) {
            if (e >= inst.n) complain("part-element-range");
            else ++seen[e];
        }
    }
    for (uint32_t e : inst.partition.mask_ids) {
        if (e >= inst.n) complain("mask-element-range");
        else ++seen[e];
        if (inst.family != HardFamily::Submodular && e < inst.n &&
            inst.mask_col[e] >= inst.sigma)
            complain("mask-column-range");
    }
    for (uint32_t e = 0; e < inst.n; ++e)
        if (seen[e] != 1) complain("element-" + std::to_string(e) + "-covered-" +
                                   std::to_string(seen[e]) + "-times");
    if (inst.good_index >= inst.r) complain("good-index-range");
    rep.add("n", uint64_t(inst.n));
    rep.add("k", uint64_t(inst.k));
    rep.add("r", uint64_t(inst.r));
    return rep;
}

// The stored coefficients must solve sum_j x_j C_{p_j}(i) = i for i = 1..ell;
// a tampered coefficient vector leaves a nonzero residual.
inline PropertyReport check_weights_residual(const HardInstance& inst) {
    PropertyReport rep;
    rep.property = "weights-residual";
    if (inst.family == HardFamily::Submodular) {
        rep.verdict = "pass";
        rep.add("note", std::string("closed-form-family"));
        return rep;
    }
    rep.verdict = "pass";
    Rational worst(0);
    for (uint32_t i = 1; i <= inst.ell; ++i) {
        Rational lhs(0);
        for (size_t j = 0; j < inst.weights.ps.size(); ++j)
            lhs += inst.weights.xs[j] * cp_value(inst.weights.ps[j], i);
        Rational residual = lhs - Rational(i);
        if (residual != 0) {
            rep.verdict = "fail";
            if (rep.witness.empty())
                rep.witness = "i:" + std::to_string(i) + ";residual:" + format_rational(residual);
        }
        Rational mag = residual < 0 ? -residual : residual;
        if (mag > worst) worst = mag;
    }
    rep.add("max_residual", worst);
    return rep;
}

// good and bad weightings agree on every size up to ell and separate at k.
inline PropertyReport check_local_agreement(const HardInstance& inst) {
    PropertyReport rep;
    rep.property = "local-agreement";
    if (inst.family == HardFamily::Submodular) {
        rep.verdict = "pass";
        rep.add("note", std::string("closed-form-family"));
        return rep;
    }
    rep.verdict = "pass";
    for (uint32_t y = 1; y <= inst.ell; ++y) {
        if (inst.weights.good(y) != inst.weights.bad_single(y)) {
            rep.verdict = "fail";
            rep.witness = "y:" + std::to_string(y) + ";good:" +
                          format_rational(inst.weights.good(y)) + ";bad:" +
                          format_rational(inst.weights.bad_single(y));
            break;
        }
    }
    rep.add("ell", uint64_t(inst.ell));
    rep.add("g_k", inst.weights.good(inst.k));
    rep.add("b_k", inst.weights.bad_single(inst.k));
    if (inst.weights.good(inst.k) <= inst.weights.bad_single(inst.k)) rep.verdict = "fail";
    if (inst.family == HardFamily::CoveragePoly) {
        // The local graphs must reproduce the closed forms at the full part.
        ElementSet full = ElementSet::full(inst.k);
        if (inst.good_local.value(full) != inst.weights.good(inst.k) ||
            inst.bad_local.value(full) != inst.weights.bad_single(inst.k)) {
            rep.verdict = "fail";
            if (rep.witness.empty()) rep.witness = "graph-total-mismatch";
        }
    }
    return rep;
}

// Per-layer symmetry: within one layer z of the polynomial-hash gadget, every
// subset of equal size s <= ell must hit the same number of children. This is
// exact for z <= ell (the image of an injective hash restricted to z points is
// uniform over z-subsets) and for s <= 2 at any z (the hash family is closed
// under affine relabeling of the range, which acts 2-transitively). For
// ell >= 3 and ell < z < k - 2 it can genuinely fail; the check reports the
// first counterexample.
inline PropertyReport check_zeta_layer_symmetry(uint32_t k, uint32_t ell,
                                                uint64_t budget = default_enum_budget()) {
    PropertyReport rep;
    rep.property = "zeta-layer-symmetry";
    rep.add("k", uint64_t(k));
    rep.add("ell", uint64_t(ell));
    auto layers = build_zeta_layers(k, ell);
    uint64_t work = 0, children = 0;
    for (const auto& layer : layers) children += layer.children.size();
    for (uint32_t s = 1; s <= ell; ++s)
        work += detail::binomial_capped(k, s, budget) * std::max<uint64_t>(1, children);
    detail::require_budget(work, budget, "zeta layer symmetry check");
    rep.verdict = "pass";
    uint64_t layers_failed = 0;
    for (const auto& layer : layers) {
        bool layer_ok = true;
        for (uint32_t s = 1; s <= ell; ++s) {
            uint64_t ref_count = 0;
            bool have_ref = false;
            detail::for_each_mask_of_size(k, s, [&](uint64_t mask) {
                if (!layer_ok) return;
                ElementSet subset = ElementSet::from_mask(k, mask);
                uint64_t covered = 0;
                for (const auto& child : layer.children)
                    if (child.intersects(subset)) ++covered;
                if (!have_ref) {
                    ref_count = covered;
                    have_ref = true;
                } else if (covered != ref_count) {
                    layer_ok = false;
                    if (rep.witness.empty())
                        rep.witness = "z:" + std::to_string(layer.z) +
                                      ";size:" + std::to_string(s) +
                                      ";mask:" + std::to_string(mask) +
                                      ";covered:" + std::to_string(covered) +
                                      ";expected:" + std::to_string(ref_count);
                }
            });
            if (!layer_ok) break;
        }
        if (!layer_ok) {
            ++layers_failed;
            rep.verdict = "fail";
        }
    }
    rep.add("layers_failed", layers_failed);
    return rep;
}

// The layered polynomial-hash graph must be size-symmetric up to ell: every
// subset of equal size gets the same value, equal to the closed form.
inline PropertyReport check_zeta_symmetry(uint64_t p, uint32_t k, uint32_t ell,
                                          uint64_t budget = default_enum_budget()) {
    PropertyReport rep;
    rep.property = "zeta-symmetry";
    rep.add("p", p);
    rep.add("k", uint64_t(k));
    rep.add("ell", uint64_t(ell));
    CoverageGraph g = build_cp_graph(p, k, ell);
    uint64_t work = 0;
    for (uint32_t s = 0; s <= ell; ++s)
        work += detail::binomial_capped(k, s, budget) * std::max<uint64_t>(1, g.children.size());
    detail::require_budget(work, budget, "zeta symmetry check");
    rep.verdict = "pass";
    for (uint32_t s = 0; s <= ell && rep.verdict == "pass"; ++s) {
        Rational want = cp_value(p, s);
        detail::for_each_mask_of_size(k, s, [&](uint64_t mask) {
            if (rep.verdict != "pass") return;
            Rational got = g.value(ElementSet::from_mask(k, mask));
            if (got != want) {
                rep.verdict = "fail";
                rep.witness = "size:" + std::to_string(s) +
                              ";mask:" + std::to_string(mask) + ";got:" + format_rational(got) +
                              ";want:" + format_rational(want);
            }
        });
    }
    if (rep.verdict == "pass" && g.value(ElementSet::full(k)) != cp_value(p, k)) {
        rep.verdict = "fail";
        rep.witness = "full-set-value";
    }
    return rep;
}

// Index-blindness: on every set whose part intersections stay within the
// agreement range, all r candidate functions coincide (checked exhaustively
// when the budget allows), and uniformly random t-subsets land in that range
// except with small probability (checked statistically).
inline PropertyReport check_identical_small(const HardInstance& inst, uint32_t t,
                                            uint64_t trials, Rng& rng,
                                            double threshold,
                                            uint64_t budget = default_enum_budget()) {
    PropertyReport rep;
    rep.property = "identical-small";
    rep.verdict = "pass";
    auto variants = detail::index_variants(inst);

    bool exact_ran = false;
    uint64_t exact_sets = 0, exact_mismatches = 0;
    if (inst.n <= 63 &&
        (uint64_t(1) << inst.n) <= budget / std::max<uint64_t>(1, inst.r)) {
        exact_ran = true;
        const uint64_t top = uint64_t(1) << inst.n;
        for (uint64_t mask = 0; mask < top; ++mask) {
            ElementSet S = ElementSet::from_mask(inst.n, mask);
            if (!detail::agreement_condition(inst, S)) continue;
            ++exact_sets;
            Rational v0 = eval_hard(variants[0], S);
            for (uint32_t i = 1; i < inst.r; ++i) {
                if (eval_hard(variants[i], S) != v0) {
                    ++exact_mismatches;
                    if (rep.witness.empty())
                        rep.witness = "S:" + S.to_csv() + ";i:" + std::to_string(i);
                    break;
                }
            }
        }
        if (exact_mismatches > 0) rep.verdict = "fail";
    }

    uint64_t differing = 0;
    std::vector<uint32_t> scratch, draw;
    for (uint64_t trial = 0; trial < trials; ++trial) {
        rng.sample_indices(inst.n, std::min(t, inst.n), scratch, draw);
        ElementSet S = ElementSet::of(inst.n, draw);
        Rational v0 = eval_hard(variants[0], S);
        for (uint32_t i = 1; i < inst.r; ++i) {
            if (eval_hard(variants[i], S) != v0) {
                ++differing;
                break;
            }
        }
    }
    const double fraction = trials ? double(differing) / double(trials) : 0.0;
    if (fraction > threshold) rep.verdict = "fail";

    rep.add("exact", std::string(exact_ran ? "yes" : "skipped"));
    if (exact_ran) {
        rep.add("exact_sets", exact_sets);
        rep.add("exact_mismatches", exact_mismatches);
    }
    rep.add("t", uint64_t(t));
    rep.add("trials", trials);
    rep.add("differing_fraction", fraction);
    rep.add("threshold", threshold);
    return rep;
}

// Masking saturation: large uniform subsets are fully masked (coverage: all
// sigma columns present; submodular: at least sqrt(n) mask elements) with
// high probability, which makes their value index- and content-independent.
inline PropertyReport check_masking_large(const HardInstance& inst, uint32_t t,
                                          uint64_t trials, Rng& rng, double threshold) {
    PropertyReport rep;
    rep.property = "masking-large";
    rep.verdict = "pass";
    uint64_t unmasked = 0;
    std::vector<uint32_t> scratch, draw;
    for (uint64_t trial = 0; trial < trials; ++trial) {
        rng.sample_indices(inst.n, std::min(t, inst.n), scratch, draw);
        bool full;
        if (inst.family == HardFamily::Submodular) {
            uint64_t mask_count = 0;
            for (uint32_t e : draw)
                if (inst.part_of[e] < 0) ++mask_count;
            full = mask_count >= inst.sqrt_n;
        } else {
            uint64_t cols = 0;
            for (uint32_t e : draw)
                if (inst.part_of[e] < 0) cols |= uint64_t(1) << inst.mask_col[e];
            full = std::popcount(cols) == int(inst.sigma);
        }
        if (!full) ++unmasked;
    }
    const double fraction = trials ? double(unmasked) / double(trials) : 0.0;
    if (fraction > threshold) rep.verdict = "fail";
    rep.add("t", uint64_t(t));
    rep.add("trials", trials);
    rep.add("unmasked_fraction", fraction);
    rep.add("threshold", threshold);
    return rep;
}

struct GapResult {
    Rational g_k;         // planted optimum
    Rational b_max;       // best bad-side value over size-<=k compositions
    Rational mplus_max;   // best mask lift at size <= k
    Rational alpha;       // g_k / max(b_max, mplus_max)
    PropertyReport report;
};

// Separation measurement: the planted part is worth g(k) while any blind
// choice caps at max(bad composition, mask lift).
inline GapResult check_gap(const HardInstance& inst, uint64_t budget = default_enum_budget()) {
    GapResult out;
    out.g_k = instance_opt(inst);

    if (inst.family == HardFamily::Submodular) {
        uint64_t bad_cap = std::min<uint64_t>(uint64_t(inst.r - 1) * inst.k, inst.k);
        out.b_max = Rational(std::min<uint64_t>(bad_cap, inst.log2_n));
        uint64_t a_max = std::min<uint64_t>(inst.k, inst.partition.mask_ids.size());
        out.mplus_max = Rational(std::min<uint64_t>(a_max, inst.sqrt_n), inst.quarter_root_n);
    } else {
        // DP over how the k picks are split across the r-1 bad parts.
        auto per_size = detail::bad_size_table(inst, budget);
        std::vector<Rational> dp(inst.k + 1, Rational(0));
        for (uint32_t part = 0; part < inst.r - 1; ++part) {
            std::vector<Rational> next = dp;
            for (uint32_t used = 0; used <= inst.k; ++used)
                for (uint32_t take = 1; take + used <= inst.k; ++take) {
                    Rational cand = dp[used] + per_size[take];
                    if (cand > next[used + take]) next[used + take] = cand;
                }
            dp = std::move(next);
        }
        out.b_max = Rational(0);
        for (const auto& v : dp)
            if (v > out.b_max) out.b_max = v;

        uint64_t cols_used = 0;
        for (uint32_t e : inst.partition.mask_ids) cols_used |= uint64_t(1) << inst.mask_col[e];
        const uint64_t distinct_available = std::popcount(cols_used);
        const uint64_t d_max = std::min<uint64_t>(inst.k, distinct_available);
        out.mplus_max = Rational(d_max, inst.sigma) * inst.total_weight;
    }

    Rational cap = std::max(out.b_max, out.mplus_max);
    out.alpha = cap > 0 ? out.g_k / cap : Rational(0);

    out.report.property = "gap";
    out.report.verdict = "measured";
    out.report.add("alpha", out.alpha);
    out.report.add("g_k", out.g_k);
    out.report.add("b_max", out.b_max);
    out.report.add("mplus_max", out.mplus_max);
    if (inst.family != HardFamily::Submodular) out.report.add("W", inst.total_weight);
    return out;
}

struct CurvatureGapResult {
    Rational beta;       // 1 - g(k) / (r * g(floor(k/r))), clamped at 0
    Rational g_k;
    Rational g_floor;
    PropertyReport report;
};

inline CurvatureGapResult check_curvature_gap(const HardInstance& inst,
                                              uint64_t budget = default_enum_budget()) {
    CurvatureGapResult out;
    out.g_k = instance_opt(inst);
    const uint32_t y0 = inst.k / inst.r;
    out.g_floor = detail::good_size_max(inst, y0, budget);
    if (out.g_floor > 0) {
        Rational raw = Rational(1) - out.g_k / (Rational(inst.r) * out.g_floor);
        out.beta = raw > 0 ? raw : Rational(0);
    } else {
        out.beta = 0;
    }
    out.report.property = "curvature-gap";
    out.report.verdict = "measured";
    out.report.add("beta", out.beta);
    out.report.add("g_k", out.g_k);
    out.report.add("g_floor", out.g_floor);
    out.report.add("floor_size", uint64_t(y0));
    return out;
}

// 2 * max(1 / (r (1 - beta)), 2 / alpha) — the inapproximability multiplier
// the gap instance certifies.
inline Rational gap_bound(const Rational& alpha, const Rational& beta, uint32_t r) {
    Rational left = Rational(1) / (Rational(r) * (Rational(1) - beta));
    Rational right = alpha > 0 ? Rational(2) / alpha : Rational(0);
    return Rational(2) * std::max(left, right);
}

// ---------------------------------------------------------------------------
// Full instance verification
// ---------------------------------------------------------------------------

inline std::vector<PropertyReport> verify_instance(const HardInstance& inst,
                                                   const VerifyConfig& cfg = {}) {
    std::vector<PropertyReport> reports;
    reports.push_back(check_structure(inst));
    reports.push_back(check_weights_residual(inst));
    reports.push_back(check_local_agreement(inst));
    if (inst.family == HardFamily::CoveragePoly) {
        for (size_t j = 0; j < inst.weights.ps.size(); ++j) {
            if (inst.weights.xs[j] == 0) continue;
            try {
                reports.push_back(
                    check_zeta_symmetry(inst.weights.ps[j], inst.k, inst.ell, cfg.budget));
            } catch (const BudgetError&) {
                PropertyReport skip;
                skip.property = "zeta-symmetry";
                skip.verdict = "measured";
                skip.add("p", inst.weights.ps[j]);
                skip.add("note", std::string("skipped-budget"));
                reports.push_back(std::move(skip));
            }
        }
    }
    const uint32_t t_id = cfg.t_identical ? cfg.t_identical : detail::auto_t_identical(inst);
    const uint32_t t_mask = cfg.t_masking ? cfg.t_masking : detail::auto_t_masking(inst);
    Rng id_rng = Rng::substream(cfg.seed, 101);
    Rng mask_rng = Rng::substream(cfg.seed, 202);
    reports.push_back(check_identical_small(inst, t_id, cfg.trials, id_rng,
                                            cfg.identical_threshold, cfg.budget));
    reports.push_back(
        check_masking_large(inst, t_mask, cfg.trials, mask_rng, cfg.masking_threshold));

    try {
        GapResult gap = check_gap(inst, cfg.budget);
        CurvatureGapResult curv = check_curvature_gap(inst, cfg.budget);
        reports.push_back(gap.report);
        reports.push_back(curv.report);
        PropertyReport bound;
        bound.property = "gap-bound";
        bound.verdict = "measured";
        bound.add("bound", gap_bound(gap.alpha, curv.beta, inst.r));
        reports.push_back(std::move(bound));
    } catch (const BudgetError&) {
        PropertyReport skip;
        skip.property = "gap";
        skip.verdict = "measured";
        skip.add("note", std::string("skipped-budget"));
        reports.push_back(std::move(skip));
    }
    return reports;
}

}  // namespace ops
