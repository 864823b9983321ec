#pragma once

#include "ops/element_set.hpp"
#include "ops/rational.hpp"
#include "ops/set_function.hpp"

#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ops {

// Raised when an exhaustive oracle would exceed the enumeration budget.
class BudgetError : public std::runtime_error {
  public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

inline uint64_t default_enum_budget() {
    if (const char* env = std::getenv("OPS_ENUM_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return uint64_t(1) << 25;
}

namespace detail {
inline uint64_t binomial_capped(uint64_t n, uint64_t k, uint64_t cap) {
    if (k > n) return 0;
    uint64_t r = 1;
    for (uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > cap) return cap + 1;
    }
    return r;
}

inline void require_budget(uint64_t work, uint64_t budget, const std::string& op) {
    if (work > budget)
        throw BudgetError(op + ": enumeration size " + std::to_string(work) +
                          " exceeds budget " + std::to_string(budget) +
                          " (override with OPS_ENUM_BUDGET)");
}

// Calls fn(mask) for every n-bit mask with exactly s bits set (Gosper order).
template <typename Fn>
void for_each_mask_of_size(uint32_t n, uint32_t s, Fn&& fn) {
    if (n > 63) throw BudgetError("for_each_mask_of_size: n > 63 not enumerable");
    if (s > n) return;
    if (s == 0) {
        fn(uint64_t(0));
        return;
    }
    uint64_t mask = (uint64_t(1) << s) - 1;
    const uint64_t top = uint64_t(1) << n;
    while (mask < top) {
        fn(mask);
        uint64_t c = mask & (~mask + 1);
        uint64_t r = mask + c;
        if (r >= top) break;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
}
}  // namespace detail

struct OptResult {
    ElementSet argmax;
    Rational value;
    uint64_t evaluations = 0;
};

// Exact maximum of f over all sets of size <= k. Ties resolve to the
// numerically smallest bitmask, independent of enumeration order.
inline OptResult brute_force_opt(const SetFunction& f, uint32_t k,
                                 uint64_t budget = default_enum_budget()) {
    const uint32_t n = f.n();
    if (n > 63) throw BudgetError("brute_force_opt: n > 63 not enumerable");
    k = std::min(k, n);
    uint64_t work = 0;
    for (uint32_t s = 0; s <= k; ++s) {
        work += detail::binomial_capped(n, s, budget);
        detail::require_budget(work, budget, "brute_force_opt");
    }

    OptResult best;
    best.argmax = ElementSet(n);
    best.value = f(best.argmax);
    best.evaluations = 1;
    for (uint32_t s = 1; s <= k; ++s) {
        uint64_t mask = (uint64_t(1) << s) - 1;
        const uint64_t top = uint64_t(1) << n;
        while (mask < top) {
            ElementSet cand = ElementSet::from_mask(n, mask);
            Rational v = f(cand);
            ++best.evaluations;
            if (v > best.value || (v == best.value && cand.numeric_less(best.argmax))) {
                best.value = v;
                best.argmax = cand;
            }
            // Gosper's hack: next mask with the same popcount.
            uint64_t c = mask & (~mask + 1);
            uint64_t r = mask + c;
            if (r >= top) break;
            mask = (((r ^ mask) >> 2) / c) | r;
        }
    }
    return best;
}

struct GreedyResult {
    ElementSet set;
    Rational value;
    std::vector<uint32_t> picks;  // in pick order
};

// Standard greedy: k rounds of best marginal contribution, smallest index on
// ties; stops early when no strictly positive marginal remains.
inline GreedyResult greedy_oracle(const SetFunction& f, uint32_t k) {
    const uint32_t n = f.n();
    GreedyResult res;
    res.set = ElementSet(n);
    res.value = f(res.set);
    for (uint32_t round = 0; round < std::min(k, n); ++round) {
        std::optional<uint32_t> best_e;
        Rational best_gain = 0;
        Rational base = res.value;
        for (uint32_t e = 0; e < n; ++e) {
            if (res.set.test(e)) continue;
            Rational gain = f(res.set.with(e)) - base;
            if (gain > best_gain) {
                best_gain = gain;
                best_e = e;
            }
        }
        if (!best_e) break;
        res.set.add(*best_e);
        res.value = base + best_gain;
        res.picks.push_back(*best_e);
    }
    return res;
}

// Dense table of f over all 2^n subsets, indexed by bitmask.
inline std::vector<Rational> build_value_table(const SetFunction& f,
                                               uint64_t budget = default_enum_budget()) {
    const uint32_t n = f.n();
    if (n > 26) throw BudgetError("build_value_table: n > 26");
    detail::require_budget(uint64_t(1) << n, budget, "build_value_table");
    std::vector<Rational> table(size_t(1) << n);
    for (uint64_t mask = 0; mask < table.size(); ++mask)
        table[mask] = f(ElementSet::from_mask(n, mask));
    return table;
}

struct MonotoneWitness {
    ElementSet set;
    uint32_t element;
};

// Exhaustive: f(S + e) >= f(S) for every S and e not in S.
inline std::optional<MonotoneWitness> check_monotone(const SetFunction& f,
                                                     uint64_t budget = default_enum_budget()) {
    const uint32_t n = f.n();
    detail::require_budget((uint64_t(1) << n) * (n + 1), budget, "check_monotone");
    auto table = build_value_table(f, budget);
    for (uint64_t mask = 0; mask < table.size(); ++mask)
        for (uint32_t e = 0; e < n; ++e) {
            if (mask & (uint64_t(1) << e)) continue;
            if (table[mask | (uint64_t(1) << e)] < table[mask])
                return MonotoneWitness{ElementSet::from_mask(n, mask), e};
        }
    return std::nullopt;
}

struct SubmodularWitness {
    ElementSet set;
    uint32_t element;
    uint32_t context_element;
};

// Exhaustive pairwise form: f_S(e) >= f_{S+e'}(e) for all S and distinct
// e, e' outside S.
inline std::optional<SubmodularWitness> check_submodular(
    const SetFunction& f, uint64_t budget = default_enum_budget()) {
    const uint32_t n = f.n();
    uint64_t pairs = n >= 2 ? uint64_t(n) * (n - 1) * (uint64_t(1) << (n - 2)) : 0;
    detail::require_budget(std::max(pairs, uint64_t(1) << n), budget, "check_submodular");
    auto table = build_value_table(f, budget);
    for (uint64_t mask = 0; mask < table.size(); ++mask)
        for (uint32_t e = 0; e < n; ++e) {
            if (mask & (uint64_t(1) << e)) continue;
            const Rational gain = table[mask | (uint64_t(1) << e)] - table[mask];
            for (uint32_t e2 = 0; e2 < n; ++e2) {
                if (e2 == e || (mask & (uint64_t(1) << e2))) continue;
                uint64_t bigger = mask | (uint64_t(1) << e2);
                if (table[bigger | (uint64_t(1) << e)] - table[bigger] > gain)
                    return SubmodularWitness{ElementSet::from_mask(n, mask), e, e2};
            }
        }
    return std::nullopt;
}

// c = 1 - min over elements e and sets S avoiding e of f_S(e) / f({e}).
// Requires a monotone f with strictly positive singletons.
inline Rational curvature(const SetFunction& f, uint64_t budget = default_enum_budget()) {
    const uint32_t n = f.n();
    if (auto w = check_monotone(f, budget))
        throw std::invalid_argument("curvature: function is not monotone (witness set " +
                                    w->set.to_csv() + ", element " + std::to_string(w->element) +
                                    ")");
    auto table = build_value_table(f, budget);
    std::optional<Rational> min_ratio;
    for (uint32_t e = 0; e < n; ++e) {
        const Rational single = table[uint64_t(1) << e];
        if (single <= 0)
            throw std::invalid_argument("curvature: singleton value must be positive (element " +
                                        std::to_string(e) + ")");
        for (uint64_t mask = 0; mask < table.size(); ++mask) {
            if (mask & (uint64_t(1) << e)) continue;
            Rational ratio = (table[mask | (uint64_t(1) << e)] - table[mask]) / single;
            if (!min_ratio || ratio < *min_ratio) min_ratio = ratio;
        }
    }
    return 1 - (min_ratio ? *min_ratio : Rational(1));
}

}  // namespace ops
