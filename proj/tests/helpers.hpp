#pragma once

#include "ops/ops.hpp"

#include <cstdint>
#include <vector>

namespace test_helpers {

// Additive base worth 1 per element plus a one-time bonus for touching each
// pair group {2g, 2g+1}; bonuses shrink linearly across groups. Monotone and
// submodular with exhaustive curvature u_max / (1 + u_max).
inline ops::SetFunction make_group_bonus(uint32_t n, const ops::Rational& u_max) {
    using namespace ops;
    std::vector<SetFunction> parts;
    parts.push_back(make_additive(std::vector<Rational>(n, Rational(1))));
    const uint32_t groups = n / 2;
    for (uint32_t g = 0; g < groups; ++g) {
        std::vector<Rational> bonus(n, Rational(0));
        Rational u = u_max * Rational(10 - (g % 10), 10);
        bonus[2 * g] = u;
        bonus[2 * g + 1] = u;
        parts.push_back(make_unit_demand(std::move(bonus)));
    }
    std::vector<Rational> coeffs(parts.size(), Rational(1));
    return make_composite(std::move(parts), std::move(coeffs), "group-bonus");
}

// Additive with geometrically decaying paired weights 8, 8, 4, 4, 2, 2, ...
// Populates several value-scale bins while staying monotone submodular.
inline std::vector<ops::Rational> geometric_pair_values(uint32_t n) {
    std::vector<ops::Rational> values(n);
    for (uint32_t i = 0; i < n; ++i)
        values[i] = ops::Rational(8) / ops::rational_pow(ops::Rational(2), i / 2);
    return values;
}

inline ops::SetFunction make_geometric_additive(uint32_t n) {
    return ops::make_additive(geometric_pair_values(n));
}

}  // namespace test_helpers
