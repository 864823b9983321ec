#pragma once

#include "ops/coverage.hpp"
#include "ops/rational.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ops {

// Closed form for the symmetric coverage value on p disjoint blocks:
// C_p(y) = p * (1 - (1 - 1/p)^y).
inline Rational cp_value(uint64_t p, uint64_t y) {
    if (p == 0) throw std::invalid_argument("cp_value: p must be positive");
    Rational keep = Rational(1) - rational_pow(Rational(p - 1, p), static_cast<unsigned>(y));
    return Rational(p) * keep;
}

namespace detail {

inline bool is_prime_u32(uint32_t v) {
    if (v < 2) return false;
    for (uint32_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

inline uint64_t binom_u64(uint64_t n, uint64_t r) {
    if (r > n) return 0;
    r = std::min(r, n - r);
    uint64_t acc = 1;
    for (uint64_t i = 1; i <= r; ++i) acc = acc * (n - r + i) / i;
    return acc;
}

}  // namespace detail

// Total weight assigned to the z-th layer; the layer weights sum to C_p(k):
//   w_z = p * binom(k, z) * (1/p)^z * (1 - 1/p)^(k - z).
inline Rational cp_layer_weight(uint64_t p, uint32_t k, uint32_t z) {
    Rational a = rational_pow(Rational(1, p), z);
    Rational b = rational_pow(Rational(p - 1, p), k - z);
    return Rational(p) * Rational(detail::binom_u64(k, z)) * a * b;
}

// One layer of the polynomial-hash coverage construction: all coefficient
// vectors a in {0..k-1}^ell whose hash h_a(x) = sum_i a_i x^i (mod k) is
// injective on {1..z}. Each such vector becomes a child covered by the image
// set {h_a(1), ..., h_a(z)}.
struct ZetaLayer {
    uint32_t z = 0;
    std::vector<ElementSet> children;  // parent sets over ground [k]
};

inline void validate_zeta_params(uint32_t k, uint32_t ell) {
    if (!detail::is_prime_u32(k))
        throw std::invalid_argument("polynomial-hash construction requires prime k, got " +
                                    std::to_string(k));
    if (ell < 2 || ell > k)
        throw std::invalid_argument("polynomial-hash construction requires 2 <= ell <= k, got " +
                                    std::to_string(ell));
}

inline std::vector<ZetaLayer> build_zeta_layers(uint32_t k, uint32_t ell) {
    validate_zeta_params(k, ell);
    std::vector<ZetaLayer> layers(k);
    for (uint32_t z = 1; z <= k; ++z) layers[z - 1].z = z;

    std::vector<uint32_t> coeff(ell, 0);
    std::vector<uint32_t> image(k, 0);
    while (true) {
        // Evaluate h(x) for x = 1..k and find the longest injective prefix.
        uint64_t seen = 0;
        uint32_t injective_up_to = 0;
        for (uint32_t x = 1; x <= k; ++x) {
            uint64_t xp = 1, h = 0;
            for (uint32_t i = 0; i < ell; ++i) {
                h = (h + coeff[i] * xp) % k;
                xp = (xp * x) % k;
            }
            image[x - 1] = static_cast<uint32_t>(h);
            if (injective_up_to == x - 1 && !(seen >> h & 1)) injective_up_to = x;
            seen |= uint64_t(1) << h;
        }
        for (uint32_t z = 1; z <= injective_up_to; ++z) {
            ElementSet parents(k);
            for (uint32_t x = 1; x <= z; ++x) parents.add(image[x - 1]);
            layers[z - 1].children.push_back(std::move(parents));
        }
        // Next coefficient vector (odometer over base k).
        uint32_t pos = 0;
        while (pos < ell && ++coeff[pos] == k) coeff[pos++] = 0;
        if (pos == ell) break;
    }
    return layers;
}

// Coverage graph on ground set [k] whose value is C_p(|S|) for every S with
// |S| <= ell, and C_p(k) on the full ground set: the z-th layer's children
// share its weight equally.
inline CoverageGraph build_cp_graph(uint64_t p, uint32_t k, uint32_t ell) {
    auto layers = build_zeta_layers(k, ell);
    CoverageGraph g;
    g.n = k;
    for (const auto& layer : layers) {
        Rational total = cp_layer_weight(p, k, layer.z);
        if (total == 0) continue;
        if (layer.children.empty())
            throw std::logic_error("layer z=" + std::to_string(layer.z) +
                                   " has positive weight but no children");
        Rational w = total / Rational(static_cast<uint64_t>(layer.children.size()));
        for (const auto& parents : layer.children) g.children.push_back({w, parents});
    }
    return g;
}

}  // namespace ops
