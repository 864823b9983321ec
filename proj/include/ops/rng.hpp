#pragma once

#include "ops/rational.hpp"

#include <cstdint>
#include <vector>

namespace ops {

namespace detail {
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
inline uint64_t rotl64(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace detail

// xoshiro256++ with splitmix64 seeding. Word-for-word reproducible on any
// platform; all distribution helpers below are integer-exact, so streams do
// not depend on floating-point behaviour.
class Rng {
  public:
    explicit Rng(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& w : s_) w = detail::splitmix64(sm);
    }

    // Independent stream derived from (seed, stream). Used to give every
    // sample record, dataset, and algorithm run its own substream.
    static Rng substream(uint64_t seed, uint64_t stream) {
        uint64_t sm = seed;
        uint64_t a = detail::splitmix64(sm);
        uint64_t b = detail::splitmix64(sm);
        return Rng(a ^ detail::rotl64(stream * 0xd1342543de82ef95ULL + b, 32));
    }

    uint64_t next_u64() {
        const uint64_t result = detail::rotl64(s_[0] + s_[3], 23) + s_[0];
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = detail::rotl64(s_[3], 45);
        return result;
    }

    // Unbiased integer in [0, bound) by rejection.
    uint64_t below(uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("below(0)");
        const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        uint64_t r;
        do {
            r = next_u64();
        } while (r >= limit);
        return r % bound;
    }

    // True with probability p (clamped to [0,1]), exact to within 2^-64.
    bool bernoulli(const Rational& p) {
        if (p <= 0) return false;
        if (p >= 1) return true;
        const uint64_t u = next_u64();
        const BigInt& num = numerator(p);
        const BigInt& den = denominator(p);
#if defined(__SIZEOF_INT128__)
        if (num < (BigInt(1) << 63) && den < (BigInt(1) << 63)) {
            auto n64 = num.convert_to<uint64_t>();
            auto d64 = den.convert_to<uint64_t>();
            return static_cast<unsigned __int128>(u) * d64 <
                   (static_cast<unsigned __int128>(n64) << 64);
        }
#endif
        return BigInt(u) * den < (num << 64);
    }

    // Draws `size` distinct indices from [0, n) via a partial Fisher-Yates
    // shuffle; `scratch` is a caller-owned buffer reused across calls.
    void sample_indices(uint32_t n, uint32_t size, std::vector<uint32_t>& scratch,
                        std::vector<uint32_t>& out) {
        if (size > n) throw std::invalid_argument("sample size exceeds ground set");
        scratch.resize(n);
        for (uint32_t i = 0; i < n; ++i) scratch[i] = i;
        out.clear();
        for (uint32_t j = 0; j < size; ++j) {
            uint64_t pick = j + below(n - j);
            std::swap(scratch[j], scratch[pick]);
            out.push_back(scratch[j]);
        }
    }

  private:
    uint64_t s_[4];
};

}  // namespace ops
