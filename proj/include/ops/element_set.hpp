#pragma once

#include <bit>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ops {

// Subset of a ground set {0, ..., n-1}, stored as a packed bitmask.
// n is part of the value: sets over different ground sizes never compare equal.
class ElementSet {
  public:
    ElementSet() : n_(0) {}
    explicit ElementSet(uint32_t n) : n_(n), words_((n + 63) / 64, 0) {}

    static ElementSet singleton(uint32_t n, uint32_t i) {
        ElementSet s(n);
        s.add(i);
        return s;
    }

    static ElementSet full(uint32_t n) {
        ElementSet s(n);
        for (uint32_t i = 0; i < n; ++i) s.add(i);
        return s;
    }

    template <typename Range>
    static ElementSet of(uint32_t n, const Range& indices) {
        ElementSet s(n);
        for (auto i : indices) s.add(static_cast<uint32_t>(i));
        return s;
    }

    // Interprets the low n bits of `mask`; only valid for n <= 64.
    static ElementSet from_mask(uint32_t n, uint64_t mask) {
        if (n > 64) throw std::invalid_argument("from_mask needs n <= 64");
        ElementSet s(n);
        if (n > 0) s.words_[0] = n == 64 ? mask : (mask & ((uint64_t(1) << n) - 1));
        return s;
    }

    uint32_t ground_size() const { return n_; }

    bool test(uint32_t i) const {
        check_index(i);
        return (words_[i >> 6] >> (i & 63)) & 1;
    }
    void add(uint32_t i) {
        check_index(i);
        words_[i >> 6] |= uint64_t(1) << (i & 63);
    }
    void remove(uint32_t i) {
        check_index(i);
        words_[i >> 6] &= ~(uint64_t(1) << (i & 63));
    }

    uint32_t size() const {
        uint32_t c = 0;
        for (auto w : words_) c += std::popcount(w);
        return c;
    }
    bool empty() const {
        for (auto w : words_)
            if (w) return false;
        return true;
    }

    bool intersects(const ElementSet& o) const {
        for (size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }
    uint32_t intersect_count(const ElementSet& o) const {
        uint32_t c = 0;
        for (size_t i = 0; i < words_.size(); ++i) c += std::popcount(words_[i] & o.words_[i]);
        return c;
    }
    bool contains(const ElementSet& subset) const {
        for (size_t i = 0; i < words_.size(); ++i)
            if (subset.words_[i] & ~words_[i]) return false;
        return true;
    }

    ElementSet intersect(const ElementSet& o) const {
        ElementSet r(n_);
        for (size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & o.words_[i];
        return r;
    }
    ElementSet unite(const ElementSet& o) const {
        ElementSet r(n_);
        for (size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] | o.words_[i];
        return r;
    }
    ElementSet minus(const ElementSet& o) const {
        ElementSet r(n_);
        for (size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & ~o.words_[i];
        return r;
    }
    ElementSet with(uint32_t i) const {
        ElementSet r = *this;
        r.add(i);
        return r;
    }
    ElementSet without(uint32_t i) const {
        ElementSet r = *this;
        r.remove(i);
        return r;
    }

    bool operator==(const ElementSet& o) const { return n_ == o.n_ && words_ == o.words_; }
    bool operator!=(const ElementSet& o) const { return !(*this == o); }

    // Numeric order of the bitmask (element 0 is the lowest bit); used as the
    // deterministic tie-break for equal-value optima.
    bool numeric_less(const ElementSet& o) const {
        for (size_t i = words_.size(); i-- > 0;)
            if (words_[i] != o.words_[i]) return words_[i] < o.words_[i];
        return false;
    }

    template <typename F>
    void for_each(F&& f) const {
        for (size_t wi = 0; wi < words_.size(); ++wi) {
            uint64_t w = words_[wi];
            while (w) {
                uint32_t b = static_cast<uint32_t>(std::countr_zero(w));
                f(static_cast<uint32_t>(wi * 64 + b));
                w &= w - 1;
            }
        }
    }

    std::vector<uint32_t> indices() const {
        std::vector<uint32_t> out;
        out.reserve(size());
        for_each([&](uint32_t i) { out.push_back(i); });
        return out;
    }

    // Comma-separated indices; "-" for the empty set.
    std::string to_csv() const {
        if (empty()) return "-";
        std::ostringstream os;
        bool first = true;
        for_each([&](uint32_t i) {
            if (!first) os << ',';
            os << i;
            first = false;
        });
        return os.str();
    }

    static ElementSet from_csv(uint32_t n, const std::string& text) {
        ElementSet s(n);
        if (text == "-" || text.empty()) return s;
        std::istringstream is(text);
        std::string tok;
        while (std::getline(is, tok, ',')) s.add(static_cast<uint32_t>(std::stoul(tok)));
        return s;
    }

    uint64_t hash() const {
        uint64_t h = 0x811c9dc5ULL ^ n_;
        for (auto w : words_) {
            h ^= w;
            h *= 0x100000001b3ULL;
            h ^= h >> 29;
        }
        return h;
    }

    struct Hash {
        size_t operator()(const ElementSet& s) const { return static_cast<size_t>(s.hash()); }
    };

  private:
    void check_index(uint32_t i) const {
        if (i >= n_) throw std::out_of_range("element index out of range");
    }

    uint32_t n_;
    std::vector<uint64_t> words_;
};

}  // namespace ops
