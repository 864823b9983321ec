#pragma once

#include "ops/element_set.hpp"
#include "ops/rational.hpp"
#include "ops/rng.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ops {

// Independent inclusion per element, marginal p_i for element i.
struct ProductDist {
    std::vector<Rational> marginals;
};

// Uniform over all subsets of exactly `size` elements.
struct UniformSizeDist {
    uint32_t size = 0;
};

using SimpleDist = std::variant<ProductDist, UniformSizeDist>;

struct MixtureComponent {
    Rational weight;
    SimpleDist dist;
};

struct MixtureDist {
    std::vector<MixtureComponent> components;
};

// Subset distribution over a ground set of size n. `tag` preserves the
// canonical descriptor spelling for derived families (dsub).
class SubsetDistribution {
  public:
    SubsetDistribution(uint32_t n, ProductDist d) : n_(n), dist_(std::move(d)) { validate(); }
    SubsetDistribution(uint32_t n, UniformSizeDist d) : n_(n), dist_(d) { validate(); }
    SubsetDistribution(uint32_t n, MixtureDist d, std::string tag = "")
        : n_(n), dist_(std::move(d)), tag_(std::move(tag)) {
        validate();
    }

    uint32_t n() const { return n_; }

    const std::variant<ProductDist, UniformSizeDist, MixtureDist>& node() const { return dist_; }

    std::string descriptor() const {
        if (!tag_.empty()) return tag_;
        return std::visit([&](const auto& d) { return describe(d); }, dist_);
    }

    ElementSet sample(Rng& rng, std::vector<uint32_t>& scratch,
                      std::vector<uint32_t>& picks) const {
        return std::visit([&](const auto& d) { return draw(d, rng, scratch, picks); }, dist_);
    }

    ElementSet sample(Rng& rng) const {
        std::vector<uint32_t> scratch, picks;
        return sample(rng, scratch, picks);
    }

  private:
    void validate() const {
        if (n_ == 0) throw std::invalid_argument("distribution over empty ground set");
        std::visit([&](const auto& d) { check(d); }, dist_);
    }
    void check(const ProductDist& d) const {
        if (d.marginals.size() != n_)
            throw std::invalid_argument("product distribution: marginal count mismatch");
        for (const auto& p : d.marginals)
            if (p < 0 || p > 1) throw std::invalid_argument("product marginal outside [0,1]");
    }
    void check(const UniformSizeDist& d) const {
        if (d.size > n_) throw std::invalid_argument("uniform-size distribution: size > n");
    }
    void check(const MixtureDist& d) const {
        if (d.components.empty()) throw std::invalid_argument("empty mixture");
        Rational total = 0;
        for (const auto& c : d.components) {
            if (c.weight <= 0) throw std::invalid_argument("mixture weight must be positive");
            total += c.weight;
            std::visit([&](const auto& s) { check(s); }, c.dist);
        }
        if (total != 1) throw std::invalid_argument("mixture weights must sum to 1");
    }

    std::string describe(const ProductDist& d) const {
        bool all_equal =
            std::all_of(d.marginals.begin(), d.marginals.end(),
                        [&](const Rational& p) { return p == d.marginals.front(); });
        std::ostringstream os;
        os << "product:";
        if (all_equal) {
            os << format_rational(d.marginals.front());
        } else {
            for (size_t i = 0; i < d.marginals.size(); ++i) {
                if (i) os << ',';
                os << format_rational(d.marginals[i]);
            }
        }
        return os.str();
    }
    std::string describe(const UniformSizeDist& d) const {
        return "usize:" + std::to_string(d.size);
    }
    std::string describe(const MixtureDist& d) const {
        std::ostringstream os;
        os << "mix:";
        for (size_t i = 0; i < d.components.size(); ++i) {
            if (i) os << ';';
            os << format_rational(d.components[i].weight) << '*'
               << std::visit([&](const auto& s) { return describe(s); }, d.components[i].dist);
        }
        return os.str();
    }

    ElementSet draw(const ProductDist& d, Rng& rng, std::vector<uint32_t>&,
                    std::vector<uint32_t>&) const {
        ElementSet s(n_);
        for (uint32_t i = 0; i < n_; ++i)
            if (rng.bernoulli(d.marginals[i])) s.add(i);
        return s;
    }
    ElementSet draw(const UniformSizeDist& d, Rng& rng, std::vector<uint32_t>& scratch,
                    std::vector<uint32_t>& picks) const {
        rng.sample_indices(n_, d.size, scratch, picks);
        return ElementSet::of(n_, picks);
    }
    ElementSet draw(const MixtureDist& d, Rng& rng, std::vector<uint32_t>& scratch,
                    std::vector<uint32_t>& picks) const {
        // Exact component pick: u/2^64 against cumulative weights.
        const uint64_t u = rng.next_u64();
        Rational cum = 0;
        for (size_t i = 0; i + 1 < d.components.size(); ++i) {
            cum += d.components[i].weight;
            if (BigInt(u) * denominator(cum) < numerator(cum) << 64)
                return std::visit(
                    [&](const auto& s) { return draw(s, rng, scratch, picks); },
                    d.components[i].dist);
        }
        return std::visit([&](const auto& s) { return draw(s, rng, scratch, picks); },
                          d.components.back().dist);
    }

    uint32_t n_;
    std::variant<ProductDist, UniformSizeDist, MixtureDist> dist_;
    std::string tag_;
};

inline SubsetDistribution make_product(uint32_t n, Rational p) {
    return SubsetDistribution(n, ProductDist{std::vector<Rational>(n, std::move(p))});
}

inline SubsetDistribution make_product(std::vector<Rational> marginals) {
    auto n = static_cast<uint32_t>(marginals.size());
    return SubsetDistribution(n, ProductDist{std::move(marginals)});
}

inline SubsetDistribution make_uniform_size(uint32_t n, uint32_t size) {
    return SubsetDistribution(n, UniformSizeDist{size});
}

// Equal-weight mixture of the uniform distributions over sizes k, isqrt(n),
// and isqrt(n)+1.
inline SubsetDistribution make_dsub(uint32_t n, uint32_t k) {
    auto s = static_cast<uint32_t>(integer_sqrt(n));
    if (k > n || s + 1 > n) throw std::invalid_argument("dsub: sizes exceed ground set");
    MixtureDist mix;
    Rational third(1, 3);
    mix.components.push_back({third, UniformSizeDist{k}});
    mix.components.push_back({third, UniformSizeDist{s}});
    mix.components.push_back({third, UniformSizeDist{s + 1}});
    return SubsetDistribution(n, std::move(mix), "dsub:" + std::to_string(k));
}

namespace detail {
inline SimpleDist parse_simple_dist(const std::string& text, uint32_t n) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("bad distribution descriptor: " + text);
    std::string head = text.substr(0, colon), body = text.substr(colon + 1);
    if (head == "product") {
        std::vector<Rational> ps;
        std::istringstream is(body);
        std::string tok;
        while (std::getline(is, tok, ',')) ps.push_back(parse_rational(tok));
        if (ps.size() == 1) ps.assign(n, ps.front());
        if (ps.size() != n)
            throw std::invalid_argument("product descriptor: expected 1 or n marginals");
        return ProductDist{std::move(ps)};
    }
    if (head == "usize") return UniformSizeDist{static_cast<uint32_t>(std::stoul(body))};
    throw std::invalid_argument("unknown distribution family: " + head);
}
}  // namespace detail

// Grammar: product:<p>|<p1,..,pn>  usize:<i>  dsub:<k>
//          mix:<w1>*<simple>;<w2>*<simple>;...   (components must be simple)
inline SubsetDistribution parse_distribution(const std::string& text, uint32_t n) {
    if (text.rfind("dsub:", 0) == 0)
        return make_dsub(n, static_cast<uint32_t>(std::stoul(text.substr(5))));
    if (text.rfind("mix:", 0) == 0) {
        MixtureDist mix;
        std::istringstream is(text.substr(4));
        std::string part;
        while (std::getline(is, part, ';')) {
            auto star = part.find('*');
            if (star == std::string::npos)
                throw std::invalid_argument("mixture component needs w*dist: " + part);
            MixtureComponent c;
            c.weight = parse_rational(part.substr(0, star));
            c.dist = detail::parse_simple_dist(part.substr(star + 1), n);
            mix.components.push_back(std::move(c));
        }
        return SubsetDistribution(n, std::move(mix));
    }
    return std::visit(
        [&](auto d) { return SubsetDistribution(n, std::move(d)); },
        detail::parse_simple_dist(text, n));
}

}  // namespace ops
