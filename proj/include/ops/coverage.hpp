#pragma once

#include "ops/element_set.hpp"
#include "ops/rational.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ops {

// Weighted bipartite element-child graph. The value of a set S is the total
// weight of children adjacent to at least one element of S.
struct CoverageChild {
    Rational weight;
    ElementSet parents;
};

struct CoverageGraph {
    uint32_t n = 0;
    std::vector<CoverageChild> children;

    Rational value(const ElementSet& s) const {
        if (s.ground_size() != n) throw std::invalid_argument("coverage: dimension mismatch");
        Rational total = 0;
        for (const auto& c : children)
            if (c.parents.intersects(s)) total += c.weight;
        return total;
    }

    Rational total_weight() const {
        Rational total = 0;
        for (const auto& c : children) total += c.weight;
        return total;
    }

    void validate() const {
        for (const auto& c : children) {
            if (c.weight < 0) throw std::invalid_argument("coverage: negative child weight");
            if (c.parents.ground_size() != n)
                throw std::invalid_argument("coverage: child parent set has wrong dimension");
        }
    }
};

// Text format:
//   coverage n=<n> children=<m>
//   w=<num>/<den> parents=<i1,i2,...>     (one line per child; den omitted when 1)
inline void write_coverage(std::ostream& os, const CoverageGraph& g) {
    os << "coverage n=" << g.n << " children=" << g.children.size() << "\n";
    for (const auto& c : g.children)
        os << "w=" << format_rational(c.weight) << " parents=" << c.parents.to_csv() << "\n";
}

namespace detail {
inline std::string expect_key(const std::string& token, const std::string& key) {
    if (token.rfind(key + "=", 0) != 0)
        throw std::invalid_argument("expected '" + key + "=...', got '" + token + "'");
    return token.substr(key.size() + 1);
}
}  // namespace detail

inline CoverageGraph read_coverage(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("coverage: empty input");
    std::istringstream hs(line);
    std::string magic, ntok, mtok;
    hs >> magic >> ntok >> mtok;
    if (magic != "coverage") throw std::invalid_argument("coverage: bad header");
    CoverageGraph g;
    g.n = static_cast<uint32_t>(std::stoul(detail::expect_key(ntok, "n")));
    size_t m = std::stoul(detail::expect_key(mtok, "children"));
    g.children.reserve(m);
    for (size_t i = 0; i < m; ++i) {
        if (!std::getline(is, line)) throw std::invalid_argument("coverage: truncated child list");
        std::istringstream ls(line);
        std::string wtok, ptok;
        ls >> wtok >> ptok;
        CoverageChild c;
        c.weight = parse_rational(detail::expect_key(wtok, "w"));
        c.parents = ElementSet::from_csv(g.n, detail::expect_key(ptok, "parents"));
        g.children.push_back(std::move(c));
    }
    g.validate();
    return g;
}

inline void write_coverage_file(const std::string& path, const CoverageGraph& g) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_coverage(os, g);
}

inline CoverageGraph read_coverage_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    return read_coverage(is);
}

}  // namespace ops
