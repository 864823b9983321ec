#pragma once

#include "ops/coverage.hpp"
#include "ops/element_set.hpp"
#include "ops/rational.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ops {

enum class FnKind {
    Additive,
    UnitDemand,
    CoverageGraphFn,
    SymmetricClosedForm,
    HardInstanceFn,
    Composite,
};

// Immutable set function over a fixed ground set. Evaluation is pure, so one
// instance can be shared freely across threads and memo caches.
class SetFunction {
  public:
    SetFunction() = default;
    SetFunction(uint32_t n, FnKind kind, std::string descriptor,
                std::function<Rational(const ElementSet&)> eval)
        : n_(n), kind_(kind), descriptor_(std::move(descriptor)), eval_(std::move(eval)) {}

    uint32_t n() const { return n_; }
    FnKind kind() const { return kind_; }
    const std::string& descriptor() const { return descriptor_; }
    bool valid() const { return static_cast<bool>(eval_); }

    Rational operator()(const ElementSet& s) const {
        if (s.ground_size() != n_)
            throw std::invalid_argument("set function: dimension mismatch (" +
                                        std::to_string(s.ground_size()) + " vs " +
                                        std::to_string(n_) + ")");
        return eval_(s);
    }

  private:
    uint32_t n_ = 0;
    FnKind kind_ = FnKind::Additive;
    std::string descriptor_;
    std::function<Rational(const ElementSet&)> eval_;
};

inline Rational marginal_contribution(const SetFunction& f, const ElementSet& s, uint32_t e) {
    if (s.test(e)) return Rational(0);
    return f(s.with(e)) - f(s);
}

namespace detail {
inline std::string join_rationals(const std::vector<Rational>& v) {
    std::ostringstream os;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << format_rational(v[i]);
    }
    return os.str();
}
}  // namespace detail

inline SetFunction make_additive(std::vector<Rational> values) {
    auto n = static_cast<uint32_t>(values.size());
    auto vals = std::make_shared<std::vector<Rational>>(std::move(values));
    return SetFunction(n, FnKind::Additive, "additive:" + detail::join_rationals(*vals),
                       [vals](const ElementSet& s) {
                           Rational total = 0;
                           s.for_each([&](uint32_t i) { total += (*vals)[i]; });
                           return total;
                       });
}

inline SetFunction make_unit_demand(std::vector<Rational> values) {
    auto n = static_cast<uint32_t>(values.size());
    auto vals = std::make_shared<std::vector<Rational>>(std::move(values));
    return SetFunction(n, FnKind::UnitDemand, "unitdemand:" + detail::join_rationals(*vals),
                       [vals](const ElementSet& s) {
                           Rational best = 0;
                           s.for_each([&](uint32_t i) {
                               if ((*vals)[i] > best) best = (*vals)[i];
                           });
                           return best;
                       });
}

// values_by_size[y] is the value of any set of size y; f(S) = values_by_size[|S|].
inline SetFunction make_symmetric(uint32_t n, std::vector<Rational> values_by_size,
                                  std::string label = "symmetric") {
    if (values_by_size.size() != n + 1)
        throw std::invalid_argument("symmetric function needs n+1 size values");
    if (values_by_size[0] != 0) throw std::invalid_argument("symmetric function: f(empty) != 0");
    auto vals = std::make_shared<std::vector<Rational>>(std::move(values_by_size));
    return SetFunction(n, FnKind::SymmetricClosedForm, std::move(label),
                       [vals](const ElementSet& s) { return (*vals)[s.size()]; });
}

inline SetFunction make_coverage(CoverageGraph graph, std::string label = "") {
    graph.validate();
    auto g = std::make_shared<CoverageGraph>(std::move(graph));
    if (label.empty()) label = "coverage:" + std::to_string(g->children.size()) + "-children";
    return SetFunction(g->n, FnKind::CoverageGraphFn, std::move(label),
                       [g](const ElementSet& s) { return g->value(s); });
}

// Weighted sum of component functions over the same ground set.
inline SetFunction make_composite(std::vector<SetFunction> parts,
                                  std::vector<Rational> coefficients = {},
                                  std::string label = "composite") {
    if (parts.empty()) throw std::invalid_argument("composite of zero parts");
    if (coefficients.empty()) coefficients.assign(parts.size(), Rational(1));
    if (coefficients.size() != parts.size())
        throw std::invalid_argument("composite: coefficient count mismatch");
    uint32_t n = parts[0].n();
    for (const auto& p : parts)
        if (p.n() != n) throw std::invalid_argument("composite: mixed ground sizes");
    auto ps = std::make_shared<std::vector<SetFunction>>(std::move(parts));
    auto cs = std::make_shared<std::vector<Rational>>(std::move(coefficients));
    return SetFunction(n, FnKind::Composite, std::move(label), [ps, cs](const ElementSet& s) {
        Rational total = 0;
        for (size_t i = 0; i < ps->size(); ++i) total += (*cs)[i] * (*ps)[i](s);
        return total;
    });
}

}  // namespace ops
