#include "ops/coverage.hpp"
#include "ops/oracles.hpp"
#include "ops/set_function.hpp"

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

using namespace ops;

namespace {
ElementSet bits(uint32_t n, std::initializer_list<uint32_t> idx) {
    ElementSet s(n);
    for (uint32_t i : idx) s.add(i);
    return s;
}
}  // namespace

TEST_CASE("additive and unit-demand evaluation") {
    auto add = make_additive({Rational(1), Rational(2), Rational(-3), Rational(1, 2)});
    CHECK(add(ElementSet(4)) == 0);
    CHECK(add(bits(4, {0, 1})) == 3);
    CHECK(add(bits(4, {1, 2, 3})) == Rational(-1, 2));
    CHECK(marginal_contribution(add, bits(4, {0}), 2) == -3);
    CHECK_THROWS(add(ElementSet(5)));

    auto ud = make_unit_demand({Rational(5), Rational(1), Rational(2)});
    CHECK(ud(ElementSet(3)) == 0);
    CHECK(ud(bits(3, {1})) == 1);
    CHECK(ud(bits(3, {1, 2})) == 2);
    CHECK(ud(bits(3, {0, 1, 2})) == 5);
}

TEST_CASE("symmetric set functions are size-driven") {
    // values_by_size[s] is the value of any size-s set, with f(empty) = 0.
    auto sym = make_symmetric(4, {Rational(0), Rational(1), Rational(4), Rational(9), Rational(16)});
    CHECK(sym(bits(4, {2})) == 1);
    CHECK(sym(bits(4, {0, 3})) == 4);
    CHECK(sym(ElementSet::full(4)) == 16);
    CHECK_THROWS(make_symmetric(2, {Rational(1), Rational(1), Rational(1)}));
}

TEST_CASE("coverage graph evaluation and io") {
    CoverageGraph g;
    g.n = 4;
    g.children.push_back({Rational(2), bits(4, {0, 1})});
    g.children.push_back({Rational(1, 2), bits(4, {2})});
    g.children.push_back({Rational(3), bits(4, {1, 3})});
    CHECK(g.total_weight() == Rational(11, 2));
    CHECK(g.value(ElementSet(4)) == 0);
    CHECK(g.value(bits(4, {1})) == 5);
    CHECK(g.value(bits(4, {2})) == Rational(1, 2));
    CHECK(g.value(ElementSet::full(4)) == Rational(11, 2));

    std::ostringstream os;
    write_coverage(os, g);
    std::istringstream is(os.str());
    CoverageGraph back = read_coverage(is);
    CHECK(back.n == g.n);
    REQUIRE(back.children.size() == g.children.size());
    for (size_t i = 0; i < g.children.size(); ++i) {
        CHECK(back.children[i].weight == g.children[i].weight);
        CHECK(back.children[i].parents == g.children[i].parents);
    }

    CoverageGraph bad;
    bad.n = 2;
    bad.children.push_back({Rational(-1), bits(2, {0})});
    CHECK_THROWS(bad.validate());
}

TEST_CASE("composite functions sum weighted parts") {
    auto f = make_composite(
        {make_additive({Rational(1), Rational(1)}), make_unit_demand({Rational(2), Rational(4)})},
        {Rational(1), Rational(1, 2)}, "combo");
    CHECK(f(bits(2, {0})) == Rational(2));       // 1 + 2/2
    CHECK(f(bits(2, {0, 1})) == Rational(4));    // 2 + 4/2
    CHECK(f.descriptor() == "combo");
}

TEST_CASE("brute force optimum enumerates sizes up to k") {
    auto add = make_additive({Rational(3), Rational(1), Rational(4), Rational(1), Rational(5)});
    OptResult r = brute_force_opt(add, 2);
    CHECK(r.value == 9);
    CHECK(r.argmax == bits(5, {2, 4}));

    // Ties resolve to the numerically smallest bitmask.
    auto flat = make_additive(std::vector<Rational>(4, Rational(1)));
    OptResult tie = brute_force_opt(flat, 2);
    CHECK(tie.value == 2);
    CHECK(tie.argmax == ElementSet::from_mask(4, 0b0011));

    // A negative-weight element is never worth taking.
    auto mixed = make_additive({Rational(2), Rational(-1)});
    CHECK(brute_force_opt(mixed, 2).argmax == bits(2, {0}));

    CHECK_THROWS_AS(brute_force_opt(flat, 2, /*budget=*/3), BudgetError);
}

TEST_CASE("greedy oracle picks best marginals and stops early") {
    auto add = make_additive({Rational(3), Rational(1), Rational(4), Rational(1), Rational(5)});
    GreedyResult g = greedy_oracle(add, 3);
    CHECK(g.value == 12);
    CHECK(g.picks == std::vector<uint32_t>{4, 2, 0});

    auto negatives = make_additive({Rational(-1), Rational(-2)});
    GreedyResult stopped = greedy_oracle(negatives, 2);
    CHECK(stopped.set.empty());
    CHECK(stopped.value == 0);

    // Ties go to the smallest index.
    auto flat = make_additive(std::vector<Rational>(3, Rational(1)));
    CHECK(greedy_oracle(flat, 2).picks == std::vector<uint32_t>{0, 1});
}

TEST_CASE("value tables, monotonicity and submodularity oracles") {
    auto add = make_additive({Rational(1), Rational(2)});
    auto table = build_value_table(add);
    REQUIRE(table.size() == 4);
    CHECK(table[0b11] == 3);

    CHECK_FALSE(check_monotone(add).has_value());
    auto bad = make_additive({Rational(-1), Rational(2)});
    auto w = check_monotone(bad);
    REQUIRE(w.has_value());
    CHECK(w->set == ElementSet(2));
    CHECK(w->element == 0);

    CHECK_FALSE(check_submodular(add).has_value());
    CHECK_FALSE(check_submodular(make_unit_demand({Rational(3), Rational(1)})).has_value());

    // Size-squared grows superadditively: not submodular.
    auto sq = make_symmetric(4, {Rational(0), Rational(1), Rational(4), Rational(9), Rational(16)});
    CHECK(check_submodular(sq).has_value());
    CHECK_FALSE(check_monotone(sq).has_value());
}

TEST_CASE("curvature is exact on known families") {
    auto add = make_additive(std::vector<Rational>(5, Rational(2)));
    CHECK(curvature(add) == 0);

    auto ud = make_unit_demand(std::vector<Rational>(4, Rational(3)));
    CHECK(curvature(ud) == 1);

    CHECK(curvature(test_helpers::make_group_bonus(14, Rational(3, 7))) == Rational(3, 10));
    CHECK(curvature(test_helpers::make_group_bonus(14, Rational(3, 2))) == Rational(3, 5));
    CHECK(curvature(test_helpers::make_group_bonus(14, Rational(0))) == 0);

    auto nonmono = make_additive({Rational(-1)});
    CHECK_THROWS(curvature(nonmono));
    auto zero_single = make_additive({Rational(0), Rational(1)});
    CHECK_THROWS(curvature(zero_single));
}

TEST_CASE("group bonus family is monotone and submodular") {
    auto f = test_helpers::make_group_bonus(14, Rational(3, 7));
    CHECK_FALSE(check_monotone(f).has_value());
    CHECK_FALSE(check_submodular(f).has_value());
}
