// Tests for the instance verifier: report formatting, the individual
// structural / arithmetic / statistical checks, tamper detection, and the
// frozen measurements of the reference n = 12 instance.
#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "ops/ops.hpp"

using namespace ops;

namespace {

std::string val(const PropertyReport& rep, const std::string& key) {
    for (const auto& [k, v] : rep.values)
        if (k == key) return v;
    return "<missing:" + key + ">";
}

const PropertyReport& by_property(const std::vector<PropertyReport>& reports,
                                  const std::string& property) {
    for (const auto& r : reports)
        if (r.property == property) return r;
    throw std::runtime_error("no report named " + property);
}

HardInstance reference12() { return build_coverage_hard(12, 3, 2, 2, 4, 1, true); }

}  // namespace

TEST_CASE("report lines concatenate verdict, values and witness") {
    PropertyReport rep;
    rep.property = "demo";
    rep.verdict = "fail";
    rep.add("alpha", Rational(32, 45));
    rep.add("count", uint64_t(7));
    rep.witness = "S:1,2";
    CHECK(report_line(rep) == "property=demo verdict=fail alpha=32/45 count=7 witness=S:1,2");

    PropertyReport ok;
    ok.property = "other";
    ok.verdict = "pass";
    CHECK(report_line(ok) == "property=other verdict=pass");

    std::ostringstream os;
    render_reports({rep, ok}, os);
    CHECK(os.str() == report_line(rep) + "\n" + report_line(ok) + "\n");
    CHECK(any_failure({rep, ok}));
    CHECK_FALSE(any_failure({ok}));
}

TEST_CASE("structure check accepts built instances and rejects tampering") {
    HardInstance inst = reference12();
    CHECK(check_structure(inst).verdict == "pass");

    HardInstance dup = inst;
    dup.partition.part_ids[1][0] = dup.partition.part_ids[0][0];
    CHECK(check_structure(dup).verdict == "fail");

    HardInstance col = inst;
    col.mask_col[col.partition.mask_ids[0]] = col.sigma;  // out of range
    CHECK(check_structure(col).verdict == "fail");

    HardInstance idx = inst;
    idx.good_index = 2;
    CHECK(check_structure(idx).verdict == "fail");
}

TEST_CASE("weights residual detects corrupted coefficients") {
    HardInstance inst = reference12();
    CHECK(check_weights_residual(inst).verdict == "pass");
    HardInstance bad = inst;
    bad.weights.xs[1] += Rational(1, 100);
    auto rep = check_weights_residual(bad);
    CHECK(rep.verdict == "fail");
    CHECK_FALSE(rep.witness.empty());
}

TEST_CASE("local agreement detects corrupted graphs") {
    HardInstance inst = reference12();
    CHECK(check_local_agreement(inst).verdict == "pass");
    HardInstance bad = inst;
    bad.good_local.children[0].weight *= 2;
    CHECK(check_local_agreement(bad).verdict == "fail");
}

TEST_CASE("cp fidelity check passes for the ell = 2 primitives and honors budgets") {
    CHECK(check_zeta_symmetry(1, 5, 2).verdict == "pass");
    CHECK(check_zeta_symmetry(2, 5, 2).verdict == "pass");
    CHECK(check_zeta_symmetry(3, 7, 2).verdict == "pass");
    CHECK_THROWS_AS(check_zeta_symmetry(2, 5, 2, 10), BudgetError);
    CHECK_THROWS_AS(check_zeta_layer_symmetry(5, 2, 10), BudgetError);
}

TEST_CASE("identical-small runs exactly on n = 12 and counts agreement sets") {
    HardInstance inst = reference12();
    Rng rng(99);
    // t = 2 keeps every random draw inside the agreement range (a 2-subset
    // cannot put 3 elements into one part).
    auto rep = check_identical_small(inst, 2, 500, rng, 1e-3);
    CHECK(rep.verdict == "pass");
    CHECK(val(rep, "exact") == "yes");
    CHECK(val(rep, "exact_sets") == "3136");  // 7 * 7 size-<=2 part choices * 2^6 mask subsets
    CHECK(val(rep, "exact_mismatches") == "0");
    CHECK(val(rep, "differing_fraction") == "0");
}

TEST_CASE("identical-small statistical mode passes on a large closed instance") {
    HardInstance inst = build_coverage_hard(200, 5, 8, 3, 10, 7, false);
    Rng rng(7);
    auto rep = check_identical_small(inst, 10, 2000, rng, 1e-3);
    CHECK(rep.verdict == "pass");
    CHECK(val(rep, "exact") == "skipped");
}

TEST_CASE("masking saturates on large uniform draws") {
    HardInstance inst = build_coverage_hard(1000, 5, 8, 3, 10, 11, false);
    Rng rng(13);
    auto rep = check_masking_large(inst, 100, 2000, rng, 0.05);
    CHECK(rep.verdict == "pass");
}

TEST_CASE("gap measurements on the n = 12 reference are frozen") {
    HardInstance inst = reference12();
    GapResult gap = check_gap(inst);
    CHECK(gap.g_k == Rational(4));
    CHECK(gap.b_max == Rational(7, 2));
    CHECK(gap.mplus_max == Rational(45, 8));
    CHECK(gap.alpha == Rational(32, 45));
    CurvatureGapResult curv = check_curvature_gap(inst);
    CHECK(curv.beta == Rational(0));
    CHECK(curv.g_floor == Rational(2));
    CHECK(gap_bound(gap.alpha, curv.beta, inst.r) == Rational(45, 8));
}

TEST_CASE("gap bound formula picks the binding term") {
    CHECK(gap_bound(Rational(32, 45), Rational(0), 2) == Rational(45, 8));
    CHECK(gap_bound(Rational(2), Rational(0), 2) == Rational(2));
    CHECK(gap_bound(Rational(100), Rational(1, 2), 4) == Rational(1));
}

TEST_CASE("verify_instance reports all-pass with frozen values on n = 12") {
    HardInstance inst = reference12();
    VerifyConfig cfg;
    cfg.trials = 500;
    auto reports = verify_instance(inst, cfg);
    CHECK_FALSE(any_failure(reports));
    const auto& gap = by_property(reports, "gap");
    CHECK(val(gap, "alpha") == "32/45");
    CHECK(val(gap, "b_max") == "7/2");
    CHECK(val(gap, "mplus_max") == "45/8");
    CHECK(val(gap, "W") == "15/2");
    const auto& curv = by_property(reports, "curvature-gap");
    CHECK(val(curv, "beta") == "0");
    const auto& bound = by_property(reports, "gap-bound");
    CHECK(val(bound, "bound") == "45/8");
    // Both nonzero coefficients get their primitive checked.
    size_t zeta = 0;
    for (const auto& r : reports)
        if (r.property == "zeta-symmetry") {
            CHECK(r.verdict == "pass");
            ++zeta;
        }
    CHECK(zeta == 2);
}

TEST_CASE("verify_instance flags a tampered instance") {
    HardInstance bad = reference12();
    bad.weights.xs[0] = Rational(3, 7);
    VerifyConfig cfg;
    cfg.trials = 200;
    auto reports = verify_instance(bad, cfg);
    CHECK(any_failure(reports));
}

TEST_CASE("verify_instance degrades to measured reports under a tiny budget") {
    HardInstance inst = reference12();
    VerifyConfig cfg;
    cfg.trials = 200;
    cfg.budget = 20;
    auto reports = verify_instance(inst, cfg);
    CHECK_FALSE(any_failure(reports));
    // The n = 12 gap DP is cheap enough to survive even this budget; the
    // primitive fidelity checks and the exact enumeration are not.
    const auto& zeta = by_property(reports, "zeta-symmetry");
    CHECK(zeta.verdict == "measured");
    CHECK(val(zeta, "note") == "skipped-budget");
    const auto& ident = by_property(reports, "identical-small");
    CHECK(val(ident, "exact") == "skipped");
}

TEST_CASE("submodular instance verifies cleanly") {
    HardInstance inst = build_submodular_hard(16, 1, 2, 5);
    VerifyConfig cfg;
    cfg.trials = 500;
    auto reports = verify_instance(inst, cfg);
    CHECK_FALSE(any_failure(reports));
    GapResult gap = check_gap(inst);
    CHECK(gap.g_k == Rational(1));
    CHECK(gap.b_max == Rational(1));
    CHECK(gap.mplus_max == Rational(1, 2));
    CHECK(gap.alpha == Rational(1));
    CHECK(gap_bound(gap.alpha, check_curvature_gap(inst).beta, inst.r) == Rational(4));
}
