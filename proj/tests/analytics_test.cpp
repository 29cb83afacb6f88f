#include <doctest.h>

#include <cmath>

#include "fpb/analytics.hpp"

using namespace fpb;

namespace {

std::vector<double> pe_grid() {
    std::vector<double> g;
    for (int i = 0; i <= 33; ++i) g.push_back(0.01 * i);
    g.push_back(1.0 / 3.0);
    return g;
}

double max_diff(const JointDistribution& a, const JointDistribution& b) {
    REQUIRE(a.level() == b.level());
    double mx = 0.0;
    for (int i = 0; i < a.size(); ++i) {
        mx = std::max(mx, std::abs(a.probs()[static_cast<size_t>(i)] -
                                   b.probs()[static_cast<size_t>(i)]));
    }
    return mx;
}

// Test-local oracle: aggregate a state-level table to bits with the
// encodings written out explicitly, independent of to_bits().
JointDistribution aggregate_oracle(const JointDistribution& state) {
    std::vector<double> bits(JointDistribution::kBitCells, 0.0);
    struct Row {
        Bb84Symbol a;
        Bb84Symbol b;
        int eve;  // 0 = decodes Plus, 1 = decodes Minus, 2 = inc
    };
    auto bit = [](Bb84Symbol s) {
        return (s == Bb84Symbol::H || s == Bb84Symbol::P45) ? 0 : 1;
    };
    for (Bb84Symbol a : {Bb84Symbol::H, Bb84Symbol::V, Bb84Symbol::P45,
                         Bb84Symbol::M45}) {
        bool hv = a == Bb84Symbol::H || a == Bb84Symbol::V;
        Bb84Symbol b0 = hv ? Bb84Symbol::H : Bb84Symbol::P45;
        Bb84Symbol b1 = hv ? Bb84Symbol::V : Bb84Symbol::M45;
        Bb84Symbol plus_sym = hv ? Bb84Symbol::V : Bb84Symbol::P45;
        Bb84Symbol minus_sym = hv ? Bb84Symbol::H : Bb84Symbol::M45;
        for (Bb84Symbol b : {b0, b1}) {
            for (int e = 0; e < 3; ++e) {
                int eb = e == 2 ? 2 : bit(e == 0 ? plus_sym : minus_sym);
                std::optional<Bb84Symbol> eve_sym;
                if (e == 0) eve_sym = plus_sym;
                if (e == 1) eve_sym = minus_sym;
                bits[static_cast<size_t>(
                    JointDistribution::bit_index(bit(a), bit(b), eb))] +=
                    state.at_state(a, b, eve_sym);
            }
        }
    }
    return JointDistribution(Level::Bit, std::move(bits));
}

}  // namespace

TEST_CASE("projective-probe Renyi information closed form") {
    CHECK(std::abs(renyi_projective(0.0)) < kTol);
    CHECK(std::abs(renyi_projective(1.0 / 3.0) - 1.0) < kTol);
    CHECK(renyi_projective(0.2) ==
          doctest::Approx(std::log2(1.75)).epsilon(1e-14));
    CHECK_THROWS_AS(renyi_projective(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(renyi_projective(0.51), std::invalid_argument);
}

TEST_CASE("conclusive-probe Renyi information closed form") {
    CHECK(std::abs(renyi_povm(0.0)) < kTol);
    CHECK(std::abs(renyi_povm(1.0 / 3.0) - 1.0) < kTol);
    CHECK(renyi_povm(0.2) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS_AS(renyi_povm(0.4), std::invalid_argument);
}

TEST_CASE("state-level table entries") {
    double pe = 0.15;
    JointDistribution t = table1(pe);
    CHECK(t.at_state(Bb84Symbol::H, Bb84Symbol::H, Bb84Symbol::H) ==
          doctest::Approx(pe / 2.0));
    CHECK(t.at_state(Bb84Symbol::H, Bb84Symbol::H, Bb84Symbol::V) == 0.0);
    CHECK(t.at_state(Bb84Symbol::H, Bb84Symbol::V, Bb84Symbol::H) ==
          doctest::Approx(pe / 8.0));
    CHECK(t.at_state(Bb84Symbol::H, Bb84Symbol::H, std::nullopt) ==
          doctest::Approx((1.0 - 3.0 * pe) / 4.0));
    CHECK(std::abs(t.total() - 1.0) < kTol);
    CHECK_THROWS_AS(table1(0.35), std::invalid_argument);
}

TEST_CASE("eight structural zeros for all interior pe") {
    for (double pe : {0.01, 0.1, 0.2, 0.3, 0.33}) {
        JointDistribution t = table1(pe);
        int zeros = 0;
        for (double v : t.probs()) {
            if (v == 0.0) ++zeros;
        }
        CHECK(zeros == 8);
    }
}

TEST_CASE("bit-level table entries") {
    double pe = 0.2;
    JointDistribution t = table2(pe);
    CHECK(t.at_bit(0, 0, 0) == doctest::Approx(pe));
    CHECK(t.at_bit(0, 0, 1) == 0.0);
    CHECK(t.at_bit(0, 0, JointDistribution::kEveInc) ==
          doctest::Approx((1.0 - 3.0 * pe) / 2.0));
    CHECK(t.at_bit(0, 1, 0) == doctest::Approx(pe / 4.0));
    CHECK(std::abs(t.total() - 1.0) < kTol);
    // Marginal Pr(a = 0) = 1/2.
    double pa0 = 0.0;
    for (int b = 0; b < 2; ++b)
        for (int e = 0; e < 3; ++e) pa0 += t.at_bit(0, b, e);
    CHECK(pa0 == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("bit table equals the encoding aggregation of the state table") {
    for (double pe : {0.0, 0.25, 1.0 / 3.0}) {
        CHECK(max_diff(aggregate_oracle(table1(pe)), table2(pe)) < kTol);
        CHECK(max_diff(table1(pe).to_bits(), table2(pe)) < kTol);
    }
}

TEST_CASE("Born-rule oracle reproduces the state table") {
    for (double pe : pe_grid()) {
        CHECK(max_diff(joint_from_model(pe, ProbeKind::Povm), table1(pe)) < kTol);
    }
}

TEST_CASE("Born-rule oracle at pe = 0") {
    JointDistribution d = joint_from_model(0.0, ProbeKind::Povm);
    CHECK(d.at_state(Bb84Symbol::H, Bb84Symbol::H, std::nullopt) ==
          doctest::Approx(0.25).epsilon(1e-13));
    CHECK(std::abs(error_prob(d)) < kTol);
}

TEST_CASE("projective-probe model distribution has error probability pe") {
    for (double pe : pe_grid()) {
        JointDistribution d = joint_from_model(pe, ProbeKind::Projective);
        CHECK(std::abs(error_prob(d) - pe) < kTol);
        CHECK(std::abs(inconclusive_prob(d)) < kTol);
        CHECK(std::abs(d.total() - 1.0) < kTol);
    }
}

TEST_CASE("Renyi information from joint distributions") {
    for (double pe : pe_grid()) {
        CHECK(std::abs(renyi_from_joint(table2(pe)) - renyi_povm(pe)) < kTol);
        CHECK(std::abs(renyi_from_joint(joint_from_model(pe, ProbeKind::Projective)) -
                       renyi_projective(pe)) < kTol);
    }

    // Perfectly correlated e = b: one full bit.
    std::vector<double> corr(JointDistribution::kBitCells, 0.0);
    corr[static_cast<size_t>(JointDistribution::bit_index(0, 0, 0))] = 0.5;
    corr[static_cast<size_t>(JointDistribution::bit_index(1, 1, 1))] = 0.5;
    CHECK(std::abs(renyi_from_joint(JointDistribution(Level::Bit, corr)) - 1.0) <
          kTol);

    // e independent of b: zero bits.
    std::vector<double> indep(JointDistribution::kBitCells, 0.0);
    for (int a = 0; a < 2; ++a)
        for (int e = 0; e < 2; ++e)
            indep[static_cast<size_t>(JointDistribution::bit_index(a, a, e))] = 0.25;
    CHECK(std::abs(renyi_from_joint(JointDistribution(Level::Bit, indep))) < kTol);

    // Degenerate Pr(b = a) = 0.
    std::vector<double> bad(JointDistribution::kBitCells, 0.0);
    bad[static_cast<size_t>(JointDistribution::bit_index(0, 1, 0))] = 1.0;
    CHECK_THROWS_AS(renyi_from_joint(JointDistribution(Level::Bit, bad)),
                    std::invalid_argument);
}

TEST_CASE("error and inconclusive marginals") {
    CHECK(error_prob(table2(0.2)) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(inconclusive_prob(table2(0.2)) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(std::abs(inconclusive_prob(table2(1.0 / 3.0))) < kTol);
}

TEST_CASE("conditioning on a conclusive outcome") {
    for (double pe : pe_grid()) {
        if (pe <= 0.0) continue;
        JointDistribution cond = condition_on_conclusive(table2(pe));
        CHECK(std::abs(cond.total() - 1.0) < kTol);
        CHECK(std::abs(error_prob(cond) - 1.0 / 3.0) < kTol);
        CHECK(std::abs(renyi_from_joint(cond) - 1.0) < kTol);
        // Pr(e = 0 | e != inc, b = a) = 1/2.
        double agree = 0.0, e0 = 0.0;
        for (int a = 0; a < 2; ++a) {
            for (int e = 0; e < 2; ++e) agree += cond.at_bit(a, a, e);
            e0 += cond.at_bit(a, a, 0);
        }
        CHECK(std::abs(e0 / agree - 0.5) < kTol);
    }
    CHECK_THROWS_AS(condition_on_conclusive(table2(0.0)), std::invalid_argument);
}

TEST_CASE("lossy scenario analytics") {
    LossyScenario s = lossy_scenario(0.3);
    CHECK(s.pe == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(s.forwarded_fraction == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(s.error_given_conclusive == doctest::Approx(1.0 / 3.0));
    CHECK(s.renyi_conditional == 1.0);

    LossyScenario full = lossy_scenario(1.0);
    CHECK(full.pe == doctest::Approx(1.0 / 3.0));
    CHECK(std::abs(inconclusive_prob(table2(full.pe))) < kTol);

    CHECK_THROWS_AS(lossy_scenario(0.0), std::invalid_argument);
    CHECK_THROWS_AS(lossy_scenario(1.1), std::invalid_argument);
}

TEST_CASE("projective information dominates the POVM strictly inside") {
    for (double pe : pe_grid()) {
        if (pe <= 0.0 || pe >= 1.0 / 3.0) continue;
        CHECK(renyi_projective(pe) > renyi_povm(pe));
    }
    CHECK(std::abs(renyi_projective(0.0) - renyi_povm(0.0)) < kTol);
    CHECK(std::abs(renyi_projective(1.0 / 3.0) - renyi_povm(1.0 / 3.0)) < kTol);
}

TEST_CASE("probe report summaries") {
    ProbeReport povm = probe_report(0.2, ProbeKind::Povm);
    CHECK(povm.renyi_bits == doctest::Approx(0.5));
    CHECK(povm.error_prob == doctest::Approx(0.2));
    REQUIRE(povm.inconclusive_prob.has_value());
    CHECK(*povm.inconclusive_prob == doctest::Approx(0.4));
    REQUIRE(povm.conditional_error_given_conclusive.has_value());
    CHECK(*povm.conditional_error_given_conclusive == doctest::Approx(1.0 / 3.0));

    ProbeReport proj = probe_report(0.2, ProbeKind::Projective);
    CHECK(proj.renyi_bits == doctest::Approx(std::log2(1.75)));
    CHECK(proj.error_prob == doctest::Approx(0.2));
    CHECK_FALSE(proj.inconclusive_prob.has_value());
}
