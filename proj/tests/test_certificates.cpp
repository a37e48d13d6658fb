#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hardy/certificates.hpp"

using namespace hardy;

namespace {

CertifyConfig light_config() {
    CertifyConfig c;
    c.weak_family_size = 12;
    c.lp_family_size = 12;
    c.campanato_family_size = 8;
    return c;
}

// Γ-function form of β B(a, β), kept apart from beta_function's lgamma route.
double beta_times_B(double a, double b) { return b * std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b); }

// ‖H f_A‖₂ / ‖f_A‖₂ for f_A = x^{-1/2} on [1, A], worked out by hand:
// ‖f_A‖₂² = ln A and ‖H f_A‖₂² = 4 (ln A - 2 + 2/√A).
double hardy_truncated_ratio_p2(double A) {
    const double L = std::log(A);
    return 2.0 * std::sqrt((L - 2.0 + 2.0 / std::sqrt(A)) / L);
}

}  // namespace

TEST(SharpConstant, HardyValues) {
    EXPECT_DOUBLE_EQ(sharp_constant(make_claim(ClaimId::HardyLp, {{"p", 2}})), 2.0);
    EXPECT_DOUBLE_EQ(sharp_constant(make_claim(ClaimId::HardyNdLp, {{"n", 2}, {"p", 3}})), 1.5);
    EXPECT_TRUE(std::isinf(sharp_constant(make_claim(ClaimId::HardyLp, {{"p", 1}}))));
    EXPECT_DOUBLE_EQ(sharp_constant(make_claim(ClaimId::HardyLp, {{"p", kInf}})), 1.0);
    EXPECT_DOUBLE_EQ(sharp_constant(make_claim(ClaimId::WeakType)), 1.0);
}

TEST(SharpConstant, PolarWeightIsNOverNPlusAlpha) {
    const auto c = make_claim(ClaimId::UPhiCampanato, {{"n", 3}, {"alpha", 0.5}, {"p", 1}}, "polar:3");
    EXPECT_NEAR(sharp_constant(c), 3.0 / 3.5, 1e-15);
    EXPECT_NEAR(sharp_constant(make_claim(ClaimId::HardyNdCampanato, {{"n", 2}, {"alpha", -0.4}, {"p", 1}})), 2.0 / 1.6,
                1e-15);
}

TEST(SharpConstant, AlphaZeroGivesIntegralOfWeight) {
    for (const char* w : {"constant", "polar:2", "rl:0.5", "rl:2"}) {
        const auto c = make_claim(ClaimId::UPhiCampanato, {{"n", 1}, {"alpha", 0}, {"p", 1}}, w);
        EXPECT_NEAR(sharp_constant(c), 1.0, 1e-14) << w;
    }
}

TEST(SharpConstant, RiemannLiouvilleValues) {
    const auto camp = make_claim(ClaimId::RiemannLiouvilleCampanato, {{"beta", 2}, {"alpha", 0.5}, {"p", 1}});
    EXPECT_NEAR(sharp_constant(camp), 8.0 / 15.0, 1e-14);
    // Independent numeric path: 2 (1 - t) t^{1/2} on a fine midpoint grid.
    double s = 0.0;
    const int m = 2000000;
    for (int i = 0; i < m; ++i) {
        const double t = (i + 0.5) / m;
        s += 2.0 * (1.0 - t) * std::sqrt(t);
    }
    EXPECT_NEAR(sharp_constant(camp), s / m, 1e-9);

    for (auto [b, p] : {std::pair{1.0, 2.0}, {2.0, 2.0}, {0.5, 3.0}}) {
        const auto c = make_claim(ClaimId::RiemannLiouvilleLp, {{"beta", b}, {"p", p}});
        EXPECT_NEAR(sharp_constant(c), beta_times_B(1.0 - 1.0 / p, b), 1e-12);
    }
    EXPECT_NEAR(sharp_constant(make_claim(ClaimId::RiemannLiouvilleLp, {{"beta", 1}, {"p", 2}})), 2.0, 1e-12);
}

TEST(SharpConstant, DecreasingInAlphaForPolarWeight) {
    double prev = kInf;
    for (double a = -1.4; a < 1.0; a += 0.1) {
        const double v = sharp_constant(make_claim(ClaimId::HardyNdCampanato, {{"n", 2}, {"alpha", a}, {"p", 1}}));
        EXPECT_LT(v, prev);
        prev = v;
    }
}

TEST(SharpConstant, NotStrongSlope) {
    EXPECT_NEAR(sharp_constant(make_claim(ClaimId::NotStrong11, {{"n", 1}, {"alpha", 0}, {"r", 1}})), 2.0, 1e-14);
    EXPECT_NEAR(sharp_constant(make_claim(ClaimId::NotStrong11, {{"n", 2}, {"alpha", 0}, {"r", 1}})),
                2.0 * std::numbers::pi, 1e-13);
}

TEST(Claims, RangeErrorsNameTheParameter) {
    try {
        make_claim(ClaimId::UPhiCampanato, {{"alpha", 2}});
        FAIL() << "expected ClaimError";
    } catch (const ClaimError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("alpha"), std::string::npos);
        EXPECT_NE(msg.find("α∈[−n/p,1)"), std::string::npos);
    }
    EXPECT_THROW(make_claim(ClaimId::HardyLp, {{"p", 0.5}}), ClaimError);
    EXPECT_THROW(make_claim(ClaimId::WeakType, {{"r", -1}}), ClaimError);
    EXPECT_THROW(make_claim(ClaimId::NotStrong11, {{"n", 2}, {"alpha", -2}}), ClaimError);
    EXPECT_THROW(make_claim(ClaimId::HardyLp, {{"q", 2}}), ClaimError);
    EXPECT_THROW(make_claim(ClaimId::UPhiCampanato, {}, "polar:x"), ClaimError);
    EXPECT_THROW(parse_claim_id("Nope"), ClaimError);
    EXPECT_EQ(parse_claim_id("HardyNdBLO"), ClaimId::HardyNdBLO);
}

TEST(Claims, KeyIsStable) {
    const auto a = make_claim(ClaimId::WeakType, {{"p", 2}, {"n", 1}});
    const auto b = make_claim(ClaimId::WeakType, {{"n", 1}, {"p", 2}});
    EXPECT_EQ(a.key(), b.key());
    EXPECT_EQ(certificate_seed(7, a), certificate_seed(7, b));
    EXPECT_NE(certificate_seed(7, a), certificate_seed(8, a));
}

TEST(NotStrong11, LogSlopes) {
    const CertifyConfig cfg;
    const auto c1 = certify_not_strong_11(make_claim(ClaimId::NotStrong11, {{"n", 1}, {"alpha", 0}, {"r", 1}}), cfg);
    EXPECT_TRUE(c1.passed());
    EXPECT_NEAR(c1.numbers.at("fitted_slope"), 2.0, 1e-8);
    const auto c2 = certify_not_strong_11(make_claim(ClaimId::NotStrong11, {{"n", 2}, {"alpha", 0}, {"r", 1}}), cfg);
    EXPECT_TRUE(c2.passed());
    EXPECT_NEAR(c2.numbers.at("fitted_slope"), 2.0 * std::numbers::pi, 1e-6);
    // f = |x|^α χ_r is integrable with ‖f‖₁ = ω_n r^{n+α}/(n+α).
    EXPECT_NEAR(c2.numbers.at("f_L1_norm"), std::numbers::pi, 1e-8);
}

TEST(WeakType, OneDimensionalPasses) {
    const auto c = certify_weak_type(make_claim(ClaimId::WeakType, {{"n", 1}, {"p", 1}, {"r", 1}}), light_config());
    EXPECT_TRUE(c.passed());
    EXPECT_NEAR(c.lower_bound_measured, 1.0, 1e-6);
    EXPECT_LE(c.worst_upper_ratio, 1.02);
}

TEST(LpOperator, HardyNearExtremizerMatchesClosedForm) {
    const auto c = certify_lp_operator(make_claim(ClaimId::HardyLp, {{"p", 2}}), light_config());
    for (double A : {1e1, 1e2, 1e3, 1e4, 1e8}) {
        const double got = c.numbers.at("near_extremizer_ratio_A=" + detail::fmt(A));
        EXPECT_NEAR(got, hardy_truncated_ratio_p2(A), 1e-6 * got) << "A=" << A;
    }
    EXPECT_LE(c.numbers.at("family_worst_ratio"), 2.0 * 1.02);
    EXPECT_TRUE(c.passed());
}

TEST(LpOperator, PEqualsOneDelegates) {
    const auto c = certify_lp_operator(make_claim(ClaimId::HardyLp, {{"p", 1}}), light_config());
    EXPECT_TRUE(c.unbounded);
    EXPECT_TRUE(c.passed());
    EXPECT_NEAR(c.numbers.at("delegated_slope"), 2.0, 1e-8);
}

TEST(LpOperator, PInfinityChecksConstants) {
    const auto c = certify_lp_operator(make_claim(ClaimId::HardyLp, {{"p", kInf}}), light_config());
    EXPECT_NEAR(c.lower_bound_measured, 1.0, 1e-12);
    EXPECT_TRUE(c.passed());
}

TEST(Campanato, OneDimensionalCertificates) {
    const auto cfg = light_config();
    for (const auto& claim :
         {make_claim(ClaimId::UPhiCampanato, {{"n", 1}, {"alpha", 0.5}, {"p", 1}}),
          make_claim(ClaimId::UPhiCampanato, {{"n", 1}, {"alpha", -0.3}, {"p", 2}}, "rl:0.5"),
          make_claim(ClaimId::UPhiCampanatoStar, {{"n", 1}, {"alpha", 0}, {"p", 1}}, "polar:3")}) {
        const auto c = certify_campanato(claim, cfg);
        EXPECT_TRUE(c.passed()) << claim.key();
        EXPECT_NEAR(c.lower_bound_measured / c.claimed_constant, 1.0, 1e-6) << claim.key();
        EXPECT_LE(c.worst_upper_ratio, c.claimed_constant * 1.03) << claim.key();
    }
}

TEST(Campanato, DivergentMomentIsUnbounded) {
    // φ = 1 on the plane with α = -1.5: the seminorm is defined but ∫ t^α diverges.
    const auto claim = make_claim(ClaimId::UPhiCampanato, {{"n", 2}, {"alpha", -1.5}, {"p", 1}});
    EXPECT_TRUE(std::isinf(sharp_constant(claim)));
    const auto c = certify_campanato(claim, light_config());
    EXPECT_TRUE(c.unbounded);
    EXPECT_TRUE(c.passed());
    EXPECT_GT(c.numbers.at("truncated_moment_eps=1e-12"), 1e3);
}

TEST(Suite, OrderingAndEmptySelection) {
    EXPECT_TRUE(run_suite({}, light_config()).empty());
    const auto out = run_suite({make_claim(ClaimId::NotStrong11), make_claim(ClaimId::HardyLp, {{"p", 3}})}, light_config());
    ASSERT_EQ(out.size(), 2u);
    EXPECT_EQ(out[0].claim.id, ClaimId::HardyLp);
    EXPECT_EQ(out[1].claim.id, ClaimId::NotStrong11);
}

TEST(Suite, DeterministicForFixedSeed) {
    CertifyConfig cfg = light_config();
    cfg.seed = 11;
    const auto claim = make_claim(ClaimId::WeakType, {{"n", 1}, {"p", 2}, {"r", 0.5}});
    const auto a = certify(claim, cfg), b = certify(claim, cfg);
    EXPECT_EQ(a.worst_upper_ratio, b.worst_upper_ratio);
    EXPECT_EQ(a.lower_bound_measured, b.lower_bound_measured);
    EXPECT_EQ(a.notes, b.notes);
}

TEST(Suite, DefaultSelectionCoversEveryClaim) {
    const auto sel = default_selection();
    ASSERT_EQ(sel.size(), kAllClaimIds.size());
    for (std::size_t i = 0; i < sel.size(); ++i) EXPECT_EQ(sel[i].id, kAllClaimIds[i]);
}
