#include <gtest/gtest.h>

#include <cmath>

#include "hardy/report.hpp"

using namespace hardy;

TEST(Numbers, InfinityTravelsAsString) {
    EXPECT_EQ(number_to_json(kInf), json("inf"));
    EXPECT_EQ(number_to_json(-kInf), json("-inf"));
    EXPECT_TRUE(std::isinf(number_from_json(json("inf"))));
    EXPECT_EQ(number_from_json(json(0.25)), 0.25);
    EXPECT_THROW(number_from_json(json("many")), UsageError);
}

TEST(Config, DefaultsRoundTrip) {
    RunConfig rc;
    rc.seed = 42;
    rc.selection = default_selection();
    const json j = config_to_json(rc);
    RunConfig back;
    config_from_json(j, back);
    EXPECT_EQ(config_to_json(back), j);
    EXPECT_EQ(back.certify.seed, 42u);
}

TEST(Config, UnknownKeysRejected) {
    RunConfig rc;
    EXPECT_THROW(config_from_json(json::parse(R"({"sed": 3})"), rc), UsageError);
    EXPECT_THROW(config_from_json(json::parse(R"({"tolerances": {"lp_uper": 0.1}})"), rc), UsageError);
    EXPECT_THROW(config_from_json(json::parse(R"({"cube_search": {"scales": []}})"), rc), UsageError);
    EXPECT_THROW(config_from_json(json::parse(R"({"selection": [{"id": "HardyLp", "params": {"p": 0.5}}]})"), rc),
                 ClaimError);
}

TEST(Config, PartialOverridesKeepDefaults) {
    RunConfig rc;
    config_from_json(json::parse(R"({"tolerances": {"lp_upper": 0.05}, "family_sizes": {"lp": 7}})"), rc);
    EXPECT_EQ(rc.certify.lp_upper_tol, 0.05);
    EXPECT_EQ(rc.certify.lp_family_size, 7);
    EXPECT_EQ(rc.certify.weak_family_size, CertifyConfig{}.weak_family_size);
}

TEST(Report, CertificateRoundTrip) {
    CertifyConfig cfg;
    cfg.lp_family_size = 5;
    Report r;
    r.config.selection = {make_claim(ClaimId::HardyLp, {{"p", 1}}), make_claim(ClaimId::HardyLp, {{"p", 3}})};
    r.certificates = run_suite(r.config.selection, cfg);
    const json j = report_to_json(r);
    const Report back = report_from_json(json::parse(j.dump()));
    EXPECT_EQ(report_to_json(back), j);
    EXPECT_EQ(j["certificates"][0]["claimed_constant"], json("inf"));
    EXPECT_TRUE(j.contains("timing"));
}

TEST(Report, CsvHeader) {
    Report r;
    const std::string csv = report_to_csv(r);
    EXPECT_EQ(csv, "claim,claimed,lower,upper_worst,verdict\n");
}

TEST(Grammar, Functions) {
    EXPECT_EQ(parse_function("power a=0.5 n=2").dim, 2);
    EXPECT_DOUBLE_EQ(parse_function("power a=0.5 n=1")({4.0}), 2.0);
    EXPECT_DOUBLE_EQ(parse_function("indicator r=1")({0.5}), 1.0);
    EXPECT_DOUBLE_EQ(parse_function("signsplit n=1")({-1.0}), 1.0);
    EXPECT_DOUBLE_EQ(parse_function("hardy_of indicator r=1 n=1")({4.0}), 0.25);
    EXPECT_THROW(parse_function("power n=1"), UsageError);
    EXPECT_THROW(parse_function("power a=1 q=2"), UsageError);
    EXPECT_THROW(parse_function("wiggle"), UsageError);
    EXPECT_THROW(parse_function("indicator r=-1"), UsageError);
}

TEST(Grammar, OperatorsAndSpaces) {
    EXPECT_EQ(parse_operator("hardynd n=3").dim(), 3);
    EXPECT_EQ(parse_operator("uphi weight=rl:2 n=1").weight().label, riemann_liouville_weight(2).label);
    EXPECT_THROW(parse_operator("uphi weight=foo"), UsageError);
    EXPECT_TRUE(parse_space("campanato_star alpha=0.2 p=2 n=2").is_star());
    EXPECT_EQ(parse_space("BMO n=3").n, 3);
    EXPECT_THROW(parse_space("campanato alpha=2 p=1 n=1"), UsageError);
    EXPECT_THROW(parse_space("Sobolev"), UsageError);
}
