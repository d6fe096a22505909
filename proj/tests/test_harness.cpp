#include <gtest/gtest.h>

#include <algorithm>

#include "bernoulli.hpp"
#include "common.hpp"
#include "spiegel/errors.hpp"
#include "spiegel/report.hpp"
#include "spiegel/spiegel.hpp"

using namespace spiegel;

namespace {

RunConfig config(unsigned q, const char* P) {
    RunConfig c;
    c.q = q;
    c.p_poly = P;
    return c;
}

}  // namespace

TEST(Harness, BaselineCase) {
    const SpiegelReport r = run_spiegel(config(2, "T^2+T+1"));
    ASSERT_TRUE(r.passed()) << r.failure_message;
    EXPECT_EQ(exit_code(r), 0);
    EXPECT_EQ(r.dims.at("omega_quotient"), (std::vector<unsigned>{1, 2, 1}));
    EXPECT_EQ(r.dims.at("units"), (std::vector<unsigned>{0, 1, 1}));
    EXPECT_EQ(r.dims.at("hom_operational"), (std::vector<unsigned>{0, 0, 0}));
    EXPECT_EQ(r.dims.at("pic_p"), (std::vector<unsigned>{0, 0, 0}));
    EXPECT_TRUE(r.remark_vacuous);
    EXPECT_EQ(r.oracles["fixed_space"]["dim"], 2);
    for (const auto& [k, v] : r.verdicts) EXPECT_TRUE(v) << k;
}

TEST(Harness, GenusThreeCase) {
    const SpiegelReport r = run_spiegel(config(2, "T^3+T+1"));
    ASSERT_TRUE(r.passed()) << r.failure_message;
    EXPECT_EQ(r.oracles["class_group"]["cl0_order"], "71");
    EXPECT_EQ(r.oracles["zeta"]["class_number"], "71");
}

TEST(Harness, RemarkExaminesFourCharactersForQ3) {
    const SpiegelReport r = run_spiegel(config(3, "T^2+1"));
    ASSERT_TRUE(r.passed()) << r.failure_message;
    EXPECT_FALSE(r.remark_vacuous);
    EXPECT_EQ(r.remark.size(), 4u);
    for (const auto& o : r.remark) EXPECT_EQ(o.character % 2, 1u);
}

TEST(Harness, InvalidInputIsRejectedBeforeWork) {
    auto kind = [](const RunConfig& c) {
        try {
            run_spiegel(c);
        } catch (const SpiegelError& e) {
            return e.kind();
        }
        return ErrorKind::OracleMismatch;
    };
    EXPECT_EQ(kind(config(2, "T^2")), ErrorKind::InvalidInput);
    EXPECT_EQ(kind(config(2, "T+1")), ErrorKind::InvalidInput);
    EXPECT_EQ(kind(config(2, "T^2+")), ErrorKind::InvalidInput);
    EXPECT_EQ(kind(config(6, "T^2+T+1")), ErrorKind::InvalidInput);
}

TEST(Harness, ReportsAreDeterministic) {
    const std::string a = render_json(run_spiegel(config(2, "T^3+T^2+1")));
    const std::string b = render_json(run_spiegel(config(2, "T^3+T^2+1")));
    EXPECT_EQ(a, b);
    const auto j = nlohmann::json::parse(a);
    for (const char* key : {"q", "p_poly", "d", "dims", "verdicts", "remark", "oracles", "timings", "status", "seed"})
        EXPECT_TRUE(j.contains(key)) << key;
}

TEST(Harness, MarkdownHasTheDimensionTable) {
    const std::string md = render_markdown(run_spiegel(config(2, "T^2+T+1")));
    EXPECT_NE(md.find("| Omega_R / q^{q^d} | 1 | 2 | 1 |"), std::string::npos);
    EXPECT_NE(md.find("operational"), std::string::npos);
}

TEST(Harness, ExitCodeTable) {
    SpiegelReport r;
    EXPECT_EQ(exit_code(r), 0);
    r.status = "FAILED";
    for (const char* k : {"TheoremViolation", "FiltrationMismatch", "DimensionMismatch"}) {
        r.failure_kind = k;
        EXPECT_EQ(exit_code(r), 1);
    }
    r.failure_kind = "OracleMismatch";
    EXPECT_EQ(exit_code(r), 2);
}

TEST(Harness, ThetaKernelMatchesBernoulliCarlitzDivisibility) {
    // T^4+T+1 divides BC_9; T^3+T+1 divides no BC_k with k < 10
    for (const char* P : {"T^4+T+1", "T^3+T+1"}) {
        const SpiegelReport r = run_spiegel(config(2, P));
        ASSERT_TRUE(r.passed()) << r.failure_message;
        const TowerPtr tw = spiegel::test::tower(2, P);
        const auto v = spiegel::test::bernoulli_carlitz_valuations(tw->carlitz(), tw->prime().P, std::max(tw->n(), 10u));
        const auto& kern = r.dims.at("ker_alpha");
        EXPECT_EQ(v[9] > 0, std::string(P) == "T^4+T+1");
        for (unsigned j = 1; j < tw->n(); ++j) EXPECT_EQ(kern[j] > 0, v[j] > 0) << P << " j=" << j;
    }
}

TEST(Harness, FixedSpaceStagesOnBaseline) {
    const TowerPtr tw = spiegel::test::tower(2, "T^2+T+1");
    auto frame = std::make_shared<const LocalFrame>(tw, 64);
    DifferentialOps ops(tw, frame);
    const UnitSet U = saturate_units(cyclotomic_units(*tw), ops);
    const FixedDifferentialSpace V = build_fixed_space(ops, U, {});
    EXPECT_EQ(V.dim(), 2u);
    EXPECT_EQ(V.num_units, 2u);
    const DeltaModule M = fixed_space_module(ops, V);
    const FqMatrix Th = theta_matrix(*tw, V);
    EXPECT_EQ(Th.rank(), 2u);
    const AlphaData a = alpha_data(M, V.num_units, Th);
    EXPECT_TRUE(a.ker_theta.empty());
    const ProbeResult p = probe_completeness(ops, V, 30, 5);
    EXPECT_EQ(p.probes, 30u);
    EXPECT_EQ(p.hits, 0u);
}
