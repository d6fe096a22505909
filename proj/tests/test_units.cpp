#include <gtest/gtest.h>

#include "common.hpp"
#include "spiegel/units.hpp"

using namespace spiegel;
using spiegel::test::tower;

struct UnitConfig {
    unsigned q;
    const char* P;
    bool exhaustive;  // p^rank root extractions stay cheap
};

class UnitConfigs : public ::testing::TestWithParam<UnitConfig> {};

TEST_P(UnitConfigs, CyclotomicUnitsAreUnitsWithCocycle) {
    const TowerPtr tw = tower(GetParam().q, GetParam().P);
    const UnitSet U = cyclotomic_units(*tw);
    ASSERT_EQ(U.units.size(), tw->unit_rank());
    for (std::size_t i = 0; i < U.units.size(); ++i) {
        EXPECT_EQ(tw->mul(U.units[i], U.inverses[i]), tw->one());
        EXPECT_EQ(tw->norm(U.units[i]).deg(), 0);
    }
    for (const Poly& a : tw->place_reps())
        for (const Poly& b : tw->place_reps()) EXPECT_TRUE(cocycle_holds(*tw, a, b));
}

TEST_P(UnitConfigs, SaturationReachesFullRank) {
    const TowerPtr tw = tower(GetParam().q, GetParam().P);
    auto frame = std::make_shared<const LocalFrame>(tw, 4 * tw->n() * tw->q() + 16);
    DifferentialOps ops(tw, frame);
    const UnitSet S = saturate_units(cyclotomic_units(*tw), ops);
    EXPECT_EQ(S.rank, tw->unit_rank());
    EXPECT_TRUE(S.saturated);
    for (std::size_t i = 0; i < S.units.size(); ++i) EXPECT_EQ(tw->mul(S.units[i], S.inverses[i]), tw->one());
    if (GetParam().exhaustive) EXPECT_TRUE(no_pth_power_combination(*tw, S));
}

INSTANTIATE_TEST_SUITE_P(Desk, UnitConfigs,
                         ::testing::Values(UnitConfig{2, "T^2+T+1", true}, UnitConfig{2, "T^3+T+1", true},
                                           UnitConfig{3, "T^2+1", true}, UnitConfig{4, "T^2+T+2", false}),
                         spiegel::test::ConfigName{});

TEST(Units, SeparationBoundFormula) {
    const TowerPtr tw = tower(2, "T^3+T+1");
    // floor(max(0, 2g - 2 + s) / d) + 2 with g = 3, s = 7, d = 3
    EXPECT_EQ(separation_bound(*tw), (2u * 3 - 2 + 7) / 3 + 2);
}

TEST(Units, CoordinatesAreDigits) {
    const FieldPtr k = FiniteField::from_desc(standard_field(2));
    const FieldPtr F = FiniteField::extension(k, {1, 1, 1});
    const Series c{3, 1, 2};
    EXPECT_EQ(prime_coordinates(*F, c, 2), (FqVec{1, 1, 1, 0}));
    EXPECT_EQ(base_coordinates(*F, c, 3), (FqVec{1, 1, 1, 0, 0, 1}));
}
