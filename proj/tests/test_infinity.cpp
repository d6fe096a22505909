#include <gtest/gtest.h>

#include <random>

#include "common.hpp"
#include "spiegel/infinity.hpp"

using namespace spiegel;
using spiegel::test::tower;

struct InfConfig {
    unsigned q;
    const char* P;
};

class ProductFormula : public ::testing::TestWithParam<InfConfig> {};

TEST_P(ProductFormula, InfiniteValuationsBalanceTheNorm) {
    const auto [q, P] = GetParam();
    const TowerPtr tw = tower(q, P);
    InfinitePlaces inf(tw);
    EXPECT_TRUE(inf.torsion_point_verified());
    long s = 0;
    for (long v : inf.lambda_valuations()) s += v;
    EXPECT_EQ(s, -static_cast<long>(tw->d()));
    std::mt19937_64 rng(q + 17);
    for (int t = 0; t < 10; ++t) {
        REl b = tw->zero();
        for (auto& c : b) c = tw->A().random(2, rng);
        if (tw->is_zero(b)) continue;
        long sum = 0;
        for (long v : inf.valuations(b)) sum += v;
        // all infinite places have degree one
        EXPECT_EQ(sum, -tw->norm(b).deg());
    }
}

TEST_P(ProductFormula, ConstantsHaveValuationZeroAndTHasPole) {
    const auto [q, P] = GetParam();
    const TowerPtr tw = tower(q, P);
    InfinitePlaces inf(tw);
    for (long v : inf.valuations(tw->one())) EXPECT_EQ(v, 0);
    for (long v : inf.valuations(tw->from_A(tw->A().x()))) EXPECT_EQ(v, -static_cast<long>(q - 1));
}

INSTANTIATE_TEST_SUITE_P(Desk, ProductFormula,
                         ::testing::Values(InfConfig{2, "T^2+T+1"}, InfConfig{2, "T^3+T+1"}, InfConfig{3, "T^2+1"},
                                           InfConfig{4, "T^2+T+2"}, InfConfig{2, "T^4+T+1"}),
                         spiegel::test::ConfigName{});
