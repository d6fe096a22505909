#include <gtest/gtest.h>

#include "common.hpp"
#include "spiegel/class_group.hpp"
#include "spiegel/zeta.hpp"

using namespace spiegel;
using spiegel::test::tower;

namespace {

/// N_m from Kummer-Dedekind splitting: sum of deg v over places with deg v | m.
std::uint64_t count_by_splitting(const Tower& tw, unsigned m) {
    std::uint64_t total = tw.num_infinite_places();
    for (unsigned e = 1; e <= m; ++e) {
        if (m % e) continue;
        for (const Poly& P : tw.A().irreducibles(e)) {
            const Splitting S = split_prime(tw, P);
            for (const PrimeIdeal& pr : S.primes)
                if (m % pr.norm_degree() == 0) total += pr.norm_degree();
        }
    }
    return total;
}

}  // namespace

struct ZetaConfig {
    unsigned q;
    const char* P;
    unsigned max_m;
};

class ZetaCounts : public ::testing::TestWithParam<ZetaConfig> {};

TEST_P(ZetaCounts, PointCountsMatchSplittingCensus) {
    const TowerPtr tw = tower(GetParam().q, GetParam().P);
    for (unsigned m = 1; m <= GetParam().max_m; ++m) EXPECT_EQ(count_places(*tw, m), count_by_splitting(*tw, m)) << m;
}

INSTANTIATE_TEST_SUITE_P(Desk, ZetaCounts,
                         ::testing::Values(ZetaConfig{2, "T^2+T+1", 4}, ZetaConfig{2, "T^3+T+1", 4},
                                           ZetaConfig{3, "T^2+1", 3}, ZetaConfig{4, "T^2+T+2", 2}),
                         spiegel::test::ConfigName{});

TEST(Zeta, GenusThreeNumerator) {
    const ZetaData z = zeta_numerator(*tower(2, "T^3+T+1"));
    EXPECT_EQ(z.genus, 3u);
    EXPECT_TRUE(z.symmetry_verified);
    const std::vector<mpz_class> want{1, 4, 9, 15, 18, 16, 8};
    EXPECT_EQ(z.coeffs, want);
    EXPECT_EQ(z.class_number, 71);
}

TEST(Zeta, FunctionalEquationAndRiemannHypothesisBound) {
    for (auto [q, P] : {std::pair{3u, "T^2+1"}, std::pair{2u, "T^3+T^2+1"}}) {
        const ZetaData z = zeta_numerator(*tower(q, P));
        const unsigned g = z.genus;
        for (unsigned i = 0; i <= g; ++i) {
            mpz_class qp;
            mpz_ui_pow_ui(qp.get_mpz_t(), q, g - i);
            EXPECT_EQ(z.coeffs[2 * g - i], qp * z.coeffs[i]);
        }
        // |N_1 - q - 1| <= 2 g sqrt(q)
        const double dev = static_cast<double>(z.counts[0]) - q - 1.0;
        EXPECT_LE(dev * dev, 4.0 * g * g * q);
    }
}

TEST(Zeta, GenusZeroHasTrivialNumerator) {
    const ZetaData z = zeta_numerator(*tower(2, "T^2+T+1"));
    EXPECT_EQ(z.genus, 0u);
    EXPECT_EQ(z.coeffs, std::vector<mpz_class>{1});
    EXPECT_EQ(z.class_number, 1);
}
