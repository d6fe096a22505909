#include <gtest/gtest.h>

#include "common.hpp"
#include "spiegel/class_group.hpp"
#include "spiegel/zeta.hpp"

using namespace spiegel;
using spiegel::test::tower;

TEST(Splitting, SmallPrimesOverTheBaseCase) {
    const TowerPtr tw = tower(2, "T^2+T+1");
    const PolyRing& A = tw->A();
    for (const char* s : {"T", "T+1"}) {
        // T and T+1 have order 3 in (A/P)^x = F_4^x: one prime of residue degree 3
        const Splitting S = split_prime(*tw, parse_poly(A.field(), s));
        ASSERT_EQ(S.primes.size(), 1u) << s;
        EXPECT_EQ(S.primes[0].residue_degree, 3u);
    }
    const Splitting base = split_prime(*tw, tw->prime().P);
    ASSERT_EQ(base.primes.size(), 1u);
    EXPECT_EQ(base.primes[0].ramification, tw->n());
}

TEST(Splitting, ResidueDegreeTimesCountIsN) {
    const TowerPtr tw = tower(3, "T^2+1");
    for (unsigned e = 1; e <= 3; ++e)
        for (const Poly& P : tw->A().irreducibles(e)) {
            if (P == tw->prime().P) continue;
            const Splitting S = split_prime(*tw, P);
            EXPECT_EQ(S.primes.size() * S.primes[0].residue_degree, tw->n());
            EXPECT_EQ(S.order, S.primes[0].residue_degree);
        }
}

TEST(Splitting, GaloisPermutationMatchesValuations) {
    const TowerPtr tw = tower(2, "T^3+T+1");
    const PolyRing& A = tw->A();
    // a split prime: T^3+T^2+1 has small order modulo P
    for (unsigned e = 1; e <= 3; ++e)
        for (const Poly& P : A.irreducibles(e)) {
            if (P == tw->prime().P) continue;
            const Splitting S = split_prime(*tw, P);
            if (S.primes.size() < 2) continue;
            for (std::size_t i = 0; i < S.primes.size(); ++i) {
                const REl& g = S.primes[i].g;
                const Poly N = tw->norm(g);
                const unsigned v = A.valuation(N, P);
                const auto vals = valuations_above(*tw, S, g, v);
                for (const Poly& c : tw->place_reps()) {
                    const auto perm = galois_permutation(*tw, S, c);
                    const auto img = valuations_above(*tw, S, tw->galois_apply(c, g), v);
                    for (std::size_t k = 0; k < vals.size(); ++k) EXPECT_EQ(img[perm[k]], vals[k]);
                }
            }
        }
}

TEST(ClassGroup, LambdaGeneratesTheRamifiedPrime) {
    const TowerPtr tw = tower(2, "T^3+T+1");
    const Splitting S = split_prime(*tw, tw->prime().P);
    EXPECT_EQ(valuations_above(*tw, S, tw->lambda(), 1), std::vector<unsigned>{1});
}

struct CgConfig {
    unsigned q;
    const char* P;
    const char* cl0;
    std::size_t pic_p_rank;
};

class ClassGroupConfigs : public ::testing::TestWithParam<CgConfig> {};

TEST_P(ClassGroupConfigs, OrderMatchesZetaAndWitnessesHold) {
    const auto c = GetParam();
    const TowerPtr tw = tower(c.q, c.P);
    const ZetaData z = zeta_numerator(*tw);
    auto frame = std::make_shared<const LocalFrame>(tw, 4 * tw->n() * tw->q() + 16);
    DifferentialOps ops(tw, frame);
    const UnitSet U = saturate_units(cyclotomic_units(*tw), ops);
    InfinitePlaces inf(tw);
    const ClassData C = class_group(*tw, inf, U, z.class_number);
    EXPECT_EQ(C.cl0_order, z.class_number);
    EXPECT_EQ(C.cl0_order.get_str(), c.cl0);
    EXPECT_EQ(C.pic_order * C.infinite_index, C.cl0_order);
    EXPECT_EQ(p_rank(C.pic_invariants, tw->p()), c.pic_p_rank);
    ASSERT_EQ(C.witnesses.size(), c.pic_p_rank);
    // alpha * M = p * ideal on the finite columns
    const std::size_t nfin = C.finite.size();
    for (const auto& w : C.witnesses)
        for (std::size_t j = 0; j < nfin; ++j) {
            mpz_class acc = 0;
            for (std::size_t k = 0; k < C.rows.size(); ++k) acc += w.alpha[k] * C.rows[k][j];
            EXPECT_EQ(acc, tw->p() * w.ideal[j]);
        }
    // every kept relation is a principal divisor: its row matches recomputed valuations
    for (std::size_t k = 0; k < std::min<std::size_t>(C.kept.size(), 6); ++k) {
        const REl beta = relation_element(*tw, C, k);
        const auto vinf = inf.valuations(beta);
        for (std::size_t a = 0; a < C.num_infinite; ++a) EXPECT_EQ(C.rows[k][nfin + a], vinf[a]);
    }
}

INSTANTIATE_TEST_SUITE_P(Desk, ClassGroupConfigs,
                         ::testing::Values(CgConfig{2, "T^2+T+1", "1", 0}, CgConfig{2, "T^3+T+1", "71", 0},
                                           CgConfig{3, "T^2+1", "8", 0}, CgConfig{4, "T^2+T+2", "1296", 4}),
                         spiegel::test::ConfigName{});

TEST(ClassGroup, DiscriminantIsAPowerOfP) {
    for (auto [q, P] : {std::pair{2u, "T^2+T+1"}, std::pair{3u, "T^2+1"}, std::pair{2u, "T^4+T+1"}})
        EXPECT_TRUE(discriminant_check(*tower(q, P)));
}
