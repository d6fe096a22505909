#include <gtest/gtest.h>

#include <random>

#include "common.hpp"
#include "spiegel/class_group.hpp"
#include "spiegel/errors.hpp"

using namespace spiegel;
using spiegel::test::tower;

namespace {

struct Config {
    unsigned q;
    const char* P;
};

// tame Riemann-Hurwitz: P totally ramified, infinity with e = q-1 at n/(q-1) places
unsigned hurwitz_genus(unsigned q, unsigned d) {
    long n = 1;
    for (unsigned i = 0; i < d; ++i) n *= q;
    --n;
    const long twice = -2 * n + (n - 1) * static_cast<long>(d) + (n / (q - 1)) * (static_cast<long>(q) - 2) + 2;
    return static_cast<unsigned>(twice / 2);
}

}  // namespace

class TowerConfigs : public ::testing::TestWithParam<Config> {};

TEST_P(TowerConfigs, InvariantsAndGenus) {
    const auto [q, P] = GetParam();
    const TowerPtr tw = tower(q, P);
    std::uint64_t qd = 1;
    for (unsigned i = 0; i < tw->d(); ++i) qd *= q;
    EXPECT_EQ(tw->n(), qd - 1);
    EXPECT_EQ(tw->place_reps().size(), tw->n() / (q - 1));
    EXPECT_EQ(tw->genus(), hurwitz_genus(q, tw->d()));
    EXPECT_TRUE(discriminant_check(*tw));
    EXPECT_TRUE(tw->place_reps().front().is_one());
}

TEST_P(TowerConfigs, NormIsMultiplicative) {
    const auto [q, P] = GetParam();
    const TowerPtr tw = tower(q, P);
    std::mt19937_64 rng(q * 1000 + tw->d());
    for (int t = 0; t < 6; ++t) {
        REl a = tw->zero(), b = tw->zero();
        for (auto& c : a) c = tw->A().random(1, rng);
        for (auto& c : b) c = tw->A().random(1, rng);
        EXPECT_EQ(tw->norm(tw->mul(a, b)), tw->A().mul(tw->norm(a), tw->norm(b)));
    }
    // N(lambda) = +-P
    EXPECT_EQ(tw->A().monic(tw->norm(tw->lambda())), tw->prime().P);
}

TEST_P(TowerConfigs, GaloisActionIsAHomomorphism) {
    const auto [q, P] = GetParam();
    const TowerPtr tw = tower(q, P);
    std::mt19937_64 rng(99);
    REl a = tw->zero(), b = tw->zero();
    for (auto& c : a) c = tw->A().random(1, rng);
    for (auto& c : b) c = tw->A().random(1, rng);
    for (const Poly& s : tw->place_reps()) {
        EXPECT_EQ(tw->galois_apply(s, tw->mul(a, b)), tw->mul(tw->galois_apply(s, a), tw->galois_apply(s, b)));
        // sigma_s sigma_t = sigma_{st}
        for (const Poly& t : tw->place_reps())
            EXPECT_EQ(tw->galois_apply(s, tw->galois_apply(t, a)), tw->galois_apply(tw->A().mul(s, t), a));
    }
}

INSTANTIATE_TEST_SUITE_P(Desk, TowerConfigs,
                         ::testing::Values(Config{2, "T^2+T+1"}, Config{2, "T^3+T+1"}, Config{3, "T^2+1"},
                                           Config{4, "T^2+T+2"}, Config{2, "T^4+T+1"}),
                         spiegel::test::ConfigName{});

TEST(Tower, KnownGenera) {
    EXPECT_EQ(tower(2, "T^2+T+1")->genus(), 0u);
    EXPECT_EQ(tower(2, "T^3+T+1")->genus(), 3u);
    EXPECT_EQ(tower(3, "T^2+1")->genus(), 2u);
    EXPECT_EQ(tower(4, "T^2+T+2")->genus(), 5u);
    EXPECT_EQ(tower(2, "T^4+T+1")->genus(), 14u);
}

TEST(Tower, RejectsBadInput) {
    auto kind = [](auto&& f) {
        try {
            f();
        } catch (const SpiegelError& e) {
            return e.kind();
        }
        return ErrorKind::OracleMismatch;
    };
    EXPECT_EQ(kind([] { tower(2, "T^2"); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind([] { tower(2, "T^2+1"); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind([] { tower(2, "T+1"); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind([] { tower(3, "2*T^2+1"); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind([] { tower(2, "T^7+T+1"); }), ErrorKind::SizeBound);
}

TEST(Tower, InverseInR) {
    const TowerPtr tw = tower(2, "T^3+T+1");
    // 1 + lambda is a unit only if its norm is constant; lambda itself is not
    EXPECT_FALSE(tw->inverse_in_R(tw->lambda()));
    const REl u = tw->add(tw->lambda(), tw->one());
    if (tw->norm(u).deg() == 0) {
        const auto inv = tw->inverse_in_R(u);
        ASSERT_TRUE(inv);
        EXPECT_EQ(tw->mul(u, *inv), tw->one());
    }
}
