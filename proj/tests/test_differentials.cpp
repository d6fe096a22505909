#include <gtest/gtest.h>

#include <random>

#include "common.hpp"
#include "spiegel/differentials.hpp"
#include "spiegel/units.hpp"

using namespace spiegel;
using spiegel::test::tower;

namespace {

struct Fixture {
    TowerPtr tw;
    std::shared_ptr<const LocalFrame> frame;
    DifferentialOps ops;
    Fixture(unsigned q, const char* P, unsigned prec = 0)
        : tw(tower(q, P)),
          frame(std::make_shared<const LocalFrame>(tw, prec ? prec : 3 * (tw->n() + 1) * q + 8)),
          ops(tw, frame) {}
    unsigned qd() const { return tw->n() + 1; }
};

std::vector<unsigned> expected_quotient_table(unsigned n) {
    std::vector<unsigned> t(n, 1);
    t[1 % n] = 2;
    return t;
}

}  // namespace

struct DiffConfig {
    unsigned q;
    const char* P;
};

class DifferentialConfigs : public ::testing::TestWithParam<DiffConfig> {};

TEST_P(DifferentialConfigs, QuotientTableAndFiltration) {
    Fixture s(GetParam().q, GetParam().P);
    const FiltrationReport r = filtration_report(*s.frame);
    EXPECT_TRUE(r.ok);
    EXPECT_EQ(r.table, expected_quotient_table(s.tw->n()));
    for (unsigned i = 0; i < r.piece_character.size(); ++i) EXPECT_EQ(r.piece_character[i], (i + 1) % s.tw->n());
}

TEST_P(DifferentialConfigs, CartierBasics) {
    Fixture s(GetParam().q, GetParam().P);
    const Differential dl = s.ops.dlambda();
    EXPECT_TRUE(s.ops.is_zero(s.ops.cartier(dl)));
    EXPECT_NE(s.ops.reduce(dl, 1).c[0], 0u);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 5; ++t) {
        REl h = s.tw->zero();
        for (auto& c : h) c = s.tw->A().random(2, rng);
        // exact differentials die, dlogs of units are fixed
        EXPECT_TRUE(s.ops.is_zero(s.ops.cartier(s.ops.exact(h))));
        // c(h^q w) = h c(w)
        const Differential w = s.ops.from_eta(s.tw->lfrom(h));
        const REl g = s.tw->add(s.tw->lambda(), s.tw->from_A(s.tw->A().x()));
        const Differential lhs = s.ops.cartier(s.ops.mul(w, s.tw->lfrom(s.tw->pow(g, s.tw->q()))));
        const Differential rhs = s.ops.mul(s.ops.cartier(w), s.tw->lfrom(g));
        EXPECT_TRUE(s.ops.equal(lhs, rhs));
    }
    for (const REl& u : cyclotomic_units(*s.tw).units) {
        const Differential w = s.ops.dlog_unit(u);
        EXPECT_TRUE(s.ops.equal(s.ops.cartier(w), w));
    }
}

TEST_P(DifferentialConfigs, GlobalAndLocalCartierAgree) {
    Fixture s(GetParam().q, GetParam().P);
    const unsigned q = s.tw->q(), qd = s.qd();
    std::mt19937_64 rng(8);
    for (int t = 0; t < 20; ++t) {
        REl h = s.tw->zero();
        for (auto& c : h) c = s.tw->A().random(s.tw->d() + 1, rng);
        const Differential w = s.ops.from_eta(s.tw->lfrom(h));
        const LocalDifferential g = s.ops.reduce(s.ops.cartier(w), qd);
        const LocalDifferential l = s.ops.local_cartier(s.ops.reduce(w, q * qd + q - 1));
        ASSERT_EQ(l.N, qd);
        EXPECT_EQ(l.c, g.c);
    }
}

TEST_P(DifferentialConfigs, KernelOfOneMinusCdIsCyclic) {
    Fixture s(GetParam().q, GetParam().P);
    const KernelReport k = kernel_one_minus_cd(s.ops);
    EXPECT_TRUE(k.verdict.cyclic);
    EXPECT_EQ(k.dims[1 % s.tw->n()], 1u);
    const LocalDifferential om = s.ops.one_minus_cd(s.ops.reduce(s.ops.dlambda(), s.qd()));
    EXPECT_TRUE(std::any_of(om.c.begin(), om.c.end(), [](Elem x) { return x != 0; }));
}

INSTANTIATE_TEST_SUITE_P(Desk, DifferentialConfigs,
                         ::testing::Values(DiffConfig{2, "T^2+T+1"}, DiffConfig{2, "T^3+T+1"}, DiffConfig{3, "T^2+1"},
                                           DiffConfig{4, "T^2+T+2"}),
                         spiegel::test::ConfigName{});

TEST(Differentials, TauOfTIsTPlusLambdaCubed) {
    // q = 2, P = T^2+T+1: lift(T)^4 = T + lambda^3 modulo q^4
    Fixture s(2, "T^2+T+1");
    const Series lhs = s.frame->expand(s.tw->pow(s.tw->from_A(s.tw->A().x()), 4));
    REl rhs = s.tw->from_A(s.tw->A().x());
    rhs = s.tw->add(rhs, s.tw->pow(s.tw->lambda(), 3));
    const Series r = s.frame->expand(rhs);
    for (unsigned i = 0; i < 4; ++i) EXPECT_EQ(lhs[i], r[i]) << i;
    // and lift(T)^4 is a constant series modulo q^4
    for (unsigned i = 1; i < 4; ++i) EXPECT_EQ(lhs[i], 0u);
}

TEST(Differentials, ReducePolesRaise) {
    Fixture s(2, "T^2+T+1");
    const Differential w = s.ops.from_eta(s.tw->make(s.tw->one(), s.tw->prime().P));
    EXPECT_ANY_THROW(s.ops.reduce(w, 4));
}
