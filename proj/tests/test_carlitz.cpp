#include <gtest/gtest.h>

#include "spiegel/carlitz.hpp"
#include "spiegel/errors.hpp"

using namespace spiegel;

namespace {

Carlitz carlitz(unsigned q) { return Carlitz(FiniteField::from_desc(standard_field(q))); }

}  // namespace

TEST(Carlitz, PhiTIsTxPlusXq) {
    const Carlitz C = carlitz(3);
    const LinearizedPoly phi = C.action(C.A().x());
    ASSERT_EQ(phi.c.size(), 2u);
    EXPECT_EQ(phi.c[0], C.A().x());
    EXPECT_TRUE(phi.c[1].is_one());
}

TEST(Carlitz, ActionIsARingMorphismOnSmallDegrees) {
    for (unsigned q : {2u, 3u}) {
        const Carlitz C = carlitz(q);
        std::vector<Poly> polys;
        for (std::uint64_t c = 0; c < q * q * q; ++c) polys.push_back(C.A().from_code(c));
        for (const Poly& a : polys)
            for (const Poly& b : polys) {
                EXPECT_EQ(C.action(C.A().mul(a, b)), C.compose(C.action(a), C.action(b)));
                EXPECT_EQ(C.action(C.A().add(a, b)), C.add(C.action(a), C.action(b)));
            }
    }
}

TEST(Carlitz, FactorialsMatchProductFormula) {
    // D_i = prod_{j<i} (T^{q^i} - T^{q^j})
    for (unsigned q : {2u, 3u, 4u}) {
        const Carlitz C = carlitz(q);
        const PolyRing& A = C.A();
        const auto D = C.factorials(4);
        for (unsigned i = 0; i < 4; ++i) {
            Poly prod = Poly::constant(1);
            for (unsigned j = 0; j < i; ++j)
                prod = A.mul(prod, A.sub(A.frobenius_power(A.x(), i), A.frobenius_power(A.x(), j)));
            EXPECT_EQ(D[i], prod) << q << " " << i;
        }
    }
}

TEST(Carlitz, TorsionPolynomialIsEisenstein) {
    for (unsigned q : {2u, 3u, 4u}) {
        const Carlitz C = carlitz(q);
        for (unsigned d = 1; d <= 3; ++d)
            for (const Poly& P : C.A().irreducibles(d)) {
                const auto f = C.torsion_polynomial(P);
                std::uint64_t qd = 1;
                for (unsigned i = 0; i < d; ++i) qd *= q;
                ASSERT_EQ(f.size(), qd);
                EXPECT_TRUE(f.back().is_one());
                EXPECT_EQ(f[0], P);
                EXPECT_TRUE(C.is_eisenstein(f, P));
            }
    }
}

TEST(Carlitz, EisensteinFailsAtAnotherPrime) {
    const Carlitz C = carlitz(2);
    const PolyRing& A = C.A();
    const Poly P = parse_poly(A.field(), "T^2+T+1");
    EXPECT_FALSE(C.is_eisenstein(C.torsion_polynomial(P), parse_poly(A.field(), "T+1")));
}

TEST(Carlitz, ExpFunctionalEquation) {
    for (unsigned q : {2u, 3u}) {
        const Carlitz C = carlitz(q);
        const ExpSeries E = C.exp_series(4);
        for (unsigned d = 0; d <= 2; ++d)
            for (const Poly& a : C.A().monics(d)) EXPECT_TRUE(C.exp_functional_equation_holds(E, a));
    }
}
