#include <gtest/gtest.h>

#include <random>

#include "spiegel/poly.hpp"

using namespace spiegel;

namespace {

// Gauss: number of monic irreducibles of degree n over F_q
std::uint64_t necklace(std::uint64_t q, unsigned n) {
    auto mu = [](unsigned m) {
        int r = 1;
        for (unsigned p = 2; p * p <= m; ++p)
            if (m % p == 0) {
                m /= p;
                if (m % p == 0) return 0;
                r = -r;
            }
        return m > 1 ? -r : r;
    };
    long long s = 0;
    for (unsigned e = 1; e <= n; ++e)
        if (n % e == 0) {
            long long qe = 1;
            for (unsigned i = 0; i < e; ++i) qe *= static_cast<long long>(q);
            s += mu(n / e) * qe;
        }
    return static_cast<std::uint64_t>(s / n);
}

}  // namespace

TEST(Poly, ParseFormatRoundTrip) {
    const FieldPtr F = FiniteField::from_desc(standard_field(2));
    const Poly p = parse_poly(*F, "T^3+T+1");
    EXPECT_EQ(p.c, (std::vector<Elem>{1, 1, 0, 1}));
    EXPECT_EQ(format_poly(*F, p), "T^3+T+1");
    const FieldPtr F4 = FiniteField::from_desc(standard_field(4));
    EXPECT_EQ(format_poly(*F4, parse_poly(*F4, "T^2+2*T+1")), "T^2+2*T+1");
    EXPECT_THROW(parse_poly(*F, "T^^2"), std::invalid_argument);
    EXPECT_THROW(parse_poly(*F, "X+1"), std::invalid_argument);
}

TEST(Poly, IrreducibleCountsMatchNecklaceFormula) {
    for (unsigned q : {2u, 3u, 4u}) {
        const PolyRing A(FiniteField::from_desc(standard_field(q)));
        for (unsigned n = 1; n <= (q == 2 ? 6u : 4u); ++n) EXPECT_EQ(A.irreducibles(n).size(), necklace(q, n)) << q << " " << n;
    }
}

TEST(Poly, FactorReassembles) {
    const PolyRing A(FiniteField::from_desc(standard_field(3)));
    std::mt19937_64 rng(7);
    for (int t = 0; t < 40; ++t) {
        Poly f = A.monic(A.random(9, rng));
        if (f.is_zero()) continue;
        Poly prod = Poly::constant(1);
        for (const auto& [g, e] : A.factor(f)) {
            EXPECT_TRUE(A.is_irreducible(g));
            prod = A.mul(prod, A.pow(g, e));
        }
        EXPECT_EQ(prod, f);
    }
}

TEST(Poly, XgcdBezout) {
    const PolyRing A(FiniteField::from_desc(standard_field(4)));
    std::mt19937_64 rng(3);
    for (int t = 0; t < 30; ++t) {
        const Poly a = A.random(6, rng), b = A.random(5, rng);
        if (a.is_zero() && b.is_zero()) continue;
        const auto x = A.xgcd(a, b);
        EXPECT_EQ(A.add(A.mul(x.s, a), A.mul(x.t, b)), x.g);
        EXPECT_TRUE(A.divides(x.g, a));
        EXPECT_TRUE(A.divides(x.g, b));
    }
}

TEST(Poly, DivmodIdentity) {
    const PolyRing A(FiniteField::from_desc(standard_field(2)));
    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        const Poly a = A.random(12, rng), b = A.random(4, rng);
        if (b.is_zero()) continue;
        const auto [qq, r] = A.divmod(a, b);
        EXPECT_LT(r.deg(), b.deg());
        EXPECT_EQ(A.add(A.mul(qq, b), r), a);
    }
}
