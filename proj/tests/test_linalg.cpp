#include <gtest/gtest.h>

#include <random>

#include "spiegel/linalg.hpp"

using namespace spiegel;

TEST(FqMatrix, KernelAndSolve) {
    const FieldPtr F = FiniteField::from_desc(standard_field(3));
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        FqMatrix M(F, 4, 6);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 6; ++j) M.at(i, j) = static_cast<Elem>(rng() % 3);
        const auto K = M.kernel();
        EXPECT_EQ(K.size() + M.rank(), 6u);
        for (const auto& v : K)
            for (Elem x : M.apply(v)) EXPECT_EQ(x, 0u);
        FqVec x0(6);
        for (auto& x : x0) x = static_cast<Elem>(rng() % 3);
        const auto b = M.apply(x0);
        const auto x = M.solve(b);
        ASSERT_TRUE(x);
        EXPECT_EQ(M.apply(*x), b);
    }
}

TEST(SmithForm, TransformsAndDivisibility) {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 20; ++t) {
        IntMatrix M(4, 5);
        for (auto& x : M.a) x = static_cast<long>(rng() % 13) - 6;
        const SmithForm s = smith_normal_form(M);
        EXPECT_EQ(s.U.mul(M).mul(s.V), s.S);
        EXPECT_TRUE(s.S.is_diagonal());
        EXPECT_EQ(abs(s.U.det()), 1);
        EXPECT_EQ(abs(s.V.det()), 1);
        const auto inv = s.invariants();
        for (std::size_t i = 1; i < inv.size(); ++i) EXPECT_EQ(inv[i] % inv[i - 1], 0);
    }
}

TEST(SmithForm, KnownInvariants) {
    IntMatrix M(2, 2);
    M.at(0, 0) = 2;
    M.at(1, 1) = 3;
    EXPECT_EQ(smith_normal_form(M).invariants(), (std::vector<mpz_class>{1, 6}));
}

TEST(LatticeHnf, IndexIsAbsoluteDeterminant) {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 20; ++t) {
        IntMatrix M(3, 3);
        for (auto& x : M.a) x = static_cast<long>(rng() % 9) - 4;
        const mpz_class det = M.det();
        if (det == 0) continue;
        LatticeHnf H(3);
        for (std::size_t i = 0; i < 3; ++i) H.add({M.at(i, 0), M.at(i, 1), M.at(i, 2)});
        ASSERT_TRUE(H.full_rank());
        EXPECT_EQ(H.index(), abs(det));
        // sums of generators stay inside
        EXPECT_TRUE(H.contains({M.at(0, 0) + M.at(1, 0), M.at(0, 1) + M.at(1, 1), M.at(0, 2) + M.at(1, 2)}));
        EXPECT_FALSE(H.add({M.at(2, 0) * 5, M.at(2, 1) * 5, M.at(2, 2) * 5}));
    }
}
