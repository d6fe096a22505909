#include <gtest/gtest.h>

#include "spiegel/finite_field.hpp"

using namespace spiegel;

class FieldAxioms : public ::testing::TestWithParam<unsigned> {};

TEST_P(FieldAxioms, RingLawsHoldExhaustively) {
    const FieldPtr F = FiniteField::from_desc(standard_field(GetParam()));
    const Elem q = F->size();
    ASSERT_EQ(q, GetParam());
    for (Elem a = 0; a < q; ++a) {
        EXPECT_EQ(F->add(a, F->neg(a)), 0u);
        if (a) EXPECT_EQ(F->mul(a, F->inv(a)), 1u);
        for (Elem b = 0; b < q; ++b) {
            EXPECT_EQ(F->add(a, b), F->add(b, a));
            EXPECT_EQ(F->mul(a, b), F->mul(b, a));
            for (Elem c = 0; c < q; ++c) EXPECT_EQ(F->mul(a, F->add(b, c)), F->add(F->mul(a, b), F->mul(a, c)));
        }
    }
}

TEST_P(FieldAxioms, FrobeniusIsAdditiveAndRootInvertsIt) {
    const FieldPtr F = FiniteField::from_desc(standard_field(GetParam()));
    for (Elem a = 0; a < F->size(); ++a) {
        EXPECT_EQ(F->frobenius(a), F->pow(a, F->characteristic()));
        EXPECT_EQ(F->root_frobenius(F->frobenius(a)), a);
        for (Elem b = 0; b < F->size(); ++b)
            EXPECT_EQ(F->frobenius(F->add(a, b)), F->add(F->frobenius(a), F->frobenius(b)));
    }
}

INSTANTIATE_TEST_SUITE_P(Supported, FieldAxioms, ::testing::Values(2u, 3u, 4u, 5u, 8u, 9u));

TEST(FiniteField, GeneratorHasFullOrder) {
    for (unsigned q : {4u, 8u, 9u}) {
        const FieldPtr F = FiniteField::from_desc(standard_field(q));
        EXPECT_EQ(F->element_order(F->generator()), q - 1);
    }
}

TEST(FiniteField, ExtensionKeepsBaseCodes) {
    const FieldPtr k = FiniteField::from_desc(standard_field(4));
    // y^2 + y + 2 is irreducible over F_4 (2 = the class of x)
    const FieldPtr F = FiniteField::extension(k, {2, 1, 1});
    ASSERT_EQ(F->size(), 16u);
    for (Elem a = 0; a < 4; ++a)
        for (Elem b = 0; b < 4; ++b) {
            EXPECT_EQ(F->add(a, b), k->add(a, b));
            EXPECT_EQ(F->mul(a, b), k->mul(a, b));
        }
    // y = code 4 satisfies its modulus
    const Elem y = 4;
    EXPECT_EQ(F->add(F->add(F->mul(y, y), y), 2), 0u);
}

TEST(FiniteField, UnsupportedSizeThrows) {
    EXPECT_ANY_THROW(standard_field(6));
    EXPECT_ANY_THROW(standard_field(1));
}
