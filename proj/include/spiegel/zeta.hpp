#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "spiegel/tower.hpp"

namespace spiegel {

/// Numerator P(t) = sum a_i t^i of the zeta function of L, from point counts.
struct ZetaData {
    unsigned genus = 0;
    /// N_1..N_M: degree-one places of L over F_{q^m}.
    std::vector<std::uint64_t> counts;
    std::vector<mpz_class> coeffs;  // a_0..a_{2g}
    /// a_i = q^{g-i} a_{2g-i} checked on counts up to 2g; false when only
    /// counts up to g were affordable and the upper half was filled in.
    bool symmetry_verified = false;
    mpz_class class_number;  // P(1) = |Cl^0(L)|
};

/// Degree-one places of L over F_{q^m}: affine points of f(T, x) = 0 plus the
/// rational infinite places.
std::uint64_t count_places(const Tower& tw, unsigned m);

/// Throws SymmetryViolation when the counts contradict the functional
/// equation.
ZetaData zeta_numerator(const Tower& tw);

}  // namespace spiegel
