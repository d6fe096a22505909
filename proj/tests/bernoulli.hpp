#pragma once

#include <vector>

#include "spiegel/carlitz.hpp"

namespace spiegel::test {

/// v_P of the coefficient of z^k in z / exp_C(z), for 0 <= k < N (-1 when the
/// coefficient vanishes). For k < q^deg(P) this is v_P of the Bernoulli-Carlitz
/// number BC_k, since the Carlitz factorial of k is prime to P.
inline std::vector<int> bernoulli_carlitz_valuations(const Carlitz& C, const Poly& P, unsigned N) {
    const PolyRing& A = C.A();
    const KArith K(A);
    const unsigned q = C.q();
    unsigned levels = 1;
    for (std::uint64_t qi = q; qi - 1 < N; qi *= q) ++levels;
    const auto D = C.factorials(levels);
    // exp_C(z) / z
    std::vector<KFrac> e(N);
    for (std::uint64_t i = 0, qi = 1; i < levels; ++i, qi *= q)
        if (qi - 1 < N) e[qi - 1] = K.make(Poly::constant(1), D[i]);
    std::vector<KFrac> b(N);
    b[0] = K.from_poly(Poly::constant(1));
    for (unsigned k = 1; k < N; ++k) {
        KFrac s;
        for (unsigned j = 1; j <= k; ++j)
            if (!e[j].is_zero() && !b[k - j].is_zero()) s = K.add(s, K.mul(e[j], b[k - j]));
        b[k] = K.sub(KFrac{}, s);
    }
    std::vector<int> v(N, -1);
    for (unsigned k = 0; k < N; ++k)
        if (!b[k].is_zero())
            v[k] = static_cast<int>(A.valuation(b[k].num, P)) - static_cast<int>(A.valuation(b[k].den, P));
    return v;
}

}  // namespace spiegel::test
