#include "spiegel/zeta.hpp"

#include <algorithm>
#include <string>

#include "spiegel/errors.hpp"

namespace spiegel {

namespace {

Poly first_irreducible(const PolyRing& A, unsigned m) {
    const std::uint64_t q = A.field().size();
    std::uint64_t total = 1;
    for (unsigned i = 0; i < m; ++i) total *= q;
    for (std::uint64_t c = 0; c < total; ++c) {
        Poly f = A.from_code(c);
        f.c.resize(m + 1, 0);
        f.c[m] = 1;
        if (A.is_irreducible(f)) return f;
    }
    throw std::logic_error("no irreducible polynomial found");
}

Elem eval_in(const FiniteField& F, const Poly& a, Elem t) {
    Elem r = 0;
    for (std::size_t i = a.c.size(); i-- > 0;) r = F.add(F.mul(r, t), a.c[i]);
    return r;
}

/// Rank of an m x m matrix over k stored row-major; destroys the input.
unsigned rank_in_place(const FiniteField& k, std::vector<Elem>& a, unsigned m) {
    unsigned rank = 0;
    for (unsigned col = 0; col < m && rank < m; ++col) {
        unsigned piv = rank;
        while (piv < m && a[piv * m + col] == 0) ++piv;
        if (piv == m) continue;
        if (piv != rank)
            for (unsigned j = 0; j < m; ++j) std::swap(a[piv * m + j], a[rank * m + j]);
        const Elem inv = k.inv(a[rank * m + col]);
        for (unsigned r = rank + 1; r < m; ++r) {
            const Elem x = a[r * m + col];
            if (!x) continue;
            const Elem fac = k.mul(x, inv);
            for (unsigned j = col; j < m; ++j)
                a[r * m + j] = k.sub(a[r * m + j], k.mul(fac, a[rank * m + j]));
        }
        ++rank;
    }
    return rank;
}

}  // namespace

std::uint64_t count_places(const Tower& tw, unsigned m) {
    const FiniteField& k = tw.k();
    const std::uint64_t q = tw.q();
    const unsigned d = tw.d();
    // phi_P(x) = sum_i c_i x^{q^i} with c_i = f[q^i - 1]
    std::vector<Poly> c;
    for (std::size_t qi = 1, i = 0; i <= d; ++i, qi *= q) c.push_back(tw.f()[qi - 1]);

    std::uint64_t total = tw.num_infinite_places();
    if (m == 1) {
        for (Elem t = 0; t < k.size(); ++t) {
            Elem s = 0;
            for (const Poly& ci : c) s = k.add(s, eval_in(k, ci, t));
            total += (s == 0 ? q - 1 : 0) + (eval_in(k, c[0], t) == 0 ? 1 : 0);
        }
        return total;
    }

    const PolyRing A(tw.prime().k);
    const FieldPtr Fm = FiniteField::extension(tw.prime().k, first_irreducible(A, m).c);
    const FiniteField& F = *Fm;
    // bpow[i][j] = (y^j)^(q^i)
    std::vector<std::vector<Elem>> bpow(d + 1, std::vector<Elem>(m));
    {
        Elem yj = 1;
        const Elem y = static_cast<Elem>(q);
        for (unsigned j = 0; j < m; ++j) {
            Elem v = yj;
            for (unsigned i = 0; i <= d; ++i) {
                bpow[i][j] = v;
                v = F.pow(v, q);
            }
            yj = F.mul(yj, y);
        }
    }
    std::vector<std::uint64_t> qpow(m + 1, 1);
    for (unsigned i = 1; i <= m; ++i) qpow[i] = qpow[i - 1] * q;

    std::vector<Elem> ct(d + 1), mat(static_cast<std::size_t>(m) * m);
    for (Elem t = 0; t < F.size(); ++t) {
        for (unsigned i = 0; i <= d; ++i) ct[i] = eval_in(F, c[i], t);
        for (unsigned j = 0; j < m; ++j) {
            Elem v = 0;
            for (unsigned i = 0; i <= d; ++i)
                if (ct[i]) v = F.add(v, F.mul(ct[i], bpow[i][j]));
            // codes nest, so the k-coordinates are the base-q digits
            for (unsigned r = 0; r < m; ++r, v /= static_cast<Elem>(q)) mat[r * m + j] = v % static_cast<Elem>(q);
        }
        const unsigned rank = rank_in_place(k, mat, m);
        total += qpow[m - rank] - 1 + (ct[0] == 0 ? 1 : 0);
    }
    return total;
}

ZetaData zeta_numerator(const Tower& tw) {
    ZetaData z;
    const unsigned g = tw.genus();
    const unsigned q = tw.q();
    z.genus = g;

    // all 2g counts when F_{q^{2g}} fits the table limit
    unsigned M = std::max(1u, 2 * g);
    {
        mpz_class size;
        mpz_ui_pow_ui(size.get_mpz_t(), q, M);
        if (size > FiniteField::kMaxSize) M = g;
    }
    for (unsigned m = 1; m <= M; ++m) z.counts.push_back(count_places(tw, m));

    // Newton identities for prod (1 - alpha_i t), S_m = q^m + 1 - N_m
    std::vector<mpz_class> S(M + 1), a(2 * g + 1);
    for (unsigned m = 1; m <= M; ++m) {
        mpz_class qm;
        mpz_ui_pow_ui(qm.get_mpz_t(), q, m);
        S[m] = qm + 1 - mpz_class(std::to_string(z.counts[m - 1]));
    }
    a[0] = 1;
    const unsigned top = std::min(M, 2 * g);
    for (unsigned i = 1; i <= top; ++i) {
        mpz_class acc = 0;
        for (unsigned j = 1; j <= i; ++j) acc += S[j] * a[i - j];
        if (acc % i != 0) throw SpiegelError(ErrorKind::SymmetryViolation, "Newton identity is not integral");
        a[i] = -acc / i;
    }
    auto qpow = [&](unsigned e) {
        mpz_class r;
        mpz_ui_pow_ui(r.get_mpz_t(), q, e);
        return r;
    };
    if (g == 0) {
        if (S[1] != 0) throw SpiegelError(ErrorKind::SymmetryViolation, "genus 0 but N_1 != q + 1");
        z.symmetry_verified = true;
    } else if (M >= 2 * g) {
        for (unsigned i = 0; i <= g; ++i)
            if (a[2 * g - i] != qpow(g - i) * a[i])
                throw SpiegelError(ErrorKind::SymmetryViolation,
                                   "zeta coefficients violate the functional equation at i = " + std::to_string(i));
        z.symmetry_verified = true;
    } else {
        for (unsigned i = 0; i < g; ++i) a[2 * g - i] = qpow(g - i) * a[i];
    }
    z.coeffs = a;
    z.class_number = 0;
    for (const auto& x : a) z.class_number += x;
    return z;
}

}  // namespace spiegel
