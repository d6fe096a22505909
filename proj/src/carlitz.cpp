#include "spiegel/carlitz.hpp"

#include "spiegel/errors.hpp"

namespace spiegel {

KFrac KArith::make(Poly num, Poly den) const {
    if (den.is_zero()) throw std::domain_error("zero denominator");
    if (num.is_zero()) return {Poly{}, Poly::constant(1)};
    Poly g = A_.gcd(num, den);
    num = A_.div_exact(num, g);
    den = A_.div_exact(den, g);
    const Elem l = den.lead();
    if (l != 1) {
        const Elem li = A_.field().inv(l);
        num = A_.scale(num, li);
        den = A_.scale(den, li);
    }
    return {std::move(num), std::move(den)};
}

KFrac KArith::add(const KFrac& a, const KFrac& b) const {
    if (a.den == b.den) return make(A_.add(a.num, b.num), a.den);
    return make(A_.add(A_.mul(a.num, b.den), A_.mul(b.num, a.den)), A_.mul(a.den, b.den));
}

KFrac KArith::sub(const KFrac& a, const KFrac& b) const {
    if (a.den == b.den) return make(A_.sub(a.num, b.num), a.den);
    return make(A_.sub(A_.mul(a.num, b.den), A_.mul(b.num, a.den)), A_.mul(a.den, b.den));
}

KFrac KArith::mul(const KFrac& a, const KFrac& b) const {
    return make(A_.mul(a.num, b.num), A_.mul(a.den, b.den));
}

KFrac KArith::div(const KFrac& a, const KFrac& b) const {
    if (b.is_zero()) throw std::domain_error("division by zero in K");
    return make(A_.mul(a.num, b.den), A_.mul(a.den, b.num));
}

KFrac KArith::frobenius(const KFrac& a, unsigned k) const {
    return {A_.frobenius_power(a.num, k), A_.frobenius_power(a.den, k)};
}

LinearizedPoly Carlitz::action(const Poly& a) const {
    // phi_{T^j} built by phi_T o phi_{T^{j-1}} = T*phi + phi^q
    LinearizedPoly out;
    LinearizedPoly cur{{Poly::constant(1)}};
    for (int j = 0; j <= a.deg(); ++j) {
        if (j > 0) {
            LinearizedPoly next;
            next.c.resize(cur.c.size() + 1);
            for (std::size_t i = 0; i < cur.c.size(); ++i) {
                next.c[i] = A_.add(next.c[i], A_.mul(A_.x(), cur.c[i]));
                next.c[i + 1] = A_.add(next.c[i + 1], A_.frobenius_power(cur.c[i], 1));
            }
            cur = std::move(next);
        }
        const Elem aj = a.c[j];
        if (!aj) continue;
        if (out.c.size() < cur.c.size()) out.c.resize(cur.c.size());
        for (std::size_t i = 0; i < cur.c.size(); ++i) out.c[i] = A_.add(out.c[i], A_.scale(cur.c[i], aj));
    }
    out.trim();
    return out;
}

LinearizedPoly Carlitz::add(const LinearizedPoly& f, const LinearizedPoly& g) const {
    LinearizedPoly r;
    r.c.resize(std::max(f.c.size(), g.c.size()));
    for (std::size_t i = 0; i < r.c.size(); ++i) {
        const Poly a = i < f.c.size() ? f.c[i] : Poly{};
        const Poly b = i < g.c.size() ? g.c[i] : Poly{};
        r.c[i] = A_.add(a, b);
    }
    r.trim();
    return r;
}

LinearizedPoly Carlitz::compose(const LinearizedPoly& f, const LinearizedPoly& g) const {
    LinearizedPoly r;
    if (f.c.empty() || g.c.empty()) return r;
    r.c.resize(f.c.size() + g.c.size() - 1);
    for (std::size_t i = 0; i < f.c.size(); ++i)
        for (std::size_t j = 0; j < g.c.size(); ++j)
            r.c[i + j] = A_.add(r.c[i + j], A_.mul(f.c[i], A_.frobenius_power(g.c[j], static_cast<unsigned>(i))));
    r.trim();
    return r;
}

std::vector<Poly> Carlitz::torsion_polynomial(const Poly& P) const {
    const LinearizedPoly phi = action(P);
    std::size_t qd = 1;
    for (int i = 0; i < P.deg(); ++i) qd *= q();
    std::vector<Poly> f(qd);
    std::size_t qi = 1;
    for (std::size_t i = 0; i < phi.c.size(); ++i) {
        f[qi - 1] = phi.c[i];
        qi *= q();
    }
    if (!is_eisenstein(f, P))
        throw SpiegelError(ErrorKind::EisensteinFailure, "torsion polynomial not Eisenstein at " + format_poly(A_.field(), P));
    return f;
}

bool Carlitz::is_eisenstein(const std::vector<Poly>& f, const Poly& P) const {
    if (f.empty() || !f.back().is_one()) return false;
    for (std::size_t i = 0; i + 1 < f.size(); ++i)
        if (!f[i].is_zero() && !A_.divides(P, f[i])) return false;
    if (f[0].is_zero()) return false;
    return !A_.divides(A_.mul(P, P), f[0]);
}

std::vector<Poly> Carlitz::factorials(unsigned N) const {
    std::vector<Poly> D;
    D.push_back(Poly::constant(1));
    for (unsigned i = 1; i < N; ++i) {
        const Poly Tqi = A_.frobenius_power(A_.x(), i);
        D.push_back(A_.mul(A_.sub(Tqi, A_.x()), A_.frobenius_power(D.back(), 1)));
    }
    return D;
}

ExpSeries Carlitz::exp_series(unsigned N) const {
    if (N < 1) throw std::invalid_argument("exp_series: truncation must be >= 1");
    KArith K(A_);
    ExpSeries E;
    E.N = N;
    for (const auto& D : factorials(N)) E.e.push_back(K.make(Poly::constant(1), D));
    return E;
}

bool Carlitz::exp_functional_equation_holds(const ExpSeries& E, const Poly& a) const {
    KArith K(A_);
    const LinearizedPoly phi = action(a);
    for (unsigned m = 0; m < E.N; ++m) {
        // coefficient of z^(q^m)
        KFrac lhs = K.mul(K.from_poly(A_.frobenius_power(a, m)), E.e[m]);
        KFrac rhs;
        for (unsigned j = 0; j <= m && j < phi.c.size(); ++j)
            rhs = K.add(rhs, K.mul(K.from_poly(phi.c[j]), K.frobenius(E.e[m - j], j)));
        if (!(lhs == rhs)) return false;
    }
    return true;
}

}  // namespace spiegel
