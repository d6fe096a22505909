#pragma once

#include <vector>

#include "spiegel/poly.hpp"

namespace spiegel {

/// Element of K = k(T) as a reduced fraction with monic denominator.
struct KFrac {
    Poly num;
    Poly den = Poly::constant(1);

    bool is_zero() const { return num.is_zero(); }
    friend bool operator==(const KFrac& a, const KFrac& b) { return a.num == b.num && a.den == b.den; }
};

class KArith {
public:
    explicit KArith(const PolyRing& A) : A_(A) {}
    KFrac make(Poly num, Poly den) const;
    KFrac from_poly(const Poly& a) const { return make(a, Poly::constant(1)); }
    KFrac add(const KFrac& a, const KFrac& b) const;
    KFrac sub(const KFrac& a, const KFrac& b) const;
    KFrac mul(const KFrac& a, const KFrac& b) const;
    KFrac div(const KFrac& a, const KFrac& b) const;
    /// a^(q^k) with q = |k|.
    KFrac frobenius(const KFrac& a, unsigned k) const;

private:
    const PolyRing& A_;
};

/// sum_i c[i] * x^(q^i) with c[i] in A.
struct LinearizedPoly {
    std::vector<Poly> c;

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }
    friend bool operator==(const LinearizedPoly& a, const LinearizedPoly& b) { return a.c == b.c; }
};

/// exp_C(z) = sum_i e_i z^(q^i), truncated to i < N.
struct ExpSeries {
    unsigned N = 0;
    std::vector<KFrac> e;
};

class Carlitz {
public:
    explicit Carlitz(FieldPtr k) : A_(std::move(k)) {}

    const PolyRing& A() const { return A_; }
    unsigned q() const { return A_.field().size(); }

    /// phi_a as an additive polynomial.
    LinearizedPoly action(const Poly& a) const;
    LinearizedPoly add(const LinearizedPoly& f, const LinearizedPoly& g) const;
    /// f o g
    LinearizedPoly compose(const LinearizedPoly& f, const LinearizedPoly& g) const;
    /// Dense coefficients over A of f(x) = phi_P(x)/x, degree q^deg(P) - 1.
    /// Throws EisensteinFailure when the Eisenstein pattern at P is violated.
    std::vector<Poly> torsion_polynomial(const Poly& P) const;
    bool is_eisenstein(const std::vector<Poly>& f, const Poly& P) const;

    /// Carlitz factorials D_0..D_{N-1}.
    std::vector<Poly> factorials(unsigned N) const;
    ExpSeries exp_series(unsigned N) const;
    /// exp_C(a z) == phi_a(exp_C(z)) modulo z^(q^N).
    bool exp_functional_equation_holds(const ExpSeries& E, const Poly& a) const;

private:
    PolyRing A_;
};

}  // namespace spiegel
