#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spiegel/finite_field.hpp"

namespace spiegel {

/// Dense univariate polynomial, coefficients low-to-high.
/// Canonical form has no trailing zero coefficients; the zero polynomial is
/// empty and has degree -1.
struct Poly {
    std::vector<Elem> c;

    Poly() = default;
    explicit Poly(std::vector<Elem> coeffs) : c(std::move(coeffs)) { trim(); }
    static Poly constant(Elem a) { return Poly(std::vector<Elem>{a}); }
    static Poly monomial(Elem a, unsigned k) {
        std::vector<Elem> v(k + 1, 0);
        v[k] = a;
        return Poly(std::move(v));
    }

    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    Elem lead() const { return c.empty() ? 0 : c.back(); }
    Elem operator[](std::size_t i) const { return i < c.size() ? c[i] : 0; }
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_one() const { return c.size() == 1 && c[0] == 1; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }
    friend bool operator!=(const Poly& a, const Poly& b) { return a.c != b.c; }
};

/// Canonical ordering: by degree, then coefficients from the top down.
bool poly_less(const Poly& a, const Poly& b);

/// Polynomial arithmetic over a fixed finite field.
class PolyRing {
public:
    explicit PolyRing(FieldPtr field) : F_(std::move(field)) {}

    const FiniteField& field() const { return *F_; }
    const FieldPtr& field_ptr() const { return F_; }

    Poly x() const { return Poly::monomial(1, 1); }
    Poly add(const Poly& a, const Poly& b) const;
    Poly sub(const Poly& a, const Poly& b) const;
    Poly neg(const Poly& a) const;
    Poly scale(const Poly& a, Elem s) const;
    Poly mul(const Poly& a, const Poly& b) const;
    Poly shift(const Poly& a, unsigned k) const;
    /// a = q*b + r with deg r < deg b
    std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) const;
    Poly mod(const Poly& a, const Poly& b) const { return divmod(a, b).second; }
    /// Exact quotient; throws std::domain_error when b does not divide a.
    Poly div_exact(const Poly& a, const Poly& b) const;
    bool divides(const Poly& b, const Poly& a) const;
    Poly monic(const Poly& a) const;
    Poly gcd(Poly a, Poly b) const;
    /// Returns (g, s, t) with s*a + t*b = g monic.
    struct XGcd {
        Poly g, s, t;
    };
    XGcd xgcd(const Poly& a, const Poly& b) const;
    Poly pow(Poly a, std::uint64_t k) const;
    Poly powmod(Poly a, std::uint64_t k, const Poly& m) const;
    Poly mulmod(const Poly& a, const Poly& b, const Poly& m) const { return mod(mul(a, b), m); }
    Poly derivative(const Poly& a) const;
    Elem eval(const Poly& a, Elem x) const;
    /// a(T)^(|F|^k): coefficients fixed by Frobenius of the field.
    Poly frobenius_power(const Poly& a, unsigned k) const;
    /// a(b(x))
    Poly compose(const Poly& a, const Poly& b) const;
    /// Multiplicity of irreducible p in a (a != 0).
    unsigned valuation(Poly a, const Poly& p) const;

    bool is_irreducible(const Poly& f) const;
    bool is_squarefree(const Poly& f) const;
    /// Monic irreducibles of degree d, sorted canonically.
    std::vector<Poly> irreducibles(unsigned d) const;
    /// All monic polynomials of degree d in canonical order.
    std::vector<Poly> monics(unsigned d) const;
    /// Splits a monic squarefree f whose irreducible factors all have degree k.
    std::vector<Poly> equal_degree_factor(const Poly& f, unsigned k, std::mt19937_64& rng) const;
    /// Full factorization of a nonzero polynomial into monic irreducibles with
    /// multiplicities (sorted canonically); the unit is dropped.
    std::vector<std::pair<Poly, unsigned>> factor(const Poly& f) const;
    Elem resultant(Poly a, Poly b) const;
    /// Unique polynomial of degree < xs.size() through the points.
    Poly interpolate(const std::vector<Elem>& xs, const std::vector<Elem>& ys) const;

    Poly random(unsigned max_deg, std::mt19937_64& rng) const;
    /// Integer value of the coefficient vector read in base |F|.
    std::uint64_t code(const Poly& a) const;
    Poly from_code(std::uint64_t v) const;

private:
    FieldPtr F_;
};

/// Human form such as "T^3+T+1"; coefficients outside the prime field are
/// written with their integer code, e.g. "3*T^2".
std::string format_poly(const FiniteField& F, const Poly& a, char var = 'T');
/// Parses the human form; throws std::invalid_argument on malformed input.
Poly parse_poly(const FiniteField& F, std::string_view s, char var = 'T');

}  // namespace spiegel
