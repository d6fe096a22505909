#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "spiegel/carlitz.hpp"
#include "spiegel/linalg.hpp"
#include "spiegel/poly.hpp"

namespace spiegel {

/// k = F_q, a monic irreducible P of degree d, and A/P as an extension of k.
struct PrimeData {
    FieldPtr k;
    Poly P;
    unsigned q = 0;
    unsigned d = 0;
    FieldPtr residue;
};

/// Validates q and P (monic irreducible, d >= 1) and builds A/P.
PrimeData make_prime_data(unsigned q, const Poly& P);

/// Element of R = A[lambda] in the basis lambda^0..lambda^{n-1}.
using REl = std::vector<Poly>;

/// Element of L: numerator in R over a monic denominator in A.
struct LEl {
    REl num;
    Poly den = Poly::constant(1);
};

/// Solves M y = b over K = k(T) for square nonsingular M with entries in A.
/// Returns nothing when M is singular.
std::optional<std::vector<KFrac>> solve_over_K(const PolyRing& A, std::vector<std::vector<Poly>> M,
                                               std::vector<KFrac> b);
/// Determinant over A via elimination in K.
Poly det_over_A(const PolyRing& A, const std::vector<std::vector<Poly>>& M);

/// Default ceiling on [L:K] = q^d - 1.
inline constexpr unsigned kDefaultDegreeLimit = 80;

class Tower {
public:
    /// Throws SizeBound when q^d - 1 exceeds `degree_limit`.
    static std::shared_ptr<const Tower> build(unsigned q, const Poly& P, unsigned degree_limit = kDefaultDegreeLimit);

    const PrimeData& prime() const { return pd_; }
    const PolyRing& A() const { return A_; }
    const Carlitz& carlitz() const { return carlitz_; }
    const FiniteField& k() const { return *pd_.k; }
    const FiniteField& residue() const { return *pd_.residue; }
    unsigned q() const { return pd_.q; }
    unsigned p() const { return pd_.k->characteristic(); }
    unsigned d() const { return pd_.d; }
    /// [L:K] = q^d - 1
    unsigned n() const { return n_; }
    /// Number of infinite places (q^d-1)/(q-1).
    unsigned num_infinite_places() const { return n_ / (q() - 1); }
    unsigned unit_rank() const { return num_infinite_places() - 1; }
    /// Genus from tame Riemann-Hurwitz.
    unsigned genus() const { return genus_; }
    /// f(x) = phi_P(x)/x, dense coefficients, length n+1.
    const std::vector<Poly>& f() const { return f_; }

    // ---- R arithmetic
    REl zero() const { return REl(n_); }
    REl one() const;
    REl lambda() const;
    REl from_A(const Poly& a) const;
    /// Reduces an arbitrary polynomial in lambda (dense, A coefficients) mod f.
    REl reduce(std::vector<Poly> dense) const;
    REl add(const REl& a, const REl& b) const;
    REl sub(const REl& a, const REl& b) const;
    REl neg(const REl& a) const;
    REl mul(const REl& a, const REl& b) const;
    REl scale(const REl& a, const Poly& c) const;
    REl pow(REl a, std::uint64_t e) const;
    bool is_zero(const REl& a) const;
    /// Largest T-degree among the coordinates (-1 for zero).
    int max_degree(const REl& a) const;
    /// Monic gcd of the coordinates (0 for zero).
    Poly content(const REl& a) const;
    /// Exact division of all coordinates by c; nothing when c does not divide.
    std::optional<REl> div_A(const REl& a, const Poly& c) const;

    // ---- L arithmetic
    LEl make(REl num, Poly den) const;
    LEl lfrom(const REl& a) const { return make(a, Poly::constant(1)); }
    LEl ladd(const LEl& a, const LEl& b) const;
    LEl lsub(const LEl& a, const LEl& b) const;
    LEl lmul(const LEl& a, const LEl& b) const;
    LEl linv(const LEl& a) const;
    bool lequal(const LEl& a, const LEl& b) const;
    /// Multiplication-by-a matrix over A (column j = a * lambda^j).
    std::vector<std::vector<Poly>> mul_matrix(const REl& a) const;
    /// N_{L/K}(a) for a in R.
    Poly norm(const REl& a) const;
    /// Inverse in R when a is a unit of R.
    std::optional<REl> inverse_in_R(const REl& a) const;

    // ---- partial derivatives of elements viewed as polynomials in (T, x)
    REl d_dx(const REl& a) const;
    REl d_dT(const REl& a) const;
    /// F_x(T, lambda) and F_T(T, lambda) for F(T, x) = f(x).
    const REl& Fx() const { return Fx_; }
    const REl& FT() const { return FT_; }

    // ---- residue field A/P
    Elem reduce_A(const Poly& a) const;
    Poly lift_residue(Elem r) const;
    /// Least-code generator g of (A/P)^x; delta_0 = sigma_g.
    Elem delta_generator() const { return gen_; }
    /// Monic representatives of (A/P)^x / k^x (deg < d), one per infinite place.
    const std::vector<Poly>& place_reps() const { return place_reps_; }
    /// Index in place_reps() of the class of a mod P (a prime to P).
    std::size_t place_index(const Poly& a) const;

    // ---- Galois action
    /// sigma_a(lambda) = phi_a(lambda) mod f; throws NotInvertible when P | a.
    REl sigma_lambda(const Poly& a) const;
    REl galois_apply(const Poly& a, const REl& x) const;
    LEl galois_apply(const Poly& a, const LEl& x) const;
    /// omega(sigma_a) = a mod P.
    Elem teichmuller(const Poly& a) const;

    /// p-th root in L when one exists.
    std::optional<LEl> pth_root(const LEl& x) const;

private:
    Tower() = default;
    const std::vector<REl>& sigma_powers(const Poly& a) const;

    PrimeData pd_;
    PolyRing A_{nullptr};
    Carlitz carlitz_{nullptr};
    unsigned n_ = 0;
    unsigned genus_ = 0;
    std::vector<Poly> f_;
    REl Fx_, FT_;
    Elem gen_ = 0;
    std::vector<Poly> place_reps_;
    std::vector<std::size_t> place_of_residue_;
    mutable std::mutex cache_mu_;
    mutable std::map<std::uint64_t, std::vector<REl>> sigma_cache_;
};

using TowerPtr = std::shared_ptr<const Tower>;

}  // namespace spiegel
