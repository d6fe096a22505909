#pragma once

#include <deque>
#include <mutex>
#include <vector>

#include "spiegel/tower.hpp"

namespace spiegel {

/// Truncated power series over the residue field A/P.
using Series = std::vector<Elem>;

/// lambda^val * (c_0 + c_1 lambda + ...); known up to lambda^(val + c.size()).
struct Laurent {
    int val = 0;
    Series c;
    int precision() const { return val + static_cast<int>(c.size()); }
};

/// Completion of R at the prime above P: R_q = F_{q^d}[[lambda]], with T(lambda)
/// the unique root of f(T, lambda) = 0 lifting T mod P. All series are
/// truncated at a fixed working precision.
class LocalFrame {
public:
    LocalFrame(TowerPtr tower, unsigned precision);

    const Tower& tower() const { return *tower_; }
    const FiniteField& F() const { return tower_->residue(); }
    unsigned precision() const { return N_; }
    const Series& T() const { return T_; }

    Series add(const Series& a, const Series& b) const;
    Series sub(const Series& a, const Series& b) const;
    Series scale(const Series& a, Elem s) const;
    /// Product truncated to min(len a, len b).
    Series mul(const Series& a, const Series& b) const;
    /// Inverse of a series with nonzero constant term.
    Series inv(const Series& a) const;
    /// Formal derivative; one coefficient shorter.
    Series derivative(const Series& a) const;
    /// g(s) for s with zero constant term, truncated to min(len g, len s).
    Series compose(const Series& g, const Series& s) const;
    /// Coefficient-wise inverse Frobenius (x -> x^(1/p^times)).
    Series root_frobenius(const Series& a, unsigned times) const;

    /// a(T(lambda)) for a in A.
    Series eval_A(const Poly& a) const;
    /// Image of an element of R.
    Series expand(const REl& x) const;
    /// Image of an element of L, as a Laurent series.
    Laurent expand(const LEl& x) const;
    /// Valuation at the prime above P, computed from the expansion; throws when
    /// the working precision cannot see a nonzero coefficient.
    int valuation(const REl& x) const;
    /// d(beta)/beta as the coefficient of dlambda (Laurent, val >= -1).
    Laurent dlog(const REl& beta) const;

    /// sigma_a(lambda) = phi_a(lambda) as a series.
    Series sigma_series(const Poly& a) const;
    /// sigma_a(g dlambda) = g(s) s' dlambda, result truncated to len(g) (<= N-1).
    Series sigma_differential(const Poly& a, const Series& g) const;

private:
    const Series& T_power(std::size_t e) const;

    TowerPtr tower_;
    unsigned N_;
    Series T_;
    mutable std::mutex mu_;
    mutable std::deque<Series> Tpow_;
};

}  // namespace spiegel
