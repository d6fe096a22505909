#pragma once

#include <memory>
#include <vector>

#include "spiegel/delta_module.hpp"
#include "spiegel/local.hpp"
#include "spiegel/tower.hpp"

namespace spiegel {

/// omega = h * eta with eta = dlambda / F_T. Since F_T and F_x generate the
/// unit ideal of R, eta is a free generator of Omega_R, so omega is integral
/// exactly when h lies in R (denominator 1).
struct Differential {
    LEl h;
    bool integral() const { return h.den.is_one(); }
};

/// sum_i c_i lambda^i dlambda in Omega_R / q^N Omega_R.
struct LocalDifferential {
    unsigned N = 0;
    Series c;
};

class DifferentialOps {
public:
    /// `frame` must have precision at least max(N) used with reduce() plus the
    /// pole order of any A-denominator at q.
    DifferentialOps(TowerPtr tower, std::shared_ptr<const LocalFrame> frame);

    const Tower& tower() const { return *tower_; }
    const LocalFrame& frame() const { return *frame_; }

    /// a dT + b dlambda
    Differential make(const REl& a, const REl& b) const;
    Differential from_eta(const LEl& h) const { return {tower_->make(h.num, h.den)}; }
    Differential dlambda() const;
    /// dh for h in R
    Differential exact(const REl& h) const;
    /// du/u for a unit u of R; throws NotAUnit otherwise.
    Differential dlog_unit(const REl& u) const;
    /// d(beta)/beta for any nonzero beta in R (generally not integral).
    Differential dlog(const REl& beta) const;
    Differential add(const Differential& a, const Differential& b) const;
    Differential sub(const Differential& a, const Differential& b) const;
    Differential mul(const Differential& a, const LEl& u) const;
    bool equal(const Differential& a, const Differential& b) const;
    bool is_zero(const Differential& a) const { return tower_->is_zero(a.h.num); }
    /// Coefficient g of omega = g dlambda.
    LEl dlambda_coefficient(const Differential& w) const;

    /// Global q-Cartier operator via the bivariate closed formula.
    Differential cartier(const Differential& w) const;
    /// Coefficients modulo q^N; throws PoleAtQ for a pole at q.
    LocalDifferential reduce(const Differential& w, unsigned N) const;
    /// Truncation N contracts to ceil((N - q + 1)/q).
    LocalDifferential local_cartier(const LocalDifferential& l) const;
    /// (1 - c^d) from truncation q^d to truncation 1.
    LocalDifferential one_minus_cd(const LocalDifferential& l) const;

private:
    TowerPtr tower_;
    std::shared_ptr<const LocalFrame> frame_;
    std::vector<Poly> Fpow_;  // f^(q-1), dense in x, no reduction
    Series FT_local_inv_;
};

/// Delta-module Omega_R / q^{q^d} Omega_R over A/P with basis lambda^i dlambda.
DeltaModule local_quotient_module(const LocalFrame& frame);

struct FiltrationReport {
    /// character exponent of each graded piece lambda^i dlambda (i < q^d)
    std::vector<unsigned> piece_character;
    std::vector<unsigned> table;  // eigen dims of Omega_R / q^{q^d}
    bool ok = true;
};
/// Checks sigma_a(lambda^i dlambda) = a^{i+1} lambda^i dlambda mod q^{i+1}
/// for every a in (A/P)^x; throws FiltrationMismatch on failure.
FiltrationReport filtration_report(const LocalFrame& frame);

struct KernelReport {
    std::size_t dim_k = 0;           // dimension over k
    std::vector<FqVec> basis;        // A/P-basis inside (A/P)^{q^d}
    std::vector<unsigned> dims;      // eigen dims
    CyclicityVerdict verdict;
};
/// Kernel of 1 - c^d on Omega_R / q^{q^d}; throws TheoremViolation when it is
/// not cyclic or its omega-part is not one-dimensional.
KernelReport kernel_one_minus_cd(const DifferentialOps& ops);

}  // namespace spiegel
