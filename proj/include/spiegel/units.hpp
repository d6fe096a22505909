#pragma once

#include <vector>

#include "spiegel/differentials.hpp"
#include "spiegel/tower.hpp"

namespace spiegel {

/// Units of R with certified inverses.
struct UnitSet {
    std::vector<Poly> labels;  // a for the seed unit u_a
    std::vector<REl> units;
    std::vector<REl> inverses;
    /// F_p-rank of the image in R^x / (R^x)^p.
    std::size_t rank = 0;
    bool saturated = false;
    unsigned saturation_steps = 0;
};

/// u_a = phi_a(lambda) / lambda, for any a prime to P.
REl cyclotomic_unit(const Tower& tw, const Poly& a);
/// u_a for the monic representatives a != 1 of (A/P)^x / k^x, with inverses
/// sigma_a(u_b), b = a^{-1} mod P.
UnitSet cyclotomic_units(const Tower& tw);
/// u_{ab} == sigma_b(u_a) * u_b
bool cocycle_holds(const Tower& tw, const Poly& a, const Poly& b);

/// F_p-digits of the first M coefficients of a local series.
FqVec prime_coordinates(const FiniteField& F, const Series& c, std::size_t M);
/// k-digits of the first M coefficients (F is an extension of k).
FqVec base_coordinates(const FiniteField& F, const Series& c, std::size_t M);

/// Separation bound: a nonzero Cartier-fixed differential with simple poles at
/// infinity has a nonzero local coefficient below this index.
unsigned separation_bound(const Tower& tw);

/// Replaces units by p-th roots until no F_p-combination is a p-th power.
/// Detection goes through the kernel of the dlog coordinate matrix; throws
/// RankDeficit when the final rank is below the unit rank.
UnitSet saturate_units(const UnitSet& U, const DifferentialOps& ops);

/// Exhaustive check that no nontrivial F_p-combination of the units is a p-th
/// power in L. Cost p^rank root extractions.
bool no_pth_power_combination(const Tower& tw, const UnitSet& U);

}  // namespace spiegel
