#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spiegel/linalg.hpp"

namespace spiegel {

/// Finite-dimensional A/P-vector space with an action of the cyclic group
/// Delta of order n = q^d - 1, given by the matrix of delta_0 = sigma_g.
/// Characters are omega^j, j = 0..n-1, with omega(delta_0) = g.
struct DeltaModule {
    FieldPtr F;
    unsigned order = 0;
    Elem gen = 0;
    FqMatrix action;
    std::vector<std::string> labels;

    std::size_t dim() const { return action.rows(); }
};

DeltaModule make_delta_module(FieldPtr F, unsigned order, Elem gen, FqMatrix action,
                              std::vector<std::string> labels = {});
/// (A/P)[Delta] with delta_0 acting by the cyclic shift.
DeltaModule regular_module(FieldPtr F, unsigned order, Elem gen);
DeltaModule direct_sum(const DeltaModule& a, const DeltaModule& b);
/// Restriction to a delta_0-stable subspace spanned by `basis`; throws
/// std::invalid_argument when the span is not stable.
DeltaModule restrict_to(const DeltaModule& M, const std::vector<FqVec>& basis);

/// e_j = -sum_i omega^j(delta_0^i)^{-1} delta_0^i
FqMatrix eigen_projector(const DeltaModule& M, unsigned j);
/// dim M(omega^j) for j = 0..order-1.
std::vector<unsigned> eigen_dims(const DeltaModule& M);
/// Basis of the omega^j eigenspace.
std::vector<FqVec> eigenspace(const DeltaModule& M, unsigned j);

struct CyclicityVerdict {
    bool cyclic = true;
    std::optional<unsigned> witness;  // first character with dimension >= 2
};
CyclicityVerdict cyclicity_verdict(const std::vector<unsigned>& dims);
inline CyclicityVerdict cyclicity_verdict(const DeltaModule& M) { return cyclicity_verdict(eigen_dims(M)); }

}  // namespace spiegel
