#include "spiegel/delta_module.hpp"

#include <stdexcept>

namespace spiegel {

DeltaModule make_delta_module(FieldPtr F, unsigned order, Elem gen, FqMatrix action, std::vector<std::string> labels) {
    if (action.rows() != action.cols()) throw std::invalid_argument("Delta action must be square");
    DeltaModule M{std::move(F), order, gen, std::move(action), std::move(labels)};
    return M;
}

DeltaModule regular_module(FieldPtr F, unsigned order, Elem gen) {
    FqMatrix D(F, order, order);
    for (unsigned i = 0; i < order; ++i) D.at((i + 1) % order, i) = 1;
    std::vector<std::string> labels;
    for (unsigned i = 0; i < order; ++i) labels.push_back("delta^" + std::to_string(i));
    return make_delta_module(std::move(F), order, gen, std::move(D), std::move(labels));
}

DeltaModule direct_sum(const DeltaModule& a, const DeltaModule& b) {
    const std::size_t m = a.dim(), k = b.dim();
    FqMatrix D(a.F, m + k, m + k);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) D.at(i, j) = a.action.at(i, j);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) D.at(m + i, m + j) = b.action.at(i, j);
    auto labels = a.labels;
    labels.insert(labels.end(), b.labels.begin(), b.labels.end());
    return make_delta_module(a.F, a.order, a.gen, std::move(D), std::move(labels));
}

DeltaModule restrict_to(const DeltaModule& M, const std::vector<FqVec>& basis) {
    const std::size_t m = M.dim(), r = basis.size();
    FqMatrix X(M.F, r, r);
    if (r == 0) return make_delta_module(M.F, M.order, M.gen, X);
    const FqMatrix B = FqMatrix::from_columns(M.F, m, basis);
    for (std::size_t j = 0; j < r; ++j) {
        auto sol = B.solve(M.action.apply(basis[j]));
        if (!sol) throw std::invalid_argument("subspace is not Delta-stable");
        for (std::size_t i = 0; i < r; ++i) X.at(i, j) = (*sol)[i];
    }
    return make_delta_module(M.F, M.order, M.gen, std::move(X));
}

FqMatrix eigen_projector(const DeltaModule& M, unsigned j) {
    const FiniteField& F = *M.F;
    const std::size_t m = M.dim();
    FqMatrix acc(M.F, m, m);
    FqMatrix Di = FqMatrix::identity(M.F, m);
    const Elem ginv_j = F.inv(F.pow(M.gen, j));
    Elem coef = 1;
    for (unsigned i = 0; i < M.order; ++i) {
        acc = acc.add(Di.scale(coef));
        Di = Di.mul(M.action);
        coef = F.mul(coef, ginv_j);
    }
    return acc.scale(F.neg(1));
}

std::vector<FqVec> eigenspace(const DeltaModule& M, unsigned j) {
    const FiniteField& F = *M.F;
    FqMatrix shifted = M.action;
    const Elem ev = F.pow(M.gen, j);
    for (std::size_t i = 0; i < M.dim(); ++i) shifted.at(i, i) = F.sub(shifted.at(i, i), ev);
    return shifted.kernel();
}

std::vector<unsigned> eigen_dims(const DeltaModule& M) {
    std::vector<unsigned> dims(M.order, 0);
    if (M.dim() == 0) return dims;
    for (unsigned j = 0; j < M.order; ++j) dims[j] = static_cast<unsigned>(eigenspace(M, j).size());
    return dims;
}

CyclicityVerdict cyclicity_verdict(const std::vector<unsigned>& dims) {
    CyclicityVerdict v;
    for (unsigned j = 0; j < dims.size(); ++j)
        if (dims[j] >= 2) {
            v.cyclic = false;
            v.witness = j;
            break;
        }
    return v;
}

}  // namespace spiegel
