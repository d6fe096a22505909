#include "spiegel/units.hpp"

#include <algorithm>

#include "spiegel/errors.hpp"

namespace spiegel {

REl cyclotomic_unit(const Tower& tw, const Poly& a) {
    const Poly ar = tw.A().mod(a, tw.prime().P);
    if (ar.is_zero()) throw SpiegelError(ErrorKind::NotInvertible, "cyclotomic unit at a multiple of P");
    const LinearizedPoly phi = tw.carlitz().action(ar);
    std::vector<Poly> dense;
    std::size_t qi = 1;
    for (const Poly& c : phi.c) {
        if (dense.size() < qi) dense.resize(qi);
        dense[qi - 1] = c;
        qi *= tw.q();
    }
    return tw.reduce(std::move(dense));
}

UnitSet cyclotomic_units(const Tower& tw) {
    const PolyRing& A = tw.A();
    UnitSet U;
    for (const Poly& a : tw.place_reps()) {
        if (a.is_one()) continue;
        const auto xg = A.xgcd(a, tw.prime().P);
        const Poly b = A.mod(xg.s, tw.prime().P);  // a*b = 1 mod P (g = 1)
        REl u = cyclotomic_unit(tw, a);
        REl inv = tw.galois_apply(a, cyclotomic_unit(tw, b));
        if (tw.mul(u, inv) != tw.one())
            throw SpiegelError(ErrorKind::OracleMismatch, "cyclotomic unit inverse check failed");
        U.labels.push_back(a);
        U.units.push_back(std::move(u));
        U.inverses.push_back(std::move(inv));
    }
    return U;
}

bool cocycle_holds(const Tower& tw, const Poly& a, const Poly& b) {
    const REl lhs = cyclotomic_unit(tw, tw.A().mul(a, b));
    const REl rhs = tw.mul(tw.galois_apply(b, cyclotomic_unit(tw, a)), cyclotomic_unit(tw, b));
    return lhs == rhs;
}

FqVec prime_coordinates(const FiniteField& F, const Series& c, std::size_t M) {
    FqVec out;
    out.reserve(M * F.prime_degree());
    for (std::size_t i = 0; i < M; ++i) {
        const Elem x = i < c.size() ? c[i] : 0;
        for (unsigned dgt : F.prime_digits(x)) out.push_back(dgt);
    }
    return out;
}

FqVec base_coordinates(const FiniteField& F, const Series& c, std::size_t M) {
    FqVec out;
    out.reserve(M * F.degree_over_base());
    for (std::size_t i = 0; i < M; ++i) {
        const Elem x = i < c.size() ? c[i] : 0;
        for (Elem dgt : F.base_digits(x)) out.push_back(dgt);
    }
    return out;
}

unsigned separation_bound(const Tower& tw) {
    const long s = tw.num_infinite_places();
    const long deg = 2L * tw.genus() - 2 + s;
    return static_cast<unsigned>(std::max(0L, deg) / tw.d() + 2);
}

namespace {

REl product(const Tower& tw, const std::vector<REl>& xs, const std::vector<Elem>& e) {
    REl r = tw.one();
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (e[i]) r = tw.mul(r, tw.pow(xs[i], e[i]));
    return r;
}

}  // namespace

UnitSet saturate_units(const UnitSet& U0, const DifferentialOps& ops) {
    const Tower& tw = ops.tower();
    const FiniteField& Fr = tw.residue();
    const FieldPtr Fp = FiniteField::prime(tw.p());
    const unsigned M = separation_bound(tw);
    UnitSet U = U0;
    U.saturation_steps = 0;
    for (;;) {
        std::vector<FqVec> cols;
        for (const REl& u : U.units) cols.push_back(prime_coordinates(Fr, ops.reduce(ops.dlog_unit(u), M).c, M));
        const std::size_t rows = static_cast<std::size_t>(M) * Fr.prime_degree();
        const FqMatrix D = FqMatrix::from_columns(Fp, rows, cols);
        const auto ker = D.kernel();
        if (ker.empty()) {
            U.rank = U.units.size();
            break;
        }
        FqVec e = ker.front();
        std::size_t i = 0;
        while (e[i] == 0) ++i;
        const Elem s = Fp->inv(e[i]);
        for (auto& x : e) x = Fp->mul(x, s);
        const auto root = tw.pth_root(tw.lfrom(product(tw, U.units, e)));
        const auto root_inv = tw.pth_root(tw.lfrom(product(tw, U.inverses, e)));
        if (!root || !root_inv || !root->den.is_one() || !root_inv->den.is_one())
            throw SpiegelError(ErrorKind::OracleMismatch, "dlog relation without a p-th root");
        if (tw.mul(root->num, root_inv->num) != tw.one())
            throw SpiegelError(ErrorKind::OracleMismatch, "p-th roots of inverse units disagree");
        U.units[i] = root->num;
        U.inverses[i] = root_inv->num;
        if (++U.saturation_steps > 64) throw SpiegelError(ErrorKind::OracleMismatch, "saturation does not terminate");
    }
    U.saturated = true;
    if (U.rank < tw.unit_rank())
        throw SpiegelError(ErrorKind::RankDeficit, "unit rank " + std::to_string(U.rank) + " below " +
                                                       std::to_string(tw.unit_rank()));
    return U;
}

bool no_pth_power_combination(const Tower& tw, const UnitSet& U) {
    const unsigned p = tw.p();
    const std::size_t r = U.units.size();
    std::vector<Elem> e(r, 0);
    // projective enumeration: first nonzero exponent is 1
    for (;;) {
        std::size_t k = 0;
        while (k < r && e[k] == p - 1) e[k++] = 0;
        if (k == r) return true;
        ++e[k];
        std::size_t lead = 0;
        while (lead < r && e[lead] == 0) ++lead;
        if (lead == r || e[lead] != 1) continue;
        if (tw.pth_root(tw.lfrom(product(tw, U.units, e)))) return false;
    }
}

}  // namespace spiegel
