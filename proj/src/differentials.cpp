#include "spiegel/differentials.hpp"

#include "spiegel/errors.hpp"

namespace spiegel {

DifferentialOps::DifferentialOps(TowerPtr tower, std::shared_ptr<const LocalFrame> frame)
    : tower_(std::move(tower)), frame_(std::move(frame)) {
    const Tower& tw = *tower_;
    const PolyRing& A = tw.A();
    // f^(q-1) as a plain polynomial in x
    std::vector<Poly> acc{Poly::constant(1)};
    for (unsigned e = 1; e < tw.q(); ++e) {
        std::vector<Poly> next(acc.size() + tw.n());
        for (std::size_t i = 0; i < acc.size(); ++i) {
            if (acc[i].is_zero()) continue;
            for (std::size_t j = 0; j <= tw.n(); ++j)
                if (!tw.f()[j].is_zero()) next[i + j] = A.add(next[i + j], A.mul(acc[i], tw.f()[j]));
        }
        acc = std::move(next);
    }
    Fpow_ = std::move(acc);
    FT_local_inv_ = frame_->inv(frame_->expand(tw.FT()));
}

Differential DifferentialOps::make(const REl& a, const REl& b) const {
    const Tower& tw = *tower_;
    return {tw.lfrom(tw.sub(tw.mul(b, tw.FT()), tw.mul(a, tw.Fx())))};
}

Differential DifferentialOps::dlambda() const {
    return make(tower_->zero(), tower_->one());
}

Differential DifferentialOps::exact(const REl& h) const {
    return make(tower_->d_dT(h), tower_->d_dx(h));
}

Differential DifferentialOps::dlog(const REl& beta) const {
    const Tower& tw = *tower_;
    if (tw.is_zero(beta)) throw SpiegelError(ErrorKind::NotInvertible, "dlog of zero");
    const Differential db = exact(beta);
    return {tw.lmul(db.h, tw.linv(tw.lfrom(beta)))};
}

Differential DifferentialOps::dlog_unit(const REl& u) const {
    const Tower& tw = *tower_;
    auto inv = tw.inverse_in_R(u);
    if (!inv) throw SpiegelError(ErrorKind::NotAUnit, "dlog_unit: argument is not a unit of R");
    const Differential du = exact(u);
    return {tw.lfrom(tw.mul(du.h.num, *inv))};
}

Differential DifferentialOps::add(const Differential& a, const Differential& b) const {
    return {tower_->ladd(a.h, b.h)};
}

Differential DifferentialOps::sub(const Differential& a, const Differential& b) const {
    return {tower_->lsub(a.h, b.h)};
}

Differential DifferentialOps::mul(const Differential& a, const LEl& u) const {
    return {tower_->lmul(a.h, u)};
}

bool DifferentialOps::equal(const Differential& a, const Differential& b) const {
    return tower_->lequal(a.h, b.h);
}

LEl DifferentialOps::dlambda_coefficient(const Differential& w) const {
    const Tower& tw = *tower_;
    return tw.lmul(w.h, tw.linv(tw.lfrom(tw.FT())));
}

Differential DifferentialOps::cartier(const Differential& w) const {
    const Tower& tw = *tower_;
    const PolyRing& A = tw.A();
    const unsigned q = tw.q(), n = tw.n();
    // c((h/D) eta) = (1/D) c(D^(q-1) h eta)
    const REl H = tw.scale(w.h.num, A.pow(w.h.den, q - 1));
    std::vector<Poly> prod(Fpow_.size() + n - 1);
    for (std::size_t i = 0; i < Fpow_.size(); ++i) {
        if (Fpow_[i].is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (!H[j].is_zero()) prod[i + j] = A.add(prod[i + j], A.mul(Fpow_[i], H[j]));
    }
    REl out = tw.zero();
    for (std::size_t j = q - 1; j < prod.size(); j += q) {
        const Poly& c = prod[j];
        if (c.is_zero()) continue;
        const std::size_t jj = (j + 1) / q - 1;
        if (jj >= n) throw SpiegelError(ErrorKind::NotIntegralAfterClear, "Cartier image left the basis range");
        std::vector<Elem> sel;
        for (int i = static_cast<int>(q) - 1; i <= c.deg(); i += static_cast<int>(q)) {
            const std::size_t ii = static_cast<std::size_t>(i + 1) / q - 1;
            if (sel.size() <= ii) sel.resize(ii + 1, 0);
            sel[ii] = c.c[i];
        }
        out[jj] = Poly(std::move(sel));
    }
    Differential r{tw.make(out, w.h.den)};
    if (w.integral() && !r.integral())
        throw SpiegelError(ErrorKind::NotIntegralAfterClear, "Cartier image of an integral differential has a denominator");
    return r;
}

LocalDifferential DifferentialOps::reduce(const Differential& w, unsigned N) const {
    const Laurent h = frame_->expand(w.h);
    const LocalFrame& fr = *frame_;
    Series g;
    if (h.val < 0) {
        const std::size_t neg = static_cast<std::size_t>(-h.val);
        for (std::size_t i = 0; i < neg && i < h.c.size(); ++i)
            if (h.c[i]) throw SpiegelError(ErrorKind::PoleAtQ, "differential has a pole at q");
        g.assign(h.c.begin() + static_cast<std::ptrdiff_t>(std::min(neg, h.c.size())), h.c.end());
    } else {
        g.assign(static_cast<std::size_t>(h.val), 0);
        g.insert(g.end(), h.c.begin(), h.c.end());
    }
    if (g.size() < N) throw SpiegelError(ErrorKind::TruncationTooShort, "working precision below requested truncation");
    g.resize(N);
    Series gi(FT_local_inv_.begin(), FT_local_inv_.begin() + N);
    return {N, fr.mul(g, gi)};
}

LocalDifferential DifferentialOps::local_cartier(const LocalDifferential& l) const {
    const unsigned q = tower_->q();
    if (l.N < q) throw SpiegelError(ErrorKind::TruncationTooShort, "local Cartier needs truncation >= q");
    const unsigned Np = (l.N - q + 1 + q - 1) / q;
    const unsigned e = tower_->k().prime_degree();
    LocalDifferential out{Np, Series(Np, 0)};
    for (unsigned j = 0; j < Np; ++j) out.c[j] = frame_->F().root_frobenius(l.c[q * j + q - 1], e);
    return out;
}

LocalDifferential DifferentialOps::one_minus_cd(const LocalDifferential& l) const {
    unsigned qd = 1;
    for (unsigned i = 0; i < tower_->d(); ++i) qd *= tower_->q();
    if (l.N != qd) throw SpiegelError(ErrorKind::TruncationTooShort, "1 - c^d needs truncation exactly q^d");
    LocalDifferential c = l;
    for (unsigned i = 0; i < tower_->d(); ++i) c = local_cartier(c);
    if (c.N < 1) throw SpiegelError(ErrorKind::TruncationTooShort, "truncation audit ended below 1");
    return {1, Series{frame_->F().sub(l.c[0], c.c[0])}};
}

namespace {

unsigned q_power_d(const Tower& tw) {
    unsigned qd = 1;
    for (unsigned i = 0; i < tw.d(); ++i) qd *= tw.q();
    return qd;
}

}  // namespace

DeltaModule local_quotient_module(const LocalFrame& frame) {
    const Tower& tw = frame.tower();
    const unsigned N = q_power_d(tw);
    if (frame.precision() < N + 1) throw SpiegelError(ErrorKind::TruncationTooShort, "frame precision below q^d + 1");
    const Poly g = tw.lift_residue(tw.delta_generator());
    const Series s = frame.sigma_series(g);
    const Series ds = frame.derivative(s);
    FqMatrix D(tw.prime().residue, N, N);
    Series pw(N, 0);
    pw[0] = 1;
    const Series sN(s.begin(), s.begin() + N), dsN(ds.begin(), ds.begin() + N);
    std::vector<std::string> labels;
    for (unsigned i = 0; i < N; ++i) {
        const Series col = frame.mul(pw, dsN);
        for (unsigned r = 0; r < N; ++r) D.at(r, i) = col[r];
        pw = frame.mul(pw, sN);
        labels.push_back("lambda^" + std::to_string(i) + " dlambda");
    }
    return make_delta_module(tw.prime().residue, tw.n(), tw.delta_generator(), std::move(D), std::move(labels));
}

FiltrationReport filtration_report(const LocalFrame& frame) {
    const Tower& tw = frame.tower();
    const FiniteField& Fr = frame.F();
    const unsigned N = q_power_d(tw);
    FiltrationReport rep;
    for (unsigned i = 0; i < N; ++i) rep.piece_character.push_back((i + 1) % tw.n());
    for (Elem a = 1; a < Fr.size(); ++a) {
        const Series s = frame.sigma_series(tw.lift_residue(a));
        const Series ds = frame.derivative(s);
        const Series sN(s.begin(), s.begin() + N), dsN(ds.begin(), ds.begin() + N);
        Series pw(N, 0);
        pw[0] = 1;
        for (unsigned i = 0; i < N; ++i) {
            const Series term = frame.mul(pw, dsN);
            bool ok = term[i] == Fr.pow(a, i + 1);
            for (unsigned r = 0; r < i && ok; ++r) ok = term[r] == 0;
            if (!ok)
                throw SpiegelError(ErrorKind::FiltrationMismatch,
                                   "sigma_a(lambda^" + std::to_string(i) + " dlambda) is not a^" + std::to_string(i + 1) +
                                       " lambda^" + std::to_string(i) + " dlambda mod q^" + std::to_string(i + 1) +
                                       " for a = " + std::to_string(a));
            pw = frame.mul(pw, sN);
        }
    }
    rep.table = eigen_dims(local_quotient_module(frame));
    for (unsigned j = 0; j < rep.table.size(); ++j) {
        const unsigned expect = (j == 1 % tw.n()) ? 2u : 1u;
        if (rep.table[j] != expect) {
            rep.ok = false;
            throw SpiegelError(ErrorKind::FiltrationMismatch, "eigenspace table of Omega/q^{q^d} has dim " +
                                                                  std::to_string(rep.table[j]) + " at omega^" +
                                                                  std::to_string(j));
        }
    }
    return rep;
}

KernelReport kernel_one_minus_cd(const DifferentialOps& ops) {
    const Tower& tw = ops.tower();
    const FiniteField& Fr = tw.residue();
    const unsigned N = q_power_d(tw), d = tw.d();
    const FieldPtr kp = tw.prime().k;
    const Elem ks = tw.k().size();
    // k-matrix of 1 - c^d : k^{d N} -> k^d
    FqMatrix M(kp, d, static_cast<std::size_t>(d) * N);
    for (unsigned i = 0; i < N; ++i) {
        Elem basis_elem = 1;
        for (unsigned t = 0; t < d; ++t) {
            LocalDifferential l{N, Series(N, 0)};
            l.c[i] = basis_elem;
            const auto img = ops.one_minus_cd(l);
            const auto digits = Fr.base_digits(img.c[0]);
            for (unsigned r = 0; r < d; ++r) M.at(r, static_cast<std::size_t>(i) * d + t) = digits[r];
            basis_elem *= ks;
        }
    }
    const auto kker = M.kernel();
    KernelReport rep;
    rep.dim_k = kker.size();
    std::vector<FqVec> as_residue;
    for (const auto& v : kker) {
        FqVec w(N, 0);
        for (unsigned i = 0; i < N; ++i) {
            std::vector<Elem> dig(v.begin() + static_cast<std::ptrdiff_t>(i) * d,
                                  v.begin() + static_cast<std::ptrdiff_t>(i + 1) * d);
            w[i] = Fr.from_base_digits(dig);
        }
        as_residue.push_back(std::move(w));
    }
    rep.basis = span_basis(tw.prime().residue, N, as_residue);
    if (rep.basis.size() * d != rep.dim_k)
        throw SpiegelError(ErrorKind::TheoremViolation, "kernel of 1 - c^d is not an A/P-subspace");
    const DeltaModule full = local_quotient_module(ops.frame());
    DeltaModule sub = restrict_to(full, rep.basis);
    rep.dims = eigen_dims(sub);
    rep.verdict = cyclicity_verdict(rep.dims);
    const unsigned om = 1 % tw.n();
    if (!rep.verdict.cyclic)
        throw SpiegelError(ErrorKind::TheoremViolation, "kernel of 1 - c^d is not cyclic (character omega^" +
                                                            std::to_string(*rep.verdict.witness) + ")");
    if (rep.dims[om] != 1)
        throw SpiegelError(ErrorKind::TheoremViolation, "omega-part of ker(1 - c^d) has dimension " + std::to_string(rep.dims[om]));
    return rep;
}

}  // namespace spiegel
