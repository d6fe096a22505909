#include "spiegel/local.hpp"

#include <algorithm>

#include "spiegel/errors.hpp"

namespace spiegel {

namespace {

Series horner(const FiniteField& F, const Poly& a, const Series& t, std::size_t N) {
    Series r(N, 0);
    for (int i = a.deg(); i >= 0; --i) {
        // r = r * t + a_i
        Series nr(N, 0);
        for (std::size_t x = 0; x < N; ++x) {
            if (!r[x]) continue;
            for (std::size_t y = 0; x + y < N; ++y)
                if (t[y]) nr[x + y] = F.add(nr[x + y], F.mul(r[x], t[y]));
        }
        nr[0] = F.add(nr[0], a.c[i]);
        r = std::move(nr);
    }
    return r;
}

}  // namespace

LocalFrame::LocalFrame(TowerPtr tower, unsigned precision) : tower_(std::move(tower)), N_(precision) {
    if (N_ < 2) N_ = 2;
    const Tower& tw = *tower_;
    const FiniteField& Fr = F();
    const PolyRing& A = tw.A();
    // Newton iteration on F(T, lambda) = sum_i c_i(T) lambda^(q^i - 1)
    std::vector<std::pair<std::size_t, Poly>> terms, dterms;
    std::size_t qi = 1;
    for (unsigned i = 0; i <= tw.d(); ++i) {
        terms.emplace_back(qi - 1, tw.f()[qi - 1]);
        dterms.emplace_back(qi - 1, A.derivative(tw.f()[qi - 1]));
        qi *= tw.q();
    }
    auto eval = [&](const std::vector<std::pair<std::size_t, Poly>>& ts, const Series& t) {
        Series r(N_, 0);
        for (const auto& [sh, c] : ts) {
            if (sh >= N_) continue;
            const Series v = horner(Fr, c, t, N_ - sh);
            for (std::size_t x = 0; x < v.size(); ++x) r[x + sh] = Fr.add(r[x + sh], v[x]);
        }
        return r;
    };
    Series t(N_, 0);
    t[0] = tw.reduce_A(A.x());
    bool done = false;
    for (int it = 0; it < 64; ++it) {
        const Series fv = eval(terms, t);
        if (std::all_of(fv.begin(), fv.end(), [](Elem e) { return e == 0; })) {
            done = true;
            break;
        }
        const Series step = mul(fv, inv(eval(dterms, t)));
        t = sub(t, step);
    }
    if (!done) throw std::logic_error("Hensel lift of T did not converge");
    T_ = std::move(t);
    Series one(N_, 0);
    one[0] = 1;
    Tpow_.push_back(std::move(one));
}

Series LocalFrame::add(const Series& a, const Series& b) const {
    Series r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = F().add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    return r;
}

Series LocalFrame::sub(const Series& a, const Series& b) const {
    Series r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        r[i] = F().sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
    return r;
}

Series LocalFrame::scale(const Series& a, Elem s) const {
    Series r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F().mul(a[i], s);
    return r;
}

Series LocalFrame::mul(const Series& a, const Series& b) const {
    const FiniteField& Fr = F();
    const std::size_t L = std::min(a.size(), b.size());
    Series r(L, 0);
    for (std::size_t x = 0; x < L; ++x) {
        if (!a[x]) continue;
        for (std::size_t y = 0; x + y < L; ++y)
            if (b[y]) r[x + y] = Fr.add(r[x + y], Fr.mul(a[x], b[y]));
    }
    return r;
}

Series LocalFrame::inv(const Series& a) const {
    const FiniteField& Fr = F();
    if (a.empty() || a[0] == 0) throw std::domain_error("series inverse needs a unit");
    Series r(a.size(), 0);
    const Elem i0 = Fr.inv(a[0]);
    r[0] = i0;
    for (std::size_t m = 1; m < a.size(); ++m) {
        Elem s = 0;
        for (std::size_t j = 1; j <= m; ++j)
            if (a[j] && r[m - j]) s = Fr.add(s, Fr.mul(a[j], r[m - j]));
        r[m] = Fr.neg(Fr.mul(s, i0));
    }
    return r;
}

Series LocalFrame::derivative(const Series& a) const {
    if (a.empty()) return {};
    Series r(a.size() - 1);
    const unsigned p = F().characteristic();
    for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F().mul(a[i], F().from_int(static_cast<long>(i % p)));
    return r;
}

Series LocalFrame::compose(const Series& g, const Series& s) const {
    if (!s.empty() && s[0] != 0) throw std::invalid_argument("compose: inner series must vanish at 0");
    const std::size_t L = std::min(g.size(), s.size());
    Series r(L, 0);
    Series sl(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(L));
    for (std::size_t i = L; i-- > 0;) {
        r = mul(r, sl);
        r[0] = F().add(r[0], g[i]);
    }
    return r;
}

Series LocalFrame::root_frobenius(const Series& a, unsigned times) const {
    Series r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F().root_frobenius(a[i], times);
    return r;
}

const Series& LocalFrame::T_power(std::size_t e) const {
    std::lock_guard<std::mutex> lock(mu_);
    while (Tpow_.size() <= e) Tpow_.push_back(mul(Tpow_.back(), T_));
    return Tpow_[e];
}

Series LocalFrame::eval_A(const Poly& a) const {
    const FiniteField& Fr = F();
    Series r(N_, 0);
    for (int e = 0; e <= a.deg(); ++e) {
        const Elem c = a.c[e];
        if (!c) continue;
        const Series& tp = T_power(static_cast<std::size_t>(e));
        for (std::size_t i = 0; i < N_; ++i)
            if (tp[i]) r[i] = Fr.add(r[i], Fr.mul(c, tp[i]));
    }
    return r;
}

Series LocalFrame::expand(const REl& x) const {
    Series r(N_, 0);
    for (std::size_t j = 0; j < x.size() && j < N_; ++j) {
        if (x[j].is_zero()) continue;
        const Series v = eval_A(x[j]);
        for (std::size_t i = 0; i + j < N_; ++i) r[i + j] = F().add(r[i + j], v[i]);
    }
    return r;
}

Laurent LocalFrame::expand(const LEl& x) const {
    const Series num = expand(x.num);
    if (x.den.is_one()) return {0, num};
    const Series den = eval_A(x.den);
    std::size_t v = 0;
    while (v < den.size() && den[v] == 0) ++v;
    if (v == den.size()) throw SpiegelError(ErrorKind::TruncationTooShort, "denominator vanishes to working precision");
    Series unit(den.begin() + static_cast<std::ptrdiff_t>(v), den.end());
    Series c = mul(Series(num.begin(), num.begin() + static_cast<std::ptrdiff_t>(unit.size())), inv(unit));
    return {-static_cast<int>(v), std::move(c)};
}

int LocalFrame::valuation(const REl& x) const {
    const Series s = expand(x);
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i]) return static_cast<int>(i);
    throw SpiegelError(ErrorKind::TruncationTooShort, "valuation exceeds working precision");
}

Laurent LocalFrame::dlog(const REl& beta) const {
    const Series B = expand(beta);
    std::size_t m = 0;
    while (m < B.size() && B[m] == 0) ++m;
    if (m + 2 > B.size()) throw SpiegelError(ErrorKind::TruncationTooShort, "dlog: valuation exceeds working precision");
    Series B0(B.begin() + static_cast<std::ptrdiff_t>(m), B.end());
    Series dB0 = derivative(B0);
    B0.resize(dB0.size());
    const Series ratio = mul(dB0, inv(B0));
    Laurent out;
    out.val = -1;
    out.c.push_back(F().from_int(static_cast<long>(m % F().characteristic())));
    out.c.insert(out.c.end(), ratio.begin(), ratio.end());
    return out;
}

Series LocalFrame::sigma_series(const Poly& a) const {
    const Tower& tw = tower();
    const Poly abar = tw.lift_residue(tw.teichmuller(a));
    const LinearizedPoly phi = tw.carlitz().action(abar);
    Series r(N_, 0);
    std::size_t qi = 1;
    for (std::size_t i = 0; i < phi.c.size() && qi < N_; ++i) {
        const Series v = eval_A(phi.c[i]);
        for (std::size_t x = 0; x + qi < N_; ++x) r[x + qi] = F().add(r[x + qi], v[x]);
        qi *= tw.q();
    }
    return r;
}

Series LocalFrame::sigma_differential(const Poly& a, const Series& g) const {
    const Series s = sigma_series(a);
    const Series ds = derivative(s);
    const std::size_t L = std::min(g.size(), ds.size());
    Series gs = compose(Series(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(L)), s);
    return mul(gs, Series(ds.begin(), ds.begin() + static_cast<std::ptrdiff_t>(L)));
}

}  // namespace spiegel
