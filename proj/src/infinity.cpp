#include "spiegel/infinity.hpp"

#include <algorithm>

#include "spiegel/errors.hpp"

namespace spiegel {

namespace {

long sat_add(long a, long b) {
    if (a == LONG_MAX || b == LONG_MAX) return LONG_MAX;
    return a + b;
}

}  // namespace

USeries USeriesRing::normalize(USeries a) const {
    std::size_t z = 0;
    while (z < a.c.size() && a.c[z] == 0) ++z;
    a.c.erase(a.c.begin(), a.c.begin() + static_cast<std::ptrdiff_t>(z));
    a.val += static_cast<long>(z);
    if (a.is_exact()) {
        while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
        if (a.c.empty()) a.val = 0;
        return a;
    }
    if (a.val >= a.prec) {
        a.c.clear();
        a.val = a.prec;
        return a;
    }
    if (static_cast<long>(a.c.size()) > a.prec - a.val) a.c.resize(static_cast<std::size_t>(a.prec - a.val));
    if (a.c.empty()) a.val = a.prec;
    return a;
}

USeries USeriesRing::monomial(Elem c, long e) const {
    return normalize(USeries{e, {c}, LONG_MAX});
}

USeries USeriesRing::add(const USeries& a, const USeries& b) const {
    if (a.is_exact() && a.c.empty()) return b;
    if (b.is_exact() && b.c.empty()) return a;
    const long prec = std::min(a.prec, b.prec);
    const long low = std::min(a.val, b.val);
    long hi;
    if (prec == LONG_MAX)
        hi = std::max(a.val + static_cast<long>(a.c.size()), b.val + static_cast<long>(b.c.size()));
    else
        hi = prec;
    USeries r{low, std::vector<Elem>(static_cast<std::size_t>(std::max(0L, hi - low)), 0), prec};
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        const long e = a.val + static_cast<long>(i);
        if (e >= hi) break;
        r.c[static_cast<std::size_t>(e - low)] = k_.add(r.c[static_cast<std::size_t>(e - low)], a.c[i]);
    }
    for (std::size_t i = 0; i < b.c.size(); ++i) {
        const long e = b.val + static_cast<long>(i);
        if (e >= hi) break;
        r.c[static_cast<std::size_t>(e - low)] = k_.add(r.c[static_cast<std::size_t>(e - low)], b.c[i]);
    }
    return normalize(std::move(r));
}

USeries USeriesRing::sub(const USeries& a, const USeries& b) const {
    USeries nb = b;
    for (auto& x : nb.c) x = k_.neg(x);
    return add(a, nb);
}

USeries USeriesRing::mul(const USeries& a, const USeries& b) const {
    const bool az = a.c.empty(), bz = b.c.empty();
    if ((az && a.is_exact()) || (bz && b.is_exact())) return USeries{};
    const long prec = std::min(sat_add(a.prec, bz ? b.prec : b.val), sat_add(b.prec, az ? a.prec : a.val));
    if (az || bz) return normalize(USeries{prec, {}, prec});
    const long val = a.val + b.val;
    std::size_t len;
    if (prec == LONG_MAX)
        len = a.c.size() + b.c.size() - 1;
    else
        len = static_cast<std::size_t>(std::max(0L, prec - val));
    USeries r{val, std::vector<Elem>(len, 0), prec};
    for (std::size_t i = 0; i < a.c.size() && i < len; ++i) {
        const Elem x = a.c[i];
        if (!x) continue;
        const std::size_t lim = std::min(b.c.size(), len - i);
        for (std::size_t j = 0; j < lim; ++j)
            if (b.c[j]) r.c[i + j] = k_.add(r.c[i + j], k_.mul(x, b.c[j]));
    }
    return normalize(std::move(r));
}

USeries USeriesRing::inv(const USeries& a, long rel_prec) const {
    if (a.c.empty()) throw std::domain_error("inverse of a vanishing u-series");
    long rel = rel_prec;
    if (!a.is_exact()) rel = std::min(rel, a.prec - a.val);
    if (rel < 1) rel = 1;
    std::vector<Elem> r(static_cast<std::size_t>(rel), 0);
    const Elem i0 = k_.inv(a.c[0]);
    r[0] = i0;
    for (std::size_t m = 1; m < r.size(); ++m) {
        Elem s = 0;
        for (std::size_t j = 1; j <= m && j < a.c.size(); ++j)
            if (a.c[j] && r[m - j]) s = k_.add(s, k_.mul(a.c[j], r[m - j]));
        r[m] = k_.neg(k_.mul(s, i0));
    }
    return normalize(USeries{-a.val, std::move(r), -a.val + rel});
}

USeries USeriesRing::frobenius(const USeries& a, unsigned i) const {
    long Q = 1;
    for (unsigned t = 0; t < i; ++t) Q *= k_.size();
    if (a.c.empty()) {
        if (a.is_exact()) return a;
        return USeries{a.prec * Q, {}, a.prec * Q};
    }
    const long val = a.val * Q;
    const long prec = a.is_exact() ? LONG_MAX : a.prec * Q;
    const std::size_t len = a.is_exact() ? (a.c.size() - 1) * static_cast<std::size_t>(Q) + 1
                                         : static_cast<std::size_t>(prec - val);
    USeries r{val, std::vector<Elem>(len, 0), prec};
    for (std::size_t j = 0; j < a.c.size(); ++j) {
        const std::size_t pos = j * static_cast<std::size_t>(Q);
        if (pos < len) r.c[pos] = a.c[j];  // coefficients in k are Frobenius-fixed
    }
    return normalize(std::move(r));
}

USeries USeriesRing::truncate(const USeries& a, long prec) const {
    USeries r = a;
    r.prec = std::min(r.prec, prec);
    return normalize(std::move(r));
}

USeries USeriesRing::eval_A(const Poly& b) const {
    if (b.is_zero()) return USeries{};
    const long qm1 = static_cast<long>(k_.size()) - 1;
    const long D = b.deg();
    USeries r{-D * qm1, std::vector<Elem>(static_cast<std::size_t>(D * qm1 + 1), 0), LONG_MAX};
    for (long m = 0; m <= D; ++m) {
        Elem c = b.c[static_cast<std::size_t>(m)];
        if (m % 2 == 1) c = k_.neg(c);
        r.c[static_cast<std::size_t>((D - m) * qm1)] = c;
    }
    return normalize(std::move(r));
}

InfinitePlaces::InfinitePlaces(TowerPtr tower, long initial_precision)
    : tower_(std::move(tower)), ring_(tower_->k()) {
    level_ = build_level(std::max(16L, initial_precision));
    const Tower& tw = *tower_;
    // f(lambda_1) must vanish to the working precision
    {
        const USeries& l1 = level_.powers[0][1];
        const USeries linv = ring_.inv(l1, level_.ap);
        USeries acc;
        std::size_t qi = 1;
        for (unsigned i = 0; i <= tw.d(); ++i) {
            const USeries term = ring_.mul(ring_.eval_A(tw.f()[qi - 1]), ring_.mul(ring_.frobenius(l1, i), linv));
            acc = ring_.add(acc, term);
            qi *= tw.q();
        }
        verified_ = acc.vanishes() && acc.prec > 0;
    }
    lambda_val_ = valuations(tw.lambda());
}

long InfinitePlaces::precision() const {
    std::lock_guard<std::mutex> lock(mu_);
    return level_.ap;
}

InfinitePlaces::Level InfinitePlaces::build_level(long ap) const {
    const Tower& tw = *tower_;
    const USeriesRing& R = ring_;
    const long q = tw.q(), d = tw.d();
    const long vz = -q + d * (q - 1);
    const long rel = std::max(8L, ap - vz + 2);
    // pi~ = u^{-q} prod_{i>=1} (1 - u^{(q-1)(q^i-1)})^{-1}
    std::vector<Elem> s(static_cast<std::size_t>(rel), 0);
    s[0] = 1;
    for (long qi = q;; qi *= q) {
        const long m = (q - 1) * (qi - 1);
        if (m >= rel) break;
        // multiply by 1/(1 - u^m): s[j] += s[j - m]
        for (long j = m; j < rel; ++j) s[static_cast<std::size_t>(j)] = tw.k().add(s[static_cast<std::size_t>(j)], s[static_cast<std::size_t>(j - m)]);
    }
    const USeries pit = R.normalize(USeries{-q, s, -q + rel});
    const USeries z = R.mul(pit, R.inv(R.eval_A(tw.prime().P), rel));
    // lambda_1 = exp_C(z) = sum_i z^{q^i} / D_i
    // v(z^{q^i}/D_i) = q^i (vz + (q-1) i) increases for i >= 1
    unsigned terms = 1;
    for (long Q = q; Q * (vz + (q - 1) * static_cast<long>(terms)) < ap; Q *= q) ++terms;
    const auto D = tw.carlitz().factorials(terms);
    USeries l1;
    long Q = 1;
    for (unsigned i = 0; i < terms; ++i, Q *= q) {
        const long vt = Q * (vz + (q - 1) * static_cast<long>(i));
        const long need = ap - (q - 1) * static_cast<long>(i) * Q;  // precision needed for z^{q^i}
        const USeries zi = R.frobenius(R.truncate(z, need / Q + 2), i);
        const USeries t = R.mul(zi, R.inv(R.eval_A(D[i]), std::max(4L, ap - vt + 2)));
        l1 = R.add(l1, t);
    }
    l1 = R.truncate(l1, ap);
    if (l1.vanishes()) throw std::logic_error("torsion point vanished at working precision");

    Level lv;
    lv.ap = ap;
    for (const auto& a : tw.place_reps()) {
        const LinearizedPoly phi = tw.carlitz().action(a);
        USeries la;
        for (unsigned j = 0; j < phi.c.size(); ++j)
            la = R.add(la, R.mul(R.eval_A(phi.c[j]), R.frobenius(l1, j)));
        std::vector<USeries> pw;
        pw.push_back(R.monomial(1, 0));
        for (unsigned j = 1; j < tw.n(); ++j) pw.push_back(R.mul(pw.back(), la));
        lv.powers.push_back(std::move(pw));
    }
    return lv;
}

std::vector<long> InfinitePlaces::valuations(const REl& beta) const {
    const Tower& tw = *tower_;
    if (tw.is_zero(beta)) throw std::invalid_argument("valuation of zero");
    std::lock_guard<std::mutex> lock(mu_);
    for (int attempt = 0; attempt < 12; ++attempt) {
        std::vector<long> out;
        bool ok = true;
        for (std::size_t a = 0; a < level_.powers.size() && ok; ++a) {
            USeries acc;
            for (unsigned j = 0; j < tw.n(); ++j) {
                if (beta[j].is_zero()) continue;
                acc = ring_.add(acc, ring_.mul(ring_.eval_A(beta[j]), level_.powers[a][j]));
            }
            if (acc.vanishes()) ok = false;
            else out.push_back(acc.val);
        }
        if (ok) return out;
        level_ = build_level(level_.ap * 2);
    }
    throw SpiegelError(ErrorKind::TruncationTooShort, "infinite valuation beyond maximal working precision");
}

}  // namespace spiegel
