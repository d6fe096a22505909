#include "spiegel/tower.hpp"

#include <algorithm>

#include "spiegel/errors.hpp"

namespace spiegel {

PrimeData make_prime_data(unsigned q, const Poly& P) {
    const auto sizes = supported_field_sizes();
    if (std::find(sizes.begin(), sizes.end(), q) == sizes.end())
        throw SpiegelError(ErrorKind::InvalidInput, "unsupported field size q=" + std::to_string(q));
    PrimeData pd;
    pd.k = FiniteField::from_desc(standard_field(q));
    pd.q = q;
    pd.P = P;
    PolyRing A(pd.k);
    if (P.deg() < 1) throw SpiegelError(ErrorKind::InvalidInput, "P must have degree >= 1");
    if (P.lead() != 1) throw SpiegelError(ErrorKind::InvalidInput, "P must be monic");
    if (!A.is_irreducible(P))
        throw SpiegelError(ErrorKind::InvalidInput, format_poly(*pd.k, P) + " is not irreducible over F_" + std::to_string(q));
    pd.d = static_cast<unsigned>(P.deg());
    std::uint64_t size = 1;
    for (unsigned i = 0; i < pd.d; ++i) size *= q;
    if (size > FiniteField::kMaxSize)
        throw SpiegelError(ErrorKind::SizeBound, "residue field too large");
    pd.residue = FiniteField::extension(pd.k, P.c);
    return pd;
}

std::optional<std::vector<KFrac>> solve_over_K(const PolyRing& A, std::vector<std::vector<Poly>> M,
                                               std::vector<KFrac> b) {
    KArith K(A);
    const std::size_t n = M.size();
    std::vector<std::vector<KFrac>> m(n, std::vector<KFrac>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = K.from_poly(M[i][j]);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = n;
        for (std::size_t i = c; i < n; ++i)
            if (!m[i][c].is_zero()) {
                piv = i;
                break;
            }
        if (piv == n) return std::nullopt;
        std::swap(m[piv], m[c]);
        std::swap(b[piv], b[c]);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i][c].is_zero()) continue;
            const KFrac f = K.div(m[i][c], m[c][c]);
            for (std::size_t j = c; j < n; ++j) m[i][j] = K.sub(m[i][j], K.mul(f, m[c][j]));
            b[i] = K.sub(b[i], K.mul(f, b[c]));
        }
    }
    std::vector<KFrac> y(n);
    for (std::size_t i = n; i-- > 0;) {
        KFrac s = b[i];
        for (std::size_t j = i + 1; j < n; ++j) s = K.sub(s, K.mul(m[i][j], y[j]));
        y[i] = K.div(s, m[i][i]);
    }
    return y;
}

Poly det_over_A(const PolyRing& A, const std::vector<std::vector<Poly>>& M) {
    // fraction-free (Bareiss) elimination: every division is exact
    const std::size_t n = M.size();
    if (n == 0) return Poly::constant(1);
    auto m = M;
    Poly prev = Poly::constant(1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t piv = k + 1;
            while (piv < n && m[piv][k].is_zero()) ++piv;
            if (piv == n) return {};
            std::swap(m[piv], m[k]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Poly t = A.sub(A.mul(m[i][j], m[k][k]), A.mul(m[i][k], m[k][j]));
                m[i][j] = prev.is_one() ? std::move(t) : A.div_exact(t, prev);
            }
            m[i][k] = Poly{};
        }
        prev = m[k][k];
    }
    return negate ? A.neg(m[n - 1][n - 1]) : m[n - 1][n - 1];
}

std::shared_ptr<const Tower> Tower::build(unsigned q, const Poly& P, unsigned degree_limit) {
    PrimeData pd = make_prime_data(q, P);
    std::uint64_t qd = 1;
    for (unsigned i = 0; i < pd.d; ++i) qd *= q;
    if (qd - 1 < 2)
        throw SpiegelError(ErrorKind::InvalidInput, "degenerate tower: q^d - 1 = 1 (L = K, trivial Galois group)");
    if (qd - 1 > degree_limit)
        throw SpiegelError(ErrorKind::SizeBound,
                           "q^d - 1 = " + std::to_string(qd - 1) + " exceeds the limit " + std::to_string(degree_limit));
    auto t = std::shared_ptr<Tower>(new Tower());
    t->pd_ = std::move(pd);
    t->A_ = PolyRing(t->pd_.k);
    t->carlitz_ = Carlitz(t->pd_.k);
    t->n_ = static_cast<unsigned>(qd - 1);
    const unsigned n = t->n_, d = t->pd_.d, s = n / (q - 1);
    // 2g - 2 = -2n + (n - 1) d + s (q - 2)
    const long twice = -2L * n + static_cast<long>(n - 1) * d + static_cast<long>(s) * (q - 2) + 2;
    t->genus_ = static_cast<unsigned>(twice / 2);
    t->f_ = t->carlitz_.torsion_polynomial(t->pd_.P);

    const PolyRing& A = t->A_;
    t->Fx_ = t->zero();
    t->FT_ = t->zero();
    for (unsigned j = 0; j <= n; ++j) {
        if (j >= 1 && j - 1 < n)
            t->Fx_[j - 1] = A.scale(t->f_[j], t->pd_.k->from_int(static_cast<long>(j % t->p())));
        if (j < n) t->FT_[j] = A.derivative(t->f_[j]);
    }
    for (auto& c : t->Fx_) c.trim();

    const FiniteField& Fr = *t->pd_.residue;
    for (Elem c = 1; c < Fr.size(); ++c)
        if (Fr.element_order(c) == Fr.order()) {
            t->gen_ = c;
            break;
        }
    for (unsigned deg = 0; deg < d; ++deg)
        for (auto& m : A.monics(deg)) t->place_reps_.push_back(m);
    t->place_of_residue_.assign(Fr.size(), 0);
    for (std::size_t i = 0; i < t->place_reps_.size(); ++i) {
        const Elem r = t->reduce_A(t->place_reps_[i]);
        for (Elem c = 1; c < t->k().size(); ++c) t->place_of_residue_[Fr.mul(r, c)] = i;
    }
    return t;
}

REl Tower::one() const {
    REl r = zero();
    r[0] = Poly::constant(1);
    return r;
}

REl Tower::lambda() const {
    REl r = zero();
    if (n_ > 1)
        r[1] = Poly::constant(1);
    else
        r = reduce({Poly{}, Poly::constant(1)});
    return r;
}

REl Tower::from_A(const Poly& a) const {
    REl r = zero();
    r[0] = a;
    return r;
}

REl Tower::reduce(std::vector<Poly> r) const {
    const unsigned d = pd_.d;
    std::vector<std::size_t> idx(d);
    std::size_t qi = 1;
    for (unsigned i = 0; i < d; ++i) {
        idx[i] = qi - 1;
        qi *= q();
    }
    for (std::size_t m = r.size(); m-- > n_;) {
        if (r[m].is_zero()) continue;
        const Poly t = std::move(r[m]);
        r[m] = Poly{};
        for (unsigned i = 0; i < d; ++i) {
            const std::size_t tgt = m - n_ + idx[i];
            r[tgt] = A_.sub(r[tgt], A_.mul(t, f_[idx[i]]));
        }
    }
    r.resize(n_);
    return r;
}

REl Tower::add(const REl& a, const REl& b) const {
    REl r(n_);
    for (unsigned i = 0; i < n_; ++i) r[i] = A_.add(a[i], b[i]);
    return r;
}

REl Tower::sub(const REl& a, const REl& b) const {
    REl r(n_);
    for (unsigned i = 0; i < n_; ++i) r[i] = A_.sub(a[i], b[i]);
    return r;
}

REl Tower::neg(const REl& a) const {
    REl r(n_);
    for (unsigned i = 0; i < n_; ++i) r[i] = A_.neg(a[i]);
    return r;
}

REl Tower::mul(const REl& a, const REl& b) const {
    std::vector<Poly> r(2 * n_ - 1);
    for (unsigned i = 0; i < n_; ++i) {
        if (a[i].is_zero()) continue;
        for (unsigned j = 0; j < n_; ++j) {
            if (b[j].is_zero()) continue;
            r[i + j] = A_.add(r[i + j], A_.mul(a[i], b[j]));
        }
    }
    return reduce(std::move(r));
}

REl Tower::scale(const REl& a, const Poly& c) const {
    REl r(n_);
    for (unsigned i = 0; i < n_; ++i) r[i] = A_.mul(a[i], c);
    return r;
}

REl Tower::pow(REl a, std::uint64_t e) const {
    REl r = one();
    while (e) {
        if (e & 1) r = mul(r, a);
        e >>= 1;
        if (e) a = mul(a, a);
    }
    return r;
}

bool Tower::is_zero(const REl& a) const {
    return std::all_of(a.begin(), a.end(), [](const Poly& c) { return c.is_zero(); });
}

int Tower::max_degree(const REl& a) const {
    int m = -1;
    for (const auto& c : a) m = std::max(m, c.deg());
    return m;
}

Poly Tower::content(const REl& a) const {
    Poly g;
    for (const auto& c : a) {
        if (c.is_zero()) continue;
        g = g.is_zero() ? A_.monic(c) : A_.gcd(g, c);
        if (g.is_one()) break;
    }
    return g;
}

std::optional<REl> Tower::div_A(const REl& a, const Poly& c) const {
    REl r(n_);
    for (unsigned i = 0; i < n_; ++i) {
        auto [qq, rem] = A_.divmod(a[i], c);
        if (!rem.is_zero()) return std::nullopt;
        r[i] = std::move(qq);
    }
    return r;
}

LEl Tower::make(REl num, Poly den) const {
    if (den.is_zero()) throw std::domain_error("LEl with zero denominator");
    if (is_zero(num)) return {zero(), Poly::constant(1)};
    Poly g = A_.gcd(content(num), den);
    if (!g.is_one()) {
        num = *div_A(num, g);
        den = A_.div_exact(den, g);
    }
    const Elem l = den.lead();
    if (l != 1) {
        const Elem li = k().inv(l);
        num = scale(num, Poly::constant(li));
        den = A_.scale(den, li);
    }
    return {std::move(num), std::move(den)};
}

LEl Tower::ladd(const LEl& a, const LEl& b) const {
    if (a.den == b.den) return make(add(a.num, b.num), a.den);
    return make(add(scale(a.num, b.den), scale(b.num, a.den)), A_.mul(a.den, b.den));
}

LEl Tower::lsub(const LEl& a, const LEl& b) const {
    if (a.den == b.den) return make(sub(a.num, b.num), a.den);
    return make(sub(scale(a.num, b.den), scale(b.num, a.den)), A_.mul(a.den, b.den));
}

LEl Tower::lmul(const LEl& a, const LEl& b) const {
    return make(mul(a.num, b.num), A_.mul(a.den, b.den));
}

std::vector<std::vector<Poly>> Tower::mul_matrix(const REl& a) const {
    std::vector<std::vector<Poly>> M(n_, std::vector<Poly>(n_));
    REl col = a;
    for (unsigned j = 0; j < n_; ++j) {
        for (unsigned i = 0; i < n_; ++i) M[i][j] = col[i];
        if (j + 1 < n_) {
            // col *= lambda
            std::vector<Poly> sh(n_ + 1);
            for (unsigned i = 0; i < n_; ++i) sh[i + 1] = col[i];
            col = reduce(std::move(sh));
        }
    }
    return M;
}

Poly Tower::norm(const REl& a) const {
    return det_over_A(A_, mul_matrix(a));
}

namespace {

std::pair<REl, Poly> common_denominator(const PolyRing& A, const std::vector<KFrac>& y) {
    Poly L = Poly::constant(1);
    for (const auto& v : y)
        if (!v.is_zero()) L = A.div_exact(A.mul(L, v.den), A.gcd(L, v.den));
    REl num(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
        if (!y[i].is_zero()) num[i] = A.mul(y[i].num, A.div_exact(L, y[i].den));
    return {std::move(num), std::move(L)};
}

}  // namespace

LEl Tower::linv(const LEl& a) const {
    if (is_zero(a.num)) throw SpiegelError(ErrorKind::NotInvertible, "inverse of zero in L");
    std::vector<KFrac> e(n_);
    e[0] = KFrac{Poly::constant(1)};
    auto y = solve_over_K(A_, mul_matrix(a.num), e);
    if (!y) throw std::logic_error("multiplication matrix of a nonzero element is singular");
    auto [num, den] = common_denominator(A_, *y);
    return make(scale(num, a.den), den);
}

bool Tower::lequal(const LEl& a, const LEl& b) const {
    const REl x = scale(a.num, b.den), y = scale(b.num, a.den);
    for (unsigned i = 0; i < n_; ++i)
        if (x[i] != y[i]) return false;
    return true;
}

std::optional<REl> Tower::inverse_in_R(const REl& a) const {
    if (is_zero(a)) return std::nullopt;
    const LEl inv = linv(lfrom(a));
    if (!inv.den.is_one()) return std::nullopt;
    return inv.num;
}

REl Tower::d_dx(const REl& a) const {
    REl r = zero();
    for (unsigned j = 1; j < n_; ++j)
        r[j - 1] = A_.scale(a[j], k().from_int(static_cast<long>(j % p())));
    return r;
}

REl Tower::d_dT(const REl& a) const {
    REl r(n_);
    for (unsigned j = 0; j < n_; ++j) r[j] = A_.derivative(a[j]);
    return r;
}

Elem Tower::reduce_A(const Poly& a) const {
    return static_cast<Elem>(A_.code(A_.mod(a, pd_.P)));
}

Poly Tower::lift_residue(Elem r) const {
    return A_.from_code(r);
}

std::size_t Tower::place_index(const Poly& a) const {
    const Elem r = reduce_A(a);
    if (r == 0) throw SpiegelError(ErrorKind::NotInvertible, "element divisible by P has no place index");
    return place_of_residue_[r];
}

const std::vector<REl>& Tower::sigma_powers(const Poly& a) const {
    const Elem key = reduce_A(a);
    if (key == 0) throw SpiegelError(ErrorKind::NotInvertible, "sigma_a needs a prime to P");
    std::lock_guard<std::mutex> lock(cache_mu_);
    auto it = sigma_cache_.find(key);
    if (it != sigma_cache_.end()) return it->second;
    const Poly abar = lift_residue(key);
    const LinearizedPoly phi = carlitz_.action(abar);
    std::vector<Poly> dense;
    std::size_t qi = 1;
    for (std::size_t i = 0; i < phi.c.size(); ++i) {
        if (dense.size() < qi + 1) dense.resize(qi + 1);
        dense[qi] = phi.c[i];
        qi *= q();
    }
    const REl s = reduce(std::move(dense));
    std::vector<REl> pw;
    pw.push_back(one());
    for (unsigned j = 1; j < n_; ++j) pw.push_back(mul(pw.back(), s));
    return sigma_cache_.emplace(key, std::move(pw)).first->second;
}

REl Tower::sigma_lambda(const Poly& a) const {
    const auto& pw = sigma_powers(a);
    return n_ > 1 ? pw[1] : reduce({Poly{}, Poly::constant(1)});
}

REl Tower::galois_apply(const Poly& a, const REl& x) const {
    const auto& pw = sigma_powers(a);
    REl r = zero();
    for (unsigned j = 0; j < n_; ++j) {
        if (x[j].is_zero()) continue;
        for (unsigned i = 0; i < n_; ++i)
            if (!pw[j][i].is_zero()) r[i] = A_.add(r[i], A_.mul(x[j], pw[j][i]));
    }
    return r;
}

LEl Tower::galois_apply(const Poly& a, const LEl& x) const {
    return make(galois_apply(a, x.num), x.den);
}

Elem Tower::teichmuller(const Poly& a) const {
    const Elem r = reduce_A(a);
    if (r == 0) throw SpiegelError(ErrorKind::NotInvertible, "teichmuller of an element divisible by P");
    return r;
}

namespace {

std::optional<Poly> poly_pth_root(const FiniteField& F, const Poly& a) {
    const unsigned p = F.characteristic();
    std::vector<Elem> r(a.is_zero() ? 0 : a.deg() / p + 1, 0);
    for (int i = 0; i <= a.deg(); ++i) {
        if (a.c[i] == 0) continue;
        if (i % static_cast<int>(p) != 0) return std::nullopt;
        r[i / p] = F.root_frobenius(a.c[i], 1);
    }
    return Poly(std::move(r));
}

}  // namespace

std::optional<LEl> Tower::pth_root(const LEl& x) const {
    if (is_zero(x.num)) throw std::invalid_argument("pth_root of zero");
    const unsigned pp = p();
    // x = z / den^p with z = num * den^(p-1)
    const REl z = scale(x.num, A_.pow(x.den, pp - 1));
    std::vector<std::vector<Poly>> M(n_, std::vector<Poly>(n_));
    const REl lp = pow(lambda(), pp);
    REl col = one();
    for (unsigned j = 0; j < n_; ++j) {
        for (unsigned i = 0; i < n_; ++i) M[i][j] = col[i];
        col = mul(col, lp);
    }
    KArith K(A_);
    std::vector<KFrac> rhs(n_);
    for (unsigned i = 0; i < n_; ++i) rhs[i] = K.from_poly(z[i]);
    auto Y = solve_over_K(A_, M, rhs);
    if (!Y) throw std::logic_error("lambda^p powers are not a basis");
    std::vector<KFrac> y(n_);
    for (unsigned j = 0; j < n_; ++j) {
        if ((*Y)[j].is_zero()) continue;
        auto rn = poly_pth_root(k(), (*Y)[j].num);
        auto rd = poly_pth_root(k(), (*Y)[j].den);
        if (!rn || !rd) return std::nullopt;
        y[j] = K.make(*rn, *rd);
    }
    auto [num, den] = common_denominator(A_, y);
    return make(num, A_.mul(den, x.den));
}

}  // namespace spiegel
