#include "spiegel/poly.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace spiegel {

namespace {

std::vector<unsigned> small_prime_factors(unsigned n) {
    std::vector<unsigned> out;
    for (unsigned r = 2; r * r <= n; ++r) {
        if (n % r == 0) {
            out.push_back(r);
            while (n % r == 0) n /= r;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

bool poly_less(const Poly& a, const Poly& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg();
    for (int i = a.deg(); i >= 0; --i)
        if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
    return false;
}

Poly PolyRing::add(const Poly& a, const Poly& b) const {
    const FiniteField& F = *F_;
    const std::size_t n = std::max(a.c.size(), b.c.size());
    std::vector<Elem> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = F.add(a[i], b[i]);
    return Poly(std::move(r));
}

Poly PolyRing::sub(const Poly& a, const Poly& b) const {
    const FiniteField& F = *F_;
    const std::size_t n = std::max(a.c.size(), b.c.size());
    std::vector<Elem> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = F.sub(a[i], b[i]);
    return Poly(std::move(r));
}

Poly PolyRing::neg(const Poly& a) const {
    std::vector<Elem> r(a.c.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F_->neg(a.c[i]);
    return Poly(std::move(r));
}

Poly PolyRing::scale(const Poly& a, Elem s) const {
    if (s == 0) return {};
    std::vector<Elem> r(a.c.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = F_->mul(a.c[i], s);
    return Poly(std::move(r));
}

Poly PolyRing::mul(const Poly& a, const Poly& b) const {
    if (a.is_zero() || b.is_zero()) return {};
    const FiniteField& F = *F_;
    std::vector<Elem> r(a.c.size() + b.c.size() - 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        const Elem ai = a.c[i];
        if (!ai) continue;
        Elem* out = r.data() + i;
        for (std::size_t j = 0; j < b.c.size(); ++j) {
            const Elem bj = b.c[j];
            if (bj) out[j] = F.add(out[j], F.mul(ai, bj));
        }
    }
    return Poly(std::move(r));
}

Poly PolyRing::shift(const Poly& a, unsigned k) const {
    if (a.is_zero()) return {};
    std::vector<Elem> r(a.c.size() + k, 0);
    std::copy(a.c.begin(), a.c.end(), r.begin() + k);
    return Poly(std::move(r));
}

std::pair<Poly, Poly> PolyRing::divmod(const Poly& a, const Poly& b) const {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.deg() < b.deg()) return {Poly{}, a};
    const FiniteField& F = *F_;
    std::vector<Elem> r = a.c;
    const int db = b.deg();
    std::vector<Elem> q(a.deg() - db + 1, 0);
    const Elem inv_lead = F.inv(b.lead());
    for (int k = a.deg(); k >= db; --k) {
        const Elem ck = r[k];
        if (!ck) continue;
        const Elem t = F.mul(ck, inv_lead);
        q[k - db] = t;
        for (int i = 0; i <= db; ++i)
            if (b.c[i]) r[k - db + i] = F.sub(r[k - db + i], F.mul(t, b.c[i]));
    }
    r.resize(db);
    return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly PolyRing::div_exact(const Poly& a, const Poly& b) const {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
    return q;
}

bool PolyRing::divides(const Poly& b, const Poly& a) const {
    return mod(a, b).is_zero();
}

Poly PolyRing::monic(const Poly& a) const {
    if (a.is_zero() || a.lead() == 1) return a;
    return scale(a, F_->inv(a.lead()));
}

Poly PolyRing::gcd(Poly a, Poly b) const {
    while (!b.is_zero()) {
        Poly r = mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

PolyRing::XGcd PolyRing::xgcd(const Poly& a, const Poly& b) const {
    Poly r0 = a, r1 = b, s0 = Poly::constant(1), s1, t0, t1 = Poly::constant(1);
    while (!r1.is_zero()) {
        auto [qq, r2] = divmod(r0, r1);
        Poly s2 = sub(s0, mul(qq, s1));
        Poly t2 = sub(t0, mul(qq, t1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero()) return {r0, s0, t0};
    const Elem li = F_->inv(r0.lead());
    return {scale(r0, li), scale(s0, li), scale(t0, li)};
}

Poly PolyRing::pow(Poly a, std::uint64_t k) const {
    Poly r = Poly::constant(1);
    while (k) {
        if (k & 1) r = mul(r, a);
        k >>= 1;
        if (k) a = mul(a, a);
    }
    return r;
}

Poly PolyRing::powmod(Poly a, std::uint64_t k, const Poly& m) const {
    Poly r = mod(Poly::constant(1), m);
    a = mod(a, m);
    while (k) {
        if (k & 1) r = mulmod(r, a, m);
        k >>= 1;
        if (k) a = mulmod(a, a, m);
    }
    return r;
}

Poly PolyRing::derivative(const Poly& a) const {
    if (a.deg() < 1) return {};
    std::vector<Elem> r(a.c.size() - 1);
    for (std::size_t i = 1; i < a.c.size(); ++i)
        r[i - 1] = F_->mul(a.c[i], F_->from_int(static_cast<long>(i % F_->characteristic())));
    return Poly(std::move(r));
}

Elem PolyRing::eval(const Poly& a, Elem x) const {
    Elem r = 0;
    for (int i = a.deg(); i >= 0; --i) r = F_->add(F_->mul(r, x), a.c[i]);
    return r;
}

Poly PolyRing::frobenius_power(const Poly& a, unsigned k) const {
    if (a.is_zero()) return {};
    std::uint64_t e = 1;
    for (unsigned i = 0; i < k; ++i) e *= F_->size();
    std::vector<Elem> r(static_cast<std::size_t>(a.deg()) * e + 1, 0);
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i * e] = a.c[i];
    return Poly(std::move(r));
}

Poly PolyRing::compose(const Poly& a, const Poly& b) const {
    Poly r;
    for (int i = a.deg(); i >= 0; --i) r = add(mul(r, b), Poly::constant(a.c[i]));
    return r;
}

unsigned PolyRing::valuation(Poly a, const Poly& p) const {
    if (a.is_zero()) throw std::domain_error("valuation of zero");
    unsigned v = 0;
    for (;;) {
        auto [qq, r] = divmod(a, p);
        if (!r.is_zero()) return v;
        a = std::move(qq);
        ++v;
    }
}

bool PolyRing::is_irreducible(const Poly& f) const {
    const int n = f.deg();
    if (n < 1) return false;
    if (n == 1) return true;
    const Poly fm = monic(f);
    const Elem Q = F_->size();
    // frob[i] = x^(Q^i) mod f
    std::vector<Poly> frob(n + 1);
    frob[0] = mod(x(), fm);
    for (int i = 1; i <= n; ++i) frob[i] = powmod(frob[i - 1], Q, fm);
    if (frob[n] != frob[0]) return false;
    for (unsigned r : small_prime_factors(static_cast<unsigned>(n))) {
        const Poly g = gcd(sub(frob[n / r], x()), fm);
        if (!g.is_one()) return false;
    }
    return true;
}

bool PolyRing::is_squarefree(const Poly& f) const {
    if (f.deg() < 1) return true;
    const Poly d = derivative(f);
    if (d.is_zero()) return false;
    return gcd(f, d).is_one();
}

std::vector<Poly> PolyRing::monics(unsigned d) const {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= F_->size();
    std::vector<Poly> out;
    out.reserve(count);
    for (std::uint64_t v = 0; v < count; ++v) {
        Poly p = from_code(v);
        std::vector<Elem> c(d + 1, 0);
        for (std::size_t i = 0; i < p.c.size(); ++i) c[i] = p.c[i];
        c[d] = 1;
        out.emplace_back(std::move(c));
    }
    return out;
}

std::vector<Poly> PolyRing::irreducibles(unsigned d) const {
    if (d == 0) throw std::invalid_argument("irreducibles: degree must be >= 1");
    std::vector<Poly> out;
    for (auto& p : monics(d))
        if (is_irreducible(p)) out.push_back(std::move(p));
    return out;
}

std::vector<Poly> PolyRing::equal_degree_factor(const Poly& f0, unsigned k, std::mt19937_64& rng) const {
    const Poly f = monic(f0);
    if (f.deg() <= static_cast<int>(k)) return {f};
    const FiniteField& F = *F_;
    const unsigned degree_bits = F.prime_degree() * k;
    for (;;) {
        Poly a = random(static_cast<unsigned>(f.deg() - 1), rng);
        if (a.deg() < 1) continue;
        Poly b;
        if (F.characteristic() == 2) {
            Poly t = a, acc = a;
            for (unsigned i = 1; i < degree_bits; ++i) {
                t = mulmod(t, t, f);
                acc = add(acc, t);
            }
            b = acc;
        } else {
            unsigned __int128 e = 1;
            for (unsigned i = 0; i < k; ++i) e *= F.size();
            if (e > (static_cast<unsigned __int128>(1) << 63))
                throw std::length_error("equal_degree_factor: exponent too large");
            const std::uint64_t ex = static_cast<std::uint64_t>((e - 1) / 2);
            b = sub(powmod(a, ex, f), Poly::constant(1));
        }
        Poly g = gcd(b, f);
        if (g.deg() > 0 && g.deg() < f.deg()) {
            auto left = equal_degree_factor(g, k, rng);
            auto right = equal_degree_factor(div_exact(f, g), k, rng);
            left.insert(left.end(), right.begin(), right.end());
            std::sort(left.begin(), left.end(), poly_less);
            return left;
        }
    }
}

std::vector<std::pair<Poly, unsigned>> PolyRing::factor(const Poly& f0) const {
    if (f0.is_zero()) throw std::domain_error("factor of zero");
    std::vector<std::pair<Poly, unsigned>> out;
    std::mt19937_64 rng(0x5eed);
    const FiniteField& F = *F_;
    const unsigned p = F.characteristic();

    auto pth_root = [&](const Poly& a) {
        std::vector<Elem> r(a.deg() / p + 1, 0);
        for (int i = 0; i <= a.deg(); i += static_cast<int>(p)) r[i / p] = F.root_frobenius(a.c[i], 1);
        return Poly(std::move(r));
    };
    auto distinct_degree = [&](Poly g, unsigned mult) {
        Poly h = mod(x(), g);
        for (unsigned i = 1; 2 * static_cast<int>(i) <= g.deg(); ++i) {
            h = powmod(h, F.size(), g);
            Poly d = gcd(sub(h, x()), g);
            if (!d.is_one()) {
                for (auto& irr : equal_degree_factor(d, i, rng)) out.emplace_back(irr, mult);
                g = div_exact(g, d);
                h = mod(h, g);
            }
        }
        if (g.deg() > 0) out.emplace_back(monic(g), mult);
    };
    // squarefree decomposition
    auto sff = [&](auto&& self, Poly a, unsigned mult) -> void {
        a = monic(a);
        if (a.deg() < 1) return;
        Poly d = derivative(a);
        if (d.is_zero()) {
            self(self, pth_root(a), mult * p);
            return;
        }
        Poly c = gcd(a, d);
        Poly w = div_exact(a, c);
        unsigned i = 1;
        while (!w.is_one()) {
            Poly y = gcd(w, c);
            Poly fac = div_exact(w, y);
            if (fac.deg() > 0) distinct_degree(fac, mult * i);
            ++i;
            w = y;
            c = div_exact(c, y);
        }
        if (!c.is_one()) self(self, pth_root(c), mult * p);
    };
    sff(sff, f0, 1);
    // merge equal factors
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
    std::vector<std::pair<Poly, unsigned>> merged;
    for (auto& e : out) {
        if (!merged.empty() && merged.back().first == e.first)
            merged.back().second += e.second;
        else
            merged.push_back(e);
    }
    return merged;
}

Elem PolyRing::resultant(Poly a, Poly b) const {
    const FiniteField& F = *F_;
    if (a.is_zero() || b.is_zero()) return 0;
    Elem acc = 1;
    for (;;) {
        const int da = a.deg(), db = b.deg();
        if (db == 0) return F.mul(acc, F.pow(b.lead(), static_cast<std::uint64_t>(da)));
        if (da == 0) return F.mul(acc, F.pow(a.lead(), static_cast<std::uint64_t>(db)));
        Poly r = mod(a, b);
        if (r.is_zero()) return 0;
        if ((da & 1) && (db & 1)) acc = F.neg(acc);
        acc = F.mul(acc, F.pow(b.lead(), static_cast<std::uint64_t>(da - r.deg())));
        a = std::move(b);
        b = std::move(r);
    }
}

Poly PolyRing::interpolate(const std::vector<Elem>& xs, const std::vector<Elem>& ys) const {
    const FiniteField& F = *F_;
    const std::size_t n = xs.size();
    std::vector<Elem> dd = ys;
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            dd[i] = F.div(F.sub(dd[i], dd[i - 1]), F.sub(xs[i], xs[i - j]));
            if (i == j) break;
        }
    Poly r;
    for (std::size_t k = n; k-- > 0;) {
        // r = r*(x - xs[k]) + dd[k]
        r = add(mul(r, Poly(std::vector<Elem>{F.neg(xs[k]), 1})), Poly::constant(dd[k]));
    }
    return r;
}

Poly PolyRing::random(unsigned max_deg, std::mt19937_64& rng) const {
    std::uniform_int_distribution<Elem> dist(0, F_->size() - 1);
    std::vector<Elem> c(max_deg + 1);
    for (auto& x : c) x = dist(rng);
    return Poly(std::move(c));
}

std::uint64_t PolyRing::code(const Poly& a) const {
    std::uint64_t v = 0;
    for (int i = a.deg(); i >= 0; --i) v = v * F_->size() + a.c[i];
    return v;
}

Poly PolyRing::from_code(std::uint64_t v) const {
    std::vector<Elem> c;
    while (v) {
        c.push_back(static_cast<Elem>(v % F_->size()));
        v /= F_->size();
    }
    return Poly(std::move(c));
}

std::string format_poly(const FiniteField& F, const Poly& a, char var) {
    if (a.is_zero()) return "0";
    std::string out;
    for (int k = a.deg(); k >= 0; --k) {
        const Elem c = a.c[k];
        if (!c) continue;
        if (!out.empty()) out += '+';
        const bool show_coef = c != 1 || k == 0;
        if (show_coef) out += std::to_string(c);
        if (k > 0) {
            if (show_coef) out += '*';
            out += var;
            if (k > 1) out += '^' + std::to_string(k);
        }
    }
    (void)F;
    return out;
}

Poly parse_poly(const FiniteField& F, std::string_view s, char var) {
    std::string t;
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    if (t.empty()) throw std::invalid_argument("empty polynomial");
    std::vector<Elem> coeffs;
    auto put = [&](unsigned k, Elem c) {
        if (coeffs.size() <= k) coeffs.resize(k + 1, 0);
        coeffs[k] = F.add(coeffs[k], c);
    };
    std::size_t i = 0;
    bool first = true;
    while (i < t.size()) {
        bool negative = false;
        if (t[i] == '+' || t[i] == '-') {
            negative = t[i] == '-';
            ++i;
        } else if (!first) {
            throw std::invalid_argument("expected '+' or '-' in polynomial '" + t + "'");
        }
        first = false;
        Elem c = 1;
        bool have_coef = false;
        std::size_t j = i;
        unsigned long v = 0;
        while (j < t.size() && std::isdigit(static_cast<unsigned char>(t[j]))) {
            v = v * 10 + static_cast<unsigned long>(t[j] - '0');
            if (v >= F.size()) throw std::invalid_argument("coefficient out of range in '" + t + "'");
            ++j;
        }
        if (j > i) {
            c = static_cast<Elem>(v);
            have_coef = true;
            i = j;
            if (i < t.size() && t[i] == '*') ++i;
        }
        unsigned k = 0;
        if (i < t.size() && t[i] == var) {
            ++i;
            k = 1;
            if (i < t.size() && t[i] == '^') {
                ++i;
                std::size_t e0 = i;
                unsigned long e = 0;
                while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) {
                    e = e * 10 + static_cast<unsigned long>(t[i] - '0');
                    if (e > 1u << 20) throw std::invalid_argument("exponent too large");
                    ++i;
                }
                if (i == e0) throw std::invalid_argument("missing exponent in '" + t + "'");
                k = static_cast<unsigned>(e);
            }
        } else if (!have_coef) {
            throw std::invalid_argument("malformed polynomial '" + t + "'");
        }
        put(k, negative ? F.neg(c) : c);
    }
    return Poly(std::move(coeffs));
}

}  // namespace spiegel
