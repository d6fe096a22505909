#include "spiegel/finite_field.hpp"

#include <algorithm>
#include <stdexcept>

namespace spiegel {

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t r = 2; r * r <= n; ++r) {
        if (n % r == 0) {
            out.push_back(r);
            while (n % r == 0) n /= r;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

bool is_prime(unsigned p) {
    if (p < 2) return false;
    for (unsigned r = 2; r * r <= p; ++r)
        if (p % r == 0) return false;
    return true;
}

}  // namespace

std::uint64_t FieldDesc::q() const {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) r *= p;
    return r;
}

std::vector<unsigned> supported_field_sizes() {
    return {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32};
}

FieldDesc standard_field(unsigned q) {
    // Conway polynomials C(p, e), low-to-high.
    switch (q) {
    case 2: return {2, 1, {1, 1}};
    case 3: return {3, 1, {1, 1}};
    case 5: return {5, 1, {3, 1}};
    case 7: return {7, 1, {4, 1}};
    case 11: return {11, 1, {9, 1}};
    case 13: return {13, 1, {11, 1}};
    case 4: return {2, 2, {1, 1, 1}};
    case 8: return {2, 3, {1, 1, 0, 1}};
    case 16: return {2, 4, {1, 1, 0, 0, 1}};
    case 32: return {2, 5, {1, 0, 1, 0, 0, 1}};
    case 9: return {3, 2, {2, 2, 1}};
    case 27: return {3, 3, {1, 2, 0, 1}};
    case 25: return {5, 2, {2, 4, 1}};
    default: break;
    }
    throw std::invalid_argument("unsupported field size q=" + std::to_string(q));
}

FieldPtr FiniteField::prime(unsigned p) {
    if (!is_prime(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
    auto f = std::shared_ptr<FiniteField>(new FiniteField());
    f->p_ = p;
    f->prime_degree_ = 1;
    f->size_ = p;
    f->order_ = p - 1;
    f->build_prime_tables();
    return f;
}

FieldPtr FiniteField::from_desc(const FieldDesc& desc) {
    FieldPtr fp = prime(desc.p);
    if (desc.e == 1) return fp;
    std::vector<Elem> mod(desc.modulus.begin(), desc.modulus.end());
    return extension(fp, mod);
}

FieldPtr FiniteField::extension(FieldPtr base, const std::vector<Elem>& modulus) {
    if (modulus.size() < 2 || modulus.back() != 1)
        throw std::invalid_argument("extension modulus must be monic of degree >= 1");
    const unsigned m = static_cast<unsigned>(modulus.size()) - 1;
    std::uint64_t size = 1;
    for (unsigned i = 0; i < m; ++i) {
        size *= base->size();
        if (size > kMaxSize) throw std::length_error("finite field too large for tables");
    }
    if (m == 1) {
        // degree-one extension is the base field itself; keep the encoding.
        return base;
    }
    auto f = std::shared_ptr<FiniteField>(new FiniteField());
    f->p_ = base->characteristic();
    f->prime_degree_ = base->prime_degree() * m;
    f->size_ = static_cast<Elem>(size);
    f->order_ = f->size_ - 1;
    f->base_ = std::move(base);
    f->modulus_ = modulus;
    f->build_extension_tables();
    return f;
}

void FiniteField::build_prime_tables() {
    // smallest primitive root
    const auto fac = prime_factors(order_);
    auto powmod = [&](std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1 % p_;
        b %= p_;
        while (e) {
            if (e & 1) r = r * b % p_;
            b = b * b % p_;
            e >>= 1;
        }
        return r;
    };
    Elem g = 1;
    if (p_ > 2) {
        for (g = 2; g < p_; ++g) {
            bool ok = true;
            for (auto r : fac)
                if (powmod(g, order_ / r) == 1) ok = false;
            if (ok) break;
        }
    }
    gen_ = g;
    exp_.assign(2 * static_cast<std::size_t>(order_) + 1, 0);
    log_.assign(size_, 0);
    std::uint64_t x = 1;
    for (std::uint32_t k = 0; k < order_; ++k) {
        exp_[k] = static_cast<Elem>(x);
        log_[x] = k;
        x = x * g % p_;
    }
    finish_tables();
}

Elem FiniteField::slow_mul(Elem a, Elem b) const {
    const FiniteField& B = *base_;
    const unsigned m = degree_over_base();
    auto da = base_digits(a);
    auto db = base_digits(b);
    std::vector<Elem> prod(2 * m - 1, 0);
    for (unsigned i = 0; i < m; ++i) {
        if (!da[i]) continue;
        for (unsigned j = 0; j < m; ++j) prod[i + j] = B.add(prod[i + j], B.mul(da[i], db[j]));
    }
    for (unsigned k = 2 * m - 2; k >= m; --k) {
        const Elem c = prod[k];
        if (!c) continue;
        prod[k] = 0;
        for (unsigned i = 0; i < m; ++i)
            prod[k - m + i] = B.sub(prod[k - m + i], B.mul(c, modulus_[i]));
    }
    prod.resize(m);
    return from_base_digits(prod);
}

void FiniteField::build_extension_tables() {
    const unsigned m = degree_over_base();
    const auto fac = prime_factors(order_);
    auto slow_pow = [&](Elem a, std::uint64_t e) {
        Elem r = 1;
        while (e) {
            if (e & 1) r = slow_mul(r, a);
            a = slow_mul(a, a);
            e >>= 1;
        }
        return r;
    };
    Elem g = 0;
    for (Elem cand = 2; cand < size_; ++cand) {
        bool ok = true;
        for (auto r : fac) {
            if (slow_pow(cand, order_ / r) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) {
            g = cand;
            break;
        }
    }
    if (g == 0) throw std::invalid_argument("extension modulus is not irreducible");
    gen_ = g;

    // Multiplication by g as a table over base digits: row i holds c*y^i*g.
    const Elem bsz = base_->size();
    std::vector<Elem> table(static_cast<std::size_t>(m) * bsz);
    for (unsigned i = 0; i < m; ++i) {
        for (Elem c = 0; c < bsz; ++c) {
            std::vector<Elem> dig(m, 0);
            dig[i] = c;
            table[static_cast<std::size_t>(i) * bsz + c] = slow_mul(from_base_digits(dig), g);
        }
    }
    auto raw_add = [&](Elem a, Elem b) -> Elem {
        if (p_ == 2) return a ^ b;
        Elem r = 0, scale = 1;
        while (a || b) {
            r += ((a % p_ + b % p_) % p_) * scale;
            a /= p_;
            b /= p_;
            scale *= p_;
        }
        return r;
    };

    exp_.assign(2 * static_cast<std::size_t>(order_) + 1, 0);
    log_.assign(size_, 0);
    Elem x = 1;
    for (std::uint32_t k = 0; k < order_; ++k) {
        exp_[k] = x;
        log_[x] = k;
        Elem y = 0, rest = x;
        for (unsigned i = 0; i < m; ++i) {
            const Elem c = rest % bsz;
            rest /= bsz;
            if (c) y = raw_add(y, table[static_cast<std::size_t>(i) * bsz + c]);
        }
        x = y;
        if (x == 1 && k + 1 < order_) throw std::logic_error("generator walk closed early");
    }
    finish_tables();
}

void FiniteField::finish_tables() {
    for (std::uint32_t k = order_; k < 2 * order_ + 1; ++k) exp_[k] = exp_[k - order_];
    if (p_ != 2) {
        zech_.assign(order_, -1);
        for (std::uint32_t k = 0; k < order_; ++k) {
            // 1 + g^k by digits
            Elem a = exp_[k];
            Elem r = 0, scale = 1;
            unsigned carry_one = 1;
            while (a || carry_one) {
                const Elem d = (a % p_ + carry_one) % p_;
                carry_one = 0;
                r += d * scale;
                a /= p_;
                scale *= p_;
            }
            zech_[k] = r == 0 ? -1 : static_cast<std::int32_t>(log_[r]);
        }
    }
}

Elem FiniteField::inv(Elem a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return exp_[order_ - log_[a]];
}

Elem FiniteField::pow(Elem a, std::uint64_t k) const {
    if (k == 0) return 1;
    if (a == 0) return 0;
    const std::uint64_t e = (static_cast<std::uint64_t>(log_[a]) * (k % order_)) % order_;
    return exp_[e];
}

Elem FiniteField::frobenius(Elem a, unsigned times) const {
    std::uint64_t e = 1;
    for (unsigned i = 0; i < times % prime_degree_; ++i) e *= p_;
    return pow(a, e);
}

Elem FiniteField::root_frobenius(Elem a, unsigned times) const {
    const unsigned t = times % prime_degree_;
    return frobenius(a, (prime_degree_ - t) % prime_degree_);
}

std::uint32_t FiniteField::log(Elem a) const {
    if (a == 0) throw std::domain_error("log of zero");
    return log_[a];
}

std::uint64_t FiniteField::element_order(Elem a) const {
    if (a == 0) throw std::domain_error("order of zero");
    const std::uint64_t l = log_[a];
    std::uint64_t g = order_, b = l;
    while (b) {
        const auto t = g % b;
        g = b;
        b = t;
    }
    return order_ / g;
}

Elem FiniteField::from_int(long v) const {
    long r = v % static_cast<long>(p_);
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
}

std::vector<unsigned> FiniteField::prime_digits(Elem a) const {
    std::vector<unsigned> d(prime_degree_, 0);
    for (unsigned i = 0; i < prime_degree_; ++i) {
        d[i] = a % p_;
        a /= p_;
    }
    return d;
}

Elem FiniteField::from_prime_digits(const std::vector<unsigned>& d) const {
    Elem r = 0, s = 1;
    for (unsigned i = 0; i < d.size(); ++i) {
        r += (d[i] % p_) * s;
        s *= p_;
    }
    return r;
}

std::vector<Elem> FiniteField::base_digits(Elem a) const {
    if (!base_) return {a};
    const Elem b = base_->size();
    std::vector<Elem> d(degree_over_base(), 0);
    for (auto& x : d) {
        x = a % b;
        a /= b;
    }
    return d;
}

Elem FiniteField::from_base_digits(const std::vector<Elem>& d) const {
    if (!base_) return d.empty() ? 0 : d[0];
    const Elem b = base_->size();
    Elem r = 0, s = 1;
    for (auto x : d) {
        r += x * s;
        s *= b;
    }
    return r;
}

}  // namespace spiegel
