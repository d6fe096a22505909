#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace spiegel {

/// Field element code. An element of F_{p^m} is encoded as the integer
/// sum(d_i * p^i) of its digits over the prime field; towers nest the
/// encoding, so an element of the base field keeps its code after embedding.
using Elem = std::uint32_t;

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

/// k = F_q with q = p^e, given by a stored modulus over F_p.
struct FieldDesc {
    unsigned p = 2;
    unsigned e = 1;
    std::vector<unsigned> modulus;  // monic, low-to-high, degree e

    std::uint64_t q() const;
};

/// Descriptor with the fixed Conway-style modulus for q; throws for
/// unsupported q.
FieldDesc standard_field(unsigned q);
std::vector<unsigned> supported_field_sizes();

/// Table-driven finite field of at most 2^21 elements.
///
/// Multiplication goes through discrete log / antilog tables built from a
/// primitive element; addition is digit-wise (XOR in characteristic 2, Zech
/// logarithms otherwise).
class FiniteField {
public:
    static constexpr Elem kMaxSize = Elem{1} << 21;

    static FieldPtr prime(unsigned p);
    static FieldPtr from_desc(const FieldDesc& desc);
    /// F = base[y]/(modulus); modulus monic irreducible over base, low-to-high.
    static FieldPtr extension(FieldPtr base, const std::vector<Elem>& modulus);

    unsigned characteristic() const { return p_; }
    Elem size() const { return size_; }
    unsigned prime_degree() const { return prime_degree_; }
    unsigned degree_over_base() const { return static_cast<unsigned>(modulus_.size()) - 1; }
    const FieldPtr& base() const { return base_; }
    const std::vector<Elem>& modulus() const { return modulus_; }
    /// Primitive element behind the log tables.
    Elem generator() const { return gen_; }

    Elem add(Elem a, Elem b) const {
        if (p_ == 2) return a ^ b;
        if (a == 0) return b;
        if (b == 0) return a;
        const std::uint32_t la = log_[a];
        std::uint32_t k = log_[b] + order_ - la;
        if (k >= order_) k -= order_;
        const std::int32_t z = zech_[k];
        if (z < 0) return 0;
        return exp_[la + static_cast<std::uint32_t>(z)];
    }
    Elem neg(Elem a) const {
        if (p_ == 2 || a == 0) return a;
        std::uint32_t k = log_[a] + order_ / 2;
        return exp_[k];
    }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[log_[a] + log_[b]];
    }
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t k) const;
    /// a^(p^times)
    Elem frobenius(Elem a, unsigned times = 1) const;
    /// Unique b with b^(p^times) = a.
    Elem root_frobenius(Elem a, unsigned times = 1) const;

    std::uint32_t log(Elem a) const;
    Elem exp(std::uint64_t k) const { return exp_[k % order_]; }
    std::uint32_t order() const { return order_; }
    /// Multiplicative order of a nonzero element.
    std::uint64_t element_order(Elem a) const;

    /// Image of an integer in the prime subfield.
    Elem from_int(long v) const;
    std::vector<unsigned> prime_digits(Elem a) const;
    Elem from_prime_digits(const std::vector<unsigned>& d) const;
    /// Coordinates over the immediate base field (length degree_over_base()).
    std::vector<Elem> base_digits(Elem a) const;
    Elem from_base_digits(const std::vector<Elem>& d) const;

    bool contains_subfield_code(Elem a, Elem sub_size) const { return a < sub_size; }

private:
    FiniteField() = default;
    void build_prime_tables();
    void build_extension_tables();
    Elem slow_mul(Elem a, Elem b) const;
    void finish_tables();

    unsigned p_ = 2;
    unsigned prime_degree_ = 1;
    Elem size_ = 2;
    std::uint32_t order_ = 1;
    Elem gen_ = 1;
    FieldPtr base_;
    std::vector<Elem> modulus_;
    std::vector<Elem> exp_;          // length 2*order_
    std::vector<std::uint32_t> log_;
    std::vector<std::int32_t> zech_;
};

}  // namespace spiegel
