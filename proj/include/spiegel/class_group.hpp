#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <vector>

#include "spiegel/infinity.hpp"
#include "spiegel/local.hpp"
#include "spiegel/tower.hpp"
#include "spiegel/units.hpp"

namespace spiegel {

/// Prime of R in two-element form (P, g(lambda)).
struct PrimeIdeal {
    Poly below;
    std::vector<Elem> factor;  // monic factor of f mod P over A/P, low-to-high
    REl g;
    unsigned residue_degree = 1;
    unsigned ramification = 1;
    unsigned norm_degree() const { return residue_degree * static_cast<unsigned>(below.deg()); }
};

/// The primes of R above a prime P of A.
struct Splitting {
    Poly below;
    FieldPtr residue;          // A/P
    std::uint64_t order = 0;   // multiplicative order of P mod the base prime (0 at the base prime)
    std::vector<PrimeIdeal> primes;
    std::vector<REl> cofactors;  // in every prime above P except the matching one
};

/// Kummer-Dedekind factorization of P R; the residue degree is cross-checked
/// against the order of P modulo the base prime.
Splitting split_prime(const Tower& tw, const Poly& P);
/// Valuations of beta at the primes of `S`, given v_P(N(beta)).
std::vector<unsigned> valuations_above(const Tower& tw, const Splitting& S, const REl& beta, unsigned v_norm);
/// perm[i] = j with sigma_c(prime i) = prime j.
std::vector<std::size_t> galois_permutation(const Tower& tw, const Splitting& S, const Poly& c);
/// N(F_x) = unit * P^{n-1}: A[lambda] is the maximal order.
bool discriminant_check(const Tower& tw);

struct ClassGroupConfig {
    unsigned norm_bound = 0;          // 0 picks a bound from the tower
    std::uint64_t candidate_cap = 400000;
    unsigned bound_retries = 5;
    unsigned verify_window = 16;      // smooth elements scanned after the target index is hit
    std::uint64_t stall_window = 0;   // smooth elements without lattice growth before B grows (0: max(64, dim))
    std::uint64_t targeted_tries = 4000;  // elements tried per targeted prime
};

/// Relation generator sigma_c(base_elements[base]).
struct RelationSource {
    std::size_t base = 0;
    Poly c;
};

/// p-torsion class a with a^p = (alpha), alpha = prod_k beta_k^{y_k}.
struct ClassWitness {
    std::vector<mpz_class> ideal;   // exponents on the finite factor base
    std::vector<mpz_class> alpha;   // exponents on the kept relations
};

struct ClassData {
    unsigned bound = 0;
    std::vector<Splitting> splittings;
    struct Column {
        std::size_t split;
        std::size_t index;
    };
    std::vector<Column> finite;  // finite factor-base columns
    std::size_t num_infinite = 0;

    std::vector<REl> base_elements;
    std::vector<RelationSource> kept;
    std::vector<std::vector<mpz_class>> rows;  // full rows of the kept relations

    std::vector<mpz_class> cl0_invariants, pic_invariants;
    mpz_class cl0_order, pic_order, infinite_index, expected_cl0;
    std::vector<ClassWitness> witnesses;

    std::uint64_t candidates = 0, smooth = 0;
    unsigned retries = 0;
};

/// Relation search over a factor base of primes of norm degree <= B plus the
/// infinite places; the lattice index must match `expected_cl0`.
ClassData class_group(const Tower& tw, const InfinitePlaces& inf, const UnitSet& units, const mpz_class& expected_cl0,
                      const ClassGroupConfig& cfg = {});

/// Number of invariant factors divisible by p.
std::size_t p_rank(const std::vector<mpz_class>& invariants, unsigned p);

/// Element sigma_c(beta) behind a kept relation.
REl relation_element(const Tower& tw, const ClassData& C, std::size_t k);

/// d(alpha_j)/alpha_j as power series coefficients of dlambda; throws
/// NotIntegral when a pole at the base prime survives.
std::vector<Series> p_torsion_dlogs(const Tower& tw, const LocalFrame& frame, const ClassData& C);

}  // namespace spiegel
