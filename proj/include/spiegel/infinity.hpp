#pragma once

#include <climits>
#include <mutex>
#include <vector>

#include "spiegel/tower.hpp"

namespace spiegel {

/// Laurent series over k in u, value u^val * sum c_i u^i, known modulo
/// u^prec (prec == LONG_MAX for exact values). Normalized: c is empty (zero to
/// the known precision) or c[0] != 0.
struct USeries {
    long val = 0;
    std::vector<Elem> c;
    long prec = LONG_MAX;

    bool is_exact() const { return prec == LONG_MAX; }
    /// No nonzero coefficient below the known precision.
    bool vanishes() const { return c.empty(); }
};

class USeriesRing {
public:
    explicit USeriesRing(const FiniteField& k) : k_(k) {}
    USeries normalize(USeries a) const;
    USeries monomial(Elem c, long e) const;
    USeries add(const USeries& a, const USeries& b) const;
    USeries sub(const USeries& a, const USeries& b) const;
    USeries mul(const USeries& a, const USeries& b) const;
    /// Inverse of a non-vanishing series; exact inputs need a relative
    /// precision cap.
    USeries inv(const USeries& a, long rel_prec) const;
    /// a^(q^i) with q = |k|.
    USeries frobenius(const USeries& a, unsigned i) const;
    USeries truncate(const USeries& a, long prec) const;
    /// b(T) at T = -u^{-(q-1)}.
    USeries eval_A(const Poly& b) const;

private:
    const FiniteField& k_;
};

/// The (q^d-1)/(q-1) infinite places of L, realized as embeddings
/// L -> F_q((u)) with u^{q-1} = -1/T. The place indexed by a monic
/// representative a sends lambda to phi_a(exp_C(pi~/P)).
class InfinitePlaces {
public:
    explicit InfinitePlaces(TowerPtr tower, long initial_precision = 64);

    std::size_t count() const { return tower_->place_reps().size(); }
    /// Valuations v_{inf_a}(beta) in order of Tower::place_reps(), normalized
    /// with v(u) = 1. beta must be nonzero.
    std::vector<long> valuations(const REl& beta) const;
    const std::vector<long>& lambda_valuations() const { return lambda_val_; }
    /// f(lambda_1) vanishes to the working precision.
    bool torsion_point_verified() const { return verified_; }
    long precision() const;

private:
    struct Level {
        long ap = 0;
        std::vector<std::vector<USeries>> powers;  // per place, lambda_a^j
    };
    Level build_level(long ap) const;

    TowerPtr tower_;
    USeriesRing ring_;
    mutable std::mutex mu_;
    mutable Level level_;
    std::vector<long> lambda_val_;
    bool verified_ = false;
};

}  // namespace spiegel
