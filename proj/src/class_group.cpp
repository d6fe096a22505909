#include "spiegel/class_group.hpp"

#include <algorithm>
#include <optional>
#include <tuple>

#include "spiegel/errors.hpp"

namespace spiegel {

namespace {

FieldPtr residue_field(const Tower& tw, const Poly& P) {
    if (P == tw.prime().P) return tw.prime().residue;
    if (P.deg() == 1) return tw.prime().k;  // codes of constants are unchanged
    return FiniteField::extension(tw.prime().k, P.c);
}

/// a mod P as an element of A/P (nested encoding).
Elem residue_code(const Tower& tw, const Poly& a, const Poly& P) {
    return static_cast<Elem>(tw.A().code(tw.A().mod(a, P)));
}

REl lift_factor(const Tower& tw, const Poly& g) {
    std::vector<Poly> dense;
    for (Elem c : g.c) dense.push_back(tw.A().from_code(c));
    return tw.reduce(std::move(dense));
}

std::vector<mpz_class> to_mpz(const std::vector<long>& v) {
    return std::vector<mpz_class>(v.begin(), v.end());
}

IntMatrix inverse_unimodular(const IntMatrix& V) {
    const std::size_t n = V.rows;
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = V.at(i, j);
        a[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] == 0) ++piv;
        if (piv == n) throw SpiegelError(ErrorKind::OracleMismatch, "Smith transform is singular");
        std::swap(a[piv], a[c]);
        const mpq_class inv = 1 / a[c][c];
        for (auto& x : a[c]) x *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            const mpq_class f = a[r][c];
            for (std::size_t j = 0; j < 2 * n; ++j) a[r][j] -= f * a[c][j];
        }
    }
    IntMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (a[i][n + j].get_den() != 1) throw SpiegelError(ErrorKind::OracleMismatch, "Smith transform is not unimodular");
            out.at(i, j) = a[i][n + j].get_num();
        }
    return out;
}

}  // namespace

Splitting split_prime(const Tower& tw, const Poly& P) {
    const PolyRing& A = tw.A();
    if (P.deg() < 1 || P.lead() != 1 || !A.is_irreducible(P))
        throw SpiegelError(ErrorKind::InvalidInput, "split_prime needs a monic irreducible polynomial");
    Splitting S;
    S.below = P;
    S.residue = residue_field(tw, P);
    if (P == tw.prime().P) {
        PrimeIdeal q;
        q.below = P;
        q.factor = {0, 1};
        q.g = tw.lambda();
        q.residue_degree = 1;
        q.ramification = tw.n();
        S.primes.push_back(q);
        S.cofactors.push_back(tw.one());
        return S;
    }
    S.order = tw.residue().element_order(tw.reduce_A(P));
    const PolyRing FP(S.residue);
    std::vector<Elem> fb;
    for (const Poly& c : tw.f()) fb.push_back(residue_code(tw, c, P));
    const Poly fbar(fb);
    const auto fac = FP.factor(fbar);
    std::vector<Poly> gs;
    for (const auto& [g, e] : fac) {
        if (e != 1) throw SpiegelError(ErrorKind::OracleMismatch, "f is not squarefree modulo an unramified prime");
        if (static_cast<std::uint64_t>(g.deg()) != S.order)
            throw SpiegelError(ErrorKind::OracleMismatch, "residue degree differs from the order of P modulo the base prime");
        gs.push_back(g);
    }
    for (std::size_t i = 0; i < gs.size(); ++i) {
        PrimeIdeal pr;
        pr.below = P;
        pr.factor = gs[i].c;
        pr.g = lift_factor(tw, gs[i]);
        pr.residue_degree = static_cast<unsigned>(gs[i].deg());
        S.primes.push_back(pr);
        Poly tau = Poly::constant(1);
        for (std::size_t j = 0; j < gs.size(); ++j)
            if (j != i) tau = FP.mul(tau, gs[j]);
        S.cofactors.push_back(lift_factor(tw, tau));
    }
    return S;
}

std::vector<unsigned> valuations_above(const Tower& tw, const Splitting& S, const REl& beta, unsigned v_norm) {
    const PolyRing& A = tw.A();
    const std::size_t m = S.primes.size();
    if (S.primes.front().ramification > 1) return {v_norm};
    std::vector<unsigned> out(m, 0);
    if (v_norm == 0) return out;
    unsigned total = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const unsigned f = S.primes[i].residue_degree;
        unsigned E = v_norm / f + 1;
        Poly PE = A.pow(S.below, E);
        REl gam = beta;
        for (auto& c : gam) c = A.mod(c, PE);
        // gamma in prime i  <=>  gamma * tau in P R
        while (E > 1) {
            REl t = tw.mul(gam, S.cofactors[i]);
            for (auto& c : t) c = A.mod(c, PE);
            auto div = tw.div_A(t, S.below);
            if (!div) break;
            gam = std::move(*div);
            --E;
            PE = A.div_exact(PE, S.below);
            ++out[i];
        }
        total += out[i] * f;
    }
    if (total != v_norm) throw SpiegelError(ErrorKind::OracleMismatch, "prime valuations do not add up to the norm valuation");
    return out;
}

std::vector<std::size_t> galois_permutation(const Tower& tw, const Splitting& S, const Poly& c) {
    const std::size_t m = S.primes.size();
    if (m == 1) return {0};
    const PolyRing FP(S.residue);
    const Poly cr = tw.lift_residue(tw.reduce_A(c));
    const LinearizedPoly phi = tw.carlitz().action(cr);
    std::vector<Elem> dense;
    std::size_t qi = 1;
    for (const Poly& a : phi.c) {
        if (dense.size() < qi + 1) dense.resize(qi + 1, 0);
        dense[qi] = residue_code(tw, a, S.below);
        qi *= tw.q();
    }
    const Poly phibar(dense);
    std::vector<std::size_t> perm(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        const Poly gi(S.primes[i].factor);
        for (std::size_t j = 0; j < m && perm[i] == m; ++j) {
            const Poly gj(S.primes[j].factor);
            const Poly h = FP.mod(FP.compose(gi, FP.mod(phibar, gj)), gj);
            if (h.is_zero()) perm[i] = j;
        }
        if (perm[i] == m) throw SpiegelError(ErrorKind::OracleMismatch, "Galois image of a prime not found");
    }
    return perm;
}

bool discriminant_check(const Tower& tw) {
    const PolyRing& A = tw.A();
    const Poly N = tw.norm(tw.Fx());
    if (N.is_zero()) return false;
    const unsigned v = A.valuation(N, tw.prime().P);
    if (v != tw.n() - 1) return false;
    return A.div_exact(N, A.pow(tw.prime().P, v)).deg() == 0;
}

std::size_t p_rank(const std::vector<mpz_class>& invariants, unsigned p) {
    std::size_t r = 0;
    for (const auto& s : invariants)
        if (s % p == 0) ++r;
    return r;
}

REl relation_element(const Tower& tw, const ClassData& C, std::size_t k) {
    const RelationSource& src = C.kept.at(k);
    return tw.galois_apply(src.c, C.base_elements.at(src.base));
}

namespace {

struct FactorBase {
    std::vector<Splitting> splittings;
    std::vector<ClassData::Column> finite;
    std::vector<std::vector<std::size_t>> column_of;  // [split][prime]
    std::map<std::uint64_t, std::size_t> split_of_code;
};

FactorBase build_factor_base(const Tower& tw, unsigned B) {
    const PolyRing& A = tw.A();
    FactorBase fb;
    auto add = [&](Splitting S) {
        const std::size_t si = fb.splittings.size();
        fb.split_of_code[A.code(S.below)] = si;
        std::vector<std::size_t> cols;
        for (std::size_t i = 0; i < S.primes.size(); ++i) {
            cols.push_back(fb.finite.size());
            fb.finite.push_back({si, i});
        }
        fb.column_of.push_back(cols);
        fb.splittings.push_back(std::move(S));
    };
    add(split_prime(tw, tw.prime().P));
    for (unsigned deg = 1; deg <= B; ++deg) {
        for (const Poly& P : A.irreducibles(deg)) {
            if (P == tw.prime().P) continue;
            const std::uint64_t ord = tw.residue().element_order(tw.reduce_A(P));
            if (deg * ord > B) continue;
            add(split_prime(tw, P));
        }
    }
    return fb;
}

/// Slots T^i lambda^j ordered by their pole contribution at infinity.
std::vector<std::pair<unsigned, unsigned>> candidate_slots(const Tower& tw, const std::vector<long>& vlam) {
    std::vector<std::tuple<long, unsigned, unsigned>> s;
    const long qm1 = static_cast<long>(tw.q()) - 1;
    for (unsigned i = 0; i <= 8; ++i)
        for (unsigned j = 0; j < tw.n(); ++j) {
            long w = 0;
            for (long v : vlam) w += std::max(0L, static_cast<long>(i) * qm1 - static_cast<long>(j) * v);
            s.emplace_back(w, j, i);
        }
    std::sort(s.begin(), s.end());
    std::vector<std::pair<unsigned, unsigned>> out;
    for (const auto& [w, j, i] : s) out.emplace_back(i, j);
    return out;
}

unsigned default_bound(const Tower& tw) {
    // enough room for a handful of split primes beyond the base prime
    return std::max(2u, tw.d() + 2);
}

}  // namespace

ClassData class_group(const Tower& tw, const InfinitePlaces& inf, const UnitSet& units, const mpz_class& expected_cl0,
                      const ClassGroupConfig& cfg) {
    const PolyRing& A = tw.A();
    const FiniteField& Fr = tw.residue();
    const unsigned q = tw.q();
    const std::size_t s = inf.count();
    unsigned B = cfg.norm_bound ? cfg.norm_bound : default_bound(tw);
    const auto slots = candidate_slots(tw, inf.lambda_valuations());
    std::vector<Poly> residues;  // lifts of (A/P)^x
    for (Elem r = 1; r < Fr.size(); ++r) residues.push_back(tw.lift_residue(r));

    ClassData C;
    C.expected_cl0 = expected_cl0;
    for (unsigned attempt = 0;; ++attempt, ++B) {
        FactorBase fb = build_factor_base(tw, B);
        const std::size_t nfin = fb.finite.size();
        const std::size_t dim = nfin + s;
        // smooth elements without lattice growth before the bound is raised
        const std::uint64_t stall = cfg.stall_window ? cfg.stall_window : std::max<std::uint64_t>(64, dim);
        LatticeHnf H(dim);
        std::vector<std::vector<std::vector<std::size_t>>> perm_cache(fb.splittings.size(),
                                                                      std::vector<std::vector<std::size_t>>(residues.size()));
        ClassData D;
        std::uint64_t last_growth = 0, growth = 0;
        D.bound = B;
        D.expected_cl0 = expected_cl0;
        D.num_infinite = s;
        D.retries = attempt;
        D.finite = fb.finite;
        D.candidates = 0;

        {
            std::vector<mpz_class> e(dim, 0);
            e[nfin + tw.place_index(Poly::constant(1))] = 1;
            H.add(e);
        }

        // Adds the Galois orbit of the row of beta; false when beta is not smooth.
        auto process = [&](const REl& beta) -> bool {
            const Poly N = tw.norm(beta);
            if (N.is_zero()) return false;
            std::vector<long> row(dim, 0);
            if (N.deg() > 0) {
                for (const auto& [P, e] : A.factor(N)) {
                    auto it = fb.split_of_code.find(A.code(P));
                    if (it == fb.split_of_code.end()) return false;
                    const auto vals = valuations_above(tw, fb.splittings[it->second], beta, e);
                    for (std::size_t i = 0; i < vals.size(); ++i) row[fb.column_of[it->second][i]] = vals[i];
                }
            }
            const auto vinf = inf.valuations(beta);
            for (std::size_t a = 0; a < s; ++a) row[nfin + a] = vinf[a];
            const std::size_t base = D.base_elements.size();
            bool used = false;
            for (std::size_t r = 0; r < residues.size(); ++r) {
                const Poly& c = residues[r];
                std::vector<long> img(dim, 0);
                for (std::size_t si = 0; si < fb.splittings.size(); ++si) {
                    auto& perm = perm_cache[si][r];
                    if (perm.empty()) perm = galois_permutation(tw, fb.splittings[si], c);
                    for (std::size_t i = 0; i < perm.size(); ++i)
                        img[fb.column_of[si][perm[i]]] = row[fb.column_of[si][i]];
                }
                // v_{inf_a}(sigma_c beta) = v_{inf_{ca}}(beta)
                for (std::size_t a = 0; a < s; ++a)
                    img[nfin + a] = row[nfin + tw.place_index(A.mul(c, tw.place_reps()[a]))];
                auto v = to_mpz(img);
                if (H.add(v)) {
                    last_growth = D.smooth;
                    ++growth;
                    D.kept.push_back({base, c});
                    D.rows.push_back(std::move(v));
                    used = true;
                }
            }
            if (used) D.base_elements.push_back(beta);
            ++D.smooth;
            return true;
        };

        process(tw.lambda());
        for (const REl& u : units.units) process(u);

        // candidate number `code`: base-q digits over the slots, leading digit 1
        std::vector<Elem> digits;
        auto candidate = [&](std::uint64_t code, bool& pure_A) -> std::optional<REl> {
            digits.clear();
            for (std::uint64_t x = code; x; x /= q) digits.push_back(static_cast<Elem>(x % q));
            if (digits.size() > slots.size() || digits.back() != 1) return std::nullopt;
            REl beta = tw.zero();
            pure_A = true;
            for (std::size_t t = 0; t < digits.size(); ++t) {
                if (!digits[t]) continue;
                const auto [i, j] = slots[t];
                if (j) pure_A = false;
                beta[j] = A.add(beta[j], Poly::monomial(digits[t], i));
            }
            return beta;
        };
        const std::uint64_t code_limit = [&] {
            long double lim = 1;
            for (std::size_t t = 0; t < slots.size() && lim < 1e18L; ++t) lim *= q;
            return static_cast<std::uint64_t>(std::min<long double>(lim, 1e18L));
        }();

        // Primes whose Galois orbit is only met symmetrically by small elements
        // stall the rank; feed them elements shifted into one prime.
        // Primes whose Galois orbit small elements only meet symmetrically
        // keep the rank short; elements g * u + P' * w (u = 1, lambda) lie in
        // one such prime, fed for every splitting that misses a pivot.
        auto targeted = [&]() -> bool {
            std::vector<char> has(dim, 0);
            for (std::size_t c : H.pivots()) has[c] = 1;
            std::vector<std::pair<std::size_t, std::size_t>> picks;  // (split, prime)
            for (std::size_t si = 0; si < fb.splittings.size(); ++si) {
                const Splitting& sp = fb.splittings[si];
                if (sp.primes.size() < 2) continue;
                for (std::size_t i = 0; i < sp.primes.size(); ++i)
                    if (!has[fb.column_of[si][i]]) {
                        picks.emplace_back(si, i);
                        break;
                    }
            }
            const std::uint64_t g0 = growth;
            for (const auto& [si, pi] : picks) {
                const Splitting& sp = fb.splittings[si];
                const REl& gp = sp.primes[pi].g;
                const REl glam = tw.mul(gp, tw.lambda());
                const std::size_t r0 = H.rank();
                for (std::uint64_t code = 1, tries = 0; code < code_limit && tries < cfg.targeted_tries; ++code) {
                    bool pure_A = false;
                    auto w = candidate(code, pure_A);
                    if (!w) continue;
                    for (const REl* u : {&gp, &glam}) {
                        REl beta = tw.add(*u, tw.scale(*w, sp.below));
                        if (!tw.content(beta).is_one()) continue;
                        ++tries;
                        ++D.candidates;
                        process(beta);
                    }
                    if (H.rank() > r0) break;
                }
            }
            return growth > g0;
        };

        bool hit = false;
        unsigned after_hit = 0, targeted_rounds = 0;
        for (std::uint64_t code = 1; code < code_limit && D.candidates < cfg.candidate_cap; ++code) {
            bool pure_A = false;
            auto beta = candidate(code, pure_A);
            if (!beta) continue;
            if (!pure_A && !tw.content(*beta).is_one()) continue;
            if (pure_A && !A.is_irreducible((*beta)[0]) && (*beta)[0].deg() > 0) continue;
            ++D.candidates;
            if (!process(*beta)) continue;
            if (!hit && H.full_rank() && H.index() == expected_cl0) hit = true;
            if (hit && ++after_hit >= cfg.verify_window) break;
            if (!hit && D.smooth - last_growth > stall) {
                if (H.full_rank() || targeted_rounds >= 4 || !targeted()) break;
                ++targeted_rounds;
                last_growth = D.smooth;
            }
        }
        const bool ok = H.full_rank() && H.index() == expected_cl0;
        if (ok || attempt >= cfg.bound_retries) {
            if (!ok) {
                const std::string idx = H.full_rank() ? H.index().get_str() : std::string("(rank ") + std::to_string(H.rank()) +
                                                                                  "/" + std::to_string(dim) + ")";
                throw SpiegelError(ErrorKind::OracleMismatch, "relation lattice index " + idx + " differs from P(1) = " +
                                                                  expected_cl0.get_str() + " at norm bound " +
                                                                  std::to_string(B));
            }
            D.splittings = std::move(fb.splittings);
            C = std::move(D);
            // Cl^0(L) and the infinite-place index from the Hermite form
            const IntMatrix Hm = H.matrix();
            C.cl0_invariants.clear();
            for (const auto& x : smith_normal_form(Hm).invariants())
                if (x != 1) C.cl0_invariants.push_back(x);
            C.cl0_order = H.index();
            C.infinite_index = 1;
            for (std::size_t r = 0; r < Hm.rows; ++r) {
                std::size_t c = 0;
                while (Hm.at(r, c) == 0) ++c;
                if (c >= nfin) C.infinite_index *= Hm.at(r, c);
            }
            break;
        }
    }

    // Pic(R) from the finite parts of the kept relations
    const std::size_t nfin = C.finite.size();
    IntMatrix M(C.rows.size(), nfin);
    for (std::size_t r = 0; r < C.rows.size(); ++r)
        for (std::size_t j = 0; j < nfin; ++j) M.at(r, j) = C.rows[r][j];
    const SmithForm sf = smith_normal_form(M);
    C.pic_order = 1;
    C.pic_invariants.clear();
    for (std::size_t i = 0; i < nfin; ++i) {
        const mpz_class& x = sf.S.at(i, i);
        if (x == 0) throw SpiegelError(ErrorKind::OracleMismatch, "finite relation matrix is not of full rank");
        C.pic_order *= x;
        if (x != 1) C.pic_invariants.push_back(x);
    }
    if (C.pic_order * C.infinite_index != C.cl0_order)
        throw SpiegelError(ErrorKind::OracleMismatch, "|Pic R| times the infinite index differs from |Cl^0 L|");

    // p-torsion witnesses: a = (s_i/p) * (row i of V^{-1}), p a = (row i of U) M
    const unsigned p = tw.p();
    const IntMatrix Vinv = inverse_unimodular(sf.V);
    for (std::size_t i = 0; i < nfin; ++i) {
        const mpz_class& x = sf.S.at(i, i);
        if (x % p != 0) continue;
        ClassWitness w;
        w.ideal.assign(nfin, 0);
        for (std::size_t j = 0; j < nfin; ++j) w.ideal[j] = (x / p) * Vinv.at(i, j);
        w.alpha.assign(C.rows.size(), 0);
        for (std::size_t k = 0; k < C.rows.size(); ++k) w.alpha[k] = sf.U.at(i, k);
        for (std::size_t j = 0; j < nfin; ++j) {
            mpz_class acc = 0;
            for (std::size_t k = 0; k < C.rows.size(); ++k) acc += w.alpha[k] * M.at(k, j);
            if (acc != p * w.ideal[j])
                throw SpiegelError(ErrorKind::WitnessNotFound, "witness does not principalize the p-th power");
        }
        C.witnesses.push_back(std::move(w));
    }
    return C;
}

std::vector<Series> p_torsion_dlogs(const Tower& tw, const LocalFrame& frame, const ClassData& C) {
    const FiniteField& F = frame.F();
    const unsigned p = tw.p();
    std::vector<Laurent> cache(C.kept.size());
    std::vector<bool> have(C.kept.size(), false);
    std::vector<Series> out;
    for (const ClassWitness& w : C.witnesses) {
        Series acc;
        bool first = true;
        for (std::size_t k = 0; k < w.alpha.size(); ++k) {
            mpz_class e = w.alpha[k] % p;
            if (e < 0) e += p;
            if (e == 0) continue;
            if (!have[k]) {
                cache[k] = frame.dlog(relation_element(tw, C, k));
                have[k] = true;
            }
            const Series& c = cache[k].c;
            const Elem s = F.from_int(e.get_si());
            if (first) {
                acc = frame.scale(c, s);
                first = false;
            } else {
                const std::size_t len = std::min(acc.size(), c.size());
                acc.resize(len);
                for (std::size_t i = 0; i < len; ++i) acc[i] = F.add(acc[i], F.mul(s, c[i]));
            }
        }
        if (first) acc.assign(frame.precision(), 0);
        if (!acc.empty() && acc[0] != 0)
            throw SpiegelError(ErrorKind::NotIntegral, "witness dlog has a pole at the base prime");
        out.emplace_back(acc.begin() + (acc.empty() ? 0 : 1), acc.end());
    }
    return out;
}

}  // namespace spiegel
