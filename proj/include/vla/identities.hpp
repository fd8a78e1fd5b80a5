#pragma once

#include "vla/envelope.hpp"
#include "vla/report.hpp"

#include <climits>
#include <deque>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace vla {

// Field identities of a vertex algebra evaluated on PBW states. Every function
// returns a residual that is zero exactly when the identity holds.
class FieldIdentities {
public:
    explicit FieldIdentities(Envelope& V) : V_(V) {}

    // References stay valid until the next bind() or release().
    const EnvElem& prod(const EnvElem& a, std::int64_t n, const EnvElem& b) {
        if (a.size() == 1 && b.size() == 1 && a.terms().begin()->second.is_one() && b.terms().begin()->second.is_one())
            return V_.nth_product(a.terms().begin()->first, n, b.terms().begin()->first);
        return spill(V_.nth_product(a, n, b));
    }
    void release() { spill_.clear(); }

    // Nested products for one fixed triple, shared by all identity families:
    // (a_m b)_n c, a_p (b_q c) and b_p (a_q c).
    void bind(const EnvElem& a, const EnvElem& b, const EnvElem& c) {
        ba_ = &a;
        bb_ = &b;
        bc_ = &c;
        ab_c_.clear();
        a_bc_.clear();
        b_ac_.clear();
        ab_.clear();
        bc1_.clear();
        ac1_.clear();
        spill_.clear();
    }
    void unbind() { ba_ = bb_ = bc_ = nullptr; }
    int zeta(const EnvElem& a, const EnvElem& b) const {
        return (V_.parity_of(a).value_or(false) && V_.parity_of(b).value_or(false)) ? -1 : 1;
    }
    // Largest n with a_(n) b possibly nonzero.
    std::int64_t top(const EnvElem& a, const EnvElem& b) const {
        std::int64_t t = LLONG_MIN / 4;
        for (auto& [ia, ca] : a.terms())
            for (auto& [ib, cb] : b.terms()) t = std::max(t, V_.top_index(ia, ib));
        // the vacuum field only has the (-1) mode
        return t;
    }

    // a_r b = zeta sum_i (-1)^(r+1+i) T^(i)(b_(r+i) a)
    EnvElem skew(const EnvElem& a, const EnvElem& b, std::int64_t r) {
        EnvElem rhs;
        for (std::int64_t i = 0; r + i <= top(b, a); ++i)
            rhs.add_scaled(V_.translate_divided(prod(b, r + i, a), static_cast<unsigned>(i)),
                           Scalar(zeta(a, b) * sign_pow(r + 1 + i)));
        return prod(a, r, b) - rhs;
    }

    // a_t(b_s c) - zeta b_s(a_t c) = sum_i binom(t,i) (a_i b)_(t+s-i) c
    EnvElem commutator(const EnvElem& a, const EnvElem& b, const EnvElem& c, std::int64_t t, std::int64_t s) {
        acc_.add(nested_right(a, t, b, s, c), 1L);
        acc_.add(nested_right(b, s, a, t, c), -static_cast<long>(zeta(a, b)));
        for (std::int64_t i = 0, hi = top(a, b); i <= hi; ++i) acc_.add(nested_left(a, i, b, t + s - i, c), -binom_long(t, i));
        return acc_.take();
    }

    // (a_r b)_s c = sum_i (-1)^i binom(r,i) (a_(r-i)(b_(s+i) c) - zeta (-1)^r b_(s+r-i)(a_i c))
    EnvElem associativity(const EnvElem& a, const EnvElem& b, const EnvElem& c, std::int64_t r, std::int64_t s) {
        acc_.add(nested_left(a, r, b, s, c), 1L);
        add_jacobi_rhs(a, b, c, r, s, 0, -1, true);
        return acc_.take();
    }

    // sum_i binom(t,i) (a_(r+i) b)_(s+t-i) c
    EnvElem jacobi_lhs(const EnvElem& a, const EnvElem& b, const EnvElem& c, std::int64_t r, std::int64_t s,
                       std::int64_t t) {
        add_jacobi_lhs(a, b, c, r, s, t, 1);
        return acc_.take();
    }
    // sum_i (-1)^i binom(r,i) (a_(t+r-i)(b_(s+i) c) - zeta (-1)^r b_(s+r-i)(a_(t+i) c))
    EnvElem jacobi_rhs(const EnvElem& a, const EnvElem& b, const EnvElem& c, std::int64_t r, std::int64_t s,
                       std::int64_t t, bool second_sum = true) {
        add_jacobi_rhs(a, b, c, r, s, t, 1, second_sum);
        return acc_.take();
    }
    EnvElem jacobi(const EnvElem& a, const EnvElem& b, const EnvElem& c, std::int64_t r, std::int64_t s,
                   std::int64_t t) {
        add_jacobi_lhs(a, b, c, r, s, t, 1);
        add_jacobi_rhs(a, b, c, r, s, t, -1, true);
        return acc_.take();
    }
    // At t >= o(a,c) the second sum drops out.
    EnvElem duality(const EnvElem& a, const EnvElem& b, const EnvElem& c, std::int64_t r, std::int64_t s,
                    std::int64_t t) {
        add_jacobi_lhs(a, b, c, r, s, t, 1);
        add_jacobi_rhs(a, b, c, r, s, t, -1, false);
        return acc_.take();
    }

    // a_t(b_(-1) c) = (a_t b)_(-1) c + zeta b_(-1)(a_t c) + sum_{i<t} binom(t,i) (a_i b)_(t-1-i) c, t >= 0
    EnvElem left_wick(const EnvElem& a, const EnvElem& b, const EnvElem& c, std::int64_t t) {
        EnvElem rhs = prod(prod(a, t, b), -1, c) + prod(b, -1, prod(a, t, c)) * Scalar(zeta(a, b));
        for (std::int64_t i = 0; i < t; ++i) rhs.add_scaled(prod(prod(a, i, b), t - 1 - i, c), Scalar(binom(t, i)));
        return prod(a, t, prod(b, -1, c)) - rhs;
    }

    // (a_(-1) b)_s c = sum_i (T^(i)a)_(-1)(b_(s+i) c) + zeta (T^(i)b)_(-1)(a_(s+i) c)
    //                  + zeta sum_{i<s} b_(s-1-i)(a_i c), s >= 0
    EnvElem right_wick(const EnvElem& a, const EnvElem& b, const EnvElem& c, std::int64_t s) {
        int z = zeta(a, b);
        EnvElem rhs;
        for (std::int64_t i = 0; s + i <= top(b, c); ++i)
            rhs += prod(V_.translate_divided(a, static_cast<unsigned>(i)), -1, prod(b, s + i, c));
        for (std::int64_t i = 0; s + i <= top(a, c); ++i)
            rhs.add_scaled(prod(V_.translate_divided(b, static_cast<unsigned>(i)), -1, prod(a, s + i, c)), Scalar(z));
        for (std::int64_t i = 0; i < s; ++i) rhs.add_scaled(prod(b, s - 1 - i, prod(a, i, c)), Scalar(z));
        return prod(prod(a, -1, b), s, c) - rhs;
    }

    EnvElem associator(const EnvElem& a, const EnvElem& b, const EnvElem& c) {
        return prod(prod(a, -1, b), -1, c) - prod(a, -1, prod(b, -1, c));
    }

    // (ab)c - a(bc) = sum_i (T^(i+1)a)(b_i c) + zeta (T^(i+1)b)(a_i c)
    EnvElem quasi_associativity(const EnvElem& a, const EnvElem& b, const EnvElem& c) {
        EnvElem rhs;
        for (std::int64_t i = 0; i <= top(b, c); ++i)
            rhs += prod(V_.translate_divided(a, static_cast<unsigned>(i + 1)), -1, prod(b, i, c));
        for (std::int64_t i = 0; i <= top(a, c); ++i)
            rhs.add_scaled(prod(V_.translate_divided(b, static_cast<unsigned>(i + 1)), -1, prod(a, i, c)),
                           Scalar(zeta(a, b)));
        return associator(a, b, c) - rhs;
    }

    // the associator is supersymmetric in its first two arguments
    EnvElem pre_lie(const EnvElem& a, const EnvElem& b, const EnvElem& c) {
        return associator(a, b, c) - associator(b, a, c) * Scalar(zeta(a, b));
    }

    // ab - zeta ba = sum_i (-1)^i T^(i+1)(a_i b)
    EnvElem star_equals_lie(const EnvElem& a, const EnvElem& b) {
        EnvElem rhs;
        for (std::int64_t i = 0; i <= top(a, b); ++i)
            rhs.add_scaled(V_.translate_divided(prod(a, i, b), static_cast<unsigned>(i + 1)), Scalar(sign_pow(i)));
        return prod(a, -1, b) - prod(b, -1, a) * Scalar(zeta(a, b)) - rhs;
    }

    // Locality function o(a,b): least n with a_(i) b = 0 for all i >= n;
    // LLONG_MIN when every product in the scanned range vanishes.
    std::int64_t locality(const EnvElem& a, const EnvElem& b) {
        if (a.is_zero() || b.is_zero()) return LLONG_MIN;
        std::int64_t hi = top(a, b);
        std::int64_t lo = -hi - 8;
        for (std::int64_t i = hi; i >= lo; --i)
            if (!prod(a, i, b).is_zero()) return i + 1;
        return LLONG_MIN;
    }

private:
    void add_jacobi_lhs(const EnvElem& a, const EnvElem& b, const EnvElem& c, std::int64_t r, std::int64_t s,
                        std::int64_t t, int sign) {
        for (std::int64_t i = 0, hi = top(a, b); r + i <= hi; ++i) {
            long bi = binom_long(t, i);
            if (bi == 0) {
                if (t >= 0) break;
                continue;
            }
            acc_.add(nested_left(a, r + i, b, s + t - i, c), sign * bi);
        }
    }
    void add_jacobi_rhs(const EnvElem& a, const EnvElem& b, const EnvElem& c, std::int64_t r, std::int64_t s,
                        std::int64_t t, int sign, bool second_sum) {
        for (std::int64_t i = 0, hi = top(b, c); s + i <= hi; ++i) {
            long bi = binom_long(r, i);
            if (bi == 0) {
                if (r >= 0) break;
                continue;
            }
            acc_.add(nested_right(a, t + r - i, b, s + i, c), sign * sign_pow(i) * bi);
        }
        if (!second_sum) return;
        int z = zeta(a, b);
        for (std::int64_t i = 0, hi = top(a, c); t + i <= hi; ++i) {
            long bi = binom_long(r, i);
            if (bi == 0) {
                if (r >= 0) break;
                continue;
            }
            acc_.add(nested_right(b, s + r - i, a, t + i, c), -sign * z * sign_pow(r) * sign_pow(i) * bi);
        }
    }

    bool bound(const EnvElem& a, const EnvElem& b, const EnvElem& c) const {
        return ba_ == &a && bb_ == &b && bc_ == &c;
    }
    static const EnvElem& lookup(std::map<std::int64_t, EnvElem>& m, std::int64_t k,
                                 const std::function<EnvElem()>& make) {
        auto it = m.find(k);
        if (it != m.end()) return it->second;
        return m.emplace(k, make()).first->second;
    }
    static const EnvElem& lookup2(std::map<std::pair<std::int64_t, std::int64_t>, EnvElem>& m, std::int64_t k1,
                                  std::int64_t k2, const std::function<EnvElem()>& make) {
        auto it = m.find({k1, k2});
        if (it != m.end()) return it->second;
        return m.emplace(std::make_pair(k1, k2), make()).first->second;
    }
    // (x_m y)_n z with caching when (x, y, z) is the bound triple
    const EnvElem& nested_left(const EnvElem& x, std::int64_t m, const EnvElem& y, std::int64_t n, const EnvElem& z) {
        if (!bound(x, y, z)) return spill(prod(prod(x, m, y), n, z));
        return lookup2(ab_c_, m, n, [&] {
            const EnvElem& xy = lookup(ab_, m, [&] { return prod(x, m, y); });
            return prod(xy, n, z);
        });
    }
    // x_p (y_q z); cached for (a,b,c) and (b,a,c) of the bound triple
    const EnvElem& nested_right(const EnvElem& x, std::int64_t p, const EnvElem& y, std::int64_t q, const EnvElem& z) {
        if (bc_ == &z && ba_ == &x && bb_ == &y)
            return lookup2(a_bc_, p, q, [&] {
                const EnvElem& yz = lookup(bc1_, q, [&] { return prod(y, q, z); });
                return prod(x, p, yz);
            });
        if (bc_ == &z && bb_ == &x && ba_ == &y)
            return lookup2(b_ac_, p, q, [&] {
                const EnvElem& yz = lookup(ac1_, q, [&] { return prod(y, q, z); });
                return prod(x, p, yz);
            });
        return spill(prod(x, p, prod(y, q, z)));
    }
    // storage for uncached results, released on the next bind
    const EnvElem& spill(EnvElem e) { return spill_.emplace_back(std::move(e)); }

    Envelope& V_;
    const EnvElem *ba_ = nullptr, *bb_ = nullptr, *bc_ = nullptr;
    std::map<std::pair<std::int64_t, std::int64_t>, EnvElem> ab_c_, a_bc_, b_ac_;
    std::map<std::int64_t, EnvElem> ab_, bc1_, ac1_;
    std::deque<EnvElem> spill_;
    EnvAccumulator acc_;
};

struct IdentityWindows {
    std::int64_t skew_lo = -3, skew_hi = 3;
    std::int64_t lo = -2, hi = 2;          // commutator, associativity, Jacobi
    std::int64_t wick_hi = 2;              // left/right Wick indices 0..wick_hi
    unsigned recursion_samples = 50;
    std::uint32_t seed = 7;
};

// Runs every identity family over all tuples from the pool and reports one
// entry per family with the number of checks and the first failure.
inline Report verify_identities(Envelope& V, const std::vector<EnvElem>& pool, const IdentityWindows& w = {}) {
    FieldIdentities F(V);
    Report rep;
    struct Tally {
        std::size_t n = 0, bad = 0;
        std::string first;
        void take(const Envelope& V, const EnvElem& res, const std::function<std::string()>& where) {
            ++n;
            if (!res.is_zero()) {
                if (!bad) first = where() + ": residual " + V.to_string(res);
                ++bad;
            }
        }
        void report(Report& rep, const std::string& name) const {
            rep.add(name, bad == 0,
                    bad ? std::to_string(bad) + "/" + std::to_string(n) + " failed; " + first
                        : std::to_string(n) + " checks");
        }
    };
    auto S = [&](const EnvElem& x) { return V.to_string(x); };
    std::size_t P = pool.size();

    Tally skew, star;
    for (std::size_t i = 0; i < P; ++i)
        for (std::size_t j = 0; j < P; ++j) {
            for (std::int64_t r = w.skew_lo; r <= w.skew_hi; ++r)
                skew.take(V, F.skew(pool[i], pool[j], r), [&] { return S(pool[i]) + " , " + S(pool[j]) + " r=" + std::to_string(r); });
            star.take(V, F.star_equals_lie(pool[i], pool[j]), [&] { return S(pool[i]) + " , " + S(pool[j]); });
            F.release();
        }
    skew.report(rep, "skew-symmetry");
    star.report(rep, "star-bracket-equals-lie-bracket");

    Tally comm, assoc, jac, lw, rw, qa, pl, dual, loc;
    for (std::size_t i = 0; i < P; ++i)
        for (std::size_t j = 0; j < P; ++j)
            for (std::size_t k = 0; k < P; ++k) {
                const EnvElem &a = pool[i], &b = pool[j], &c = pool[k];
                F.bind(a, b, c);
                auto where = [&](std::string idx) {
                    return [&, idx] { return S(a) + " , " + S(b) + " , " + S(c) + " " + idx; };
                };
                for (std::int64_t t = w.lo; t <= w.hi; ++t)
                    for (std::int64_t s = w.lo; s <= w.hi; ++s) {
                        comm.take(V, F.commutator(a, b, c, t, s), where("t=" + std::to_string(t) + " s=" + std::to_string(s)));
                        assoc.take(V, F.associativity(a, b, c, t, s), where("r=" + std::to_string(t) + " s=" + std::to_string(s)));
                        for (std::int64_t u = w.lo; u <= w.hi; ++u)
                            jac.take(V, F.jacobi(a, b, c, t, s, u),
                                     where("r=" + std::to_string(t) + " s=" + std::to_string(s) + " t=" + std::to_string(u)));
                    }
                for (std::int64_t t = 0; t <= w.wick_hi; ++t) {
                    lw.take(V, F.left_wick(a, b, c, t), where("t=" + std::to_string(t)));
                    rw.take(V, F.right_wick(a, b, c, t), where("s=" + std::to_string(t)));
                }
                qa.take(V, F.quasi_associativity(a, b, c), where(""));
                pl.take(V, F.pre_lie(a, b, c), where(""));
                std::int64_t oac = F.locality(a, c);
                if (oac != LLONG_MIN) {
                    std::int64_t t = std::max<std::int64_t>(oac, 0);
                    for (std::int64_t r = w.lo; r <= w.hi; ++r)
                        for (std::int64_t s = w.lo; s <= w.hi; ++s)
                            dual.take(V, F.duality(a, b, c, r, s, t),
                                      where("r=" + std::to_string(r) + " s=" + std::to_string(s) + " t=" + std::to_string(t)));
                }
                std::int64_t oab = F.locality(a, b), obc = F.locality(b, c);
                if (oab != LLONG_MIN && oac != LLONG_MIN && obc != LLONG_MIN) {
                    for (std::int64_t r = w.lo; r <= w.hi; ++r) {
                        std::int64_t o = F.locality(F.prod(a, r, b), c);
                        bool ok = o == LLONG_MIN || o <= oab + oac + obc - r - 1;
                        ++loc.n;
                        if (!ok && !loc.bad++)
                            loc.first = S(a) + " , " + S(b) + " , " + S(c) + " r=" + std::to_string(r) + ": o=" +
                                        std::to_string(o) + " bound " + std::to_string(oab + oac + obc - r - 1);
                    }
                }
            }
    F.unbind();
    comm.report(rep, "commutator-formula");
    assoc.report(rep, "associativity-formula");
    jac.report(rep, "jacobi-identity");
    dual.report(rep, "duality");
    lw.report(rep, "left-wick");
    rw.report(rep, "right-wick");
    qa.report(rep, "quasi-associativity");
    pl.report(rep, "pre-lie");
    loc.report(rep, "locality-bound");

    // J_{r,s,t+1} = J_{r+1,s,t} + J_{r,s+1,t} for both sides of the Jacobi identity
    Tally rec;
    if (P > 0) {
        std::mt19937 rng(w.seed);
        std::uniform_int_distribution<std::size_t> pick(0, P - 1);
        std::uniform_int_distribution<std::int64_t> idx(w.lo, w.hi);
        for (unsigned n = 0; n < w.recursion_samples; ++n) {
            const EnvElem &a = pool[pick(rng)], &b = pool[pick(rng)], &c = pool[pick(rng)];
            std::int64_t r = idx(rng), s = idx(rng), t = idx(rng);
            auto where = [&] {
                return S(a) + " , " + S(b) + " , " + S(c) + " r=" + std::to_string(r) + " s=" + std::to_string(s) +
                       " t=" + std::to_string(t);
            };
            rec.take(V,
                     F.jacobi_lhs(a, b, c, r, s, t + 1) - F.jacobi_lhs(a, b, c, r + 1, s, t) -
                         F.jacobi_lhs(a, b, c, r, s + 1, t),
                     where);
            rec.take(V,
                     F.jacobi_rhs(a, b, c, r, s, t + 1) - F.jacobi_rhs(a, b, c, r + 1, s, t) -
                         F.jacobi_rhs(a, b, c, r, s + 1, t),
                     where);
        }
    }
    rec.report(rep, "fundamental-recursion");
    return rep;
}

// PBW basis states of weight <= h_max.
inline std::vector<EnvElem> basis_pool(Envelope& V, const Rational& h_max) {
    std::vector<EnvElem> out;
    for (auto id : V.basis_up_to(h_max)) out.push_back(EnvElem::word(id));
    return out;
}

}  // namespace vla
