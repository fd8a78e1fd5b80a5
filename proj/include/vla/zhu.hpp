#pragma once

#include "vla/catalog.hpp"
#include "vla/envelope.hpp"
#include "vla/linalg.hpp"
#include "vla/report.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vla {

inline void require_integral_grading(const Envelope& V) {
    if (V.denominator() != 1) throw std::invalid_argument("Zhu products need a Z-graded envelope");
}

// a *_n b = sum_i binom(h_a, i) a_(n+i) b, a homogeneous.
inline EnvElem zhu_product_n(Envelope& V, const EnvElem& a, std::int64_t n, const EnvElem& b) {
    require_integral_grading(V);
    if (a.is_zero() || b.is_zero()) return EnvElem();
    auto h = V.weight_of(a);
    if (!h) throw std::invalid_argument("Zhu product: left argument is not homogeneous");
    long ha = to_long(*h);
    EnvElem r;
    for (long i = 0; i <= ha; ++i) r.add_scaled(V.nth_product(a, n + i, b), Scalar(binom(ha, i)));
    return r;
}
inline EnvElem zhu_product(Envelope& V, const EnvElem& a, const EnvElem& b) { return zhu_product_n(V, a, -1, b); }

// Same, split over the homogeneous components of a.
inline EnvElem zhu_product_graded(Envelope& V, const EnvElem& a, std::int64_t n, const EnvElem& b) {
    EnvElem r;
    for (auto& [h, part] : V.components(a)) r += zhu_product_n(V, part, n, b);
    return r;
}

enum class ZhuStatus { reduced, bound_limited };
inline std::string zhu_status_name(ZhuStatus s) { return s == ZhuStatus::reduced ? "reduced" : "bound-limited"; }

struct ZhuClass {
    EnvElem representative;
    // reduced: x is certified to lie in O(V). bound_limited: the representative
    // is nonzero modulo the bounded span, which says nothing definite about O(V).
    ZhuStatus status;
};

// span{u *_-2 v : u, v basis states, h_u + h_v + 1 <= bound}
class OSpan {
public:
    OSpan(Envelope& V, const Rational& bound) : V_(V), bound_(bound), S_(preference(V)) {
        require_integral_grading(V);
        auto states = V.basis_up_to(bound);
        for (auto u : states)
            for (auto v : states)
                if (V.weight(u) + V.weight(v) + 1 <= bound)
                    S_.insert(zhu_product_n(V, EnvElem::word(u), -2, EnvElem::word(v)));
    }
    ZhuClass reduce(const EnvElem& x) const {
        EnvElem r = S_.reduce(x);
        ZhuStatus st = r.is_zero() ? ZhuStatus::reduced : ZhuStatus::bound_limited;
        return {std::move(r), st};
    }
    const Rational& bound() const { return bound_; }
    std::size_t rank() const { return S_.rank(); }

private:
    // eliminate the heaviest words first so representatives have low weight
    static SpanReducer::Preference preference(Envelope& V) {
        return [&V](std::uint32_t x, std::uint32_t y) {
            if (V.weight(x) != V.weight(y)) return V.weight(x) > V.weight(y);
            return x > y;
        };
    }
    Envelope& V_;
    Rational bound_;
    SpanReducer S_;
};

inline ZhuClass zhu_reduce(Envelope& V, const EnvElem& x, const Rational& o_bound) { return OSpan(V, o_bound).reduce(x); }

struct ZhuWindows {
    std::int64_t shift_lo = -3, shift_hi = 0;
    std::int64_t assoc_lo = -2, assoc_hi = 0;
};

namespace detail {
inline std::int64_t zhu_top(Envelope& V, const EnvElem& a, const EnvElem& b) {
    std::int64_t t = LLONG_MIN / 4;
    for (auto& [ia, ca] : a.terms())
        for (auto& [ib, cb] : b.terms()) t = std::max(t, V.top_index(ia, ib));
    return t;
}
}  // namespace detail

// Right-hand side of the Zhu n-product associativity formula:
// sum_{i,j} (-1)^i binom(-r-1, j) binom(r, i) (a *_(r-i) (b *_(s+i+j) c) - zeta (-1)^r b *_(s+r-i+j) (a *_i c))
inline EnvElem zhu_associativity_rhs(Envelope& V, const EnvElem& a, const EnvElem& b, const EnvElem& c,
                                     std::int64_t r, std::int64_t s) {
    EnvElem out;
    bool odd = V.parity_of(a).value_or(false) && V.parity_of(b).value_or(false);
    int z = odd ? -1 : 1;
    std::int64_t tbc = detail::zhu_top(V, b, c);
    for (std::int64_t i = 0; s + i <= tbc; ++i) {
        long bi = binom_long(r, i);
        if (bi == 0) {
            if (r >= 0) break;
            continue;
        }
        for (std::int64_t j = 0; s + i + j <= tbc; ++j) {
            long bj = binom_long(-r - 1, j);
            if (bj == 0) {
                if (-r - 1 >= 0) break;
                continue;
            }
            EnvElem inner = zhu_product_n(V, b, s + i + j, c);
            if (inner.is_zero()) continue;
            out.add_scaled(zhu_product_n(V, a, r - i, inner), Scalar(sign_pow(i) * bi * bj));
        }
    }
    std::int64_t tac = detail::zhu_top(V, a, c);
    for (std::int64_t i = 0; i <= tac; ++i) {
        long bi = binom_long(r, i);
        if (bi == 0) {
            if (r >= 0) break;
            continue;
        }
        EnvElem ac = zhu_product_n(V, a, i, c);
        if (ac.is_zero()) continue;
        std::int64_t tb = detail::zhu_top(V, b, ac);
        for (std::int64_t j = 0; s + r - i + j <= tb; ++j) {
            long bj = binom_long(-r - 1, j);
            if (bj == 0) {
                if (-r - 1 >= 0) break;
                continue;
            }
            out.add_scaled(zhu_product_n(V, b, s + r - i + j, ac), Scalar(-z * sign_pow(r) * sign_pow(i) * bi * bj));
        }
    }
    return out;
}

namespace detail {
struct Tally {
    std::size_t n = 0, bad = 0;
    std::string first;
    void take(bool ok, const std::function<std::string()>& where) {
        ++n;
        if (!ok && !bad++) first = where();
    }
    void report(Report& rep, const std::string& name, const std::string& unit = "checks") const {
        rep.add(name, bad == 0,
                bad ? std::to_string(bad) + "/" + std::to_string(n) + " failed; " + first
                    : std::to_string(n) + " " + unit);
    }
};
}  // namespace detail

// Shift relation (exact), Zhu commutator and [L]-centrality (modulo the bounded
// O-span), n-product associativity (exact) and closure of the span itself.
inline Report check_zhu_relations(Envelope& V, const std::vector<EnvElem>& pool, const Rational& o_bound,
                                  const ZhuWindows& w = {}, const std::optional<EnvElem>& conformal = std::nullopt,
                                  const std::vector<EnvElem>& assoc_pool = {}) {
    require_integral_grading(V);
    Report rep;
    auto S = [&](const EnvElem& x) { return V.to_string(x); };
    OSpan O(V, o_bound);
    rep.info("o-span", "bound " + to_string(o_bound) + ", rank " + std::to_string(O.rank()));

    detail::Tally shift;
    for (auto& a : pool) {
        auto ha = V.weight_of(a);
        if (!ha) continue;
        EnvElem Ta = V.translate(a);
        for (auto& b : pool)
            for (std::int64_t n = w.shift_lo; n <= w.shift_hi; ++n) {
                EnvElem lhs = zhu_product_n(V, Ta, n, b) + zhu_product_n(V, a, n, b) * Scalar(*ha + n + 1);
                EnvElem res = lhs + zhu_product_n(V, a, n - 1, b) * Scalar(n);
                shift.take(res.is_zero(), [&] { return S(a) + " , " + S(b) + " n=" + std::to_string(n) + ": " + S(res); });
            }
    }
    shift.report(rep, "zhu-shift-relation");

    detail::Tally comm;
    for (auto& a : pool)
        for (auto& b : pool) {
            auto ha = V.weight_of(a);
            auto hb = V.weight_of(b);
            if (!ha || !hb || *ha + *hb + 1 > o_bound) continue;
            bool odd = V.parity_of(a).value_or(false) && V.parity_of(b).value_or(false);
            EnvElem x = zhu_product(V, a, b) - zhu_product(V, b, a) * Scalar(odd ? -1 : 1);
            long h1 = to_long(*ha) - 1;
            for (std::int64_t i = 0; i <= detail::zhu_top(V, a, b); ++i)
                x.add_scaled(V.nth_product(a, i, b), Scalar(-binom(h1, i)));
            auto cls = O.reduce(x);
            comm.take(cls.status == ZhuStatus::reduced, [&] { return S(a) + " , " + S(b) + ": " + S(cls.representative); });
        }
    comm.report(rep, "zhu-commutator");

    if (conformal) {
        detail::Tally cent;
        for (auto& a : pool) {
            auto ha = V.weight_of(a);
            if (!ha || *ha + 3 > o_bound) continue;
            auto cls = O.reduce(zhu_product(V, *conformal, a) - zhu_product(V, a, *conformal));
            cent.take(cls.status == ZhuStatus::reduced, [&] { return S(a) + ": " + S(cls.representative); });
        }
        cent.report(rep, "zhu-l-centrality");
    }

    detail::Tally assoc;
    const auto& ap = assoc_pool.empty() ? pool : assoc_pool;
    for (auto& a : ap)
        for (auto& b : ap)
            for (auto& c : ap)
                for (std::int64_t r = w.assoc_lo; r <= w.assoc_hi; ++r)
                    for (std::int64_t s = w.assoc_lo; s <= w.assoc_hi; ++s) {
                        EnvElem res = zhu_product_graded(V, zhu_product_n(V, a, r, b), s, c) -
                                      zhu_associativity_rhs(V, a, b, c, r, s);
                        assoc.take(res.is_zero(), [&] {
                            return S(a) + " , " + S(b) + " , " + S(c) + " r=" + std::to_string(r) + " s=" +
                                   std::to_string(s) + ": " + S(res);
                        });
                    }
    assoc.report(rep, "zhu-associativity");

    detail::Tally closed;
    auto states = V.basis_up_to(o_bound);
    for (auto u : states)
        for (auto v : states)
            if (V.weight(u) + V.weight(v) + 1 <= o_bound) {
                auto cls = O.reduce(zhu_product_n(V, EnvElem::word(u), -2, EnvElem::word(v)));
                closed.take(cls.status == ZhuStatus::reduced,
                            [&] { return V.word_string(u) + " , " + V.word_string(v); });
            }
    closed.report(rep, "o-span-contains-generators");
    return rep;
}

// U(g) for a finite-dimensional Lie algebra, on PBW words (nondecreasing basis indices).
class UniversalEnveloping {
public:
    using Word = std::vector<std::uint32_t>;
    using Elem = std::map<Word, Scalar>;

    explicit UniversalEnveloping(AlgebraData g) : g_(std::move(g)) {
        if (!g_.is_lie()) throw std::invalid_argument("U(g) needs Lie structure constants");
    }
    const AlgebraData& algebra() const { return g_; }

    // Any word of basis indices rewritten in the PBW basis.
    Elem normal_order(const Word& w) {
        auto it = memo_.find(w);
        if (it != memo_.end()) return it->second;
        Elem r;
        std::size_t p = 0;
        while (p + 1 < w.size() && w[p] <= w[p + 1]) ++p;
        if (p + 1 >= w.size()) {
            r[w] = Scalar(1);
        } else {
            // u x y v = u y x v + u [x,y] v
            Word sw = w;
            std::swap(sw[p], sw[p + 1]);
            add(r, normal_order(sw), Scalar(1));
            for (std::size_t k = 0; k < g_.dim(); ++k) {
                const Scalar& c = g_.product[w[p]][w[p + 1]][k];
                if (c.is_zero()) continue;
                Word cw(w.begin(), w.begin() + static_cast<long>(p));
                cw.push_back(static_cast<std::uint32_t>(k));
                cw.insert(cw.end(), w.begin() + static_cast<long>(p) + 2, w.end());
                add(r, normal_order(cw), c);
            }
        }
        return memo_.emplace(w, r).first->second;
    }
    static void add(Elem& r, const Elem& x, const Scalar& c) {
        for (auto& [w, v] : x) {
            Scalar& s = r[w];
            s += v * c;
            if (s.is_zero()) r.erase(w);
        }
    }
    Elem mul(const Elem& x, const Elem& y) {
        Elem r;
        for (auto& [u, a] : x)
            for (auto& [v, b] : y) {
                Word w = u;
                w.insert(w.end(), v.begin(), v.end());
                add(r, normal_order(w), a * b);
            }
        return r;
    }
    // PBW words of length <= degree
    std::vector<Word> pbw_words(unsigned degree) const {
        std::vector<Word> out{{}};
        std::vector<Word> layer{{}};
        for (unsigned d = 1; d <= degree; ++d) {
            std::vector<Word> next;
            for (auto& w : layer)
                for (std::uint32_t i = w.empty() ? 0 : w.back(); i < g_.dim(); ++i) {
                    Word x = w;
                    x.push_back(i);
                    next.push_back(x);
                }
            out.insert(out.end(), next.begin(), next.end());
            layer = std::move(next);
        }
        return out;
    }
    std::string to_string(const Elem& x) const {
        if (x.empty()) return "0";
        std::string s;
        for (auto& [w, c] : x) {
            bool neg = false;
            std::string pre = c.coefficient_prefix(neg);
            std::string body;
            for (auto i : w) body += (body.empty() ? "" : " ") + g_.basis[i];
            if (w.empty()) {
                body = "1";
                if (pre.size() && pre.back() == '*') {
                    pre.pop_back();
                    body.clear();
                }
            }
            s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
            s += pre + body;
        }
        return s;
    }

private:
    AlgebraData g_;
    std::map<Word, Elem> memo_;
};

// A(V) = U(g) for a universal affine vertex algebra, at bounded PBW degree.
struct AffineZhuResult {
    Report report;
};

inline void require_affine(const Envelope& V, const AlgebraData& g) {
    const auto& R = V.presentation();
    bool ok = R.generators().size() == g.dim() && R.centrals().size() == 1;
    for (std::size_t i = 0; ok && i < g.dim(); ++i) {
        auto idx = R.symbols()->find_gen(g.basis[i]);
        ok = idx && !R.decl(*idx).odd && R.decl(*idx).weight == 1;
    }
    if (!ok) throw std::invalid_argument("envelope is not the universal affine vertex algebra of the given Lie algebra");
}

// alpha: x1 ... xr -> xr_(-1) ... x1_(-1)|0>
inline EnvElem affine_alpha(Envelope& V, const AlgebraData& g, const UniversalEnveloping::Word& w) {
    EnvElem r = V.vacuum();
    for (auto i : w) r = V.apply_mode(g.basis[i], -1, r);
    return r;
}

// beta: a1_(n1) ... ar_(nr)|0> -> (-1)^(r + sum n_i) ar ... a1
inline UniversalEnveloping::Elem affine_beta(Envelope& V, UniversalEnveloping& U, const EnvElem& x) {
    const auto& g = U.algebra();
    const auto& R = V.presentation();
    UniversalEnveloping::Elem out;
    for (auto& [id, c] : x.terms()) {
        const auto& word = V.word(id);
        UniversalEnveloping::Word rev;
        long sgn = static_cast<long>(word.size());
        for (auto it = word.rbegin(); it != word.rend(); ++it) {
            rev.push_back(static_cast<std::uint32_t>(g.index(R.decl(it->gen).name)));
            sgn += it->t;  // weight index equals t for weight-1 generators
        }
        UniversalEnveloping::add(out, U.normal_order(rev), c * Scalar(sign_pow(sgn)));
    }
    return out;
}

inline Report affine_zhu_iso(Envelope& V, const AlgebraData& g, unsigned degree_max, const Rational& o_bound) {
    require_affine(V, g);
    UniversalEnveloping U(g);
    Report rep;
    auto words = U.pbw_words(degree_max);

    detail::Tally inv;
    for (auto& w : words) {
        auto back = U.normal_order(w);
        auto got = affine_beta(V, U, affine_alpha(V, g, w));
        UniversalEnveloping::add(got, back, Scalar(-1));
        inv.take(got.empty(), [&] { return U.to_string(U.normal_order(w)) + ": residual " + U.to_string(got); });
    }
    inv.report(rep, "beta-alpha-identity", "words");

    OSpan O(V, o_bound);
    detail::Tally br;
    for (std::uint32_t a = 0; a < g.dim(); ++a)
        for (std::uint32_t b = 0; b < g.dim(); ++b) {
            EnvElem x = affine_alpha(V, g, {a, b}) - affine_alpha(V, g, {b, a});
            for (std::size_t k = 0; k < g.dim(); ++k)
                if (!g.product[a][b][k].is_zero())
                    x.add_scaled(affine_alpha(V, g, {static_cast<std::uint32_t>(k)}), -g.product[a][b][k]);
            auto cls = O.reduce(x);
            br.take(cls.status == ZhuStatus::reduced,
                    [&] { return g.basis[a] + " , " + g.basis[b] + ": " + V.to_string(cls.representative); });
        }
    br.report(rep, "alpha-respects-bracket", "pairs");

    // images of distinct PBW words stay independent modulo the bounded span
    SpanReducer indep;
    std::size_t rank = 0;
    for (auto& w : words) {
        EnvElem img = O.reduce(affine_alpha(V, g, w)).representative;
        if (indep.insert(img)) ++rank;
    }
    rep.add("alpha-injective", rank == words.size(),
            std::to_string(rank) + " independent classes for " + std::to_string(words.size()) + " words");
    return rep;
}

}  // namespace vla
