#pragma once

#include "vla/vlie.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace vla {

// A generator mode a_(t).
struct Mode {
    std::uint32_t gen;
    std::int32_t t;
    friend bool operator==(const Mode& x, const Mode& y) { return x.gen == y.gen && x.t == y.t; }
    friend bool operator<(const Mode& x, const Mode& y) { return x.t != y.t ? x.t < y.t : x.gen < y.gen; }
};

// PBW word m_1 m_2 ... m_r acting on the vacuum, modes t <= -1.
using PBWMonomial = std::vector<Mode>;

struct WordHash {
    std::size_t operator()(const PBWMonomial& w) const {
        std::size_t h = 0xcbf29ce484222325ull;
        for (auto& m : w) {
            h ^= (static_cast<std::size_t>(m.gen) << 32) ^ static_cast<std::uint32_t>(m.t);
            h *= 0x100000001b3ull;
        }
        return h;
    }
};

// Linear combination of PBW words, keyed by word ids interned in an Envelope.
// Terms are kept sorted by id.
class EnvElem {
public:
    using Term = std::pair<std::uint32_t, Scalar>;
    using Terms = std::vector<Term>;

    EnvElem() = default;
    static EnvElem word(std::uint32_t id, const Scalar& c = 1) {
        EnvElem e;
        if (!c.is_zero()) e.terms_.emplace_back(id, c);
        return e;
    }
    // ids must be strictly increasing, coefficients nonzero
    static EnvElem from_sorted(Terms t) {
        EnvElem e;
        e.terms_ = std::move(t);
        return e;
    }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    Scalar coeff(std::uint32_t id) const {
        auto it = find(id);
        return it != terms_.end() && it->first == id ? it->second : Scalar();
    }

    void add(std::uint32_t id, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = find(id);
        if (it == terms_.end() || it->first != id) {
            terms_.emplace(it, id, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    // this += c * o
    void add_scaled(const EnvElem& o, const Scalar& c) {
        if (c.is_zero() || o.terms_.empty()) return;
        if (terms_.empty()) {
            terms_.reserve(o.terms_.size());
            for (auto& [id, x] : o.terms_) terms_.emplace_back(id, c.is_one() ? x : x * c);
            return;
        }
        Terms out;
        out.reserve(terms_.size() + o.terms_.size());
        auto i = terms_.begin();
        auto j = o.terms_.begin();
        while (i != terms_.end() || j != o.terms_.end()) {
            if (j == o.terms_.end() || (i != terms_.end() && i->first < j->first)) {
                out.push_back(std::move(*i++));
            } else if (i == terms_.end() || j->first < i->first) {
                out.emplace_back(j->first, c.is_one() ? j->second : j->second * c);
                ++j;
            } else {
                i->second.add_product(j->second, c);
                if (!i->second.is_zero()) out.push_back(std::move(*i));
                ++i;
                ++j;
            }
        }
        terms_ = std::move(out);
    }
    EnvElem& operator+=(const EnvElem& o) {
        add_scaled(o, Scalar(1));
        return *this;
    }
    EnvElem& operator-=(const EnvElem& o) {
        add_scaled(o, Scalar(-1));
        return *this;
    }
    friend EnvElem operator+(EnvElem a, const EnvElem& b) { return a += b; }
    friend EnvElem operator-(EnvElem a, const EnvElem& b) { return a -= b; }
    EnvElem operator*(const Scalar& c) const {
        EnvElem r;
        r.add_scaled(*this, c);
        return r;
    }
    EnvElem operator-() const { return *this * Scalar(-1); }
    friend bool operator==(const EnvElem& a, const EnvElem& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const EnvElem& a, const EnvElem& b) { return !(a == b); }

    EnvElem substitute(const std::map<std::string, Scalar>& values) const {
        EnvElem r;
        for (auto& [id, c] : terms_) r.add(id, c.substitute(values));
        return r;
    }

private:
    Terms::iterator find(std::uint32_t id) {
        return std::lower_bound(terms_.begin(), terms_.end(), id,
                                [](const Term& t, std::uint32_t k) { return t.first < k; });
    }
    Terms::const_iterator find(std::uint32_t id) const {
        return std::lower_bound(terms_.begin(), terms_.end(), id,
                                [](const Term& t, std::uint32_t k) { return t.first < k; });
    }
    Terms terms_;
};

// Dense accumulator for long sums of EnvElems, indexed by word id. Constant
// coefficients are summed in place without touching the allocator.
class EnvAccumulator {
public:
    void add(const EnvElem& e, const Scalar& c) {
        if (c.is_zero()) return;
        const bool cc = c.is_constant();
        const mpq_srcptr cq = cc ? c.terms()[0].second.get_mpq_t() : nullptr;
        long ci = 0;
        const bool csmall = cc && small_int(cq, ci);
        for (auto& [id, x] : e.terms()) {
            Slot& s = slot(id);
            if (cc && x.is_constant()) {
                const mpq_srcptr xq = x.terms()[0].second.get_mpq_t();
                long xi, p;
                if (csmall && small_int(xq, xi) && !__builtin_mul_overflow(xi, ci, &p) &&
                    !__builtin_add_overflow(s.small, p, &s.small))
                    continue;
                mpq_mul(tmp_.get_mpq_t(), xq, cq);
                mpq_add(s.q.get_mpq_t(), s.q.get_mpq_t(), tmp_.get_mpq_t());
            } else {
                s.sym.add_product(x, c);
            }
        }
    }
    void add(const EnvElem& e, long c) {
        if (c == 0) return;
        for (auto& [id, x] : e.terms()) {
            Slot& s = slot(id);
            if (x.is_constant()) {
                const mpq_srcptr xq = x.terms()[0].second.get_mpq_t();
                long xi, p;
                if (small_int(xq, xi) && !__builtin_mul_overflow(xi, c, &p) &&
                    !__builtin_add_overflow(s.small, p, &s.small))
                    continue;
                mpq_set_si(tmp_.get_mpq_t(), c, 1);
                mpq_mul(tmp_.get_mpq_t(), xq, tmp_.get_mpq_t());
                mpq_add(s.q.get_mpq_t(), s.q.get_mpq_t(), tmp_.get_mpq_t());
            } else {
                s.sym.add_product(x, Scalar(c));
            }
        }
    }
    EnvElem take() {
        EnvElem::Terms out;
        std::sort(touched_.begin(), touched_.end());
        for (auto id : touched_) {
            Slot& s = slots_[id];
            Scalar v = std::move(s.sym);
            if (s.small != 0) s.q += s.small;
            if (sgn(s.q) != 0) v += Scalar(s.q);
            if (!v.is_zero()) out.emplace_back(id, std::move(v));
            s.q = 0;
            s.small = 0;
            s.sym = Scalar();
            s.used = false;
        }
        touched_.clear();
        return EnvElem::from_sorted(std::move(out));
    }

private:
    struct Slot {
        long small = 0;
        mpq_class q;
        Scalar sym;
        bool used = false;
    };
    // integers of magnitude below 2^62
    static bool small_int(mpq_srcptr q, long& out) {
        const int n = mpq_numref(q)->_mp_size;
        if (mpq_denref(q)->_mp_size != 1 || mpq_denref(q)->_mp_d[0] != 1) return false;
        if (n == 0) {
            out = 0;
            return true;
        }
        if (n != 1 && n != -1) return false;
        mp_limb_t v = mpq_numref(q)->_mp_d[0];
        if (v >> 62) return false;
        out = n > 0 ? static_cast<long>(v) : -static_cast<long>(v);
        return true;
    }
    Slot& slot(std::uint32_t id) {
        if (id >= slots_.size()) slots_.resize(id + 1);
        Slot& s = slots_[id];
        if (!s.used) {
            s.used = true;
            touched_.push_back(id);
        }
        return s;
    }
    std::vector<Slot> slots_;
    std::vector<std::uint32_t> touched_;
    mpq_class tmp_;
};

// The enveloping vertex algebra V = U(R) with central symbols specialized,
// realized on PBW words. Results of mode actions, products and translations
// are memoized; an Envelope is not meant to be shared between threads.
class Envelope {
public:
    // Centrals not listed in `special` are specialized to the parameter of the same name.
    explicit Envelope(VLiePresentation R, std::map<std::string, Scalar> special = {}) : R_(std::move(R)) {
        if (!R_.graded()) throw std::invalid_argument("envelope requires a graded presentation");
        for (auto& g : R_.generators())
            if (g.weight <= 0)
                throw std::invalid_argument("envelope requires positive generator weights (" + g.name + ")");
        for (auto& z : R_.centrals()) {
            auto it = special.find(z);
            central_values_.push_back(it == special.end() ? Scalar::param(z) : it->second);
        }
        for (auto& [k, v] : special)
            if (!R_.symbols()->find_central(k)) param_values_[k] = v;
        if (!param_values_.empty()) R_ = R_.specialized(param_values_);
        std::size_t n = R_.num_gens();
        std::vector<std::uint32_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](auto x, auto y) { return R_.decl(x).name < R_.decl(y).name; });
        rank_.assign(n, 0);
        for (std::uint32_t i = 0; i < n; ++i) rank_[order[i]] = i;
        denom_ = 1;
        for (auto& g : R_.generators()) denom_ = std::lcm(denom_, g.weight.get_den().get_si());
        // tables of t-th products with T^(k) rewritten into modes
        products_.resize(n * n);
        for (std::uint32_t a = 0; a < n; ++a)
            for (std::uint32_t b = 0; b < n; ++b) {
                auto& slot = products_[a * n + b];
                for (auto& [i, x] : tth_products(R_, RElem::gen(R_.symbols(), a), RElem::gen(R_.symbols(), b))) {
                    Product p;
                    p.i = i;
                    for (auto& [key, c] : x.gen_terms()) p.gens.push_back({key.first, key.second, c});
                    for (auto& [z, c] : x.central_terms()) p.central += c * central_values_[z];
                    slot.push_back(std::move(p));
                }
            }
        intern({});  // vacuum has id 0
    }

    const VLiePresentation& presentation() const { return R_; }
    const std::vector<Scalar>& central_values() const { return central_values_; }
    std::uint32_t vacuum_id() const { return 0; }
    EnvElem vacuum() const { return EnvElem::word(0); }

    const PBWMonomial& word(std::uint32_t id) const { return words_[id].word; }
    const Rational& weight(std::uint32_t id) const { return words_[id].weight; }
    bool odd(std::uint32_t id) const { return words_[id].odd; }
    std::size_t num_words() const { return words_.size(); }

    Rational mode_weight(const Mode& m) const { return R_.decl(m.gen).weight - m.t - 1; }

    std::uint32_t intern(const PBWMonomial& w) {
        auto it = ids_.find(w);
        if (it != ids_.end()) return it->second;
        WordInfo info;
        info.word = w;
        info.weight = 0;
        info.odd = false;
        for (auto& m : w) {
            if (m.t > -1) throw std::logic_error("PBW word with nonnegative mode");
            info.weight += mode_weight(m);
            info.odd ^= R_.decl(m.gen).odd;
        }
        info.scaled = to_long(info.weight * denom_);
        auto id = static_cast<std::uint32_t>(words_.size());
        words_.push_back(std::move(info));
        ids_.emplace(w, id);
        return id;
    }
    // Word id only if its modes are already in canonical order.
    std::uint32_t canonical_word(const PBWMonomial& w) {
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            int c = compare(w[i], w[i + 1]);
            if (c > 0 || (c == 0 && R_.decl(w[i].gen).odd))
                throw std::invalid_argument("word not in canonical PBW order");
        }
        return intern(w);
    }

    // Generator state a = a_(-1)|0>.
    EnvElem generator_state(std::uint32_t g) { return EnvElem::word(intern({{g, -1}})); }
    EnvElem generator_state(const std::string& g) { return generator_state(R_.gen_index(g)); }

    // State of an element of R: (T^(k) a) -> T^(k) a_(-1)|0>, z -> specialized scalar.
    EnvElem state_of(const RElem& x) {
        EnvElem r;
        for (auto& [key, c] : x.gen_terms()) r.add_scaled(translate_divided(generator_state(key.first), key.second), c);
        for (auto& [z, c] : x.central_terms()) r.add(0, c * central_values_[z]);
        return r;
    }

    // a_(t) applied to a state.
    const EnvElem& apply_mode(std::uint32_t a, std::int64_t t, std::uint32_t w) {
        std::uint64_t key = (static_cast<std::uint64_t>(w) << 28) ^ (static_cast<std::uint64_t>(a) << 20) ^
                            static_cast<std::uint64_t>((t + (1 << 19)) & 0xfffff);
        auto it = mode_memo_.find(key);
        if (it != mode_memo_.end()) return it->second;
        EnvElem r = compute_mode(a, t, w);
        return mode_memo_.emplace(key, std::move(r)).first->second;
    }
    EnvElem apply_mode(std::uint32_t a, std::int64_t t, const EnvElem& v) {
        EnvElem r;
        for (auto& [id, c] : v.terms()) r.add_scaled(apply_mode(a, t, id), c);
        return r;
    }
    EnvElem apply_mode(const std::string& a, std::int64_t t, const EnvElem& v) {
        return apply_mode(R_.gen_index(a), t, v);
    }

    // T as an even derivation: T(a_(t) w) = -t a_(t-1) w + a_(t) T w.
    const EnvElem& translate(std::uint32_t w) {
        auto it = translate_memo_.find(w);
        if (it != translate_memo_.end()) return it->second;
        EnvElem r;
        const PBWMonomial& word = words_[w].word;
        if (!word.empty()) {
            Mode m = word.front();
            std::uint32_t rest = intern(PBWMonomial(word.begin() + 1, word.end()));
            r.add_scaled(apply_mode(m.gen, m.t - 1, rest), Scalar(-static_cast<long>(m.t)));
            EnvElem tr = translate(rest);
            r += apply_mode(m.gen, m.t, tr);
        }
        return translate_memo_.emplace(w, std::move(r)).first->second;
    }
    EnvElem translate(const EnvElem& v) {
        EnvElem r;
        for (auto& [id, c] : v.terms()) r.add_scaled(translate(id), c);
        return r;
    }
    // T^(i) = T^i / i!
    EnvElem translate_divided(const EnvElem& v, unsigned i) {
        if (i == 0) return v;
        if (v.size() == 1) {
            auto& [id, c] = v.terms().front();
            const EnvElem& r = translate_divided(id, i);
            return c.is_one() ? r : r * c;
        }
        EnvElem r;
        for (auto& [id, c] : v.terms()) r.add_scaled(translate_divided(id, i), c);
        return r;
    }
    const EnvElem& translate_divided(std::uint32_t w, unsigned i) {
        auto key = (static_cast<std::uint64_t>(w) << 16) | i;
        auto it = divided_memo_.find(key);
        if (it != divided_memo_.end()) return it->second;
        EnvElem r = i == 0 ? EnvElem::word(w) : translate(translate_divided(w, i - 1)) * Scalar(Rational(1, i));
        return divided_memo_.emplace(key, std::move(r)).first->second;
    }
    // u_(n) v for PBW words via the associativity formula on u = a_(t) w:
    // (a_t w)_(n) v = sum_i (-1)^i binom(t,i) (a_(t-i)(w_(n+i) v) - zeta (-1)^t w_(n+t-i)(a_(i) v)).
    const EnvElem& nth_product(std::uint32_t u, std::int64_t n, std::uint32_t v) {
        ProductKey key{u, v, n};
        auto it = product_memo_.find(key);
        if (it != product_memo_.end()) return it->second;
        EnvElem r = compute_product(u, n, v);
        return product_memo_.emplace(key, std::move(r)).first->second;
    }
    EnvElem nth_product(const EnvElem& u, std::int64_t n, const EnvElem& v) {
        if (u.size() == 1 && v.size() == 1) {
            auto& [iu, cu] = *u.terms().begin();
            auto& [iv, cv] = *v.terms().begin();
            const EnvElem& p = nth_product(iu, n, iv);
            if (cu.is_one() && cv.is_one()) return p;
            return p * (cu * cv);
        }
        for (auto& [iu, cu] : u.terms())
            for (auto& [iv, cv] : v.terms()) {
                const EnvElem& p = nth_product(iu, n, iv);
                if (p.is_zero()) continue;
                if (cv.is_one()) acc_.add(p, cu);
                else if (cu.is_one()) acc_.add(p, cv);
                else acc_.add(p, cu * cv);
            }
        return acc_.take();
    }

    // Homogeneous components and bookkeeping.
    std::optional<Rational> weight_of(const EnvElem& x) const {
        std::optional<Rational> h;
        for (auto& [id, c] : x.terms()) {
            if (h && *h != weight(id)) return std::nullopt;
            h = weight(id);
        }
        return h;
    }
    std::optional<bool> parity_of(const EnvElem& x) const {
        std::optional<bool> p;
        for (auto& [id, c] : x.terms()) {
            if (p && *p != odd(id)) return std::nullopt;
            p = odd(id);
        }
        return p;
    }
    std::map<Rational, EnvElem> components(const EnvElem& x) const {
        std::map<Rational, EnvElem> out;
        for (auto& [id, c] : x.terms()) out[weight(id)].add(id, c);
        return out;
    }
    // Upper bound past which u_(n) v vanishes: n > h_u + h_v - 1.
    std::int64_t top_index(std::uint32_t u, std::uint32_t v) const {
        long s = words_[u].scaled + words_[v].scaled;
        return (s >= 0 ? s / denom_ : -((-s + denom_ - 1) / denom_)) - 1;
    }

    // Canonical PBW words of weight h (h a multiple of 1/denominator()).
    const std::vector<std::uint32_t>& basis(const Rational& h) {
        auto it = basis_.find(h);
        if (it != basis_.end()) return it->second;
        enumerate_basis(h);
        return basis_.at(h);
    }
    // All basis words with weight <= h_max, ascending weight.
    std::vector<std::uint32_t> basis_up_to(const Rational& h_max) {
        std::vector<std::uint32_t> out;
        for (long k = 0; scaled(k) <= h_max; ++k) {
            Rational h = scaled(k);
            auto& b = basis(h);
            out.insert(out.end(), b.begin(), b.end());
        }
        return out;
    }
    long denominator() const { return denom_; }
    // k / denom_, canonical (GMP comparisons assume it)
    Rational scaled(long k) const { return make_rational(k, denom_); }

    std::vector<std::pair<Rational, std::size_t>> graded_dimension(const Rational& h_max) {
        std::vector<std::pair<Rational, std::size_t>> out;
        for (long k = 0; scaled(k) <= h_max; ++k) {
            Rational h = scaled(k);
            out.emplace_back(h, basis(h).size());
        }
        return out;
    }

    // Independent count from the generating function of the free
    // supercommutative algebra on the modes a_(t), t <= -1.
    std::vector<std::pair<Rational, std::size_t>> generating_function_dimension(const Rational& h_max) const {
        long N = floor_long(h_max * denom_);
        std::vector<unsigned long long> series(N + 1, 0);
        series[0] = 1;
        for (auto& g : R_.generators()) {
            long w0 = to_long(g.weight * denom_);
            for (long t = -1;; --t) {
                long w = w0 + (-t - 1) * denom_;  // scaled weight of a_(t)
                if (w > N) break;
                if (g.odd) {
                    for (long k = N; k >= w; --k) series[k] += series[k - w];
                } else {
                    for (long k = w; k <= N; ++k) series[k] += series[k - w];
                }
            }
        }
        std::vector<std::pair<Rational, std::size_t>> out;
        for (long k = 0; k <= N; ++k) {
            out.emplace_back(scaled(k), series[k]);
        }
        return out;
    }

    std::string word_string(std::uint32_t id) const {
        const auto& w = words_[id].word;
        if (w.empty()) return "|0>";
        std::string s;
        for (auto& m : w) s += R_.decl(m.gen).name + "(" + std::to_string(m.t) + ")";
        return s;
    }
    // Canonical rendering, words in PBW order of their modes.
    std::string to_string(const EnvElem& x) const {
        if (x.is_zero()) return "0";
        std::vector<std::pair<const PBWMonomial*, std::pair<std::uint32_t, const Scalar*>>> items;
        for (auto& [id, c] : x.terms()) items.push_back({&words_[id].word, {id, &c}});
        std::sort(items.begin(), items.end(), [&](auto& p, auto& q) {
            if (weight(p.second.first) != weight(q.second.first)) return weight(p.second.first) < weight(q.second.first);
            return std::lexicographical_compare(p.first->begin(), p.first->end(), q.first->begin(), q.first->end(),
                                                [&](const Mode& a, const Mode& b) { return compare(a, b) < 0; });
        });
        std::string out;
        bool first = true;
        for (auto& it : items) {
            bool neg = false;
            const Scalar& c = *it.second.second;
            std::string body = word_string(it.second.first);
            std::string piece = c.coefficient_prefix(neg) + body;
            out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
            out += piece;
            first = false;
        }
        return out;
    }

    // PBW order: t ascending, ties by generator name.
    int compare(const Mode& x, const Mode& y) const {
        if (x.t != y.t) return x.t < y.t ? -1 : 1;
        if (rank_[x.gen] != rank_[y.gen]) return rank_[x.gen] < rank_[y.gen] ? -1 : 1;
        return 0;
    }

    std::size_t cache_size() const { return mode_memo_.size() + product_memo_.size() + translate_memo_.size(); }

private:
    struct WordInfo {
        PBWMonomial word;
        Rational weight;
        long scaled;  // weight * denom_
        bool odd;
    };
    struct ProductTerm {
        std::uint32_t gen;
        std::uint32_t k;  // T^(k)
        Scalar coef;
    };
    struct Product {
        unsigned i;
        std::vector<ProductTerm> gens;
        Scalar central;  // specialized central part
    };
    struct ProductKey {
        std::uint32_t u, v;
        std::int64_t n;
        bool operator==(const ProductKey& o) const { return u == o.u && v == o.v && n == o.n; }
    };
    struct ProductKeyHash {
        std::size_t operator()(const ProductKey& k) const {
            return (static_cast<std::size_t>(k.u) * 0x9E3779B97F4A7C15ull) ^ (static_cast<std::size_t>(k.v) << 20) ^
                   static_cast<std::size_t>(k.n + 4096);
        }
    };

    bool is_odd_gen(std::uint32_t g) const { return R_.decl(g).odd; }

    // [a_(t), b_(s)] applied to the word `rest`.
    EnvElem commutator_on(std::uint32_t a, std::int64_t t, std::uint32_t b, std::int64_t s, std::uint32_t rest) {
        EnvElem r;
        for (auto& p : products_[a * R_.num_gens() + b]) {
            Rational bi = binom(static_cast<long>(t), static_cast<long>(p.i));
            if (bi == 0) continue;
            std::int64_t q = t + s - p.i;  // (a_i b)_(q)
            for (auto& term : p.gens) {
                // (T^(k) c)_(q) = (-1)^k binom(q, k) c_(q-k)
                Rational f = bi * sign_pow(term.k) * binom(static_cast<long>(q), static_cast<long>(term.k));
                if (f == 0) continue;
                r.add_scaled(apply_mode(term.gen, q - term.k, rest), term.coef * Scalar(f));
            }
            if (q == -1 && !p.central.is_zero()) r.add(rest, p.central * Scalar(bi));
        }
        return r;
    }

    EnvElem compute_mode(std::uint32_t a, std::int64_t t, std::uint32_t w) {
        const PBWMonomial& word = words_[w].word;
        if (word.empty()) {
            if (t >= 0) return EnvElem();
            return EnvElem::word(intern({{a, static_cast<std::int32_t>(t)}}));
        }
        // positive modes annihilate states of too low weight
        if (R_.decl(a).weight - t - 1 + words_[w].weight < 0) return EnvElem();
        Mode first = word.front();
        Mode m{a, static_cast<std::int32_t>(t)};
        std::uint32_t rest = intern(PBWMonomial(word.begin() + 1, word.end()));
        if (t <= -1) {
            int c = compare(m, first);
            if (c < 0 || (c == 0 && !is_odd_gen(a))) {
                PBWMonomial nw;
                nw.reserve(word.size() + 1);
                nw.push_back(m);
                nw.insert(nw.end(), word.begin(), word.end());
                return EnvElem::word(intern(nw));
            }
            if (c == 0) {
                // odd square: a_t a_t = [a_t, a_t] / 2
                return commutator_on(a, t, a, t, rest) * Scalar(Rational(1, 2));
            }
        }
        // a_t b_s rest = zeta b_s (a_t rest) + [a_t, b_s] rest
        EnvElem inner = apply_mode(a, t, rest);
        EnvElem r = apply_mode(first.gen, first.t, inner);
        if (is_odd_gen(a) && is_odd_gen(first.gen)) r = -r;
        r += commutator_on(a, t, first.gen, first.t, rest);
        return r;
    }

    EnvElem compute_product(std::uint32_t u, std::int64_t n, std::uint32_t v) {
        const PBWMonomial& uw = words_[u].word;
        if (uw.empty()) return n == -1 ? EnvElem::word(v) : EnvElem();
        if (n > top_index(u, v)) return EnvElem();
        Mode m = uw.front();
        std::uint32_t a = m.gen;
        std::int64_t t = m.t;
        std::uint32_t w = intern(PBWMonomial(uw.begin() + 1, uw.end()));
        int z = (is_odd_gen(a) && words_[w].odd) ? -1 : 1;
        EnvElem r;
        // first sum: a_(t-i) (w_(n+i) v)
        std::int64_t top_w = words_[w].word.empty() ? -1 : top_index(w, v);
        for (std::int64_t i = 0; n + i <= top_w; ++i) {
            Rational bi = binom(t, i);
            if (bi == 0) {
                if (t >= 0) break;
                continue;
            }
            const EnvElem& inner = nth_product(w, n + i, v);
            if (inner.is_zero()) continue;
            r.add_scaled(apply_mode(a, t - i, inner), Scalar(sign_pow(i) * bi));
        }
        // second sum: w_(n+t-i) (a_(i) v)
        std::int64_t top_a = floor_long(R_.decl(a).weight + weight(v)) - 1;
        for (std::int64_t i = 0; i <= top_a; ++i) {
            Rational bi = binom(t, i);
            if (bi == 0) {
                if (t >= 0) break;
                continue;
            }
            const EnvElem& av = apply_mode(a, i, v);
            if (av.is_zero()) continue;
            EnvElem inner;
            for (auto& [id, c] : av.terms()) inner.add_scaled(nth_product(w, n + t - i, id), c);
            r.add_scaled(inner, Scalar(-z * sign_pow(t) * sign_pow(i) * bi));
        }
        return r;
    }

    void enumerate_basis(const Rational& h) {
        long N = floor_long(h * denom_);
        if (scaled(N) != h) {
            basis_[h] = {};
            return;
        }
        // all modes of scaled weight <= N, in PBW order
        std::vector<std::pair<Mode, long>> modes;
        for (std::uint32_t g = 0; g < R_.num_gens(); ++g) {
            long w0 = to_long(R_.decl(g).weight * denom_);
            for (std::int32_t t = -1;; --t) {
                long w = w0 + (-t - 1) * denom_;
                if (w > N) break;
                modes.push_back({{g, t}, w});
            }
        }
        std::sort(modes.begin(), modes.end(), [&](auto& x, auto& y) { return compare(x.first, y.first) < 0; });
        std::vector<std::uint32_t> out;
        PBWMonomial cur;
        std::function<void(std::size_t, long)> rec = [&](std::size_t from, long left) {
            if (left == 0) {
                out.push_back(intern(cur));
                return;
            }
            for (std::size_t j = from; j < modes.size(); ++j) {
                if (modes[j].second > left) continue;
                cur.push_back(modes[j].first);
                rec(is_odd_gen(modes[j].first.gen) ? j + 1 : j, left - modes[j].second);
                cur.pop_back();
            }
        };
        rec(0, N);
        std::sort(out.begin(), out.end(), [&](auto x, auto y) {
            const auto &a = words_[x].word, &b = words_[y].word;
            return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                                [&](const Mode& p, const Mode& q) { return compare(p, q) < 0; });
        });
        basis_[h] = std::move(out);
    }

    VLiePresentation R_;
    std::vector<Scalar> central_values_;
    std::map<std::string, Scalar> param_values_;
    std::vector<std::uint32_t> rank_;
    long denom_ = 1;
    EnvAccumulator acc_;
    std::vector<std::vector<Product>> products_;
    std::deque<WordInfo> words_;  // stable references while interning
    std::unordered_map<PBWMonomial, std::uint32_t, WordHash> ids_;
    std::unordered_map<std::uint64_t, EnvElem> mode_memo_;
    std::unordered_map<std::uint32_t, EnvElem> translate_memo_;
    std::unordered_map<std::uint64_t, EnvElem> divided_memo_;
    std::unordered_map<ProductKey, EnvElem, ProductKeyHash> product_memo_;
    std::map<Rational, std::vector<std::uint32_t>> basis_;
};

}  // namespace vla
