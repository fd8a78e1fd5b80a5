#pragma once

#include "vla/vlie.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vla {

enum class ModeConvention { t, weight };

// Linear combination of modes a_(t) (t-indexed) or a_n = a_(n + h_a - 1)
// (weight-indexed) plus central terms. Central terms only ever arise with
// total index zero, so each one carries an implicit delta_{n+m} marker.
class ModeExpr {
public:
    using Key = std::pair<std::uint32_t, Rational>;

    ModeExpr() = default;
    ModeExpr(SymbolTablePtr t, ModeConvention c) : table_(std::move(t)), conv_(c) {}

    static ModeExpr mode(SymbolTablePtr t, ModeConvention c, std::uint32_t g, const Rational& idx,
                         const Scalar& coef = 1) {
        ModeExpr e(std::move(t), c);
        e.add_mode(g, idx, coef);
        return e;
    }

    const std::map<Key, Scalar>& modes() const { return modes_; }
    const std::map<std::uint32_t, Scalar>& centrals() const { return centrals_; }
    ModeConvention convention() const { return conv_; }
    const SymbolTablePtr& table() const { return table_; }
    bool is_zero() const { return modes_.empty() && centrals_.empty(); }

    void add_mode(std::uint32_t g, const Rational& idx, const Scalar& c) { accumulate(modes_, Key{g, idx}, c); }
    void add_central(std::uint32_t z, const Scalar& c) { accumulate(centrals_, z, c); }

    ModeExpr& operator+=(const ModeExpr& o) {
        if (!table_) {
            table_ = o.table_;
            conv_ = o.conv_;
        }
        for (auto& [k, c] : o.modes_) accumulate(modes_, k, c);
        for (auto& [k, c] : o.centrals_) accumulate(centrals_, k, c);
        return *this;
    }
    ModeExpr operator*(const Scalar& s) const {
        ModeExpr r(table_, conv_);
        for (auto& [k, c] : modes_) r.add_mode(k.first, k.second, c * s);
        for (auto& [k, c] : centrals_) r.add_central(k, c * s);
        return r;
    }
    ModeExpr operator-() const { return *this * Scalar(-1); }
    friend ModeExpr operator+(ModeExpr a, const ModeExpr& b) { return a += b; }
    friend ModeExpr operator-(ModeExpr a, const ModeExpr& b) { return a += -b; }
    friend bool operator==(const ModeExpr& a, const ModeExpr& b) {
        return a.modes_ == b.modes_ && a.centrals_ == b.centrals_;
    }
    friend bool operator!=(const ModeExpr& a, const ModeExpr& b) { return !(a == b); }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::vector<std::pair<Scalar, std::string>> parts;
        std::vector<std::pair<std::pair<std::string, Rational>, Scalar>> ms;
        for (auto& [k, c] : modes_) ms.push_back({{table_->gens.at(k.first).name, k.second}, c});
        std::sort(ms.begin(), ms.end(), [](auto& x, auto& y) { return x.first < y.first; });
        for (auto& [k, c] : ms) {
            std::string body = conv_ == ModeConvention::weight ? k.first + "[" + k.second.get_str() + "]"
                                                                : k.first + "(" + k.second.get_str() + ")";
            parts.emplace_back(c, body);
        }
        for (auto& [z, c] : centrals_) parts.emplace_back(c, table_->centrals.at(z) + "*delta");
        std::string out;
        bool first = true;
        for (auto& [s, body] : parts) {
            bool neg = false;
            std::string piece = s.coefficient_prefix(neg) + body;
            out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
            out += piece;
            first = false;
        }
        return out;
    }

private:
    template <class M, class K>
    static void accumulate(M& m, const K& k, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = m.find(k);
        if (it == m.end()) {
            m.emplace(k, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) m.erase(it);
        }
    }

    SymbolTablePtr table_;
    ModeConvention conv_ = ModeConvention::t;
    std::map<Key, Scalar> modes_;
    std::map<std::uint32_t, Scalar> centrals_;
};

// Mode x_(p) of an element of R in the t-convention, using
// (T^(k) c)_(p) = (-1)^k binom(p, k) c_(p-k) and central z_(p) = delta_{p,-1} z.
inline ModeExpr element_mode(const RElem& x, long p, const SymbolTablePtr& table) {
    ModeExpr r(table, ModeConvention::t);
    for (auto& [key, c] : x.gen_terms())
        r.add_mode(key.first, Rational(p - static_cast<long>(key.second)),
                   c * Scalar(sign_pow(key.second) * binom(p, key.second)));
    if (p == -1)
        for (auto& [z, c] : x.central_terms()) r.add_central(z, c);
    return r;
}

// [x_(t), y_(s)] = sum_i binom(t, i) (x_(i) y)_(t+s-i) for elements of R.
inline ModeExpr mode_bracket_elements(const VLiePresentation& R, const RElem& x, long t, const RElem& y, long s) {
    ModeExpr r(R.symbols(), ModeConvention::t);
    for (auto& [i, xy] : tth_products(R, x, y)) {
        Rational b = binom(t, static_cast<long>(i));
        if (b == 0) continue;
        r += element_mode(xy, t + s - static_cast<long>(i), R.symbols()) * Scalar(b);
    }
    return r;
}

inline long require_int(const Rational& q, const std::string& what) {
    if (!is_integer(q)) throw std::invalid_argument("invalid index for convention: " + what + " = " + q.get_str());
    return to_long(q);
}

inline ModeExpr to_weight_convention(const VLiePresentation& R, const ModeExpr& e) {
    ModeExpr r(R.symbols(), ModeConvention::weight);
    for (auto& [k, c] : e.modes()) r.add_mode(k.first, k.second - R.decl(k.first).weight + 1, c);
    for (auto& [z, c] : e.centrals()) r.add_central(z, c);
    return r;
}

// Bracket of two generator modes in either convention.
inline ModeExpr mode_bracket(const VLiePresentation& R, std::uint32_t a, const Rational& n, std::uint32_t b,
                             const Rational& m, ModeConvention conv) {
    RElem x = RElem::gen(R.symbols(), a), y = RElem::gen(R.symbols(), b);
    if (conv == ModeConvention::t)
        return mode_bracket_elements(R, x, require_int(n, "t"), y, require_int(m, "s"));
    if (!R.graded()) throw std::invalid_argument("weight convention needs a graded presentation");
    long t = require_int(n + R.decl(a).weight - 1, R.decl(a).name + " index " + n.get_str());
    long s = require_int(m + R.decl(b).weight - 1, R.decl(b).name + " index " + m.get_str());
    return to_weight_convention(R, mode_bracket_elements(R, x, t, y, s));
}

inline ModeExpr mode_bracket(const VLiePresentation& R, const std::string& a, const Rational& n,
                             const std::string& b, const Rational& m, ModeConvention conv = ModeConvention::weight) {
    return mode_bracket(R, R.gen_index(a), n, R.gen_index(b), m, conv);
}

// Bilinear extension to mode expressions; central terms commute with everything.
inline ModeExpr mode_bracket(const VLiePresentation& R, const ModeExpr& X, const ModeExpr& Y) {
    ModeExpr r(R.symbols(), X.convention());
    for (auto& [kx, cx] : X.modes())
        for (auto& [ky, cy] : Y.modes())
            r += mode_bracket(R, kx.first, kx.second, ky.first, ky.second, X.convention()) * (cx * cy);
    return r;
}

// Indices of generator g inside [lo, hi] valid for the convention.
inline std::vector<Rational> mode_window(const VLiePresentation& R, std::uint32_t g, long lo, long hi,
                                         ModeConvention conv) {
    std::vector<Rational> out;
    Rational shift = conv == ModeConvention::weight ? R.decl(g).weight - floor_long(R.decl(g).weight) : Rational(0);
    // weight indices lie in Z - h_a
    for (long k = lo - 1; k <= hi + 1; ++k) {
        Rational idx = Rational(k) - shift;
        if (idx >= lo && idx <= hi) out.push_back(idx);
    }
    return out;
}

struct ExpectedBracket {
    std::string a, b;
    std::function<ModeExpr(const Rational& n, const Rational& m)> closed_form;
};

inline Report verify_weak_commutator(const VLiePresentation& R, const std::vector<ExpectedBracket>& expected,
                                     long lo, long hi, ModeConvention conv = ModeConvention::weight) {
    Report rep;
    for (auto& ex : expected) {
        std::uint32_t a = R.gen_index(ex.a), b = R.gen_index(ex.b);
        std::size_t checked = 0, bad = 0;
        std::string mismatches;
        for (auto& n : mode_window(R, a, lo, hi, conv))
            for (auto& m : mode_window(R, b, lo, hi, conv)) {
                ModeExpr got = mode_bracket(R, a, n, b, m, conv);
                ModeExpr want = ex.closed_form(n, m);
                ++checked;
                if (got != want) {
                    if (bad < 8)
                        mismatches += (mismatches.empty() ? "" : "; ") + std::string("(") + n.get_str() + "," +
                                      m.get_str() + "): got " + got.to_string() + " expected " + want.to_string();
                    ++bad;
                }
            }
        std::string w = bad ? std::to_string(bad) + " of " + std::to_string(checked) + " mismatched: " + mismatches
                            : std::to_string(checked) + " index pairs";
        rep.add("modes " + ex.a + " " + ex.b, bad == 0, w);
    }
    return rep;
}

// Closed-form mode tables (weight convention).
namespace expected {

inline ModeExpr wmode(const VLiePresentation& R, const std::string& g, const Rational& idx, const Scalar& c) {
    return ModeExpr::mode(R.symbols(), ModeConvention::weight, R.gen_index(g), idx, c);
}
inline ModeExpr wcentral(const VLiePresentation& R, const std::string& z, const Scalar& c) {
    ModeExpr e(R.symbols(), ModeConvention::weight);
    e.add_central(R.central_index(z), c);
    return e;
}

// [L_n, L_m] = (n-m) L_{n+m} + (n^3-n) delta c/12
inline std::vector<ExpectedBracket> virasoro(const VLiePresentation& R, const std::string& L = "L",
                                             const std::string& c = "c") {
    return {{L, L, [&R, L, c](const Rational& n, const Rational& m) {
                 ModeExpr e = wmode(R, L, n + m, Scalar(Rational(n - m)));
                 if (n + m == 0) e += wcentral(R, c, Scalar(Rational((n * n * n - n) / 12)));
                 return e;
             }}};
}

// [G_n, G_m] = 2 L_{n+m} + (4n^2-1) delta c/12, [L_n, G_m] = (n/2 - m) G_{n+m}
inline std::vector<ExpectedBracket> neveu_schwarz(const VLiePresentation& R) {
    auto v = virasoro(R);
    v.push_back({"G", "G", [&R](const Rational& n, const Rational& m) {
                     ModeExpr e = wmode(R, "L", n + m, 2);
                     if (n + m == 0) e += wcentral(R, "c", Scalar(Rational((4 * n * n - 1) / 12)));
                     return e;
                 }});
    v.push_back({"L", "G", [&R](const Rational& n, const Rational& m) {
                     return wmode(R, "G", n + m, Scalar(Rational(n / 2 - m)));
                 }});
    return v;
}

// [Q_n, G_m] = L_{n+m} + n J_{n+m} + (n^2-n) delta d/2, [L_n, J_m] = -m J_{n+m} - (n^2+n) delta d/2
inline std::vector<ExpectedBracket> topological(const VLiePresentation& R) {
    return {{"Q", "G",
             [&R](const Rational& n, const Rational& m) {
                 ModeExpr e = wmode(R, "L", n + m, 1) + wmode(R, "J", n + m, Scalar(n));
                 if (n + m == 0) e += wcentral(R, "d", Scalar(Rational((n * n - n) / 2)));
                 return e;
             }},
            {"L", "J", [&R](const Rational& n, const Rational& m) {
                 ModeExpr e = wmode(R, "J", n + m, Scalar(Rational(-m)));
                 if (n + m == 0) e += wcentral(R, "d", Scalar(Rational(-(n * n + n) / 2)));
                 return e;
             }}};
}

inline std::vector<ExpectedBracket> by_name(const VLiePresentation& R, const std::string& name) {
    if (name == "virasoro") return virasoro(R);
    if (name == "neveu_schwarz" || name == "n1") return neveu_schwarz(R);
    if (name == "topological") return topological(R);
    throw std::invalid_argument("unknown expectation table '" + name + "' (virasoro, neveu_schwarz, topological)");
}

}  // namespace expected
}  // namespace vla
