#pragma once

#include "vla/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace vla {

// Parameter names (c, k, d, ...) are interned once; ids are process-local and
// never affect canonical output, which always orders by name.
class ParamRegistry {
public:
    static ParamRegistry& instance() {
        static ParamRegistry reg;
        return reg;
    }
    std::uint32_t id(const std::string& name) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = ids_.find(name);
        if (it != ids_.end()) return it->second;
        auto id = static_cast<std::uint32_t>(names_.size());
        names_.push_back(name);
        ids_.emplace(name, id);
        return id;
    }
    std::string name(std::uint32_t id) {
        std::lock_guard<std::mutex> lock(mu_);
        return names_.at(id);
    }

private:
    std::mutex mu_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> ids_;
};

// Monomial in the parameters: sorted (param id, exponent) pairs, exponents > 0.
using ParamMono = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

inline ParamMono mono_mul(const ParamMono& a, const ParamMono& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    ParamMono out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.push_back(b[j++]);
        } else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    return out;
}

inline std::uint32_t mono_degree(const ParamMono& m) {
    std::uint32_t d = 0;
    for (auto& [id, e] : m) d += e;
    return d;
}

// Graded order on monomials; ties broken lexicographically (a larger exponent
// on an earlier key wins). Multiplicative, so usable for exact division.
template <class Key>
int grlex_compare(const std::vector<std::pair<Key, std::uint32_t>>& a,
                  const std::vector<std::pair<Key, std::uint32_t>>& b) {
    std::uint32_t da = 0, db = 0;
    for (auto& p : a) da += p.second;
    for (auto& p : b) db += p.second;
    if (da != db) return da < db ? -1 : 1;
    std::size_t i = 0;
    for (; i < a.size() && i < b.size(); ++i) {
        if (a[i].first != b[i].first) return a[i].first < b[i].first ? 1 : -1;
        if (a[i].second != b[i].second) return a[i].second < b[i].second ? -1 : 1;
    }
    if (i < a.size()) return 1;
    if (i < b.size()) return -1;
    return 0;
}

// Exact polynomial in named parameters with rational coefficients.
class Scalar {
public:
    using Term = std::pair<ParamMono, Rational>;

    Scalar() = default;
    Scalar(long v) {  // NOLINT(google-explicit-constructor)
        if (v != 0) terms_.emplace_back(ParamMono{}, Rational(v));
    }
    Scalar(int v) : Scalar(static_cast<long>(v)) {}  // NOLINT
    Scalar(const Rational& q) {                     // NOLINT
        if (q != 0) terms_.emplace_back(ParamMono{}, q);
    }

    static Scalar param(const std::string& name, std::uint32_t power = 1) {
        Scalar s;
        if (power == 0) return Scalar(1);
        s.terms_.emplace_back(ParamMono{{ParamRegistry::instance().id(name), power}}, Rational(1));
        return s;
    }

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const { return terms_.size() == 1 && terms_[0].first.empty() && terms_[0].second == 1; }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.empty()); }
    Rational constant_value() const {
        for (auto& [m, c] : terms_)
            if (m.empty()) return c;
        return Rational(0);
    }
    std::uint32_t degree() const {
        std::uint32_t d = 0;
        for (auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
        return d;
    }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar operator-() const {
        Scalar r = *this;
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }

    Scalar& operator+=(const Scalar& o) {
        if (o.terms_.empty()) return *this;
        if (terms_.empty()) return *this = o;
        if (terms_.size() == 1 && o.terms_.size() == 1 && terms_[0].first == o.terms_[0].first) {
            terms_[0].second += o.terms_[0].second;
            if (terms_[0].second == 0) terms_.clear();
            return *this;
        }
        std::vector<Term> out;
        out.reserve(terms_.size() + o.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < terms_.size() || j < o.terms_.size()) {
            if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
                out.push_back(std::move(terms_[i++]));
            } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
                out.push_back(o.terms_[j++]);
            } else {
                Rational c = terms_[i].second + o.terms_[j].second;
                if (c != 0) out.emplace_back(std::move(terms_[i].first), std::move(c));
                ++i;
                ++j;
            }
        }
        terms_ = std::move(out);
        return *this;
    }
    Scalar& operator-=(const Scalar& o) { return *this += -o; }

    Scalar& operator*=(const Rational& q) {
        if (q == 0) {
            terms_.clear();
        } else if (q != 1) {
            for (auto& t : terms_) t.second *= q;
        }
        return *this;
    }

    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    // this += x * y
    void add_product(const Scalar& x, const Scalar& y) {
        if (x.terms_.empty() || y.terms_.empty()) return;
        if (!y.is_constant()) {
            *this += x * y;
            return;
        }
        const mpq_srcptr q = y.terms_[0].second.get_mpq_t();
        const bool unit = mpz_cmp_ui(mpq_denref(q), 1) == 0 && mpz_cmpabs_ui(mpq_numref(q), 1) == 0;
        const bool neg = mpz_sgn(mpq_numref(q)) < 0;
        if (x.is_constant() && (terms_.empty() || is_constant())) {
            const mpq_srcptr xq = x.terms_[0].second.get_mpq_t();
            if (terms_.empty()) {
                terms_.emplace_back(ParamMono{}, x.terms_[0].second);
                if (!unit) mpq_mul(terms_[0].second.get_mpq_t(), xq, q);
                else if (neg) mpq_neg(terms_[0].second.get_mpq_t(), xq);
                return;
            }
            mpq_ptr acc = terms_[0].second.get_mpq_t();
            if (unit) {
                (neg ? mpq_sub : mpq_add)(acc, acc, xq);
            } else {
                static thread_local mpq_class tmp;
                mpq_mul(tmp.get_mpq_t(), xq, q);
                mpq_add(acc, acc, tmp.get_mpq_t());
            }
            if (mpq_sgn(acc) == 0) terms_.clear();
            return;
        }
        *this += x * y;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Rational& q) { return a *= q; }
    friend Scalar operator*(const Rational& q, Scalar a) { return a *= q; }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (a.terms_.empty() || b.terms_.empty()) return Scalar();
        if (a.is_constant()) return b * a.terms_[0].second;
        if (b.is_constant()) return a * b.terms_[0].second;
        std::map<ParamMono, Rational> acc;
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) acc[mono_mul(ma, mb)] += ca * cb;
        Scalar r;
        for (auto& [m, c] : acc)
            if (c != 0) r.terms_.emplace_back(m, c);
        return r;
    }

    Scalar pow(unsigned n) const {
        Scalar r(1);
        for (unsigned i = 0; i < n; ++i) r *= *this;
        return r;
    }

    // Replace named parameters by scalars (typically rationals).
    Scalar substitute(const std::map<std::string, Scalar>& values) const {
        if (values.empty() || is_constant()) return *this;
        auto& reg = ParamRegistry::instance();
        std::map<std::uint32_t, const Scalar*> by_id;
        for (auto& [n, v] : values) by_id[reg.id(n)] = &v;
        Scalar r;
        for (auto& [m, c] : terms_) {
            Scalar term(c);
            ParamMono rest;
            for (auto& [id, e] : m) {
                auto it = by_id.find(id);
                if (it == by_id.end()) {
                    rest.emplace_back(id, e);
                } else {
                    term *= it->second->pow(e);
                }
            }
            Scalar mono;
            mono.terms_.emplace_back(rest, Rational(1));
            r += term * mono;
        }
        return r;
    }

    // Exact division in Q[params]; nullopt when the divisor does not divide.
    std::optional<Scalar> div_exact(const Scalar& d) const {
        if (d.is_zero()) return std::nullopt;
        if (d.is_constant()) return *this * Rational(1 / d.terms_[0].second);
        Scalar rem = *this, quo;
        const Term& ld = d.leading();
        while (!rem.is_zero()) {
            const Term& lr = rem.leading();
            ParamMono qm;
            std::size_t j = 0;
            for (auto& [id, e] : lr.first) {
                std::uint32_t de = 0;
                if (j < ld.first.size() && ld.first[j].first == id) de = ld.first[j++].second;
                if (e < de) return std::nullopt;
                if (e > de) qm.emplace_back(id, e - de);
            }
            if (j != ld.first.size()) return std::nullopt;
            Scalar qt;
            qt.terms_.emplace_back(qm, lr.second / ld.second);
            quo += qt;
            rem -= qt * d;
        }
        return quo;
    }

    const Term& leading() const {
        std::size_t best = 0;
        for (std::size_t i = 1; i < terms_.size(); ++i)
            if (grlex_compare(terms_[i].first, terms_[best].first) > 0) best = i;
        return terms_[best];
    }

    // Parameter names occurring in this scalar.
    std::vector<std::string> params() const {
        std::vector<std::string> out;
        auto& reg = ParamRegistry::instance();
        for (auto& [m, c] : terms_)
            for (auto& [id, e] : m) out.push_back(reg.name(id));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    // Canonical text: terms in descending graded-lex order by parameter name.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        auto& reg = ParamRegistry::instance();
        using NamedMono = std::vector<std::pair<std::string, std::uint32_t>>;
        std::vector<std::pair<NamedMono, Rational>> named;
        for (auto& [m, c] : terms_) {
            NamedMono nm;
            for (auto& [id, e] : m) nm.emplace_back(reg.name(id), e);
            std::sort(nm.begin(), nm.end());
            named.emplace_back(std::move(nm), c);
        }
        std::sort(named.begin(), named.end(),
                  [](const auto& x, const auto& y) { return grlex_compare(x.first, y.first) > 0; });
        std::string out;
        bool first = true;
        for (auto& [m, c] : named) {
            Rational mag = abs(c);
            if (first) {
                if (c < 0) out += "-";
            } else {
                out += c < 0 ? " - " : " + ";
            }
            first = false;
            std::string mono;
            for (auto& [n, e] : m) {
                if (!mono.empty()) mono += "*";
                mono += n;
                if (e > 1) mono += "^" + std::to_string(e);
            }
            if (mono.empty()) {
                out += mag.get_str();
            } else if (mag == 1) {
                out += mono;
            } else {
                out += mag.get_str() + "*" + mono;
            }
        }
        return out;
    }

    // Rendering as a factor in front of something else: "" for 1, "-" for -1,
    // "3/2*" or "(c + 1)*" otherwise.
    std::string coefficient_prefix(bool& negative) const {
        negative = false;
        if (terms_.size() == 1) {
            Scalar mag = *this;
            if (mag.terms_[0].second < 0) {
                negative = true;
                mag = -mag;
            }
            if (mag == Scalar(1)) return "";
            return mag.to_string() + "*";
        }
        return "(" + to_string() + ")*";
    }

private:
    std::vector<Term> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace vla
