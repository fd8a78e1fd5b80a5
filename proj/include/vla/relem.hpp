#pragma once

#include "vla/dpoly.hpp"

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vla {

struct GeneratorDecl {
    std::string name;
    bool odd = false;
    Rational weight{0};
};

struct SymbolTable {
    std::vector<GeneratorDecl> gens;
    std::vector<std::string> centrals;

    std::optional<std::uint32_t> find_gen(const std::string& n) const {
        for (std::size_t i = 0; i < gens.size(); ++i)
            if (gens[i].name == n) return static_cast<std::uint32_t>(i);
        return std::nullopt;
    }
    std::optional<std::uint32_t> find_central(const std::string& n) const {
        for (std::size_t i = 0; i < centrals.size(); ++i)
            if (centrals[i] == n) return static_cast<std::uint32_t>(i);
        return std::nullopt;
    }
};

using SymbolTablePtr = std::shared_ptr<const SymbolTable>;

// Element of R = E[T] + K: generator terms T^(k) a (divided powers of T) and
// central terms. T annihilates K.
class RElem {
public:
    using GenKey = std::pair<std::uint32_t, std::uint32_t>;  // (generator, k) for T^(k) a

    RElem() = default;
    explicit RElem(SymbolTablePtr t) : table_(std::move(t)) {}

    static RElem gen(const SymbolTablePtr& t, std::uint32_t g, std::uint32_t k = 0, const Scalar& c = 1) {
        RElem r(t);
        if (!c.is_zero()) r.gens_.emplace(GenKey{g, k}, c);
        return r;
    }
    static RElem central(const SymbolTablePtr& t, std::uint32_t z, const Scalar& c = 1) {
        RElem r(t);
        if (!c.is_zero()) r.centrals_.emplace(z, c);
        return r;
    }

    const SymbolTablePtr& table() const { return table_; }
    const std::map<GenKey, Scalar>& gen_terms() const { return gens_; }
    const std::map<std::uint32_t, Scalar>& central_terms() const { return centrals_; }

    bool is_zero() const { return gens_.empty() && centrals_.empty(); }
    bool is_central() const { return gens_.empty(); }

    RElem& operator+=(const RElem& o) {
        if (!table_) table_ = o.table_;
        for (auto& [k, c] : o.gens_) accumulate(gens_, k, c);
        for (auto& [k, c] : o.centrals_) accumulate(centrals_, k, c);
        return *this;
    }
    RElem& operator-=(const RElem& o) { return *this += -o; }
    RElem operator-() const {
        RElem r = *this;
        for (auto& [k, c] : r.gens_) c = -c;
        for (auto& [k, c] : r.centrals_) c = -c;
        return r;
    }
    friend RElem operator+(RElem a, const RElem& b) { return a += b; }
    friend RElem operator-(RElem a, const RElem& b) { return a -= b; }
    friend RElem operator*(const RElem& a, const Scalar& s) {
        RElem r(a.table_);
        if (s.is_zero()) return r;
        for (auto& [k, c] : a.gens_) {
            Scalar p = c * s;
            if (!p.is_zero()) r.gens_.emplace(k, p);
        }
        for (auto& [k, c] : a.centrals_) {
            Scalar p = c * s;
            if (!p.is_zero()) r.centrals_.emplace(k, p);
        }
        return r;
    }
    friend RElem operator*(const Scalar& s, const RElem& a) { return a * s; }
    friend bool operator==(const RElem& a, const RElem& b) { return a.gens_ == b.gens_ && a.centrals_ == b.centrals_; }
    friend bool operator!=(const RElem& a, const RElem& b) { return !(a == b); }

    // T^(j) applied: T^(j) T^(k) a = binom(j+k, j) T^(j+k) a; kills centrals for j > 0.
    RElem T(unsigned j = 1) const {
        if (j == 0) return *this;
        RElem r(table_);
        for (auto& [key, c] : gens_) {
            Rational m = binom(static_cast<long>(key.second + j), static_cast<long>(j));
            r.gens_.emplace(GenKey{key.first, key.second + j}, c * m);
        }
        return r;
    }

    // Parity if homogeneous (centrals are even); nullopt for mixed parity.
    std::optional<bool> parity() const {
        std::optional<bool> p;
        if (!centrals_.empty()) p = false;
        for (auto& [key, c] : gens_) {
            bool odd = table_->gens.at(key.first).odd;
            if (p && *p != odd) return std::nullopt;
            p = odd;
        }
        return p.value_or(false);
    }
    // Weight if homogeneous (centrals have weight 0); nullopt for zero or mixed.
    std::optional<Rational> weight() const {
        std::optional<Rational> w;
        if (!centrals_.empty()) w = Rational(0);
        for (auto& [key, c] : gens_) {
            Rational h = table_->gens.at(key.first).weight + key.second;
            if (w && *w != h) return std::nullopt;
            w = h;
        }
        return w;
    }

    RElem substitute(const std::map<std::string, Scalar>& values) const {
        RElem r(table_);
        for (auto& [k, c] : gens_) accumulate(r.gens_, k, c.substitute(values));
        for (auto& [k, c] : centrals_) accumulate(r.centrals_, k, c.substitute(values));
        return r;
    }

    // (scalar, "T^(k) a") pieces ordered by name then T-power, centrals last.
    std::vector<std::pair<Scalar, std::string>> flatten() const {
        std::vector<std::pair<std::pair<std::string, std::uint32_t>, Scalar>> g;
        for (auto& [key, c] : gens_) g.push_back({{table_->gens.at(key.first).name, key.second}, c});
        std::sort(g.begin(), g.end(), [](auto& a, auto& b) { return a.first < b.first; });
        std::vector<std::pair<Scalar, std::string>> out;
        for (auto& [nk, c] : g) {
            std::string body = nk.second == 0 ? "" : (nk.second == 1 ? "T " : "T^(" + std::to_string(nk.second) + ") ");
            out.emplace_back(c, body + nk.first);
        }
        std::vector<std::pair<std::string, Scalar>> z;
        for (auto& [k, c] : centrals_) z.emplace_back(table_->centrals.at(k), c);
        std::sort(z.begin(), z.end(), [](auto& a, auto& b) { return a.first < b.first; });
        for (auto& [n, c] : z) out.emplace_back(c, n);
        return out;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        bool first = true;
        for (auto& [s, body] : flatten()) {
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
    std::map<GenKey, Scalar> gens_;
    std::map<std::uint32_t, Scalar> centrals_;
};

template <>
struct CoefTraits<RElem> {
    static RElem apply_T(const RElem& r, unsigned j) { return r.T(j); }
    static std::vector<std::pair<Scalar, std::string>> flatten(const RElem& r) { return r.flatten(); }
};

using LambdaPoly = DPoly<RElem>;

}  // namespace vla
