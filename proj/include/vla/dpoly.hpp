#pragma once

#include "vla/scalar.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vla {

// Formal variables lambda, mu, nu, kappa (rendered l, m, n, k).
enum class Var : std::uint8_t { l = 0, m = 1, n = 2, k = 3 };
constexpr std::size_t kNumVars = 4;
inline const char* var_name(Var v) {
    static const char* names[] = {"l", "m", "n", "k"};
    return names[static_cast<std::size_t>(v)];
}

using Exps = std::array<std::uint16_t, kNumVars>;

inline unsigned total_degree(const Exps& e) {
    unsigned d = 0;
    for (auto x : e) d += x;
    return d;
}

// Coefficient traits. The translation operator T only acts on coefficient
// types that model the free K[T]-module; plain scalars reject it.
template <class C>
struct CoefTraits;

template <>
struct CoefTraits<Scalar> {
    static Scalar apply_T(const Scalar& s, unsigned j) {
        if (j == 0) return s;
        throw std::invalid_argument("unsupported bound expression: T acting on scalar coefficients");
    }
    // (scalar, body) pieces for rendering; body empty for pure scalars
    static std::vector<std::pair<Scalar, std::string>> flatten(const Scalar& s) { return {{s, ""}}; }
};

// Affine combination of the formal variables and T, used for substitution and
// integration bounds.
struct LinearForm {
    std::array<Rational, kNumVars> coef{};
    Rational t_coef{0};

    static LinearForm zero() { return {}; }
    static LinearForm var(Var v, const Rational& c = 1) {
        LinearForm f;
        f.coef[static_cast<std::size_t>(v)] = c;
        return f;
    }
    static LinearForm T(const Rational& c = 1) {
        LinearForm f;
        f.t_coef = c;
        return f;
    }
    LinearForm operator+(const LinearForm& o) const {
        LinearForm f;
        for (std::size_t i = 0; i < kNumVars; ++i) f.coef[i] = coef[i] + o.coef[i];
        f.t_coef = t_coef + o.t_coef;
        return f;
    }
    LinearForm operator-() const {
        LinearForm f;
        for (std::size_t i = 0; i < kNumVars; ++i) f.coef[i] = -coef[i];
        f.t_coef = -t_coef;
        return f;
    }
    LinearForm operator-(const LinearForm& o) const { return *this + (-o); }
    LinearForm operator*(const Rational& c) const {
        LinearForm f;
        for (std::size_t i = 0; i < kNumVars; ++i) f.coef[i] = coef[i] * c;
        f.t_coef = t_coef * c;
        return f;
    }
};

// Polynomial in the formal variables, stored in the divided-power basis
// x^(a) = x^a / a!, with coefficients in C.
template <class C>
class DPoly {
public:
    using Map = std::map<Exps, C>;

    DPoly() = default;
    explicit DPoly(const C& c) {
        if (!c.is_zero()) terms_.emplace(Exps{}, c);
    }
    static DPoly monomial(const Exps& e, const C& c) {
        DPoly p;
        if (!c.is_zero()) p.terms_.emplace(e, c);
        return p;
    }
    static DPoly power(Var v, unsigned a, const C& c) {
        Exps e{};
        e[static_cast<std::size_t>(v)] = static_cast<std::uint16_t>(a);
        return monomial(e, c);
    }

    const Map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Coefficient of a single divided-power monomial.
    C coeff(const Exps& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? C() : it->second;
    }
    C coeff(Var v, unsigned a) const {
        Exps e{};
        e[static_cast<std::size_t>(v)] = static_cast<std::uint16_t>(a);
        return coeff(e);
    }
    // Highest divided-power index in v, -1 for the zero polynomial.
    int degree(Var v) const {
        int d = -1;
        for (auto& [e, c] : terms_) d = std::max<int>(d, e[static_cast<std::size_t>(v)]);
        return d;
    }

    void add_term(const Exps& e, const C& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    DPoly& operator+=(const DPoly& o) {
        for (auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    DPoly& operator-=(const DPoly& o) {
        for (auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    DPoly operator-() const {
        DPoly r;
        for (auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }
    friend DPoly operator+(DPoly a, const DPoly& b) { return a += b; }
    friend DPoly operator-(DPoly a, const DPoly& b) { return a -= b; }
    friend bool operator==(const DPoly& a, const DPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const DPoly& a, const DPoly& b) { return !(a == b); }

    DPoly scaled(const Scalar& s) const {
        DPoly r;
        if (s.is_zero()) return r;
        for (auto& [e, c] : terms_) r.add_term(e, c * s);
        return r;
    }

    // Multiply by s * x^(e): x^(a) x^(b) = binom(a+b, a) x^(a+b).
    DPoly times_monomial(const Exps& e, const Scalar& s) const {
        DPoly r;
        if (s.is_zero()) return r;
        for (auto& [f, c] : terms_) {
            Exps g{};
            Rational mult(1);
            for (std::size_t i = 0; i < kNumVars; ++i) {
                g[i] = static_cast<std::uint16_t>(e[i] + f[i]);
                if (e[i] && f[i]) mult *= binom(static_cast<long>(g[i]), static_cast<long>(e[i]));
            }
            r.add_term(g, c * (s * mult));
        }
        return r;
    }

    // Apply a map to every coefficient.
    template <class F>
    auto map_coefficients(F&& f) const -> DPoly<decltype(f(std::declval<const C&>()))> {
        DPoly<decltype(f(std::declval<const C&>()))> r;
        for (auto& [e, c] : terms_) r.add_term(e, f(c));
        return r;
    }

    // Simultaneous substitution of variables by affine forms in the other
    // variables and T; T^(j) acts on the coefficient from the left.
    DPoly substitute(const std::map<Var, LinearForm>& assign) const {
        DPoly r;
        for (auto& [e, c] : terms_) {
            struct Partial {
                Exps e;
                Rational mult;
                unsigned tpow;
            };
            Exps base = e;
            for (auto& [v, f] : assign) base[static_cast<std::size_t>(v)] = 0;
            std::vector<Partial> parts{{base, Rational(1), 0}};
            for (auto& [v, f] : assign) {
                unsigned n = e[static_cast<std::size_t>(v)];
                if (n == 0) continue;
                // expand f^(n) = sum over compositions of n of prod c_i^{n_i} x_i^(n_i) T^(n_T)
                std::vector<std::pair<int, Rational>> comps;  // index kNumVars stands for T
                for (std::size_t i = 0; i < kNumVars; ++i)
                    if (f.coef[i] != 0) comps.emplace_back(static_cast<int>(i), f.coef[i]);
                if (f.t_coef != 0) comps.emplace_back(static_cast<int>(kNumVars), f.t_coef);
                std::vector<Partial> next;
                std::vector<unsigned> split(comps.size(), 0);
                std::function<void(std::size_t, unsigned)> rec = [&](std::size_t idx, unsigned left) {
                    if (idx + 1 >= comps.size()) {
                        if (comps.empty()) return;  // f == 0 and n > 0
                        split[idx] = left;
                        for (auto& p : parts) {
                            Partial q = p;
                            for (std::size_t j = 0; j < comps.size(); ++j) {
                                unsigned a = split[j];
                                if (a == 0) continue;
                                Rational cp(1);
                                for (unsigned s = 0; s < a; ++s) cp *= comps[j].second;
                                q.mult *= cp;
                                if (comps[j].first == static_cast<int>(kNumVars)) {
                                    q.mult *= binom(static_cast<long>(q.tpow + a), static_cast<long>(a));
                                    q.tpow += a;
                                } else {
                                    auto& slot = q.e[static_cast<std::size_t>(comps[j].first)];
                                    q.mult *= binom(static_cast<long>(slot + a), static_cast<long>(a));
                                    slot = static_cast<std::uint16_t>(slot + a);
                                }
                            }
                            next.push_back(q);
                        }
                        return;
                    }
                    for (unsigned a = 0; a <= left; ++a) {
                        split[idx] = a;
                        rec(idx + 1, left - a);
                    }
                };
                rec(0, n);
                parts = std::move(next);
            }
            for (auto& p : parts) {
                if (p.mult == 0) continue;
                C cc = CoefTraits<C>::apply_T(c, p.tpow);
                r.add_term(p.e, cc * Scalar(p.mult));
            }
        }
        return r;
    }

    DPoly substitute(Var v, const LinearForm& f) const { return substitute(std::map<Var, LinearForm>{{v, f}}); }

    // Divided-power antiderivative: x^(t) -> x^(t+1).
    DPoly antiderivative(Var v) const {
        DPoly r;
        for (auto& [e, c] : terms_) {
            Exps g = e;
            g[static_cast<std::size_t>(v)]++;
            r.terms_.emplace(g, c);
        }
        return r;
    }
    // d/dx: x^(t) -> x^(t-1).
    DPoly derivative(Var v) const {
        DPoly r;
        for (auto& [e, c] : terms_) {
            if (e[static_cast<std::size_t>(v)] == 0) continue;
            Exps g = e;
            g[static_cast<std::size_t>(v)]--;
            r.terms_.emplace(g, c);
        }
        return r;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        // ascending graded-lex on the variable exponents
        std::vector<const std::pair<const Exps, C>*> order;
        for (auto& kv : terms_) order.push_back(&kv);
        std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) {
            unsigned da = total_degree(a->first), db = total_degree(b->first);
            if (da != db) return da < db;
            return a->first < b->first;
        });
        std::string out;
        bool first = true;
        for (auto* kv : order) {
            std::string mono;
            for (std::size_t i = 0; i < kNumVars; ++i) {
                unsigned a = kv->first[i];
                if (a == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += var_name(static_cast<Var>(i));
                if (a > 1) mono += "^(" + std::to_string(a) + ")";
            }
            for (auto& [s, body] : CoefTraits<C>::flatten(kv->second)) {
                std::string rest = body;
                if (!mono.empty()) rest += (rest.empty() ? "" : "*") + mono;
                bool neg = false;
                std::string piece;
                if (rest.empty()) {
                    Scalar mag = s;
                    if (s.terms().size() == 1 && s.terms()[0].second < 0) {
                        neg = true;
                        mag = -s;
                    }
                    piece = mag.to_string();
                } else {
                    piece = s.coefficient_prefix(neg) + rest;
                }
                if (first) {
                    out += neg ? "-" + piece : piece;
                } else {
                    out += (neg ? " - " : " + ") + piece;
                }
                first = false;
            }
        }
        return out;
    }

private:
    Map terms_;
};

template <class C>
DPoly<C> operator*(const DPoly<Scalar>& a, const DPoly<C>& b) {
    DPoly<C> r;
    for (auto& [e, s] : a.terms()) r += b.times_monomial(e, s);
    return r;
}

// Formal integral of p over v from lower to upper:
// sum a_t x^(t) maps to sum a_t (upper^(t+1) - lower^(t+1)).
template <class C>
DPoly<C> formal_integral(const DPoly<C>& p, Var v, const LinearForm& lower, const LinearForm& upper) {
    if (lower.coef[static_cast<std::size_t>(v)] != 0 || upper.coef[static_cast<std::size_t>(v)] != 0)
        throw std::invalid_argument("unsupported bound expression: bound depends on the integration variable");
    DPoly<C> anti = p.antiderivative(v);
    return anti.substitute(v, upper) - anti.substitute(v, lower);
}

}  // namespace vla
