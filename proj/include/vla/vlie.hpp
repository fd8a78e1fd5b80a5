#pragma once

#include "vla/relem.hpp"
#include "vla/report.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vla {

class VLiePresentation;
LambdaPoly bracket(const VLiePresentation& R, const RElem& a, const RElem& b, Var v = Var::l);
LambdaPoly opposite_bracket(const VLiePresentation& R, const RElem& a, const RElem& b, Var v = Var::l);

// Generators, central symbols and a lambda-bracket table on ordered generator
// pairs. Pairs absent from the table after finalize() are either synthesized
// from the opposite orientation or default to zero.
class VLiePresentation {
public:
    using Pair = std::pair<std::uint32_t, std::uint32_t>;

    VLiePresentation() : symbols_(std::make_shared<SymbolTable>()) {}
    explicit VLiePresentation(std::string name) : VLiePresentation() { name_ = std::move(name); }

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    bool graded() const { return graded_; }
    void set_graded(bool g) { graded_ = g; }

    SymbolTablePtr symbols() const { return symbols_; }
    const std::vector<GeneratorDecl>& generators() const { return symbols_->gens; }
    const std::vector<std::string>& centrals() const { return symbols_->centrals; }
    std::size_t num_gens() const { return symbols_->gens.size(); }
    const GeneratorDecl& decl(std::uint32_t g) const { return symbols_->gens.at(g); }

    std::uint32_t add_generator(const std::string& name, bool odd, const Rational& weight) {
        check_fresh(name);
        mutable_symbols().gens.push_back({name, odd, weight});
        finalized_ = false;
        return static_cast<std::uint32_t>(symbols_->gens.size() - 1);
    }
    std::uint32_t add_central(const std::string& name) {
        check_fresh(name);
        mutable_symbols().centrals.push_back(name);
        return static_cast<std::uint32_t>(symbols_->centrals.size() - 1);
    }

    std::uint32_t gen_index(const std::string& n) const {
        auto g = symbols_->find_gen(n);
        if (!g) throw std::invalid_argument("unknown generator '" + n + "'");
        return *g;
    }
    std::uint32_t central_index(const std::string& n) const {
        auto z = symbols_->find_central(n);
        if (!z) throw std::invalid_argument("unknown central symbol '" + n + "'");
        return *z;
    }
    RElem gen(const std::string& n, unsigned tpow = 0, const Scalar& c = 1) const {
        return RElem::gen(symbols_, gen_index(n), tpow, c);
    }
    RElem central(const std::string& n, const Scalar& c = 1) const {
        return RElem::central(symbols_, central_index(n), c);
    }
    RElem zero() const { return RElem(symbols_); }
    // Element by name: generator or central symbol.
    RElem symbol(const std::string& n) const {
        if (symbols_->find_gen(n)) return gen(n);
        return central(n);
    }

    // Polynomial helpers for building tables: c * x * l^(t).
    LambdaPoly lam(const RElem& x, unsigned t = 0) const { return LambdaPoly::power(Var::l, t, x); }

    void set_bracket(const std::string& a, const std::string& b, const LambdaPoly& p) {
        set_bracket(gen_index(a), gen_index(b), p);
    }
    void set_bracket(std::uint32_t a, std::uint32_t b, const LambdaPoly& p) {
        table_[{a, b}] = p;
        declared_.insert({a, b});
        finalized_ = false;
    }

    // Fills every ordered pair: opposite orientation when only one side was
    // declared, zero when neither was.
    void finalize() {
        synthesized_.clear();
        defaulted_.clear();
        std::uint32_t n = static_cast<std::uint32_t>(num_gens());
        for (std::uint32_t a = 0; a < n; ++a)
            for (std::uint32_t b = 0; b < n; ++b) {
                if (declared_.count({a, b})) continue;
                if (declared_.count({b, a})) {
                    synthesized_.push_back({a, b});
                } else {
                    table_[{a, b}] = LambdaPoly();
                    defaulted_.push_back({a, b});
                }
            }
        finalized_ = true;  // opposite_bracket reads the declared entries
        for (auto& pr : synthesized_)
            table_[pr] = opposite_bracket(*this, gen(decl(pr.first).name), gen(decl(pr.second).name));
        validate();
    }

    bool finalized() const { return finalized_; }
    const LambdaPoly& entry(std::uint32_t a, std::uint32_t b) const {
        if (!finalized_) throw std::logic_error("presentation '" + name_ + "' used before finalize()");
        auto it = table_.find({a, b});
        if (it == table_.end()) throw std::invalid_argument("generator pair missing from table");
        return it->second;
    }
    bool is_declared(std::uint32_t a, std::uint32_t b) const { return declared_.count({a, b}) > 0; }
    const std::vector<Pair>& synthesized() const { return synthesized_; }
    const std::vector<Pair>& defaulted() const { return defaulted_; }

    // Build parameters echoed into reports (name=value text).
    std::map<std::string, std::string>& params() { return params_; }
    const std::map<std::string, std::string>& params() const { return params_; }

    // Substitute rationals for parameters in every table entry.
    VLiePresentation specialized(const std::map<std::string, Scalar>& values) const {
        VLiePresentation r = *this;
        for (auto& [k, p] : r.table_) p = p.map_coefficients([&](const RElem& x) { return x.substitute(values); });
        return r;
    }

    // Homogeneity of table entries: the coefficient of l^(t) in [a_l b] has
    // parity |a|+|b| and, when graded, weight h_a + h_b - t - 1.
    void validate() const {
        for (auto& [pr, p] : table_) validate_entry(pr.first, pr.second, p);
    }
    void validate_entry(std::uint32_t a, std::uint32_t b, const LambdaPoly& p) const {
        const auto& A = decl(a);
        const auto& B = decl(b);
        for (auto& [e, c] : p.terms()) {
            for (std::size_t i = 1; i < kNumVars; ++i)
                if (e[i]) throw std::invalid_argument("bracket table entry uses a variable other than l");
            auto par = c.parity();
            if (!par || *par != (A.odd != B.odd))
                throw std::invalid_argument("weight/parity inconsistency in bracket " + A.name + " " + B.name +
                                            ": parity of " + c.to_string());
            if (graded_) {
                Rational want = A.weight + B.weight - e[0] - 1;
                for (auto& [key, s] : c.gen_terms())
                    if (decl(key.first).weight + key.second != want)
                        throw std::invalid_argument("weight/parity inconsistency in bracket " + A.name + " " +
                                                    B.name + ": weight of " + c.to_string());
                if (!c.central_terms().empty() && want != 0)
                    throw std::invalid_argument("weight/parity inconsistency in bracket " + A.name + " " + B.name +
                                                ": central term at weight " + want.get_str());
            }
        }
    }

private:
    SymbolTable& mutable_symbols() {
        // copy-on-write so RElems built earlier keep a consistent table
        auto fresh = std::make_shared<SymbolTable>(*symbols_);
        symbols_ = fresh;
        return *fresh;
    }
    void check_fresh(const std::string& n) const {
        if (symbols_->find_gen(n) || symbols_->find_central(n))
            throw std::invalid_argument("duplicate symbol '" + n + "'");
    }

    std::string name_;
    bool graded_ = true;
    bool finalized_ = false;
    std::shared_ptr<SymbolTable> symbols_;
    std::map<Pair, LambdaPoly> table_;
    std::set<Pair> declared_;
    std::vector<Pair> synthesized_, defaulted_;
    std::map<std::string, std::string> params_;
};

inline int zeta(bool a_odd, bool b_odd) { return (a_odd && b_odd) ? -1 : 1; }

inline bool parity_of(const RElem& x) {
    auto p = x.parity();
    if (!p) throw std::invalid_argument("element of mixed parity: " + x.to_string());
    return *p;
}

// Rename the table variable l to v.
inline LambdaPoly rename_lambda(const LambdaPoly& p, Var v) {
    if (v == Var::l) return p;
    LambdaPoly r;
    for (auto& [e, c] : p.terms()) {
        Exps f{};
        f[static_cast<std::size_t>(v)] = e[0];
        r.add_term(f, c);
    }
    return r;
}

// [x_v y] by bilinear extension of the table with
//   [T^(j)a_v b] = (-1)^j v^(j) [a_v b],  [a_v T^(k)b] = (T+v)^(k) [a_v b].
inline LambdaPoly bracket(const VLiePresentation& R, const RElem& a, const RElem& b, Var v) {
    LambdaPoly out;
    Exps unit{};
    for (auto& [ka, ca] : a.gen_terms()) {
        for (auto& [kb, cb] : b.gen_terms()) {
            const LambdaPoly& base = R.entry(ka.first, kb.first);
            if (base.is_zero()) continue;
            LambdaPoly p = rename_lambda(base, v);
            if (kb.second > 0) {
                LambdaPoly q;
                for (unsigned i = 0; i <= kb.second; ++i) {
                    Exps e = unit;
                    e[static_cast<std::size_t>(v)] = static_cast<std::uint16_t>(kb.second - i);
                    q += p.map_coefficients([&](const RElem& x) { return x.T(i); }).times_monomial(e, 1);
                }
                p = std::move(q);
            }
            Exps e = unit;
            e[static_cast<std::size_t>(v)] = static_cast<std::uint16_t>(ka.second);
            out += p.times_monomial(e, Scalar(sign_pow(ka.second)) * ca * cb);
        }
    }
    return out;
}

// -zeta [b_{-v-T} a]; equals [a_v b] exactly when skew-symmetry holds.
inline LambdaPoly opposite_bracket(const VLiePresentation& R, const RElem& a, const RElem& b, Var v) {
    LambdaPoly p = bracket(R, b, a, v);
    LinearForm f = -LinearForm::var(v) - LinearForm::T();
    return p.substitute(v, f).scaled(Scalar(-zeta(parity_of(a), parity_of(b))));
}

// [P_v Q] for polynomials with element coefficients; the formal variables are
// central for the bracket, so monomials simply multiply.
inline LambdaPoly bracket_poly(const VLiePresentation& R, const LambdaPoly& P, const LambdaPoly& Q, Var v) {
    LambdaPoly out;
    for (auto& [ep, x] : P.terms())
        for (auto& [eq, y] : Q.terms()) {
            LambdaPoly b = bracket(R, x, y, v);
            if (b.is_zero()) continue;
            out += b.times_monomial(ep, 1).times_monomial(eq, 1);
        }
    return out;
}

// Skew-symmetry residual [a_l b] + zeta [b_{-l-T} a].
inline LambdaPoly skew_residual(const VLiePresentation& R, const RElem& a, const RElem& b) {
    return bracket(R, a, b) - opposite_bracket(R, a, b);
}

// Residual of [[a_l b]_m c] = [a_l [b_{m-l} c]] - zeta [b_{m-l} [a_l c]].
inline LambdaPoly jacobi_residual(const VLiePresentation& R, const RElem& a, const RElem& b, const RElem& c) {
    int z = zeta(parity_of(a), parity_of(b));
    LambdaPoly ab = bracket(R, a, b, Var::l);
    LambdaPoly lhs = bracket_poly(R, ab, LambdaPoly(c), Var::m);
    LinearForm m_minus_l = LinearForm::var(Var::m) - LinearForm::var(Var::l);
    LambdaPoly bc = bracket(R, b, c, Var::n).substitute(Var::n, m_minus_l);
    LambdaPoly r1 = bracket_poly(R, LambdaPoly(a), bc, Var::l);
    LambdaPoly ac = bracket(R, a, c, Var::l);
    LambdaPoly r2 = bracket_poly(R, LambdaPoly(b), ac, Var::n).substitute(Var::n, m_minus_l);
    return lhs - r1 + r2.scaled(z);
}

// Same identity in the shifted form [[a_l b]_{l+m} c] = [a_l [b_m c]] - zeta [b_m [a_l c]].
inline LambdaPoly jacobi_residual_shifted(const VLiePresentation& R, const RElem& a, const RElem& b,
                                          const RElem& c) {
    int z = zeta(parity_of(a), parity_of(b));
    LambdaPoly ab = bracket(R, a, b, Var::l);
    LambdaPoly lhs = bracket_poly(R, ab, LambdaPoly(c), Var::n)
                         .substitute(Var::n, LinearForm::var(Var::l) + LinearForm::var(Var::m));
    LambdaPoly r1 = bracket_poly(R, LambdaPoly(a), bracket(R, b, c, Var::m), Var::l);
    LambdaPoly r2 = bracket_poly(R, LambdaPoly(b), bracket(R, a, c, Var::l), Var::m);
    return lhs - r1 + r2.scaled(z);
}

struct IdentityOptions {
    bool exhaustive = false;     // also sample T-decorated elements
    unsigned samples = 120;      // sampled triples in exhaustive mode
    std::uint32_t seed = 20240601;
};

inline Report check_identities(const VLiePresentation& R, const IdentityOptions& opt = {}) {
    Report rep;
    std::uint32_t n = static_cast<std::uint32_t>(R.num_gens());
    std::vector<RElem> g;
    for (std::uint32_t i = 0; i < n; ++i) g.push_back(RElem::gen(R.symbols(), i));
    auto nm = [&](std::uint32_t i) { return R.decl(i).name; };

    bool skew_ok = true;
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = a; b < n; ++b) {
            LambdaPoly res = skew_residual(R, g[a], g[b]);
            skew_ok = skew_ok && res.is_zero();
            rep.add("skew " + nm(a) + " " + nm(b), res.is_zero(), res.is_zero() ? "" : res.to_string());
        }

    std::map<std::vector<std::uint32_t>, std::vector<bool>> orbit;
    bool conventions_agree = true;
    std::string convention_witness;
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b)
            for (std::uint32_t c = 0; c < n; ++c) {
                LambdaPoly res = jacobi_residual(R, g[a], g[b], g[c]);
                LambdaPoly shifted = jacobi_residual_shifted(R, g[a], g[b], g[c]);
                LambdaPoly moved = res.substitute(Var::m, LinearForm::var(Var::m) + LinearForm::var(Var::l));
                if (moved != shifted && conventions_agree) {
                    conventions_agree = false;
                    convention_witness = nm(a) + " " + nm(b) + " " + nm(c);
                }
                rep.add("jacobi " + nm(a) + " " + nm(b) + " " + nm(c), res.is_zero(),
                        res.is_zero() ? "" : res.to_string());
                std::vector<std::uint32_t> key{a, b, c};
                std::sort(key.begin(), key.end());
                orbit[key].push_back(res.is_zero());
            }
    rep.add("jacobi-conventions-agree", conventions_agree, convention_witness);

    if (skew_ok) {
        bool s3 = true;
        std::string w;
        for (auto& [key, outcomes] : orbit) {
            bool all = std::all_of(outcomes.begin(), outcomes.end(), [](bool x) { return x; });
            bool none = std::none_of(outcomes.begin(), outcomes.end(), [](bool x) { return x; });
            if (!all && !none && s3) {
                s3 = false;
                w = nm(key[0]) + " " + nm(key[1]) + " " + nm(key[2]);
            }
        }
        rep.add("s3-symmetry", s3, w);
    }

    if (opt.exhaustive && n > 0) {
        // T-decorated and mixed elements; identities must persist on all of K[T]S.
        std::vector<RElem> pool;
        for (std::uint32_t i = 0; i < n; ++i)
            for (unsigned j = 0; j <= 2; ++j) pool.push_back(g[i].T(j));
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t k = i + 1; k < n; ++k)
                if (R.decl(i).odd == R.decl(k).odd) pool.push_back(g[i] + g[k].T(1) * Scalar(2));
        std::mt19937 rng(opt.seed);
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        bool ok_skew = true, ok_jac = true;
        std::string ws, wj;
        for (unsigned s = 0; s < opt.samples; ++s) {
            const RElem &x = pool[pick(rng)], &y = pool[pick(rng)], &z = pool[pick(rng)];
            LambdaPoly rs = skew_residual(R, x, y);
            if (!rs.is_zero() && ok_skew) {
                ok_skew = false;
                ws = x.to_string() + " , " + y.to_string() + ": " + rs.to_string();
            }
            LambdaPoly rj = jacobi_residual(R, x, y, z);
            if (!rj.is_zero() && ok_jac) {
                ok_jac = false;
                wj = x.to_string() + " , " + y.to_string() + " , " + z.to_string() + ": " + rj.to_string();
            }
        }
        rep.add("sampled-skew", ok_skew, ws);
        rep.add("sampled-jacobi", ok_jac, wj);
    }
    return rep;
}

// Nonzero a_t b, ascending in t.
inline std::vector<std::pair<unsigned, RElem>> tth_products(const VLiePresentation& R, const RElem& a,
                                                            const RElem& b) {
    std::vector<std::pair<unsigned, RElem>> out;
    LambdaPoly p = bracket(R, a, b);
    for (auto& [e, c] : p.terms()) out.emplace_back(e[0], c);
    return out;
}

// [a,b]_lie = integral from -T to 0 of [a_l b] dl = sum (-1)^i T^(i+1)(a_i b).
inline RElem lie_bracket(const VLiePresentation& R, const RElem& a, const RElem& b) {
    LambdaPoly p = formal_integral(bracket(R, a, b), Var::l, -LinearForm::T(), LinearForm::zero());
    RElem r = p.coeff(Exps{});
    if (!r.table()) r = R.zero() + r;
    return r;
}

inline unsigned locality_order(const VLiePresentation& R, const RElem& a, const RElem& b) {
    return static_cast<unsigned>(bracket(R, a, b).degree(Var::l) + 1);
}

// Morphism given on generators and central symbols (by name).
class ElementMap {
public:
    ElementMap(const VLiePresentation& src, const VLiePresentation& dst, std::map<std::string, RElem> images)
        : src_(src), dst_(dst), images_(std::move(images)) {
        for (auto& g : src.generators())
            if (!images_.count(g.name)) throw std::invalid_argument("map target malformed: no image for " + g.name);
        for (auto& z : src.centrals()) {
            auto it = images_.find(z);
            if (it == images_.end()) throw std::invalid_argument("map target malformed: no image for " + z);
            if (!it->second.is_central())
                throw std::invalid_argument("map target malformed: central " + z + " must map to a central element");
        }
        for (auto& g : src.generators()) {
            const RElem& im = images_.at(g.name);
            if (im.is_zero()) continue;
            auto p = im.parity();
            if (!p || *p != g.odd) throw std::invalid_argument("map target malformed: parity of image of " + g.name);
        }
    }
    RElem operator()(const RElem& x) const {
        RElem r = dst_.zero();
        for (auto& [key, c] : x.gen_terms()) r += images_.at(src_.decl(key.first).name).T(key.second) * c;
        for (auto& [z, c] : x.central_terms()) r += images_.at(src_.centrals().at(z)) * c;
        return r;
    }
    LambdaPoly operator()(const LambdaPoly& p) const {
        return p.map_coefficients([&](const RElem& x) { return (*this)(x); });
    }

private:
    const VLiePresentation& src_;
    const VLiePresentation& dst_;
    std::map<std::string, RElem> images_;
};

inline Report check_morphism(const VLiePresentation& R, const VLiePresentation& R2,
                             const std::map<std::string, RElem>& images) {
    ElementMap phi(R, R2, images);
    Report rep;
    std::uint32_t n = static_cast<std::uint32_t>(R.num_gens());
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b) {
            RElem x = RElem::gen(R.symbols(), a), y = RElem::gen(R.symbols(), b);
            LambdaPoly lhs = phi(bracket(R, x, y));
            LambdaPoly rhs = bracket(R2, phi(x), phi(y));
            LambdaPoly res = lhs - rhs;
            rep.add("morphism " + R.decl(a).name + " " + R.decl(b).name, res.is_zero(),
                    res.is_zero() ? "" : res.to_string());
        }
    return rep;
}

}  // namespace vla
