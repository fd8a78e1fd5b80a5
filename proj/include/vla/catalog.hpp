#pragma once

#include "vla/vlie.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vla {

// Finite-dimensional Lie algebra (or commutative algebra, for the Frobenius
// construction) with a bilinear form, all over Q[params].
struct AlgebraData {
    std::vector<std::string> basis;
    // product[i][j] = coefficients of e_i e_j (or [e_i, e_j]) in the basis
    std::vector<std::vector<std::vector<Scalar>>> product;
    std::vector<std::vector<Scalar>> form;

    std::size_t dim() const { return basis.size(); }

    static AlgebraData zero(std::vector<std::string> names) {
        AlgebraData d;
        std::size_t n = names.size();
        d.basis = std::move(names);
        d.product.assign(n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n)));
        d.form.assign(n, std::vector<Scalar>(n));
        return d;
    }
    std::size_t index(const std::string& n) const {
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i] == n) return i;
        throw std::invalid_argument("unknown basis element '" + n + "'");
    }
    // x, y given as coefficient vectors
    std::vector<Scalar> mul(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const {
        std::vector<Scalar> r(dim());
        for (std::size_t i = 0; i < dim(); ++i) {
            if (x[i].is_zero()) continue;
            for (std::size_t j = 0; j < dim(); ++j) {
                if (y[j].is_zero()) continue;
                Scalar c = x[i] * y[j];
                for (std::size_t k = 0; k < dim(); ++k)
                    if (!product[i][j][k].is_zero()) r[k] += c * product[i][j][k];
            }
        }
        return r;
    }
    Scalar pair(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const {
        Scalar s;
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j)
                if (!x[i].is_zero() && !y[j].is_zero()) s += x[i] * y[j] * form[i][j];
        return s;
    }
    std::vector<Scalar> unit(std::size_t i) const {
        std::vector<Scalar> v(dim());
        v[i] = 1;
        return v;
    }

    bool form_symmetric() const {
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j)
                if (form[i][j] != form[j][i]) return false;
        return true;
    }
    bool form_invariant() const {  // (xy, z) = (x, yz)
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j)
                for (std::size_t k = 0; k < dim(); ++k)
                    if (pair(mul(unit(i), unit(j)), unit(k)) != pair(unit(i), mul(unit(j), unit(k)))) return false;
        return true;
    }
    bool is_lie() const {
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j)
                for (std::size_t k = 0; k < dim(); ++k)
                    if (product[i][j][k] != -product[j][i][k]) return false;
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j)
                for (std::size_t k = 0; k < dim(); ++k) {
                    auto a = mul(unit(i), mul(unit(j), unit(k)));
                    auto b = mul(unit(j), mul(unit(k), unit(i)));
                    auto c = mul(unit(k), mul(unit(i), unit(j)));
                    for (std::size_t t = 0; t < dim(); ++t)
                        if (!(a[t] + b[t] + c[t]).is_zero()) return false;
                }
        return true;
    }
    bool is_commutative_associative() const {
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j)
                if (product[i][j] != product[j][i]) return false;
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j)
                for (std::size_t k = 0; k < dim(); ++k)
                    if (mul(mul(unit(i), unit(j)), unit(k)) != mul(unit(i), mul(unit(j), unit(k)))) return false;
        return true;
    }
};

namespace lie {

// sl2 with [h,e] = 2e, [h,f] = -2f, [e,f] = h and trace form (e,f) = 1, (h,h) = 2.
inline AlgebraData sl2() {
    AlgebraData d = AlgebraData::zero({"e", "h", "f"});
    auto set = [&](std::size_t i, std::size_t j, std::size_t k, long c) {
        d.product[i][j][k] = Scalar(c);
        d.product[j][i][k] = Scalar(-c);
    };
    set(1, 0, 0, 2);
    set(1, 2, 2, -2);
    set(0, 2, 1, 1);
    d.form[0][2] = d.form[2][0] = 1;
    d.form[1][1] = 2;
    return d;
}

// Abelian Lie algebra with identity form; rank 1 is named J.
inline AlgebraData abelian(std::size_t rank, const std::string& stem = "J") {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < rank; ++i) names.push_back(rank == 1 ? stem : stem + std::to_string(i + 1));
    AlgebraData d = AlgebraData::zero(names);
    for (std::size_t i = 0; i < rank; ++i) d.form[i][i] = 1;
    return d;
}

}  // namespace lie

namespace frob {

// Q^n with orthogonal idempotents e_i and (e_i, e_i) = 1/2; rank 1 is named L.
inline AlgebraData split(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back(n == 1 ? "L" : "e" + std::to_string(i + 1));
    AlgebraData d = AlgebraData::zero(names);
    for (std::size_t i = 0; i < n; ++i) {
        d.product[i][i][i] = 1;
        d.form[i][i] = Rational(1, 2);
    }
    return d;
}

}  // namespace frob

namespace catalog {

// [a_l L] and [L_l a] for a primary of weight h: (T + h l)a and ((h-1)T + h l)a.
inline void set_primary(VLiePresentation& R, const std::string& L, const std::string& a, const Rational& h) {
    RElem x = R.gen(a);
    R.set_bracket(L, a, R.lam(x.T()) + R.lam(x * Scalar(h), 1));
    R.set_bracket(a, L, R.lam(x.T() * Scalar(h - 1)) + R.lam(x * Scalar(h), 1));
}

inline void set_virasoro_pair(VLiePresentation& R, const std::string& L, const std::optional<std::string>& c) {
    RElem x = R.gen(L);
    LambdaPoly p = R.lam(x.T()) + R.lam(x * Scalar(2), 1);
    if (c) p += R.lam(R.central(*c, Rational(1, 2)), 3);
    R.set_bracket(L, L, p);
}

inline VLiePresentation witt() {
    VLiePresentation R("witt");
    R.add_generator("L", false, 2);
    set_virasoro_pair(R, "L", std::nullopt);
    R.finalize();
    return R;
}

inline VLiePresentation virasoro() {
    VLiePresentation R("virasoro");
    R.add_generator("L", false, 2);
    R.add_central("c");
    set_virasoro_pair(R, "L", std::string("c"));
    R.finalize();
    return R;
}

// Affine vertex Lie algebra: [a_l b] = [a,b] + (a,b) k l, generators of weight 1.
inline VLiePresentation affine(const AlgebraData& g, const std::string& name = "affine") {
    if (!g.is_lie()) throw std::invalid_argument("non-Lie structure constants");
    if (!g.form_symmetric() || !g.form_invariant()) throw std::invalid_argument("non-invariant form");
    VLiePresentation R(name);
    for (auto& b : g.basis) R.add_generator(b, false, 1);
    R.add_central("k");
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = 0; j < g.dim(); ++j) {
            LambdaPoly p;
            for (std::size_t k = 0; k < g.dim(); ++k)
                if (!g.product[i][j][k].is_zero()) p += R.lam(R.gen(g.basis[k]) * g.product[i][j][k]);
            if (!g.form[i][j].is_zero()) p += R.lam(R.central("k", g.form[i][j]), 1);
            R.set_bracket(g.basis[i], g.basis[j], p);
        }
    R.finalize();
    return R;
}

inline VLiePresentation heisenberg(const AlgebraData& form_only) {
    for (auto& row : form_only.product)
        for (auto& col : row)
            for (auto& c : col)
                if (!c.is_zero()) throw std::invalid_argument("heisenberg takes an abelian algebra");
    return affine(form_only, "heisenberg");
}

// Clifford: odd generators of weight 1/2 with [a_l b] = (a,b) k.
inline VLiePresentation clifford(const AlgebraData& form_only) {
    if (!form_only.form_symmetric()) throw std::invalid_argument("non-invariant form: Clifford form must be symmetric");
    VLiePresentation R("clifford");
    for (auto& b : form_only.basis) R.add_generator(b, true, Rational(1, 2));
    R.add_central("k");
    for (std::size_t i = 0; i < form_only.dim(); ++i)
        for (std::size_t j = 0; j < form_only.dim(); ++j)
            R.set_bracket(form_only.basis[i], form_only.basis[j],
                          form_only.form[i][j].is_zero() ? LambdaPoly()
                                                         : R.lam(R.central("k", form_only.form[i][j])));
    R.finalize();
    return R;
}

inline VLiePresentation neveu_schwarz() {
    VLiePresentation R("neveu_schwarz");
    R.add_generator("L", false, 2);
    R.add_generator("G", true, Rational(3, 2));
    R.add_central("c");
    set_virasoro_pair(R, "L", std::string("c"));
    set_primary(R, "L", "G", Rational(3, 2));
    R.set_bracket("G", "G", R.lam(R.gen("L") * Scalar(2)) + R.lam(R.central("c", Rational(2, 3)), 2));
    R.finalize();
    return R;
}

// N=2: L, Gp, Gm (odd, 3/2), J (1); Gp_l Gm = 2L + (T + 2l)J + (2c/3) l^(2).
inline VLiePresentation n2() {
    VLiePresentation R("n2");
    R.add_generator("L", false, 2);
    R.add_generator("Gp", true, Rational(3, 2));
    R.add_generator("Gm", true, Rational(3, 2));
    R.add_generator("J", false, 1);
    R.add_central("c");
    set_virasoro_pair(R, "L", std::string("c"));
    set_primary(R, "L", "Gp", Rational(3, 2));
    set_primary(R, "L", "Gm", Rational(3, 2));
    set_primary(R, "L", "J", 1);
    RElem L = R.gen("L"), J = R.gen("J"), Gp = R.gen("Gp"), Gm = R.gen("Gm");
    R.set_bracket("J", "J", R.lam(R.central("c", Rational(1, 3)), 1));
    R.set_bracket("J", "Gp", R.lam(Gp));
    R.set_bracket("Gp", "J", R.lam(-Gp));
    R.set_bracket("J", "Gm", R.lam(-Gm));
    R.set_bracket("Gm", "J", R.lam(Gm));
    LambdaPoly top = R.lam(L * Scalar(2)) + R.lam(R.central("c", Rational(2, 3)), 2);
    R.set_bracket("Gp", "Gm", top + R.lam(J.T()) + R.lam(J * Scalar(2), 1));
    R.set_bracket("Gm", "Gp", top - R.lam(J.T()) - R.lam(J * Scalar(2), 1));
    R.set_bracket("Gp", "Gp", LambdaPoly());
    R.set_bracket("Gm", "Gm", LambdaPoly());
    R.finalize();
    return R;
}

// Topological Virasoro: L (2), Q (odd, 1), G (odd, 2), J (1), central d.
inline VLiePresentation topological() {
    VLiePresentation R("topological");
    R.add_generator("L", false, 2);
    R.add_generator("Q", true, 1);
    R.add_generator("G", true, 2);
    R.add_generator("J", false, 1);
    R.add_central("d");
    RElem L = R.gen("L"), Q = R.gen("Q"), G = R.gen("G"), J = R.gen("J");
    RElem d = R.central("d");
    set_virasoro_pair(R, "L", std::nullopt);
    set_primary(R, "L", "Q", 1);
    set_primary(R, "L", "G", 2);
    R.set_bracket("L", "J", R.lam(J.T()) + R.lam(J, 1) - R.lam(d, 2));
    R.set_bracket("J", "L", R.lam(J, 1) + R.lam(d, 2));
    R.set_bracket("J", "J", R.lam(d, 1));
    R.set_bracket("J", "Q", R.lam(Q));
    R.set_bracket("Q", "J", R.lam(-Q));
    R.set_bracket("J", "G", R.lam(-G));
    R.set_bracket("G", "J", R.lam(G));
    R.set_bracket("Q", "G", R.lam(L) + R.lam(J, 1) + R.lam(d, 2));
    R.set_bracket("G", "Q", R.lam(L) - R.lam(J.T()) - R.lam(J, 1) + R.lam(d, 2));
    R.set_bracket("Q", "Q", LambdaPoly());
    R.set_bracket("G", "G", LambdaPoly());
    R.finalize();
    return R;
}

// Witt acting on the loop algebra of g: L_l a = (T + l)a, a_l b = [a,b].
inline VLiePresentation witt_loop_semidirect(const AlgebraData& g) {
    if (!g.is_lie()) throw std::invalid_argument("non-Lie structure constants");
    VLiePresentation R("witt_loop_semidirect");
    R.add_generator("L", false, 2);
    for (auto& b : g.basis) R.add_generator(b, false, 1);
    set_virasoro_pair(R, "L", std::nullopt);
    for (auto& b : g.basis) set_primary(R, "L", b, 1);
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = 0; j < g.dim(); ++j) {
            LambdaPoly p;
            for (std::size_t k = 0; k < g.dim(); ++k)
                if (!g.product[i][j][k].is_zero()) p += R.lam(R.gen(g.basis[k]) * g.product[i][j][k]);
            R.set_bracket(g.basis[i], g.basis[j], p);
        }
    R.finalize();
    return R;
}

// Frobenius construction: [a_l b] = (T + 2l)(ab) + (a,b) c l^(3).
inline VLiePresentation frobenius(const AlgebraData& C) {
    if (!C.is_commutative_associative()) throw std::invalid_argument("Frobenius input must be commutative and associative");
    if (!C.form_symmetric() || !C.form_invariant()) throw std::invalid_argument("non-invariant form");
    VLiePresentation R("frobenius");
    for (auto& b : C.basis) R.add_generator(b, false, 2);
    R.add_central("c");
    for (std::size_t i = 0; i < C.dim(); ++i)
        for (std::size_t j = 0; j < C.dim(); ++j) {
            RElem ab = R.zero();
            for (std::size_t k = 0; k < C.dim(); ++k)
                if (!C.product[i][j][k].is_zero()) ab += R.gen(C.basis[k]) * C.product[i][j][k];
            LambdaPoly p = R.lam(ab.T()) + R.lam(ab * Scalar(2), 1);
            if (!C.form[i][j].is_zero()) p += R.lam(R.central("c", C.form[i][j]), 3);
            R.set_bracket(C.basis[i], C.basis[j], p);
        }
    R.finalize();
    return R;
}

// Move an element of one presentation into another by symbol renaming.
inline RElem rebase(const RElem& x, const VLiePresentation& dst, const std::vector<std::uint32_t>& gen_map,
                    const std::vector<std::uint32_t>& central_map) {
    RElem r = dst.zero();
    for (auto& [key, c] : x.gen_terms()) r += RElem::gen(dst.symbols(), gen_map.at(key.first), key.second, c);
    for (auto& [z, c] : x.central_terms()) r += RElem::central(dst.symbols(), central_map.at(z), c);
    return r;
}

// Disjoint union with zero cross brackets; symbols get suffixes "1" and "2".
inline VLiePresentation product(const VLiePresentation& A, const VLiePresentation& B) {
    VLiePresentation R(A.name() + "x" + B.name());
    R.set_graded(A.graded() && B.graded());
    std::vector<std::uint32_t> ga, gb, za, zb;
    for (auto& g : A.generators()) ga.push_back(R.add_generator(g.name + "1", g.odd, g.weight));
    for (auto& g : B.generators()) gb.push_back(R.add_generator(g.name + "2", g.odd, g.weight));
    for (auto& z : A.centrals()) za.push_back(R.add_central(z + "1"));
    for (auto& z : B.centrals()) zb.push_back(R.add_central(z + "2"));
    auto copy = [&](const VLiePresentation& S, const std::vector<std::uint32_t>& gm,
                    const std::vector<std::uint32_t>& zm) {
        for (std::uint32_t a = 0; a < S.num_gens(); ++a)
            for (std::uint32_t b = 0; b < S.num_gens(); ++b)
                R.set_bracket(gm[a], gm[b],
                              S.entry(a, b).map_coefficients([&](const RElem& x) { return rebase(x, R, gm, zm); }));
    };
    copy(A, ga, za);
    copy(B, gb, zb);
    R.finalize();
    return R;
}

inline AlgebraData lie_by_name(const std::string& n) {
    if (n == "sl2") return lie::sl2();
    if (n.rfind("abelian", 0) == 0) {
        std::size_t r = n.size() > 7 ? std::stoul(n.substr(7)) : 1;
        return lie::abelian(r);
    }
    throw std::invalid_argument("unknown Lie algebra '" + n + "' (use sl2 or abelianN)");
}

inline std::vector<std::string> builtin_names() {
    return {"witt", "virasoro", "heisenberg", "clifford", "affine", "neveu_schwarz", "n2", "topological",
            "witt_loop_semidirect", "frobenius"};
}

// Named builds with string parameters:
//   heisenberg/clifford: rank=N;  affine: lie=sl2|abelianN;
//   witt_loop_semidirect: lie=abelianN|sl2;  frobenius: split=N (Q^N).
inline VLiePresentation build(const std::string& name, const std::map<std::string, std::string>& params = {}) {
    auto get = [&](const std::string& key, const std::string& dflt) {
        auto it = params.find(key);
        return it == params.end() ? dflt : it->second;
    };
    auto allow = [&](std::initializer_list<const char*> keys) {
        for (auto& [k, v] : params) {
            bool ok = false;
            for (auto* a : keys) ok = ok || k == a;
            if (!ok) throw std::invalid_argument("unknown parameter '" + k + "' for " + name);
        }
    };
    VLiePresentation R;
    if (name == "witt") {
        allow({});
        R = witt();
    } else if (name == "virasoro") {
        allow({});
        R = virasoro();
    } else if (name == "heisenberg") {
        allow({"rank"});
        R = heisenberg(lie::abelian(std::stoul(get("rank", "1"))));
    } else if (name == "clifford") {
        allow({"rank"});
        R = clifford(lie::abelian(std::stoul(get("rank", "1")), "psi"));
    } else if (name == "affine") {
        allow({"lie"});
        R = affine(lie_by_name(get("lie", "sl2")));
    } else if (name == "neveu_schwarz") {
        allow({});
        R = neveu_schwarz();
    } else if (name == "n2") {
        allow({});
        R = n2();
    } else if (name == "topological") {
        allow({});
        R = topological();
    } else if (name == "witt_loop_semidirect") {
        allow({"lie"});
        R = witt_loop_semidirect(lie_by_name(get("lie", "abelian1")));
    } else if (name == "frobenius") {
        allow({"split"});
        R = frobenius(frob::split(std::stoul(get("split", "1"))));
    } else {
        throw std::invalid_argument("unknown catalog algebra '" + name + "'");
    }
    R.params() = params;
    return R;
}

// ---- conformal structure -------------------------------------------------

enum class PrimaryStatus { primary, quasi_primary, neither };
inline const char* primary_status_name(PrimaryStatus s) {
    switch (s) {
        case PrimaryStatus::primary: return "primary";
        case PrimaryStatus::quasi_primary: return "quasi-primary";
        default: return "neither";
    }
}

struct ConformalAnalysis {
    bool is_virasoro = false;
    bool is_conformal = false;
    RElem central_charge;  // c with [L_l L] = (T + 2l)L + (c/2) l^(3)
    std::vector<std::pair<std::string, PrimaryStatus>> status;  // per generator, then "<L>" itself
    Report report;
};

// Status of a homogeneous element a of weight h with respect to L.
inline PrimaryStatus primary_status(const VLiePresentation& R, const RElem& L, const RElem& a, const Rational& h) {
    LambdaPoly p = bracket(R, L, a);
    LambdaPoly expect = R.lam(a.T()) + R.lam(a * Scalar(h), 1);
    if (p == expect) return PrimaryStatus::primary;
    if (p.coeff(Var::l, 2).is_zero()) return PrimaryStatus::quasi_primary;
    return PrimaryStatus::neither;
}

// Virasoro shape: [L_l L] = T L + 2 L l + (c/2) l^(3) with c central.
inline std::optional<RElem> virasoro_central_charge(const VLiePresentation& R, const RElem& L) {
    auto par = L.parity();
    if (!par || *par) return std::nullopt;
    LambdaPoly p = bracket(R, L, L);
    RElem half_c = p.coeff(Var::l, 3);
    if (!half_c.is_central()) return std::nullopt;
    LambdaPoly expect = R.lam(L.T()) + R.lam(L * Scalar(2), 1) + R.lam(half_c, 3);
    if (p != expect) return std::nullopt;
    return R.zero() + half_c * Scalar(2);
}

inline ConformalAnalysis conformal_analysis(const VLiePresentation& R, const RElem& L) {
    if (!R.graded()) throw std::invalid_argument("ungraded presentation");
    ConformalAnalysis out;
    auto c = virasoro_central_charge(R, L);
    out.is_virasoro = c.has_value();
    out.central_charge = c.value_or(R.zero());
    out.report.add("virasoro-vector", out.is_virasoro, bracket(R, L, L).to_string());
    if (out.is_virasoro) out.report.info("central-charge", out.central_charge.to_string());
    bool conformal = out.is_virasoro;
    for (std::uint32_t g = 0; g < R.num_gens(); ++g) {
        const auto& D = R.decl(g);
        RElem a = RElem::gen(R.symbols(), g);
        LambdaPoly p = bracket(R, L, a);
        bool l0 = p.coeff(Var::l, 0) == a.T();
        bool l1 = p.coeff(Var::l, 1) == a * Scalar(D.weight);
        conformal = conformal && l0 && l1;
        out.report.add("L_(0)=T on " + D.name, l0, p.coeff(Var::l, 0).to_string());
        out.report.add("L_(1)=weight on " + D.name, l1, p.coeff(Var::l, 1).to_string());
        PrimaryStatus st = primary_status(R, L, a, D.weight);
        out.status.emplace_back(D.name, st);
        out.report.info("status " + D.name, primary_status_name(st));
    }
    if (out.is_virasoro && L.gen_terms().size() + L.central_terms().size() > 1) {
        PrimaryStatus st = primary_status(R, L, L, 2);
        out.status.emplace_back(L.to_string(), st);
        out.report.info("status " + L.to_string(), primary_status_name(st));
    }
    out.is_conformal = conformal;
    out.report.add("conformal-vector", conformal);
    return out;
}

struct GriessResult {
    std::vector<std::string> basis;                   // weight-2 generators
    std::vector<std::vector<RElem>> product;          // a_(1) b
    std::vector<std::vector<RElem>> form;             // a_(3) b (central)
    std::vector<RElem> virasoro_vectors;              // L = 2e with e idempotent
    Report report;
};

// Griess algebra on the weight-2 generators, with the weight-indexed
// product a_0 b = a_(1) b and form a_2 b = a_(3) b. Virasoro vectors are
// searched among 0/1-combinations of the basis.
inline GriessResult griess(const VLiePresentation& R) {
    if (!R.graded()) throw std::invalid_argument("not CFT-type: ungraded presentation");
    for (auto& g : R.generators())
        if (g.weight <= 0) throw std::invalid_argument("not CFT-type: generator " + g.name + " of weight <= 0");
    GriessResult out;
    std::vector<std::uint32_t> idx;
    for (std::uint32_t g = 0; g < R.num_gens(); ++g)
        if (R.decl(g).weight == 2 && !R.decl(g).odd) {
            idx.push_back(g);
            out.basis.push_back(R.decl(g).name);
        }
    for (auto a : idx) {
        std::vector<RElem> prow, frow;
        for (auto b : idx) {
            LambdaPoly p = bracket(R, RElem::gen(R.symbols(), a), RElem::gen(R.symbols(), b));
            prow.push_back(R.zero() + p.coeff(Var::l, 1));
            frow.push_back(R.zero() + p.coeff(Var::l, 3));
            out.report.info("product " + R.decl(a).name + " " + R.decl(b).name, prow.back().to_string());
            out.report.info("form " + R.decl(a).name + " " + R.decl(b).name, frow.back().to_string());
        }
        out.product.push_back(prow);
        out.form.push_back(frow);
    }
    if (idx.size() > 16) throw std::invalid_argument("griess: too many weight-2 generators for idempotent search");
    for (std::uint32_t mask = 1; mask < (1u << idx.size()); ++mask) {
        RElem L = R.zero();
        for (std::size_t i = 0; i < idx.size(); ++i)
            if (mask & (1u << i)) L += RElem::gen(R.symbols(), idx[i]);
        LambdaPoly p = bracket(R, L, L);
        if (p.coeff(Var::l, 1) != L * Scalar(2)) continue;
        out.virasoro_vectors.push_back(L);
        bool cross = virasoro_central_charge(R, L).has_value();
        out.report.add("virasoro-vector " + L.to_string(), cross, "idempotent " + (L * Scalar(Rational(1, 2))).to_string());
    }
    return out;
}

struct CosetResult {
    RElem coset;            // L - L'
    RElem central_charge;   // c_L - c_L'
    Report report;
};

inline CosetResult coset_conformal(const VLiePresentation& R, const RElem& L, const RElem& Lsub) {
    auto ca = conformal_analysis(R, L);
    if (!ca.is_conformal) throw std::invalid_argument("coset: L is not a conformal vector");
    auto csub = virasoro_central_charge(R, Lsub);
    if (!csub) throw std::invalid_argument("coset: L' is not a Virasoro vector");
    RElem l2 = bracket(R, L, Lsub).coeff(Var::l, 2);
    if (!l2.is_zero()) throw std::invalid_argument("coset: L' not quasi-primary (L_(2) L' = " + l2.to_string() + ")");
    CosetResult out;
    out.coset = L - Lsub;
    LambdaPoly comm = bracket(R, Lsub, out.coset);
    if (!comm.is_zero()) throw std::invalid_argument("coset: commutation failure, [L'_l (L - L')] = " + comm.to_string());
    out.central_charge = ca.central_charge - *csub;
    auto cc = virasoro_central_charge(R, out.coset);
    bool ok = cc && *cc == out.central_charge;
    out.report.add("coset-virasoro", ok, cc ? cc->to_string() : bracket(R, out.coset, out.coset).to_string());
    out.report.info("coset", out.coset.to_string());
    out.report.info("central-charge", out.central_charge.to_string());
    return out;
}

struct ChodosThornResult {
    RElem shifted;          // L + T J
    RElem central_charge;   // c_L - 12 k_J
    Report report;
};

inline ChodosThornResult chodos_thorn(const VLiePresentation& R, const RElem& L, const RElem& J) {
    LambdaPoly jj = bracket(R, J, J);
    RElem kJ = jj.coeff(Var::l, 1);
    if (!kJ.is_central() || jj != R.lam(kJ, 1)) throw std::invalid_argument("J not primary U(1): [J_l J] = " + jj.to_string());
    LambdaPoly lj = bracket(R, L, J);
    if (lj != R.lam(J.T()) + R.lam(J, 1)) throw std::invalid_argument("J not primary U(1): [L_l J] = " + lj.to_string());
    auto cL = virasoro_central_charge(R, L);
    if (!cL) throw std::invalid_argument("chodos-thorn: L is not a Virasoro vector");
    ChodosThornResult out;
    out.shifted = L + J.T();
    out.central_charge = *cL - kJ * Scalar(12);
    auto c2 = virasoro_central_charge(R, out.shifted);
    bool ok = c2 && *c2 == out.central_charge;
    out.report.add("shifted-virasoro", ok, c2 ? c2->to_string() : bracket(R, out.shifted, out.shifted).to_string());
    out.report.info("shifted", out.shifted.to_string());
    out.report.info("central-charge", out.central_charge.to_string());
    return out;
}

}  // namespace catalog
}  // namespace vla
