#include "vla/catalog.hpp"
#include "vla/vlie.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace vla;

namespace {

std::vector<VLiePresentation> all_builds() {
    std::vector<VLiePresentation> out;
    for (auto& n : catalog::builtin_names()) out.push_back(catalog::build(n));
    out.push_back(catalog::build("heisenberg", {{"rank", "2"}}));
    out.push_back(catalog::build("witt_loop_semidirect", {{"lie", "sl2"}}));
    out.push_back(catalog::build("frobenius", {{"split", "2"}}));
    return out;
}

// Random element of R: a few generators of one parity with small T-powers.
RElem random_element(const VLiePresentation& R, std::mt19937& rng, bool odd) {
    std::uniform_int_distribution<int> coef(-3, 3), tp(0, 2);
    RElem x = R.zero();
    for (std::uint32_t g = 0; g < R.num_gens(); ++g)
        if (R.decl(g).odd == odd) x += RElem::gen(R.symbols(), g, tp(rng), Scalar(coef(rng)));
    return x;
}

}  // namespace

TEST(RElem, DividedPowersOfT) {
    auto R = catalog::virasoro();
    RElem L = R.gen("L");
    EXPECT_EQ(L.T().T(), L.T(2) * Scalar(2));
    EXPECT_EQ(L.T(2).T(), L.T(3) * Scalar(3));
    EXPECT_TRUE(R.central("c").T().is_zero());
    EXPECT_EQ(L.T(2).weight(), Rational(4));
}

TEST(Bracket, VirasoroTable) {
    auto R = catalog::virasoro();
    RElem L = R.gen("L");
    LambdaPoly want = R.lam(L.T()) + R.lam(L * Scalar(2), 1) + R.lam(R.central("c", Rational(1, 2)), 3);
    EXPECT_EQ(bracket(R, L, L), want);
    EXPECT_EQ(bracket(R, L, L).to_string(), "T L + 2*L*l + 1/2*c*l^(3)");
}

TEST(Bracket, LeftSesquilinearity) {
    // [TL_l L] = -l [L_l L]; l * l^(k) = (k+1) l^(k+1)
    auto R = catalog::virasoro();
    RElem L = R.gen("L");
    LambdaPoly want = R.lam(-L.T(), 1) + R.lam(L * Scalar(-4), 2) + R.lam(R.central("c", -2), 4);
    EXPECT_EQ(bracket(R, L.T(), L), want);
}

TEST(Bracket, RightSesquilinearity) {
    // [L_l TL] = (T + l)(TL + 2Ll + c/2 l^(3)) worked by hand
    auto R = catalog::virasoro();
    RElem L = R.gen("L");
    LambdaPoly want = R.lam(L.T(2) * Scalar(2)) + R.lam(L.T() * Scalar(3), 1) + R.lam(L * Scalar(4), 2) +
                      R.lam(R.central("c", 2), 4);
    EXPECT_EQ(bracket(R, L, L.T()), want);
}

TEST(Bracket, AffineSl2) {
    auto R = catalog::affine(lie::sl2());
    RElem e = R.gen("e"), f = R.gen("f"), h = R.gen("h");
    EXPECT_EQ(bracket(R, e, f), R.lam(h) + R.lam(R.central("k"), 1));
    EXPECT_EQ(bracket(R, h, h), R.lam(R.central("k", 2), 1));
    EXPECT_EQ(bracket(R, h, e), R.lam(e * Scalar(2)));
    EXPECT_TRUE(bracket(R, e, e).is_zero());
}

TEST(Bracket, CliffordOppositeSign) {
    // odd pair: -zeta [psi_{-l-T} psi] = +k
    auto R = catalog::build("clifford");
    RElem p = R.gen("psi");
    EXPECT_EQ(bracket(R, p, p), R.lam(R.central("k")));
    EXPECT_EQ(opposite_bracket(R, p, p, Var::l), R.lam(R.central("k")));
}

TEST(Bracket, OppositeAgreesOnEveryCatalogPair) {
    for (auto& R : all_builds())
        for (std::uint32_t a = 0; a < R.num_gens(); ++a)
            for (std::uint32_t b = 0; b < R.num_gens(); ++b) {
                RElem x = RElem::gen(R.symbols(), a), y = RElem::gen(R.symbols(), b);
                EXPECT_EQ(bracket(R, x, y), opposite_bracket(R, x, y, Var::l))
                    << R.name() << " " << R.decl(a).name << " " << R.decl(b).name;
            }
}

TEST(Bracket, SkewAndJacobiOnRandomDecoratedElements) {
    std::mt19937 rng(4242);
    for (auto& R : all_builds()) {
        for (int trial = 0; trial < 6; ++trial) {
            std::bernoulli_distribution coin(0.5);
            RElem x = random_element(R, rng, coin(rng)), y = random_element(R, rng, coin(rng)),
                  z = random_element(R, rng, coin(rng));
            EXPECT_TRUE(skew_residual(R, x, y).is_zero()) << R.name();
            EXPECT_TRUE(jacobi_residual(R, x, y, z).is_zero()) << R.name();
        }
    }
}

TEST(Bracket, WeightHomogeneity) {
    // weight of the l^(j) coefficient of [a_l b] is wt a + wt b - j - 1
    for (auto& R : all_builds())
        for (std::uint32_t a = 0; a < R.num_gens(); ++a)
            for (std::uint32_t b = 0; b < R.num_gens(); ++b) {
                RElem x = RElem::gen(R.symbols(), a, 1), y = RElem::gen(R.symbols(), b);
                LambdaPoly p = bracket(R, x, y);
                for (auto& [e, c] : p.terms()) {
                    auto w = c.weight();
                    ASSERT_TRUE(w.has_value());
                    EXPECT_EQ(*w, R.decl(a).weight + 1 + R.decl(b).weight - e[0] - 1) << R.name();
                }
            }
}

TEST(Products, VirasoroNthProducts) {
    auto R = catalog::virasoro();
    RElem L = R.gen("L");
    auto t = tth_products(R, L, L);
    ASSERT_EQ(t.size(), 3u);
    EXPECT_EQ(t[0].first, 0u);
    EXPECT_EQ(t[0].second, L.T());
    EXPECT_EQ(t[1].first, 1u);
    EXPECT_EQ(t[1].second, L * Scalar(2));
    EXPECT_EQ(t[2].first, 3u);
    EXPECT_EQ(t[2].second, R.central("c", Rational(1, 2)));
}

TEST(Products, LieBracketWorkedValues) {
    auto V = catalog::virasoro();
    // T(TL) - T^(2)(2L) = 2T^(2)L - 2T^(2)L
    EXPECT_TRUE(lie_bracket(V, V.gen("L"), V.gen("L")).is_zero());
    auto A = catalog::affine(lie::sl2());
    EXPECT_EQ(lie_bracket(A, A.gen("h"), A.gen("e")), A.gen("e").T() * Scalar(2));
    EXPECT_EQ(lie_bracket(A, A.gen("e"), A.gen("f")), A.gen("h").T());
}

TEST(Products, LieBracketSkewModuloT) {
    // [a,b] + zeta [b,a] lies in T R: no T^0 or central part
    for (auto& R : all_builds())
        for (std::uint32_t a = 0; a < R.num_gens(); ++a)
            for (std::uint32_t b = 0; b < R.num_gens(); ++b) {
                RElem x = RElem::gen(R.symbols(), a), y = RElem::gen(R.symbols(), b);
                RElem s = lie_bracket(R, x, y) + lie_bracket(R, y, x) * Scalar(zeta(R.decl(a).odd, R.decl(b).odd));
                EXPECT_TRUE(s.central_terms().empty()) << R.name();
                for (auto& [k, c] : s.gen_terms()) EXPECT_GT(k.second, 0u) << R.name();
            }
}

TEST(Products, LocalityOrders) {
    auto V = catalog::virasoro();
    EXPECT_EQ(locality_order(V, V.gen("L"), V.gen("L")), 4u);
    auto H = catalog::build("heisenberg");
    EXPECT_EQ(locality_order(H, H.gen("J"), H.gen("J")), 2u);
    auto C = catalog::build("clifford");
    EXPECT_EQ(locality_order(C, C.gen("psi"), C.gen("psi")), 1u);
    auto W = catalog::build("witt_loop_semidirect");
    EXPECT_EQ(locality_order(W, W.gen("J"), W.gen("J")), 0u);
}

TEST(Identities, AllBuildsPass) {
    for (auto& R : all_builds()) {
        Report rep = check_identities(R, IdentityOptions{true});
        EXPECT_TRUE(rep.passed()) << R.name();
        bool saw_s3 = false, saw_conv = false;
        for (auto& e : rep.entries) {
            saw_s3 = saw_s3 || e.name == "s3-symmetry";
            saw_conv = saw_conv || e.name == "jacobi-conventions-agree";
        }
        EXPECT_TRUE(saw_s3 && saw_conv) << R.name();
    }
}

TEST(Identities, CorruptedVirasoroFailsSkew) {
    VLiePresentation R("bad");
    R.add_generator("L", false, 2);
    R.add_central("c");
    RElem L = R.gen("L");
    R.set_bracket("L", "L", R.lam(L.T()) + R.lam(L * Scalar(3), 1) + R.lam(R.central("c", Rational(1, 2)), 3));
    R.finalize();
    Report rep = check_identities(R);
    EXPECT_FALSE(rep.passed());
    ASSERT_FALSE(rep.entries.empty());
    EXPECT_EQ(rep.entries[0].name, "skew L L");
    EXPECT_EQ(rep.entries[0].status, Status::fail);
    EXPECT_FALSE(rep.entries[0].witness.empty());
}

TEST(Identities, WeightInconsistencyRejected) {
    VLiePresentation R("bad");
    R.add_generator("L", false, 2);
    R.set_bracket("L", "L", R.lam(R.gen("L")));
    EXPECT_THROW(R.finalize(), std::invalid_argument);
}

TEST(Morphism, IdentityOnEveryBuild) {
    for (auto& R : all_builds()) {
        std::map<std::string, RElem> im;
        for (auto& g : R.generators()) im[g.name] = R.gen(g.name);
        for (auto& z : R.centrals()) im[z] = R.central(z);
        EXPECT_TRUE(check_morphism(R, R, im).passed()) << R.name();
    }
}

TEST(Morphism, N2MirrorInvolution) {
    auto R = catalog::n2();
    std::map<std::string, RElem> im{{"L", R.gen("L")}, {"Gp", R.gen("Gm")}, {"Gm", R.gen("Gp")},
                                    {"J", -R.gen("J")}, {"c", R.central("c")}};
    Report rep = check_morphism(R, R, im);
    EXPECT_TRUE(rep.passed());
    EXPECT_EQ(rep.entries.size(), 16u);
}

TEST(Morphism, N2ToTopologicalTwist) {
    auto S = catalog::n2();
    auto T = catalog::topological();
    std::map<std::string, RElem> im{{"L", T.gen("L") - T.gen("J").T() * Scalar(Rational(1, 2))},
                                    {"Gp", T.gen("Q") * Scalar(2)},
                                    {"Gm", T.gen("G")},
                                    {"J", T.gen("J")},
                                    {"c", T.central("d", 3)}};
    EXPECT_TRUE(check_morphism(S, T, im).passed());
    im["Gp"] = T.gen("Q");
    EXPECT_FALSE(check_morphism(S, T, im).passed());
}

TEST(Morphism, MalformedTargets) {
    auto R = catalog::n2();
    std::map<std::string, RElem> im{{"L", R.gen("L")}, {"Gp", R.gen("J")}, {"Gm", R.gen("Gm")},
                                    {"J", R.gen("J")}, {"c", R.central("c")}};
    EXPECT_THROW(check_morphism(R, R, im), std::invalid_argument);
    im["Gp"] = R.gen("Gp");
    im["c"] = R.gen("L");
    EXPECT_THROW(check_morphism(R, R, im), std::invalid_argument);
    im.erase("c");
    EXPECT_THROW(check_morphism(R, R, im), std::invalid_argument);
}
