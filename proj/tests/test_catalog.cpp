#include "vla/catalog.hpp"

#include <gtest/gtest.h>

using namespace vla;
using catalog::PrimaryStatus;

namespace {

PrimaryStatus status_of(const catalog::ConformalAnalysis& ca, const std::string& g) {
    for (auto& [n, s] : ca.status)
        if (n == g) return s;
    ADD_FAILURE() << "no status for " << g;
    return PrimaryStatus::neither;
}

// Virasoro L with a primary weight-1 current J, [J_l J] = k l.
VLiePresentation virasoro_with_current() {
    VLiePresentation R("vir_u1");
    R.add_generator("L", false, 2);
    R.add_generator("J", false, 1);
    R.add_central("c");
    R.add_central("k");
    catalog::set_virasoro_pair(R, "L", std::string("c"));
    catalog::set_primary(R, "L", "J", 1);
    R.set_bracket("J", "J", R.lam(R.central("k"), 1));
    R.finalize();
    return R;
}

}  // namespace

TEST(Catalog, EveryBuiltinSatisfiesTheAxioms) {
    auto names = catalog::builtin_names();
    EXPECT_EQ(names.size(), 10u);
    for (auto& n : names) {
        auto R = catalog::build(n);
        EXPECT_TRUE(check_identities(R).passed()) << n;
        EXPECT_TRUE(R.graded()) << n;
    }
}

TEST(Catalog, N2SupercurrentBracket) {
    auto R = catalog::n2();
    RElem L = R.gen("L"), J = R.gen("J");
    LambdaPoly want = R.lam(L * Scalar(2)) + R.lam(J.T()) + R.lam(J * Scalar(2), 1) +
                      R.lam(R.central("c", Rational(2, 3)), 2);
    EXPECT_EQ(bracket(R, R.gen("Gp"), R.gen("Gm")), want);
    // opposite orientation comes from skew-symmetry with zeta = -1
    LambdaPoly back = R.lam(L * Scalar(2)) - R.lam(J.T()) - R.lam(J * Scalar(2), 1) +
                      R.lam(R.central("c", Rational(2, 3)), 2);
    EXPECT_EQ(bracket(R, R.gen("Gm"), R.gen("Gp")), back);
}

TEST(Catalog, FrobeniusRankOneIsVirasoro) {
    auto F = catalog::build("frobenius");
    auto V = catalog::virasoro();
    ASSERT_EQ(F.num_gens(), 1u);
    // [L_l L] = (T + 2l)(L L) + (L,L) c l^(3) with L L = L and (L,L) = 1/2
    EXPECT_EQ(bracket(F, F.gen("L"), F.gen("L")).to_string(), bracket(V, V.gen("L"), V.gen("L")).to_string());
}

TEST(Catalog, HeisenbergRankTwo) {
    auto H = catalog::build("heisenberg", {{"rank", "2"}});
    EXPECT_EQ(bracket(H, H.gen("J1"), H.gen("J1")), H.lam(H.central("k"), 1));
    EXPECT_TRUE(bracket(H, H.gen("J1"), H.gen("J2")).is_zero());
}

TEST(Catalog, BuilderErrors) {
    EXPECT_THROW(catalog::build("nonesuch"), std::invalid_argument);
    EXPECT_THROW(catalog::build("virasoro", {{"rank", "2"}}), std::invalid_argument);
    EXPECT_THROW(catalog::build("affine", {{"lie", "e8"}}), std::invalid_argument);
    AlgebraData bad = lie::sl2();
    bad.product[0][2][1] = 5;  // breaks antisymmetry
    EXPECT_THROW(catalog::affine(bad), std::invalid_argument);
    AlgebraData noninv = lie::sl2();
    noninv.form[1][1] = 3;
    EXPECT_THROW(catalog::affine(noninv), std::invalid_argument);
    EXPECT_THROW(catalog::heisenberg(lie::sl2()), std::invalid_argument);
    AlgebraData nonassoc = frob::split(2);
    nonassoc.product[0][1][0] = 1;  // e1 e2 = e1 but e2 e1 = 0
    EXPECT_THROW(catalog::frobenius(nonassoc), std::invalid_argument);
}

TEST(Conformal, Virasoro) {
    auto R = catalog::virasoro();
    auto ca = catalog::conformal_analysis(R, R.gen("L"));
    EXPECT_TRUE(ca.is_virasoro);
    EXPECT_TRUE(ca.is_conformal);
    EXPECT_EQ(ca.central_charge, R.central("c"));
    // the l^(3) term stops L from being primary for itself unless c = 0
    EXPECT_EQ(status_of(ca, "L"), PrimaryStatus::quasi_primary);
    auto W = catalog::witt();
    EXPECT_EQ(status_of(catalog::conformal_analysis(W, W.gen("L")), "L"), PrimaryStatus::primary);
}

TEST(Conformal, NeveuSchwarz) {
    auto R = catalog::neveu_schwarz();
    auto ca = catalog::conformal_analysis(R, R.gen("L"));
    EXPECT_TRUE(ca.is_conformal);
    EXPECT_EQ(status_of(ca, "G"), PrimaryStatus::primary);
}

TEST(Conformal, N2) {
    auto R = catalog::n2();
    auto ca = catalog::conformal_analysis(R, R.gen("L"));
    EXPECT_TRUE(ca.is_conformal);
    EXPECT_EQ(ca.central_charge, R.central("c"));
    for (auto g : {"Gp", "Gm", "J"}) EXPECT_EQ(status_of(ca, g), PrimaryStatus::primary) << g;
}

TEST(Conformal, TopologicalCurrentIsNotQuasiPrimary) {
    auto R = catalog::topological();
    auto ca = catalog::conformal_analysis(R, R.gen("L"));
    EXPECT_TRUE(ca.is_conformal);
    EXPECT_TRUE(ca.central_charge.is_zero());
    EXPECT_EQ(status_of(ca, "L"), PrimaryStatus::primary);
    EXPECT_EQ(status_of(ca, "Q"), PrimaryStatus::primary);
    EXPECT_EQ(status_of(ca, "G"), PrimaryStatus::primary);
    EXPECT_EQ(status_of(ca, "J"), PrimaryStatus::neither);
}

TEST(Conformal, NonVirasoroCandidate) {
    auto R = catalog::n2();
    auto ca = catalog::conformal_analysis(R, R.gen("J"));
    EXPECT_FALSE(ca.is_virasoro);
    EXPECT_FALSE(ca.is_conformal);
    EXPECT_FALSE(ca.report.passed());
}

TEST(Griess, SplitRankTwoRecoversTheAlgebra) {
    auto R = catalog::build("frobenius", {{"split", "2"}});
    auto g = catalog::griess(R);
    ASSERT_EQ(g.basis, (std::vector<std::string>{"e1", "e2"}));
    // a_(1) b = 2 ab and a_(3) b = (a,b) c
    EXPECT_EQ(g.product[0][0], R.gen("e1") * Scalar(2));
    EXPECT_TRUE(g.product[0][1].is_zero());
    EXPECT_EQ(g.form[1][1], R.central("c", Rational(1, 2)));
    EXPECT_TRUE(g.form[0][1].is_zero());
    EXPECT_EQ(g.virasoro_vectors.size(), 3u);
    EXPECT_TRUE(g.report.passed());
}

TEST(Griess, NoIdempotentsForZeroProduct) {
    AlgebraData C = AlgebraData::zero({"a"});
    C.form[0][0] = 1;
    auto R = catalog::frobenius(C);
    auto g = catalog::griess(R);
    EXPECT_EQ(g.basis.size(), 1u);
    EXPECT_TRUE(g.virasoro_vectors.empty());
}

TEST(Coset, ProductOfTwoVirasoro) {
    auto V = catalog::virasoro();
    auto R = catalog::product(V, V);
    RElem L = R.gen("L1") + R.gen("L2");
    auto co = catalog::coset_conformal(R, L, R.gen("L1"));
    EXPECT_EQ(co.coset, R.gen("L2"));
    EXPECT_EQ(co.central_charge, R.central("c2"));
    EXPECT_TRUE(co.report.passed());
}

TEST(Coset, SubalgebraEqualToWholeGivesZero) {
    auto V = catalog::virasoro();
    auto co = catalog::coset_conformal(V, V.gen("L"), V.gen("L"));
    EXPECT_TRUE(co.coset.is_zero());
    EXPECT_TRUE(co.central_charge.is_zero());
}

TEST(Coset, RejectsNonQuasiPrimary) {
    // L + T(J/2) is Virasoro with c' = 0 but L_(2) of it is J
    auto R = catalog::n2();
    RElem Lsub = R.gen("L") + R.gen("J").T() * Scalar(Rational(1, 2));
    EXPECT_THROW(catalog::coset_conformal(R, R.gen("L"), Lsub), std::invalid_argument);
    EXPECT_THROW(catalog::coset_conformal(R, R.gen("J"), R.gen("L")), std::invalid_argument);
}

TEST(ChodosThorn, N2HalfCurrentGivesZeroCharge) {
    auto R = catalog::n2();
    auto ct = catalog::chodos_thorn(R, R.gen("L"), R.gen("J") * Scalar(Rational(1, 2)));
    EXPECT_TRUE(ct.central_charge.is_zero());
    EXPECT_TRUE(ct.report.passed());
}

TEST(ChodosThorn, SymbolicLevel) {
    auto R = virasoro_with_current();
    auto ct = catalog::chodos_thorn(R, R.gen("L"), R.gen("J"));
    EXPECT_EQ(ct.central_charge, R.central("c") - R.central("k", 12));
    EXPECT_EQ(ct.shifted, R.gen("L") + R.gen("J").T());
    EXPECT_TRUE(ct.report.passed());
}

TEST(ChodosThorn, RejectsNonPrimaryCurrent) {
    auto R = catalog::topological();
    EXPECT_THROW(catalog::chodos_thorn(R, R.gen("L"), R.gen("J")), std::invalid_argument);
}
