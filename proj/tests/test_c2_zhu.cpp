#include "vla/c2.hpp"
#include "vla/catalog.hpp"
#include "vla/identities.hpp"
#include "vla/zhu.hpp"

#include <gtest/gtest.h>

using namespace vla;

namespace {

// Free supercommutative algebra on the generators (weights scaled by den): the
// expected C2 quotient of a universal enveloping vertex algebra.
std::vector<long> generator_series(const VLiePresentation& R, long den, long N) {
    std::vector<long> s(N + 1, 0);
    s[0] = 1;
    for (auto& g : R.generators()) {
        long w = to_long(g.weight * den);
        if (g.odd) {
            for (long i = N; i >= w; --i) s[i] += s[i - w];
        } else {
            for (long i = w; i <= N; ++i) s[i] += s[i - w];
        }
    }
    return s;
}

}  // namespace

TEST(C2, VirasoroDimensionsAndBracket) {
    Envelope V(catalog::virasoro());
    auto Q = c2_quotient(V, 6);
    std::vector<std::size_t> got;
    for (long h = 0; h <= 6; ++h) got.push_back(Q.dim(h));
    EXPECT_EQ(got, (std::vector<std::size_t>{1, 0, 1, 0, 1, 0, 1}));
    Report rep = check_c2_poisson(V, Q);
    EXPECT_TRUE(rep.passed());
}

TEST(C2, DimensionsMatchFreeAlgebraOnGenerators) {
    for (auto name : {"heisenberg", "neveu_schwarz", "clifford", "n2", "topological"}) {
        Envelope V(catalog::build(name));
        long den = V.denominator();
        long hmax = 4;
        auto Q = c2_quotient(V, hmax);
        auto want = generator_series(V.presentation(), den, hmax * den);
        for (long k = 0; k <= hmax * den; ++k)
            EXPECT_EQ(static_cast<long>(Q.dim(V.scaled(k))), want[k]) << name << " at " << k << "/" << den;
    }
}

TEST(C2, AffineBracketIsTheLieBracket) {
    Envelope V(catalog::affine(lie::sl2()));
    auto Q = c2_quotient(V, 2);
    Report rep = check_c2_poisson(V, Q);
    bool comm_ok = false, br_ok = true;
    for (auto& e : rep.entries) {
        if (e.name == "c2-product-commutative") comm_ok = e.status == Status::pass;
        if (e.name == "c2-bracket-vanishes") br_ok = e.status == Status::pass;
    }
    EXPECT_TRUE(comm_ok);
    EXPECT_FALSE(br_ok);
}

TEST(Zhu, UnitAndWorkedProducts) {
    Envelope V(catalog::build("heisenberg"), {{"k", Scalar(1)}});
    EnvElem J = V.generator_state("J"), vac = V.vacuum();
    EXPECT_EQ(zhu_product(V, vac, J), J);
    EXPECT_EQ(zhu_product(V, J, vac), J);
    // J * J = J_(-1) J + J_(0) J
    EXPECT_EQ(zhu_product(V, J, J), V.apply_mode("J", -1, J));
}

TEST(Zhu, TranslationPlusWeightLiesInO) {
    Envelope V(catalog::virasoro());
    EnvElem L = V.generator_state("L");
    auto cls = zhu_reduce(V, V.translate(L) + L * Scalar(2), 3);
    EXPECT_EQ(cls.status, ZhuStatus::reduced);
    EXPECT_TRUE(cls.representative.is_zero());
    auto vac = zhu_reduce(V, V.vacuum(), 6);
    EXPECT_EQ(vac.status, ZhuStatus::bound_limited);
    EXPECT_EQ(vac.representative, V.vacuum());
}

TEST(Zhu, VirasoroRelations) {
    Envelope V(catalog::virasoro());
    Report rep = check_zhu_relations(V, basis_pool(V, 4), 6, ZhuWindows{}, V.generator_state("L"));
    EXPECT_TRUE(rep.passed());
    bool centrality = false;
    for (auto& e : rep.entries) {
        EXPECT_NE(e.status, Status::fail) << e.name << ": " << e.witness;
        centrality = centrality || e.name == "zhu-l-centrality";
    }
    EXPECT_TRUE(centrality);
}

TEST(Zhu, HeisenbergRelations) {
    Envelope V(catalog::build("heisenberg"));
    Report rep = check_zhu_relations(V, basis_pool(V, 3), 5);
    for (auto& e : rep.entries) EXPECT_NE(e.status, Status::fail) << e.name << ": " << e.witness;
}

TEST(Zhu, HalfIntegerGradingRejected) {
    Envelope V(catalog::neveu_schwarz());
    EXPECT_THROW(zhu_reduce(V, V.vacuum(), 2), std::invalid_argument);
}

TEST(Zhu, AffineIsomorphismWithUniversalEnveloping) {
    {
        Envelope V(catalog::affine(lie::sl2()));
        Report rep = affine_zhu_iso(V, lie::sl2(), 2, 4);
        EXPECT_TRUE(rep.passed());
        for (auto& e : rep.entries) EXPECT_NE(e.status, Status::fail) << e.name << ": " << e.witness;
    }
    {
        Envelope V(catalog::affine(lie::abelian(2)));
        EXPECT_TRUE(affine_zhu_iso(V, lie::abelian(2), 3, 5).passed());
    }
    Envelope W(catalog::virasoro());
    EXPECT_THROW(affine_zhu_iso(W, lie::sl2(), 2, 4), std::invalid_argument);
}
