#include "vla/catalog.hpp"
#include "vla/envelope.hpp"
#include "vla/identities.hpp"

#include <gtest/gtest.h>

using namespace vla;

namespace {

// Coefficients of prod_{k>=lo} 1/(1-q^k) (bosonic) or prod (1+q^k) (fermionic), indices in units of 1/den.
std::vector<long> partition_series(std::vector<std::pair<long, bool>> parts_from, long den, long N) {
    std::vector<long> s(N + 1, 0);
    s[0] = 1;
    for (auto [lo, fermionic] : parts_from)
        for (long k = lo; k <= N; k += den) {
            if (fermionic) {
                for (long i = N; i >= k; --i) s[i] += s[i - k];
            } else {
                for (long i = k; i <= N; ++i) s[i] += s[i - k];
            }
        }
    return s;
}

std::vector<long> dims(Envelope& V, long hmax) {
    std::vector<long> out;
    for (auto& [h, d] : V.graded_dimension(hmax)) out.push_back(static_cast<long>(d));
    return out;
}

Envelope heis_at_level_one() { return Envelope(catalog::build("heisenberg"), {{"k", Scalar(1)}}); }

}  // namespace

TEST(Envelope, VacuumAxioms) {
    Envelope V(catalog::virasoro());
    EnvElem vac = V.vacuum();
    EXPECT_TRUE(V.translate(vac).is_zero());
    for (std::int64_t t = 0; t <= 3; ++t) EXPECT_TRUE(V.apply_mode("L", t, vac).is_zero());
    EnvElem L = V.generator_state("L");
    EXPECT_EQ(V.apply_mode("L", -1, vac), L);
    EXPECT_EQ(V.nth_product(vac, -1, L), L);
    for (std::int64_t n : {-3, -2, 0, 1}) EXPECT_TRUE(V.nth_product(vac, n, L).is_zero()) << n;
    // v_(-1)|0> = v and v_(-2)|0> = T v
    for (auto id : V.basis_up_to(5)) {
        EnvElem v = EnvElem::word(id);
        EXPECT_EQ(V.nth_product(v, -1, vac), v);
        EXPECT_EQ(V.nth_product(v, -2, vac), V.translate(v));
    }
}

TEST(Envelope, HeisenbergLevel) {
    Envelope V(catalog::build("heisenberg"));
    EnvElem J = V.generator_state("J");
    EXPECT_EQ(V.apply_mode("J", 1, J), V.vacuum() * Scalar::param("k"));
    Envelope W = heis_at_level_one();
    EXPECT_EQ(W.apply_mode("J", 1, W.generator_state("J")), W.vacuum());
    EXPECT_TRUE(W.apply_mode("J", 0, W.generator_state("J")).is_zero());
}

TEST(Envelope, VirasoroZeroModeMeasuresWeight) {
    Envelope V(catalog::virasoro());
    for (auto id : V.basis_up_to(7)) {
        EnvElem v = EnvElem::word(id);
        EXPECT_EQ(V.apply_mode("L", 1, v), v * Scalar(V.weight(id))) << V.word_string(id);
        // L_(0) is the translation operator
        EXPECT_EQ(V.apply_mode("L", 0, v), V.translate(v)) << V.word_string(id);
    }
}

TEST(Envelope, TranslateWorkedValue) {
    // T L(-1)L(-1)|0> = L(-2)L(-1)|0> + L(-1)L(-2)|0> and [L_(-1), L_(-2)] = L_(-4)
    Envelope V(catalog::virasoro());
    EnvElem LL = V.apply_mode("L", -1, V.generator_state("L"));
    EXPECT_EQ(V.to_string(LL), "L(-1)L(-1)");
    EXPECT_EQ(V.to_string(V.translate(LL)), "L(-4) + 2*L(-2)L(-1)");
    EXPECT_EQ(V.to_string(V.translate(V.generator_state("L"))), "L(-2)");
    EXPECT_EQ(V.translate_divided(V.generator_state("L"), 2), V.apply_mode("L", -3, V.vacuum()));
}

TEST(Envelope, VirasoroProducts) {
    Envelope V(catalog::virasoro());
    EnvElem L = V.generator_state("L");
    EXPECT_EQ(V.nth_product(L, 3, L), V.vacuum() * Scalar::param("c") * Scalar(Rational(1, 2)));
    EXPECT_TRUE(V.nth_product(L, 2, L).is_zero());
    EXPECT_EQ(V.nth_product(L, 1, L), L * Scalar(2));
    EXPECT_EQ(V.nth_product(L, 0, L), V.translate(L));
    EXPECT_TRUE(V.nth_product(L, 4, L).is_zero());
    Envelope H(catalog::virasoro(), {{"c", Scalar(Rational(1, 2))}});
    EnvElem M = H.generator_state("L");
    EXPECT_EQ(H.nth_product(M, 3, M), H.vacuum() * Scalar(Rational(1, 4)));
}

TEST(Envelope, QuasiAssociativityOfHeisenbergCurrent) {
    // (JJ)J - J(JJ) = T^2 J = 2 J(-3)|0> at k = 1
    Envelope V = heis_at_level_one();
    EnvElem J = V.generator_state("J");
    EnvElem JJ = V.nth_product(J, -1, J);
    EnvElem lhs = V.nth_product(JJ, -1, J) - V.nth_product(J, -1, JJ);
    EXPECT_EQ(lhs, V.translate(V.translate(J)));
    EXPECT_EQ(lhs, V.apply_mode("J", -3, V.vacuum()) * Scalar(2));
}

TEST(Envelope, WeightBookkeeping) {
    Envelope V(catalog::neveu_schwarz());
    auto ids = V.basis_up_to(Rational(7, 2));
    for (auto u : ids)
        for (auto v : ids)
            for (std::int64_t n = -2; n <= 3; ++n) {
                EnvElem p = V.nth_product(u, n, v);
                if (p.is_zero()) continue;
                auto w = V.weight_of(p);
                ASSERT_TRUE(w.has_value());
                EXPECT_EQ(*w, V.weight(u) + V.weight(v) - n - 1);
                EXPECT_EQ(V.parity_of(p), V.odd(u) != V.odd(v));
            }
}

TEST(Dimensions, StatedSequences) {
    Envelope V(catalog::virasoro());
    EXPECT_EQ(dims(V, 8), (std::vector<long>{1, 0, 1, 1, 2, 2, 4, 4, 7}));
    Envelope H(catalog::build("heisenberg"));
    EXPECT_EQ(dims(H, 6), (std::vector<long>{1, 1, 2, 3, 5, 7, 11}));
}

TEST(Dimensions, AgreeWithIndependentPartitionCounts) {
    struct Case {
        std::string name;
        std::vector<std::pair<long, bool>> parts;  // first part, fermionic
        long den, hmax;
    };
    std::vector<Case> cases = {
        {"virasoro", {{2, false}}, 1, 12},
        {"heisenberg", {{1, false}}, 1, 10},
        {"neveu_schwarz", {{4, false}, {3, true}}, 2, 7},
        {"clifford", {{1, true}}, 2, 6},
        {"n2", {{4, false}, {3, true}, {3, true}, {2, false}}, 2, 5},
    };
    for (auto& cs : cases) {
        Envelope V(catalog::build(cs.name));
        auto want = partition_series(cs.parts, cs.den, cs.hmax * cs.den);
        auto got = V.graded_dimension(cs.hmax);
        auto gen = V.generating_function_dimension(cs.hmax);
        ASSERT_EQ(got.size(), want.size()) << cs.name;
        for (std::size_t i = 0; i < want.size(); ++i) {
            Rational h(static_cast<long>(i), cs.den);
            h.canonicalize();
            EXPECT_EQ(got[i].first, h) << cs.name;
            EXPECT_EQ(static_cast<long>(got[i].second), want[i]) << cs.name << " at " << i;
            EXPECT_EQ(gen[i].second, got[i].second) << cs.name;
        }
    }
}

TEST(Envelope, RejectsUngradedOrNonPositiveWeights) {
    VLiePresentation R("zero_weight");
    R.add_generator("a", false, 0);
    R.finalize();
    EXPECT_THROW(Envelope{R}, std::invalid_argument);
}

TEST(FieldIdentities, VirasoroSmallPool) {
    Envelope V(catalog::virasoro());
    IdentityWindows w;
    w.lo = -1;
    w.hi = 1;
    w.recursion_samples = 20;
    Report rep = verify_identities(V, basis_pool(V, 3), w);
    EXPECT_TRUE(rep.passed());
    for (auto& e : rep.entries) EXPECT_EQ(e.status, Status::pass) << e.name << ": " << e.witness;
    EXPECT_EQ(rep.entries.size(), 12u);
}

TEST(FieldIdentities, NeveuSchwarzSuperSigns) {
    Envelope V(catalog::neveu_schwarz());
    IdentityWindows w;
    w.lo = -1;
    w.hi = 1;
    w.recursion_samples = 10;
    Report rep = verify_identities(V, basis_pool(V, Rational(5, 2)), w);
    for (auto& e : rep.entries) EXPECT_EQ(e.status, Status::pass) << e.name << ": " << e.witness;
}

TEST(FieldIdentities, HeisenbergResiduals) {
    // the plain associator is nonzero; the corrected identities vanish
    Envelope V = heis_at_level_one();
    FieldIdentities F(V);
    EnvElem J = V.generator_state("J");
    EnvElem JJ = V.nth_product(J, -1, J);
    EXPECT_FALSE(F.associator(JJ, J, J).is_zero());
    EXPECT_TRUE(F.quasi_associativity(J, J, J).is_zero());
    EXPECT_TRUE(F.star_equals_lie(JJ, J).is_zero());
    EXPECT_EQ(F.locality(J, J), 2);
}
