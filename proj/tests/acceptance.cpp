// Acceptance run: one PASS/FAIL line per criterion, each timed against its budget.
#include "vla/binomial.hpp"
#include "vla/c2.hpp"
#include "vla/catalog.hpp"
#include "vla/cli.hpp"
#include "vla/identities.hpp"
#include "vla/modes.hpp"
#include "vla/zhu.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace vla;

namespace {

struct Outcome {
    bool ok = true;
    std::string note;
    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            note += (note.empty() ? "" : "; ") + what;
        }
    }
    void require(const Report& rep, const std::string& what) {
        if (rep.passed()) return;
        std::string first;
        for (auto& e : rep.entries)
            if (e.status == Status::fail) {
                first = e.name + ": " + e.witness;
                break;
            }
        require(false, what + " (" + first + ")");
    }
};

std::string algebra_path(const std::string& f) { return std::string(VLA_SOURCE_DIR) + "/algebras/" + f; }

int run_cli(std::vector<std::string> args) {
    std::ostringstream os, es;
    return cli::run_command(args, os, es);
}

Outcome catalog_validity() {
    Outcome o;
    for (auto& n : catalog::builtin_names()) o.require(check_identities(catalog::build(n)), n);
    return o;
}

Outcome mode_tables() {
    Outcome o;
    for (auto n : {"virasoro", "neveu_schwarz", "topological"}) {
        auto R = catalog::build(n);
        o.require(verify_weak_commutator(R, expected::by_name(R, n), -4, 4), n);
    }
    return o;
}

Outcome pbw_dimensions() {
    Outcome o;
    auto check = [&](const std::string& n, long hmax, const std::vector<std::size_t>& want) {
        Envelope V(catalog::build(n));
        auto got = V.graded_dimension(hmax);
        auto gen = V.generating_function_dimension(hmax);
        std::vector<std::size_t> d;
        for (std::size_t i = 0; i < got.size(); ++i) {
            d.push_back(got[i].second);
            o.require(gen[i].second == got[i].second, n + " generating function at h=" + got[i].first.get_str());
        }
        o.require(d == want, n + " dims");
    };
    check("virasoro", 8, {1, 0, 1, 1, 2, 2, 4, 4, 7});
    check("heisenberg", 6, {1, 1, 2, 3, 5, 7, 11});
    return o;
}

Outcome field_identities() {
    Outcome o;
    {
        Envelope V(catalog::virasoro());
        o.require(verify_identities(V, basis_pool(V, 5)), "virasoro");
    }
    {
        // level fixed at k = 1; c stays symbolic above
        Envelope V(catalog::build("heisenberg"), {{"k", Scalar(1)}});
        o.require(verify_identities(V, basis_pool(V, 5)), "heisenberg");
    }
    return o;
}

Outcome quasi_associativity() {
    Outcome o;
    Envelope V(catalog::build("heisenberg"), {{"k", Scalar(1)}});
    EnvElem J = V.generator_state("J");
    EnvElem JJ = V.nth_product(J, -1, J);
    EnvElem lhs = V.nth_product(JJ, -1, J) - V.nth_product(J, -1, JJ);
    o.require(lhs == V.translate(V.translate(J)), "(JJ)J - J(JJ) = " + V.to_string(lhs));
    return o;
}

Outcome conformal_structure() {
    Outcome o;
    for (auto n : {"virasoro", "neveu_schwarz", "n2", "topological"}) {
        auto R = catalog::build(n);
        o.require(catalog::conformal_analysis(R, R.gen("L")).is_conformal, n + std::string(" conformal"));
    }
    auto S = catalog::n2();
    auto ct = catalog::chodos_thorn(S, S.gen("L"), S.gen("J") * Scalar(Rational(1, 2)));
    o.require(ct.central_charge.is_zero() && ct.report.passed(), "chodos-thorn c' = " + ct.central_charge.to_string());
    auto T = catalog::topological();
    o.require(check_morphism(S, T,
                             {{"L", T.gen("L") - T.gen("J").T() * Scalar(Rational(1, 2))},
                              {"Gp", T.gen("Q") * Scalar(2)},
                              {"Gm", T.gen("G")},
                              {"J", T.gen("J")},
                              {"c", T.central("d", 3)}}),
              "n2 to topological");
    o.require(check_morphism(S, S,
                             {{"L", S.gen("L")},
                              {"Gp", S.gen("Gm")},
                              {"Gm", S.gen("Gp")},
                              {"J", -S.gen("J")},
                              {"c", S.central("c")}}),
              "mirror");
    return o;
}

Outcome c2_quotient_check() {
    Outcome o;
    Envelope V(catalog::virasoro());
    auto Q = c2_quotient(V, 6);
    std::vector<std::size_t> d;
    for (long h = 0; h <= 6; ++h) d.push_back(Q.dim(h));
    o.require(d == std::vector<std::size_t>{1, 0, 1, 0, 1, 0, 1}, "dims");
    o.require(check_c2_poisson(V, Q), "poisson");
    return o;
}

Outcome zhu_suite() {
    Outcome o;
    {
        Envelope V(catalog::virasoro());
        o.require(check_zhu_relations(V, basis_pool(V, 4), 9, ZhuWindows{}, V.generator_state("L")), "virasoro");
    }
    {
        Envelope V(catalog::build("heisenberg"));
        o.require(check_zhu_relations(V, basis_pool(V, 4), 9), "heisenberg");
    }
    Envelope A(catalog::affine(lie::sl2()));
    o.require(affine_zhu_iso(A, lie::sl2(), 2, 4), "affine sl2");
    return o;
}

Outcome binomial_identities() {
    Outcome o;
    o.require(check_binomial_identities(12, 12), "n, m <= 12");
    return o;
}

Outcome negative_controls() {
    Outcome o;
    VLiePresentation R("corrupted");
    R.add_generator("L", false, 2);
    R.add_central("c");
    RElem L = R.gen("L");
    R.set_bracket("L", "L", R.lam(L.T()) + R.lam(L * Scalar(3), 1) + R.lam(R.central("c", Rational(1, 2)), 3));
    R.finalize();
    o.require(!check_identities(R).passed(), "corrupted table passed skew-symmetry");

    auto V = catalog::virasoro();
    auto ex = expected::virasoro(V);
    auto right = ex[0].closed_form;
    ex[0].closed_form = [right](const Rational& n, const Rational& m) { return right(n, m) + right(n, m); };
    Report rep = verify_weak_commutator(V, ex, -4, 4);
    o.require(!rep.passed() && !rep.entries[0].witness.empty(), "corrupted expectation gave no mismatch");

    o.require(run_cli({"check", "--algebra", algebra_path("virasoro_corrupted.alg")}) == 1, "cli check exit code");
    o.require(run_cli({"modes", "--algebra", algebra_path("virasoro_corrupted.alg"), "--expect-virasoro"}) == 1,
              "cli modes exit code");
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* what;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "catalog skew-symmetry and Jacobi", 5, catalog_validity},
        {2, "mode tables on [-4, 4]", 2, mode_tables},
        {3, "PBW dimensions", 5, pbw_dimensions},
        {4, "field identities, pools of weight <= 5", 60, field_identities},
        {5, "(JJ)J - J(JJ) = T^2 J", 1, quasi_associativity},
        {6, "conformal structure and morphisms", 2, conformal_structure},
        {7, "Virasoro C2 quotient", 10, c2_quotient_check},
        {8, "Zhu relations and affine isomorphism", 30, zhu_suite},
        {9, "binomial identities", 1, binomial_identities},
        {10, "negative controls", 0, negative_controls},  // no stated budget
    };
    int failed = 0;
    for (auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool in_time = c.budget_s <= 0 || s < c.budget_s;
        bool pass = o.ok && in_time;
        failed += !pass;
        char timing[64];
        if (c.budget_s > 0) std::snprintf(timing, sizeof timing, "%.2f s, budget %.0f s", s, c.budget_s);
        else std::snprintf(timing, sizeof timing, "%.2f s", s);
        std::cout << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << "  " << c.what << " (" << timing
                  << ")";
        if (!o.ok) std::cout << "  " << o.note;
        if (!in_time) std::cout << "  over budget";
        std::cout << "\n";
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed\n" : "all criteria passed\n");
    return failed ? 1 : 0;
}
