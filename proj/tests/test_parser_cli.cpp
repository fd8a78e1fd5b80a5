#include "vla/cli.hpp"
#include "vla/parser.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <fstream>
#include <sstream>

using namespace vla;

namespace {

std::string algebra_path(const std::string& f) { return std::string(VLA_SOURCE_DIR) + "/algebras/" + f; }

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CliResult {
    int code;
    std::string out, err;
};

CliResult run_cli(std::vector<std::string> args) {
    std::ostringstream os, es;
    int code = cli::run_command(args, os, es);
    return {code, os.str(), es.str()};
}

ParseError parse_error(const std::string& text) {
    try {
        parse_algebra(text);
    } catch (const ParseError& e) {
        return e;
    }
    ADD_FAILURE() << "no parse error for: " << text;
    return ParseError(0, 0, "");
}

}  // namespace

TEST(Parser, RoundTripsEveryBuiltin) {
    for (auto& n : catalog::builtin_names()) {
        auto R = catalog::build(n);
        std::string text = render_algebra(R);
        auto F = parse_algebra(text);
        EXPECT_TRUE(same_presentation(R, F.presentation)) << n << "\n" << text;
        EXPECT_EQ(render_algebra(F.presentation), text) << n;
    }
}

TEST(Parser, ShippedFilesMatchBuiltins) {
    for (auto n : {"virasoro", "n2", "heisenberg"}) {
        auto F = parse_algebra(slurp(algebra_path(std::string(n) + ".alg")));
        EXPECT_TRUE(same_presentation(F.presentation, catalog::build(n))) << n;
    }
    auto H = parse_algebra(slurp(algebra_path("heisenberg.alg")));
    ASSERT_EQ(H.settings.size(), 1u);
    EXPECT_EQ(H.settings.at("k"), 1);
    auto bad = parse_algebra(slurp(algebra_path("virasoro_corrupted.alg")));
    EXPECT_FALSE(check_identities(bad.presentation).passed());
}

TEST(Parser, SynthesizedOrientationIsReported) {
    auto F = parse_algebra(
        "algebra h { generator a : even, weight 1; generator b : even, weight 1; central k;"
        " bracket a b = k l; }");
    ASSERT_EQ(F.warnings.size(), 1u);
    EXPECT_NE(F.warnings[0].find("bracket b a"), std::string::npos);
    auto& R = F.presentation;
    EXPECT_EQ(bracket(R, R.gen("b"), R.gen("a")), R.lam(R.central("k"), 1));
}

TEST(Parser, ParamsAndComments) {
    auto F = parse_algebra(
        "# a rescaled Virasoro\n"
        "algebra v {\n"
        "  generator L : even, weight 2;  # the only generator\n"
        "  param q;\n"
        "  bracket L L = (T + 2 l) L + 1/2 q l^(3) L - 1/2 q l^(3) L;\n"
        "}\n");
    EXPECT_EQ(F.params, (std::vector<std::string>{"q"}));
    auto& R = F.presentation;
    EXPECT_EQ(bracket(R, R.gen("L"), R.gen("L")), R.lam(R.gen("L").T()) + R.lam(R.gen("L") * Scalar(2), 1));
}

TEST(Parser, ErrorPositions) {
    auto e = parse_error("algebra v {\n  generator L : even, weight 2;\n  bracket L L = T L + 2 L l^3;\n}");
    EXPECT_EQ(e.line, 3);
    EXPECT_EQ(e.col, 29);
    EXPECT_NE(std::string(e.what()).find("divided power"), std::string::npos);

    e = parse_error("algebra v {\n  generator L : even, weight 2;\n  bracket L M = L;\n}");
    EXPECT_EQ(e.line, 3);
    EXPECT_NE(std::string(e.what()).find("unknown symbol 'M'"), std::string::npos);

    e = parse_error("algebra v { generator L : even, weight 2; bracket L L = T L + 2 L l + c l^(3); }");
    EXPECT_NE(std::string(e.what()).find("unknown symbol 'c'"), std::string::npos);

    e = parse_error("algebra v { generator L : even weight 2; }");
    EXPECT_EQ(e.line, 1);
    EXPECT_NE(std::string(e.what()).find("expected ','"), std::string::npos);
}

TEST(Parser, Rejections) {
    const std::string head = "algebra h { generator a : even, weight 1; generator b : even, weight 1; central k; ";
    // both orientations of one pair
    EXPECT_THROW(parse_algebra(head + "bracket a b = k l; bracket b a = k l; }"), ParseError);
    // duplicate symbol and reserved names
    EXPECT_THROW(parse_algebra("algebra x { generator a : even, weight 1; central a; }"), ParseError);
    EXPECT_THROW(parse_algebra("algebra x { generator T : even, weight 1; }"), ParseError);
    // nonlinear term
    EXPECT_THROW(parse_algebra(head + "bracket a b = a b; }"), ParseError);
    // weight inconsistency, reported at the offending bracket
    EXPECT_THROW(parse_algebra(head + "bracket a a = k; }"), ParseError);
    // trailing garbage, division by zero, missing brace
    EXPECT_THROW(parse_algebra(head + "} extra"), ParseError);
    EXPECT_THROW(parse_algebra(head + "bracket a b = 1/0 k l; }"), ParseError);
    EXPECT_THROW(parse_algebra(head), ParseError);
}

TEST(Parser, EmptyAlgebra) {
    auto F = parse_algebra("algebra nothing { }");
    EXPECT_EQ(F.presentation.num_gens(), 0u);
    EXPECT_TRUE(check_identities(F.presentation).passed());
}

TEST(Parser, ElementsAndStates) {
    auto R = catalog::n2();
    EXPECT_EQ(parse_element(R, "L - 1/2 T J"), R.gen("L") - R.gen("J").T() * Scalar(Rational(1, 2)));
    EXPECT_EQ(parse_element(R, "T^(2) Gp + 3 c"), R.gen("Gp").T(2) + R.central("c", 3));
    EXPECT_THROW(parse_element(R, "L l"), ParseError);

    Envelope V(catalog::virasoro());
    EnvElem LL = V.apply_mode("L", -1, V.generator_state("L"));
    EXPECT_EQ(parse_state(V, "L(-1)L(-1)|0>"), LL);
    EXPECT_EQ(parse_state(V, "L"), V.generator_state("L"));
    EXPECT_EQ(parse_state(V, "T L"), V.translate(V.generator_state("L")));
    EXPECT_EQ(parse_state(V, "|0>"), V.vacuum());
    EXPECT_EQ(parse_state(V, "1/2 c |0> - L(-1)L(-1)|0>"), V.vacuum() * Scalar::param("c") * Scalar(Rational(1, 2)) - LL);
    EXPECT_THROW(parse_state(V, "L(-1)"), ParseError);
    EXPECT_THROW(parse_state(V, "L(1/2)|0>"), ParseError);
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli(std::vector<std::string>{"check", "--algebra", algebra_path("virasoro.alg")}).code, 0);
    EXPECT_EQ(run_cli(std::vector<std::string>{"check", "--algebra", algebra_path("virasoro_corrupted.alg")}).code, 1);
    EXPECT_EQ(run_cli(std::vector<std::string>{"check"}).code, 2);
    EXPECT_EQ(run_cli(std::vector<std::string>{"frobnicate"}).code, 2);
    EXPECT_EQ(run_cli(std::vector<std::string>{"check", "--builtin", "virasoro", "--set", "c=1/0"}).code, 2);
    EXPECT_EQ(run_cli(std::vector<std::string>{"check", "--algebra", algebra_path("missing.alg")}).code, 2);
    EXPECT_EQ(run_cli(std::vector<std::string>{"binomial-selftest"}).code, 0);
}

TEST(Cli, SyntaxErrorExitsThree) {
    std::string path = ::testing::TempDir() + "broken.alg";
    std::ofstream(path) << "algebra v { generator L : even, weight 2; bracket L L = T L + 2 L l^3; }\n";
    CliResult r = run_cli({"check", "--algebra", path});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("1:"), std::string::npos);
}

TEST(Cli, ModesAgainstClosedForm) {
    CliResult good = run_cli({"modes", "--algebra", algebra_path("virasoro.alg"), "--expect-virasoro"});
    EXPECT_EQ(good.code, 0) << good.out << good.err;
    CliResult bad = run_cli({"modes", "--algebra", algebra_path("virasoro_corrupted.alg"), "--expect-virasoro", "--format", "json"});
    EXPECT_EQ(bad.code, 1);
    auto j = nlohmann::json::parse(bad.out);
    bool mismatch = false;
    for (auto& r : j["results"])
        if (r["status"] == "fail" && r.contains("witness")) mismatch = true;
    EXPECT_TRUE(mismatch);
}

TEST(Cli, JsonIsDeterministicApartFromTiming) {
    std::vector<std::string> args{"envelope-dims", "--algebra", algebra_path("heisenberg.alg"), "--max-weight", "6",
                                  "--format", "json"};
    auto a = nlohmann::json::parse(run_cli(args).out), b = nlohmann::json::parse(run_cli(args).out);
    ASSERT_TRUE(a.contains("timing_ms"));
    a.erase("timing_ms");
    b.erase("timing_ms");
    EXPECT_EQ(a, b);
    EXPECT_EQ(a["dims"].dump().find("11") != std::string::npos, true);
    EXPECT_EQ(a["command"], "envelope-dims");
}

TEST(Cli, AnalysisCommands) {
    EXPECT_EQ(run_cli({"chodos-thorn", "--builtin", "n2", "--L", "L", "--J", "1/2 J"}).code, 0);
    EXPECT_EQ(run_cli({"coset", "--builtin", "virasoro", "--L", "L", "--sub", "L"}).code, 0);
    EXPECT_EQ(run_cli({"griess", "--builtin", "frobenius", "--param", "split=2"}).code, 0);
    EXPECT_EQ(run_cli({"c2", "--builtin", "virasoro", "--max-weight", "6"}).code, 0);
    CliResult m = run_cli({"morphism", "--builtin", "n2", "--to-builtin", "topological", "--image", "L=L - 1/2 T J", "--image",
                 "Gp=2 Q", "--image", "Gm=G", "--image", "J=J", "--image", "c=3 d"});
    EXPECT_EQ(m.code, 0) << m.out << m.err;
    // a check whose precondition fails is reported, not a crash
    EXPECT_EQ(run_cli({"chodos-thorn", "--builtin", "topological", "--L", "L", "--J", "J"}).code, 1);
}
