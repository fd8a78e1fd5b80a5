#pragma once

#include "vla/binomial.hpp"
#include "vla/c2.hpp"
#include "vla/catalog.hpp"
#include "vla/identities.hpp"
#include "vla/modes.hpp"
#include "vla/parser.hpp"
#include "vla/zhu.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace vla::cli {

enum Exit { ok = 0, check_failed = 1, usage = 2, parse_failed = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string algebra_file, builtin, format = "text", window = "-4..4", max_weight;
    std::vector<std::string> params, sets;
    // per command
    std::vector<std::string> pairs, images, to_params;
    std::string expect, convention = "weight", a, b, L = "L", sub, J, conformal, reduce, o_bound, to_builtin,
                to_algebra;
    long n = 0, n_max = 12, m_max = 12;
    unsigned degree = 2;
    bool exhaustive = false, expect_virasoro = false;
};

struct Loaded {
    VLiePresentation R;
    std::string name;
    std::map<std::string, std::string> params;  // echoed build parameters and settings
    std::map<std::string, Scalar> values;       // --set and file settings
    std::vector<std::string> warnings;
    std::string lie;                            // Lie algebra of a builtin affine build
};

// Output beside the report: named JSON values (dims, products) shown in both formats.
struct Outcome {
    Report report;
    nlohmann::ordered_json extra = nlohmann::ordered_json::object();
};

inline Rational rational_arg(const std::string& s, const std::string& what) {
    try {
        return vla::parse_rational(s);
    } catch (const std::invalid_argument&) {
        throw UsageError("bad rational for " + what + ": '" + s + "'");
    }
}

inline std::pair<std::string, std::string> split_assignment(const std::string& s, const std::string& flag) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError(flag + " expects name=value, got '" + s + "'");
    return {s.substr(0, eq), s.substr(eq + 1)};
}

inline std::pair<long, long> parse_window(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos) throw UsageError("--window expects a..b, got '" + s + "'");
    try {
        std::size_t used = 0;
        long lo = std::stol(s.substr(0, dots), &used);
        if (used != dots) throw std::invalid_argument("");
        std::string rest = s.substr(dots + 2);
        long hi = std::stol(rest, &used);
        if (used != rest.size() || lo > hi) throw std::invalid_argument("");
        return {lo, hi};
    } catch (const std::exception&) {
        throw UsageError("--window expects integers a..b with a <= b, got '" + s + "'");
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Weight denominators other than 1 and 2 are outside the catalog's range.
inline void require_half_integral(const VLiePresentation& R) {
    for (auto& g : R.generators()) {
        auto d = g.weight.get_den();
        if (d != 1 && d != 2)
            throw std::invalid_argument("generator " + g.name + " has weight " + g.weight.get_str() +
                                        "; only integer and half-integer weights are accepted");
    }
}

inline Loaded load_from(const std::string& file, const std::string& builtin, const std::vector<std::string>& params,
                        const std::vector<std::string>& sets) {
    if (file.empty() == builtin.empty()) throw UsageError("give exactly one of --algebra or --builtin");
    Loaded L;
    if (!builtin.empty()) {
        for (auto& p : params) L.params.insert(split_assignment(p, "--param"));
        try {
            L.R = catalog::build(builtin, L.params);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        L.name = builtin;
        if (builtin == "affine") L.lie = L.params.count("lie") ? L.params.at("lie") : "sl2";
    } else {
        if (!params.empty()) throw UsageError("--param applies to --builtin only");
        AlgebraFile F = parse_algebra(read_file(file));
        require_half_integral(F.presentation);
        L.R = std::move(F.presentation);
        L.name = L.R.name();
        L.warnings = std::move(F.warnings);
        for (auto& [k, v] : F.settings) {
            L.values[k] = Scalar(v);
            L.params[k] = v.get_str();
        }
    }
    for (auto& s : sets) {
        auto [k, v] = split_assignment(s, "--set");
        Rational q = rational_arg(v, "--set " + k);
        L.values[k] = Scalar(q);
        L.params[k] = q.get_str();
    }
    return L;
}

// ---- commands --------------------------------------------------------------

inline Rational weight_bound(const Options& o, const Rational& dflt) {
    return o.max_weight.empty() ? dflt : rational_arg(o.max_weight, "--max-weight");
}

inline void prefix_warnings(Report& rep, const Loaded& L) {
    for (auto& w : L.warnings) rep.info("warning", w);
}

inline Outcome cmd_check(const Loaded& L, const Options& o) {
    Outcome out;
    prefix_warnings(out.report, L);
    VLiePresentation R = L.values.empty() ? L.R : L.R.specialized(L.values);
    IdentityOptions opt;
    opt.exhaustive = o.exhaustive;
    Report detail = check_identities(R, opt);
    // one summary line per axiom family ahead of the per-tuple entries
    for (std::string family : {"skew", "jacobi"}) {
        std::size_t n = 0, bad = 0;
        std::string first;
        for (auto& e : detail.entries)
            if (e.name.rfind(family + " ", 0) == 0) {
                ++n;
                if (e.status == Status::fail && !bad++) first = e.name.substr(family.size() + 1) + ": " + e.witness;
            }
        out.report.add(family, bad == 0,
                       bad ? std::to_string(bad) + "/" + std::to_string(n) + " failed; " + first
                           : std::to_string(n) + " tuples");
    }
    out.report.append(detail);
    return out;
}

inline std::vector<std::pair<std::string, std::string>> parse_pairs(const std::vector<std::string>& items) {
    std::vector<std::pair<std::string, std::string>> out;
    for (auto& item : items) {
        std::stringstream ss(item);
        std::string p;
        while (std::getline(ss, p, ';')) {
            auto comma = p.find(',');
            if (comma == std::string::npos) throw UsageError("--pairs expects A,B, got '" + p + "'");
            out.emplace_back(p.substr(0, comma), p.substr(comma + 1));
        }
    }
    return out;
}

inline Outcome cmd_modes(const Loaded& L, const Options& o) {
    Outcome out;
    prefix_warnings(out.report, L);
    const VLiePresentation& R = L.R;
    auto [lo, hi] = parse_window(o.window);
    ModeConvention conv;
    if (o.convention == "weight") conv = ModeConvention::weight;
    else if (o.convention == "t") conv = ModeConvention::t;
    else throw UsageError("--convention expects weight or t");
    auto pairs = parse_pairs(o.pairs);
    for (auto& [a, b] : pairs)
        if (!R.symbols()->find_gen(a) || !R.symbols()->find_gen(b))
            throw UsageError("--pairs names unknown generator in " + a + "," + b);

    std::string table = o.expect_virasoro ? "virasoro" : o.expect;
    if (!table.empty()) {
        std::vector<ExpectedBracket> expected;
        try {
            expected = expected::by_name(R, table);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        if (!pairs.empty()) {
            std::vector<ExpectedBracket> keep;
            for (auto& ex : expected)
                for (auto& [a, b] : pairs)
                    if (ex.a == a && ex.b == b) keep.push_back(ex);
            for (auto& [a, b] : pairs) {
                bool found = false;
                for (auto& ex : expected) found = found || (ex.a == a && ex.b == b);
                if (!found) out.report.add("modes " + a + " " + b, false, "no closed form in table " + table);
            }
            expected = std::move(keep);
        }
        out.report.append(verify_weak_commutator(R, expected, lo, hi, conv));
        return out;
    }
    if (pairs.empty())
        for (auto& x : R.generators())
            for (auto& y : R.generators()) pairs.emplace_back(x.name, y.name);
    auto& table_json = out.extra["brackets"] = nlohmann::ordered_json::array();
    for (auto& [a, b] : pairs) {
        std::uint32_t ia = R.gen_index(a), ib = R.gen_index(b);
        for (auto& n : mode_window(R, ia, lo, hi, conv))
            for (auto& m : mode_window(R, ib, lo, hi, conv)) {
                std::string v = mode_bracket(R, ia, n, ib, m, conv).to_string();
                std::string key = "[" + a + "_" + n.get_str() + ", " + b + "_" + m.get_str() + "]";
                out.report.info(key, v);
                table_json.push_back({{"a", a}, {"n", n.get_str()}, {"b", b}, {"m", m.get_str()}, {"value", v}});
            }
    }
    return out;
}

inline nlohmann::ordered_json dims_json(const std::vector<std::pair<Rational, std::size_t>>& d) {
    auto arr = nlohmann::ordered_json::array();
    for (auto& [h, n] : d) arr.push_back(n);
    return arr;
}
inline nlohmann::ordered_json weights_json(const std::vector<std::pair<Rational, std::size_t>>& d) {
    auto arr = nlohmann::ordered_json::array();
    for (auto& [h, n] : d) arr.push_back(h.get_str());
    return arr;
}
inline std::string dims_text(const std::vector<std::pair<Rational, std::size_t>>& d) {
    std::string s;
    for (auto& [h, n] : d) s += (s.empty() ? "" : ",") + std::to_string(n);
    return "[" + s + "]";
}

inline Outcome cmd_envelope_dims(const Loaded& L, const Options& o) {
    Outcome out;
    prefix_warnings(out.report, L);
    Envelope V(L.R, L.values);
    Rational h = weight_bound(o, 8);
    auto got = V.graded_dimension(h);
    auto want = V.generating_function_dimension(h);
    out.report.info("dims", dims_text(got));
    out.report.add("pbw-matches-symmetric-algebra", got == want, got == want ? "" : "expected " + dims_text(want));
    out.extra["weights"] = weights_json(got);
    out.extra["dims"] = dims_json(got);
    return out;
}

inline Outcome cmd_nproduct(const Loaded& L, const Options& o) {
    if (o.a.empty() || o.b.empty()) throw UsageError("nproduct needs --a and --b");
    Outcome out;
    Envelope V(L.R, L.values);
    EnvElem a = parse_state(V, o.a), b = parse_state(V, o.b);
    EnvElem r = V.nth_product(a, o.n, b);
    out.report.info("a", V.to_string(a));
    out.report.info("b", V.to_string(b));
    out.report.info("a_(" + std::to_string(o.n) + ")b", V.to_string(r));
    out.extra["value"] = V.to_string(r);
    return out;
}

inline Outcome cmd_verify(const Loaded& L, const Options& o) {
    Outcome out;
    prefix_warnings(out.report, L);
    Envelope V(L.R, L.values);
    Rational h = weight_bound(o, 2);
    auto pool = basis_pool(V, h);
    out.report.info("pool", std::to_string(pool.size()) + " basis states of weight <= " + h.get_str());
    out.report.append(verify_identities(V, pool));
    return out;
}

inline Outcome cmd_c2(const Loaded& L, const Options& o) {
    Outcome out;
    prefix_warnings(out.report, L);
    Envelope V(L.R, L.values);
    Rational h = weight_bound(o, 6);
    C2Quotient Q = c2_quotient(V, h);
    std::vector<std::pair<Rational, std::size_t>> d;
    for (auto& [w, reps] : Q.basis) {
        d.emplace_back(w, reps.size());
        std::string words;
        for (auto id : reps) words += (words.empty() ? "" : ", ") + V.word_string(id);
        out.report.info("quotient h=" + w.get_str(), words.empty() ? "0" : words);
    }
    out.report.info("dims", dims_text(d));
    out.report.append(check_c2_poisson(V, Q));
    out.extra["weights"] = weights_json(d);
    out.extra["dims"] = dims_json(d);
    return out;
}

inline Outcome cmd_zhu(const Loaded& L, const Options& o) {
    Outcome out;
    prefix_warnings(out.report, L);
    Envelope V(L.R, L.values);
    Rational h = weight_bound(o, 2);
    Rational bound = o.o_bound.empty() ? h + 2 : rational_arg(o.o_bound, "--o-bound");
    std::optional<EnvElem> conformal;
    if (!o.conformal.empty()) {
        conformal = parse_state(V, o.conformal);
    } else if (auto g = L.R.symbols()->find_gen("L"); g && L.R.decl(*g).weight == 2) {
        conformal = V.generator_state(*g);
    }
    if (!o.reduce.empty()) {
        auto cls = zhu_reduce(V, parse_state(V, o.reduce), bound);
        out.report.info("class", V.to_string(cls.representative) + " (" + zhu_status_name(cls.status) + ")");
        out.extra["class"] = {{"representative", V.to_string(cls.representative)},
                              {"status", zhu_status_name(cls.status)}};
    }
    out.report.append(check_zhu_relations(V, basis_pool(V, h), bound, {}, conformal));
    if (!L.lie.empty()) out.report.append(affine_zhu_iso(V, catalog::lie_by_name(L.lie), o.degree, bound));
    return out;
}

inline Outcome cmd_coset(const Loaded& L, const Options& o) {
    if (o.sub.empty()) throw UsageError("coset needs --sub");
    Outcome out;
    auto r = catalog::coset_conformal(L.R, parse_element(L.R, o.L), parse_element(L.R, o.sub));
    out.report = r.report;
    return out;
}

inline Outcome cmd_chodos_thorn(const Loaded& L, const Options& o) {
    if (o.J.empty()) throw UsageError("chodos-thorn needs --J");
    Outcome out;
    auto r = catalog::chodos_thorn(L.R, parse_element(L.R, o.L), parse_element(L.R, o.J));
    out.report = r.report;
    return out;
}

inline Outcome cmd_griess(const Loaded& L, const Options&) {
    Outcome out;
    out.report = catalog::griess(L.R).report;
    return out;
}

inline Outcome cmd_morphism(const Loaded& L, const Options& o) {
    Loaded target = o.to_builtin.empty() && o.to_algebra.empty()
                        ? L
                        : load_from(o.to_algebra, o.to_builtin, o.to_params, {});
    std::map<std::string, RElem> images;
    for (auto& s : o.images) {
        auto [k, v] = split_assignment(s, "--image");
        images[k] = parse_element(target.R, v);
    }
    // unlisted symbols map to the same-named symbol of the target
    for (auto& g : L.R.generators())
        if (!images.count(g.name) && target.R.symbols()->find_gen(g.name)) images[g.name] = target.R.gen(g.name);
    for (auto& z : L.R.centrals())
        if (!images.count(z) && target.R.symbols()->find_central(z)) images[z] = target.R.central(z);
    Outcome out;
    out.report.info("target", target.name);
    out.report.append(check_morphism(L.R, target.R, images));
    return out;
}

inline Outcome cmd_binomial(const Options& o) {
    Outcome out;
    out.report = check_binomial_identities(o.n_max, o.m_max);
    return out;
}

// ---- rendering -------------------------------------------------------------

inline nlohmann::ordered_json to_json(const std::string& command, const std::string& algebra,
                                      const std::map<std::string, std::string>& params, const Outcome& out,
                                      long long timing_ms) {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["algebra"] = algebra;
    j["params"] = nlohmann::ordered_json::object();
    for (auto& [k, v] : params) j["params"][k] = v;
    auto& res = j["results"] = nlohmann::ordered_json::array();
    for (auto& e : out.report.entries) {
        nlohmann::ordered_json r;
        r["name"] = e.name;
        r["status"] = status_name(e.status);
        if (!e.witness.empty()) r["witness"] = e.witness;
        res.push_back(std::move(r));
    }
    for (auto& [k, v] : out.extra.items()) j[k] = v;
    j["timing_ms"] = timing_ms;
    return j;
}

inline void render_text(std::ostream& os, const std::string& command, const std::string& algebra,
                        const std::map<std::string, std::string>& params, const Outcome& out, long long timing_ms) {
    os << command;
    if (!algebra.empty()) os << " " << algebra;
    for (auto& [k, v] : params) os << " " << k << "=" << v;
    os << "\n";
    std::size_t width = 0;
    for (auto& e : out.report.entries) width = std::max(width, e.name.size());
    for (auto& e : out.report.entries) {
        os << std::left << std::setw(5) << status_name(e.status) << " " << std::setw(static_cast<int>(width)) << e.name;
        if (!e.witness.empty()) os << "  " << e.witness;
        os << "\n";
    }
    std::size_t checks = 0;
    for (auto& e : out.report.entries) checks += e.status != Status::info;
    os << checks << " checks, " << out.report.failures() << " failed, " << timing_ms << " ms\n";
}

// ---- dispatch --------------------------------------------------------------

inline int run_command(const std::vector<std::string>& args, std::ostream& os, std::ostream& es) {
    CLI::App app{"Symbolic engine for vertex Lie algebras and their enveloping vertex algebras", "vla"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    Options o;
    app.add_option("--algebra", o.algebra_file, "algebra definition file");
    app.add_option("--builtin", o.builtin, "catalog algebra")
        ->check(CLI::IsMember(catalog::builtin_names()));
    app.add_option("--param", o.params, "catalog build parameter name=value");
    app.add_option("--max-weight", o.max_weight, "weight bound");
    app.add_option("--window", o.window, "index window a..b");
    app.add_option("--set", o.sets, "specialize a central or parameter, name=rational");
    app.add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));

    struct Cmd {
        const char* name;
        const char* help;
        bool needs_algebra;
    };
    const std::vector<Cmd> cmds = {
        {"check", "skew-symmetry and Jacobi on the generator table", true},
        {"modes", "Borcherds mode brackets, optionally against a closed-form table", true},
        {"envelope-dims", "PBW graded dimensions against the symmetric-algebra count", true},
        {"nproduct", "a_(n) b in the enveloping vertex algebra", true},
        {"verify", "field identities on basis states up to --max-weight", true},
        {"c2", "V/C2(V) dimensions and its Poisson bracket", true},
        {"zhu", "Zhu relations modulo the bounded O-span", true},
        {"coset", "coset Virasoro vector L - L'", true},
        {"chodos-thorn", "shifted Virasoro vector L + T J", true},
        {"griess", "Griess algebra and its Virasoro vectors", true},
        {"morphism", "check a map given on generators", true},
        {"binomial-selftest", "binomial identities", false},
    };
    std::map<std::string, CLI::App*> sub;
    for (auto& c : cmds) sub[c.name] = app.add_subcommand(c.name, c.help);

    sub["check"]->add_flag("--exhaustive", o.exhaustive, "also sample T-decorated elements");
    auto* m = sub["modes"];
    m->add_option("--pairs", o.pairs, "generator pairs A,B (separate several with ';')");
    m->add_flag("--expect-virasoro", o.expect_virasoro, "compare with the Virasoro closed form");
    m->add_option("--expect", o.expect, "closed-form table: virasoro, neveu_schwarz, topological");
    m->add_option("--convention", o.convention, "weight (a_n) or t (a_(t))");
    auto* np = sub["nproduct"];
    np->add_option("--a", o.a, "state, e.g. L(-2)L(-1)|0>");
    np->add_option("--b", o.b, "state");
    np->add_option("-n,--n", o.n, "product index")->required();
    auto* z = sub["zhu"];
    z->add_option("--o-bound", o.o_bound, "weight bound of the O-span");
    z->add_option("--conformal", o.conformal, "conformal state for the centrality check");
    z->add_option("--reduce", o.reduce, "state to reduce modulo the O-span");
    z->add_option("--degree", o.degree, "PBW degree for the affine isomorphism check");
    sub["coset"]->add_option("--L", o.L, "conformal vector");
    sub["coset"]->add_option("--sub", o.sub, "sub-Virasoro vector");
    sub["chodos-thorn"]->add_option("--L", o.L, "Virasoro vector");
    sub["chodos-thorn"]->add_option("--J", o.J, "primary U(1) vector");
    auto* mo = sub["morphism"];
    mo->add_option("--to-builtin", o.to_builtin, "target catalog algebra");
    mo->add_option("--to-algebra", o.to_algebra, "target algebra file");
    mo->add_option("--to-param", o.to_params, "target build parameter");
    mo->add_option("--image", o.images, "image of a symbol, X=expr");
    sub["binomial-selftest"]->add_option("--n-max", o.n_max);
    sub["binomial-selftest"]->add_option("--m-max", o.m_max);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        os << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        os << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        es << "usage: " << e.what() << "\n";
        return usage;
    }
    std::string command;
    bool needs_algebra = true;
    for (auto& c : cmds)
        if (sub[c.name]->parsed()) command = c.name, needs_algebra = c.needs_algebra;

    auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    Loaded L;
    try {
        if (needs_algebra) L = load_from(o.algebra_file, o.builtin, o.params, o.sets);
        try {
            if (command == "check") out = cmd_check(L, o);
            else if (command == "modes") out = cmd_modes(L, o);
            else if (command == "envelope-dims") out = cmd_envelope_dims(L, o);
            else if (command == "nproduct") out = cmd_nproduct(L, o);
            else if (command == "verify") out = cmd_verify(L, o);
            else if (command == "c2") out = cmd_c2(L, o);
            else if (command == "zhu") out = cmd_zhu(L, o);
            else if (command == "coset") out = cmd_coset(L, o);
            else if (command == "chodos-thorn") out = cmd_chodos_thorn(L, o);
            else if (command == "griess") out = cmd_griess(L, o);
            else if (command == "morphism") out = cmd_morphism(L, o);
            else out = cmd_binomial(o);
        } catch (const std::invalid_argument& e) {
            // precondition of the requested check not met by this algebra
            out.report.add("error", false, e.what());
        }
    } catch (const UsageError& e) {
        es << "usage: " << e.what() << "\n";
        return usage;
    } catch (const ParseError& e) {
        es << "parse error: " << e.what() << "\n";
        return parse_failed;
    } catch (const std::invalid_argument& e) {
        // file parsed but rejected while completing the table
        es << "parse error: " << e.what() << "\n";
        return parse_failed;
    }
    long long ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    if (o.format == "json") os << to_json(command, L.name, L.params, out, ms).dump(2) << "\n";
    else render_text(os, command, L.name, L.params, out, ms);
    return out.report.passed() ? ok : check_failed;
}

inline int run_command(int argc, char** argv, std::ostream& os, std::ostream& es) {
    return run_command(std::vector<std::string>(argv + 1, argv + argc), os, es);
}

}  // namespace vla::cli
