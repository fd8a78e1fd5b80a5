#pragma once

#include "vla/envelope.hpp"
#include "vla/vlie.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vla {

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(int l, int c, const std::string& msg)
        : std::runtime_error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg), line(l), col(c) {}
};

namespace parse_detail {

enum class Tok { ident, number, sym, end };

struct Token {
    Tok kind;
    std::string text;
    int line, col;
};

// '#' starts a comment running to the end of the line.
inline std::vector<Token> tokenize(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        unsigned char ch = src[i];
        if (std::isspace(ch)) {
            advance(1);
        } else if (ch == '#') {
            while (i < src.size() && src[i] != '\n') advance(1);
        } else if (std::isalpha(ch) || ch == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
            out.push_back({Tok::ident, src.substr(i, j - i), line, col});
            advance(j - i);
        } else if (std::isdigit(ch)) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Tok::number, src.substr(i, j - i), line, col});
            advance(j - i);
        } else if (std::string("{}():;,=+-*/^|<>").find(static_cast<char>(ch)) != std::string::npos) {
            out.push_back({Tok::sym, std::string(1, static_cast<char>(ch)), line, col});
            advance(1);
        } else {
            throw ParseError(line, col, std::string("unexpected character '") + static_cast<char>(ch) + "'");
        }
    }
    out.push_back({Tok::end, "", line, col});
    return out;
}

class Cursor {
public:
    explicit Cursor(std::vector<Token> t) : toks_(std::move(t)) {}

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    Token next() {
        Token t = peek();
        if (pos_ < toks_.size() - 1) ++pos_;
        return t;
    }
    bool is(const char* s, std::size_t k = 0) const { return peek(k).kind == Tok::sym && peek(k).text == s; }
    bool is_word(const char* s) const { return peek().kind == Tok::ident && peek().text == s; }
    bool accept(const char* s) {
        if (!is(s)) return false;
        next();
        return true;
    }
    Token expect(const char* s) {
        if (!is(s)) fail(std::string("expected '") + s + "'");
        return next();
    }
    Token expect_word(const char* s) {
        if (!is_word(s)) fail(std::string("expected '") + s + "'");
        return next();
    }
    Token ident(const char* what) {
        if (peek().kind != Tok::ident) fail(std::string("expected ") + what);
        return next();
    }
    unsigned long number() {
        if (peek().kind != Tok::number) fail("expected a number");
        Token t = next();
        try {
            return std::stoul(t.text);
        } catch (const std::exception&) {
            throw ParseError(t.line, t.col, "number out of range");
        }
    }
    // [-] int [/ int]
    Rational rational() {
        bool neg = accept("-");
        if (peek().kind != Tok::number) fail("expected a rational number");
        Rational q(mpz_class(next().text));
        if (accept("/")) {
            const Token& d = peek();
            if (d.kind != Tok::number) fail("expected a denominator");
            mpz_class den(next().text);
            if (den == 0) throw ParseError(d.line, d.col, "zero denominator");
            q /= Rational(den);
        }
        return neg ? Rational(-q) : q;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        std::string got = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
        throw ParseError(t.line, t.col, msg + ", found " + got);
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

// A factor or term before it is attached to a symbol: operator monomials
// T^(i) l^(j) with coefficients, keyed by the symbol they act on (none = -1,
// generator g = g, central z = kCentral + z).
constexpr long kCentral = 1L << 30;
using OpPoly = std::map<std::pair<unsigned, unsigned>, Scalar>;
using Value = std::map<long, OpPoly>;

inline void accumulate(OpPoly& p, std::pair<unsigned, unsigned> e, const Scalar& c) {
    auto it = p.find(e);
    if (it == p.end()) {
        if (!c.is_zero()) p.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
}

inline Value scalar_value(const Scalar& c) { return c.is_zero() ? Value{} : Value{{-1, {{{0, 0}, c}}}}; }

inline Value add(Value a, const Value& b, int sign) {
    for (auto& [s, p] : b)
        for (auto& [e, c] : p) accumulate(a[s], e, sign < 0 ? -c : c);
    for (auto it = a.begin(); it != a.end();) it = it->second.empty() ? a.erase(it) : std::next(it);
    return a;
}

// T and l commute with everything here; divided powers multiply with binomials.
inline Value multiply(const Value& a, const Value& b, const Token& at) {
    Value r;
    for (auto& [sa, pa] : a)
        for (auto& [sb, pb] : b) {
            if (sa >= 0 && sb >= 0) throw ParseError(at.line, at.col, "product of two symbols is not linear");
            long s = sa >= 0 ? sa : sb;
            for (auto& [ea, ca] : pa)
                for (auto& [eb, cb] : pb) {
                    Rational k = binom(ea.first + eb.first, ea.first) * binom(ea.second + eb.second, ea.second);
                    accumulate(r[s], {ea.first + eb.first, ea.second + eb.second}, ca * cb * Scalar(k));
                }
        }
    for (auto it = r.begin(); it != r.end();) it = it->second.empty() ? r.erase(it) : std::next(it);
    return r;
}

}  // namespace parse_detail

// Parsed file: the presentation plus optional envelope settings and the
// warnings raised while completing the table.
struct AlgebraFile {
    VLiePresentation presentation;
    std::vector<std::string> params;               // declared scalar parameters
    std::map<std::string, Rational> settings;      // `set k = 1;` central/parameter values
    std::vector<std::string> warnings;
};

class AlgebraParser {
public:
    explicit AlgebraParser(const std::string& text) : cur_(parse_detail::tokenize(text)) {}

    AlgebraFile parse() {
        using parse_detail::Tok;
        cur_.expect_word("algebra");
        Token name = cur_.ident("an algebra name");
        out_.presentation.set_name(name.text);
        cur_.expect("{");
        while (!cur_.is("}")) {
            if (cur_.peek().kind == Tok::end) cur_.fail("expected '}'");
            statement();
        }
        cur_.expect("}");
        if (cur_.peek().kind != Tok::end) cur_.fail("expected end of input");
        auto& R = out_.presentation;
        R.finalize();
        for (auto& [a, b] : R.synthesized())
            out_.warnings.push_back("bracket " + R.decl(a).name + " " + R.decl(b).name +
                                    " synthesized from the opposite orientation");
        return std::move(out_);
    }

    RElem element(const VLiePresentation& R) {
        out_.presentation = R;
        free_params_ = true;
        Token at = cur_.peek();
        if (at.kind == parse_detail::Tok::end) cur_.fail("expected an element");
        Value v = expr();
        if (cur_.peek().kind != parse_detail::Tok::end) cur_.fail("expected end of element");
        RElem x = R.zero();
        LambdaPoly p = to_lambda(v, at);
        for (auto& [e, c] : p.terms()) {
            if (e[0]) throw ParseError(at.line, at.col, "element may not contain l");
            x += c;
        }
        return x;
    }

private:
    using Token = parse_detail::Token;
    using Value = parse_detail::Value;

    void statement() {
        if (cur_.is_word("generator")) return generator();
        if (cur_.is_word("central")) return central();
        if (cur_.is_word("param")) return param();
        if (cur_.is_word("bracket")) return bracket_stmt();
        if (cur_.is_word("set")) return setting();
        cur_.fail("expected 'generator', 'central', 'param', 'bracket' or 'set'");
    }

    Token fresh_name(const char* what) {
        Token t = cur_.ident(what);
        if (t.text == "T" || t.text == "l") throw ParseError(t.line, t.col, "'" + t.text + "' is reserved");
        auto& S = *out_.presentation.symbols();
        bool taken = S.find_gen(t.text) || S.find_central(t.text) ||
                     std::find(out_.params.begin(), out_.params.end(), t.text) != out_.params.end();
        if (taken) throw ParseError(t.line, t.col, "duplicate symbol '" + t.text + "'");
        return t;
    }

    void generator() {
        cur_.next();
        Token n = fresh_name("a generator name");
        cur_.expect(":");
        bool odd;
        if (cur_.is_word("even")) {
            odd = false;
        } else if (cur_.is_word("odd")) {
            odd = true;
        } else {
            cur_.fail("expected 'even' or 'odd'");
        }
        cur_.next();
        cur_.expect(",");
        cur_.expect_word("weight");
        Rational w = cur_.rational();
        cur_.expect(";");
        out_.presentation.add_generator(n.text, odd, w);
    }

    void central() {
        cur_.next();
        Token n = fresh_name("a central symbol");
        cur_.expect(";");
        out_.presentation.add_central(n.text);
    }

    void param() {
        cur_.next();
        Token n = fresh_name("a parameter name");
        cur_.expect(";");
        out_.params.push_back(n.text);
    }

    void setting() {
        cur_.next();
        Token n = cur_.ident("a central or parameter name");
        auto& S = *out_.presentation.symbols();
        bool known = S.find_central(n.text) ||
                     std::find(out_.params.begin(), out_.params.end(), n.text) != out_.params.end();
        if (!known) throw ParseError(n.line, n.col, "unknown symbol '" + n.text + "'");
        cur_.expect("=");
        out_.settings[n.text] = cur_.rational();
        cur_.expect(";");
    }

    std::uint32_t gen_operand() {
        Token t = cur_.ident("a generator name");
        auto g = out_.presentation.symbols()->find_gen(t.text);
        if (!g) throw ParseError(t.line, t.col, "unknown symbol '" + t.text + "'");
        return *g;
    }

    void bracket_stmt() {
        Token kw = cur_.next();
        std::uint32_t a = gen_operand();
        std::uint32_t b = gen_operand();
        cur_.expect("=");
        Token at = cur_.peek();
        LambdaPoly p = to_lambda(expr(), at);
        cur_.expect(";");
        auto& R = out_.presentation;
        const std::string pair = R.decl(a).name + " " + R.decl(b).name;
        if (R.is_declared(a, b)) throw ParseError(kw.line, kw.col, "duplicate bracket " + pair);
        if (R.is_declared(b, a))
            throw ParseError(kw.line, kw.col, "both orientations declared for " + pair + "; declare only one");
        try {
            R.validate_entry(a, b, p);
        } catch (const std::invalid_argument& e) {
            throw ParseError(at.line, at.col, e.what());
        }
        R.set_bracket(a, b, p);
    }

    // expr := ['+'|'-'] term { ('+'|'-') term }
    Value expr() {
        int sign = 1;
        if (cur_.accept("-")) sign = -1;
        else cur_.accept("+");
        Value v = parse_detail::add({}, term(), sign);
        while (cur_.is("+") || cur_.is("-")) {
            sign = cur_.next().text == "-" ? -1 : 1;
            v = parse_detail::add(std::move(v), term(), sign);
        }
        return v;
    }

    bool starts_factor() const {
        auto k = cur_.peek().kind;
        return k == parse_detail::Tok::ident || k == parse_detail::Tok::number || cur_.is("(");
    }

    // term := factor { ['*'] factor | '/' number }
    Value term() {
        Value v = factor();
        for (;;) {
            Token at = cur_.peek();
            if (cur_.accept("*")) {
                v = parse_detail::multiply(v, factor(), at);
            } else if (cur_.accept("/")) {
                Token d = cur_.peek();
                unsigned long n = cur_.number();
                if (n == 0) throw ParseError(d.line, d.col, "division by zero");
                v = parse_detail::multiply(v, parse_detail::scalar_value(Scalar(Rational(1, static_cast<long>(n)))), at);
            } else if (starts_factor()) {
                v = parse_detail::multiply(v, factor(), at);
            } else {
                return v;
            }
        }
    }

    unsigned divided_exponent(const Token& base) {
        if (!cur_.is("^")) return 1;
        cur_.next();
        if (!cur_.is("(")) {
            const Token& t = cur_.peek();
            throw ParseError(t.line, t.col,
                             "plain power " + base.text + "^n is not accepted; write the divided power " + base.text +
                                 "^(n)");
        }
        cur_.next();
        unsigned long k = cur_.number();
        cur_.expect(")");
        return static_cast<unsigned>(k);
    }

    Value factor() {
        using parse_detail::Tok;
        const Token t = cur_.peek();
        if (t.kind == Tok::number) {
            cur_.next();
            return parse_detail::scalar_value(Scalar(Rational(mpz_class(t.text))));
        }
        if (cur_.accept("(")) {
            Value v = expr();
            cur_.expect(")");
            return v;
        }
        if (t.kind != Tok::ident) cur_.fail("expected a term");
        cur_.next();
        if (t.text == "T") return {{-1, {{{divided_exponent(t), 0}, Scalar(1)}}}};
        if (t.text == "l") return {{-1, {{{0, divided_exponent(t)}, Scalar(1)}}}};
        auto& S = *out_.presentation.symbols();
        if (auto g = S.find_gen(t.text)) return {{static_cast<long>(*g), {{{0, 0}, Scalar(1)}}}};
        if (auto z = S.find_central(t.text)) return {{parse_detail::kCentral + *z, {{{0, 0}, Scalar(1)}}}};
        if (free_params_ || std::find(out_.params.begin(), out_.params.end(), t.text) != out_.params.end())
            return parse_detail::scalar_value(Scalar::param(t.text));
        throw ParseError(t.line, t.col, "unknown symbol '" + t.text + "'");
    }

    LambdaPoly to_lambda(const Value& v, const Token& at) {
        const auto& R = out_.presentation;
        LambdaPoly p;
        for (auto& [s, ops] : v) {
            if (s < 0) throw ParseError(at.line, at.col, "term without a generator or central symbol");
            for (auto& [e, c] : ops) {
                RElem x = s >= parse_detail::kCentral
                              ? (e.first ? R.zero()
                                         : RElem::central(R.symbols(), static_cast<std::uint32_t>(s - parse_detail::kCentral), c))
                              : RElem::gen(R.symbols(), static_cast<std::uint32_t>(s), e.first, c);
                p += R.lam(x, e.second);
            }
        }
        return p;
    }

    parse_detail::Cursor cur_;
    AlgebraFile out_;
    bool free_params_ = false;
};

inline AlgebraFile parse_algebra(const std::string& text) { return AlgebraParser(text).parse(); }

// Canonical file text: declarations in table order, then one orientation per
// unordered pair (the first in generator order), zero entries omitted.
inline std::string render_algebra(const VLiePresentation& R, const std::vector<std::string>& params = {},
                                  const std::map<std::string, Rational>& settings = {}) {
    std::string s = "algebra " + (R.name().empty() ? std::string("unnamed") : R.name()) + " {\n";
    for (auto& g : R.generators())
        s += "  generator " + g.name + " : " + (g.odd ? "odd" : "even") + ", weight " + g.weight.get_str() + ";\n";
    for (auto& z : R.centrals()) s += "  central " + z + ";\n";
    for (auto& p : params) s += "  param " + p + ";\n";
    for (std::uint32_t a = 0; a < R.num_gens(); ++a)
        for (std::uint32_t b = a; b < R.num_gens(); ++b) {
            const auto& e = R.entry(a, b);
            if (!e.is_zero()) s += "  bracket " + R.decl(a).name + " " + R.decl(b).name + " = " + e.to_string() + ";\n";
        }
    for (auto& [k, v] : settings) s += "  set " + k + " = " + v.get_str() + ";\n";
    return s + "}\n";
}

// Same symbols in the same order and identical tables on every ordered pair.
inline bool same_presentation(const VLiePresentation& A, const VLiePresentation& B) {
    if (A.num_gens() != B.num_gens() || A.centrals() != B.centrals() || A.graded() != B.graded()) return false;
    for (std::uint32_t g = 0; g < A.num_gens(); ++g) {
        const auto &x = A.decl(g), &y = B.decl(g);
        if (x.name != y.name || x.odd != y.odd || x.weight != y.weight) return false;
    }
    for (std::uint32_t a = 0; a < A.num_gens(); ++a)
        for (std::uint32_t b = 0; b < A.num_gens(); ++b)
            if (A.entry(a, b).to_string() != B.entry(a, b).to_string()) return false;
    return true;
}

// States: sums of [coef] [T^(k)] word, a word being modes a(t) applied right
// to left to |0>, e.g. "L(-2)L(-1)|0> - 1/2 c L(-4)|0>"; a bare generator
// name a stands for a(-1)|0>, and "|0>" alone (or "1") for the vacuum.
class StateParser {
public:
    StateParser(Envelope& V, const std::string& text) : V_(V), cur_(parse_detail::tokenize(text)) {}

    EnvElem parse() {
        EnvElem x = sum();
        if (cur_.peek().kind != parse_detail::Tok::end) cur_.fail("expected end of state expression");
        return x;
    }

private:
    using Token = parse_detail::Token;

    EnvElem sum() {
        Scalar sign = cur_.accept("-") ? Scalar(-1) : Scalar(1);
        if (sign.is_one()) cur_.accept("+");
        EnvElem x = term() * sign;
        while (cur_.is("+") || cur_.is("-")) {
            Scalar s = cur_.next().text == "-" ? Scalar(-1) : Scalar(1);
            x += term() * s;
        }
        return x;
    }

    bool at_vacuum() const { return cur_.is("|") && cur_.peek(1).text == "0" && cur_.is(">", 2); }

    EnvElem term() {
        using parse_detail::Tok;
        Scalar coef(1);
        unsigned tpow = 0;
        bool any = false;
        for (;;) {
            const Token t = cur_.peek();
            if (t.kind == Tok::number) {
                cur_.next();
                Rational q{mpz_class(t.text)};
                if (cur_.accept("/")) {
                    Token d = cur_.peek();
                    unsigned long n = cur_.number();
                    if (n == 0) throw ParseError(d.line, d.col, "division by zero");
                    q /= static_cast<long>(n);
                }
                coef = coef * Scalar(q);
                any = true;
            } else if (t.kind == Tok::ident && t.text == "T") {
                cur_.next();
                unsigned k = 1;
                if (cur_.accept("^")) {
                    if (!cur_.is("(")) cur_.fail("write divided powers as T^(k)");
                    cur_.next();
                    k = static_cast<unsigned>(cur_.number());
                    cur_.expect(")");
                }
                coef = coef * Scalar(binom(tpow + k, k));
                tpow += k;
            } else if (t.kind == Tok::ident && !V_.presentation().symbols()->find_gen(t.text) && !cur_.is("(", 1)) {
                cur_.next();
                coef = coef * Scalar::param(t.text);
                any = true;
            } else {
                break;
            }
            cur_.accept("*");
        }
        EnvElem w;
        if (at_vacuum()) {
            cur_.next(), cur_.next(), cur_.next();
            w = V_.vacuum();
        } else if (cur_.peek().kind == Tok::ident) {
            w = word();
        } else if (any) {
            w = V_.vacuum();  // pure scalar
        } else {
            cur_.fail("expected a state");
        }
        return V_.translate_divided(w, tpow) * coef;
    }

    // a(t) b(s) ... |0>, or a bare generator name
    EnvElem word() {
        std::vector<std::pair<std::uint32_t, std::int64_t>> modes;
        while (cur_.peek().kind == parse_detail::Tok::ident) {
            Token t = cur_.next();
            auto g = V_.presentation().symbols()->find_gen(t.text);
            if (!g) throw ParseError(t.line, t.col, "unknown symbol '" + t.text + "'");
            if (!cur_.accept("(")) {
                if (!modes.empty()) cur_.fail("expected '(' after generator in a mode word");
                return V_.generator_state(*g);
            }
            Rational idx = cur_.rational();
            cur_.expect(")");
            if (idx.get_den() != 1) throw ParseError(t.line, t.col, "mode index must be an integer");
            modes.push_back({*g, idx.get_num().get_si()});
        }
        if (!at_vacuum()) cur_.fail("expected '|0>' to end the mode word");
        cur_.next(), cur_.next(), cur_.next();
        EnvElem x = V_.vacuum();
        for (auto it = modes.rbegin(); it != modes.rend(); ++it) x = V_.apply_mode(it->first, it->second, x);
        return x;
    }

    Envelope& V_;
    parse_detail::Cursor cur_;
};

inline EnvElem parse_state(Envelope& V, const std::string& text) { return StateParser(V, text).parse(); }

// Element of R in the bracket expression language without l; identifiers that
// are not symbols of R are read as parameters.
inline RElem parse_element(const VLiePresentation& R, const std::string& text) {
    return AlgebraParser(text).element(R);
}

}  // namespace vla
