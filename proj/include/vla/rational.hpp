#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace vla {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

// Parses "p", "-p", "p/q". Throws std::invalid_argument otherwise.
inline Rational parse_rational(const std::string& text) {
    std::size_t i = 0;
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    bool digits = false, slash = false, den_digits = false;
    for (; i < text.size(); ++i) {
        char ch = text[i];
        if (ch >= '0' && ch <= '9') {
            (slash ? den_digits : digits) = true;
        } else if (ch == '/' && !slash && digits) {
            slash = true;
        } else {
            throw std::invalid_argument("not a rational: '" + text + "'");
        }
    }
    if (!digits || (slash && !den_digits)) throw std::invalid_argument("not a rational: '" + text + "'");
    std::string body = text[0] == '+' ? text.substr(1) : text;
    Rational r;
    if (r.set_str(body, 10) != 0) throw std::invalid_argument("not a rational: '" + text + "'");
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline long to_long(const Rational& q) {
    if (!is_integer(q) || !q.get_num().fits_slong_p()) throw std::domain_error("not a machine integer: " + q.get_str());
    return q.get_num().get_si();
}

// floor of a rational as a machine integer
inline long floor_long(const Rational& q) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f.get_si();
}

// Generalized binomial coefficient a(a-1)...(a-n+1)/n!, zero for n < 0.
inline Rational binom(const Rational& a, long n) {
    if (n < 0) return Rational(0);
    Rational r(1);
    for (long i = 0; i < n; ++i) {
        r *= a - i;
        r /= i + 1;
    }
    return r;
}

inline Rational binom(long a, long n) {
    if (n < 0) return Rational(0);
    // exact machine-integer path; r stays integral at every step
    __int128 r = 1;
    for (long i = 0; i < n; ++i) {
        r = r * (a - i) / (i + 1);
        if (r > (__int128(1) << 62) || r < -(__int128(1) << 62)) return binom(Rational(a), n);
        if (r == 0) break;
    }
    return Rational(static_cast<long>(r));
}

// binom(a, n) as a machine integer; throws when it does not fit.
inline long binom_long(long a, long n) {
    if (n < 0) return 0;
    __int128 r = 1;
    for (long i = 0; i < n && r != 0; ++i) {
        r = r * (a - i) / (i + 1);
        if (r > (__int128(1) << 62) || r < -(__int128(1) << 62)) throw std::overflow_error("binomial overflow");
    }
    return static_cast<long>(r);
}

inline Rational factorial(long n) {
    Rational r(1);
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

inline int sign_pow(long n) { return (n % 2 == 0) ? 1 : -1; }

}  // namespace vla
