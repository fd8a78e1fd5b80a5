#pragma once

#include "vla/rational.hpp"
#include "vla/report.hpp"

#include <string>

namespace vla {

// The two alternating binomial sums used when inverting mode formulas:
//   sum_{i=0}^n (-1)^i binom(n,i)/(m+i) = n! / prod_{i=0}^n (m+i)      (m > 0)
//   sum_{i=0}^n (-1)^i binom(m+i,i) binom(m+n+1,n-i) = 1                (m >= 0)
inline Rational binomial_reciprocal_sum(long n, long m) {
    Rational s(0);
    for (long i = 0; i <= n; ++i) s += sign_pow(i) * binom(n, i) / Rational(m + i);
    return s;
}

inline Rational binomial_reciprocal_closed(long n, long m) {
    Rational p(1);
    for (long i = 0; i <= n; ++i) p *= m + i;
    return factorial(n) / p;
}

inline Rational binomial_unit_sum(long n, long m) {
    Rational s(0);
    for (long i = 0; i <= n; ++i) s += sign_pow(i) * binom(m + i, i) * binom(m + n + 1, n - i);
    return s;
}

inline Report check_binomial_identities(long n_max, long m_max) {
    Report rep;
    long bad_recip = 0, bad_unit = 0;
    std::string first_recip, first_unit;
    for (long n = 0; n <= n_max; ++n) {
        for (long m = 0; m <= m_max; ++m) {
            if (m > 0) {
                Rational lhs = binomial_reciprocal_sum(n, m), rhs = binomial_reciprocal_closed(n, m);
                if (lhs != rhs) {
                    if (!bad_recip++)
                        first_recip = "n=" + std::to_string(n) + " m=" + std::to_string(m) + ": " +
                                      lhs.get_str() + " != " + rhs.get_str();
                }
            }
            Rational u = binomial_unit_sum(n, m);
            if (u != 1) {
                if (!bad_unit++)
                    first_unit = "n=" + std::to_string(n) + " m=" + std::to_string(m) + ": " + u.get_str();
            }
        }
    }
    rep.add("reciprocal-sum", bad_recip == 0, first_recip);
    rep.add("unit-sum", bad_unit == 0, first_unit);
    return rep;
}

}  // namespace vla
