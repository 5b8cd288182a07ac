#pragma once

#include <gmpxx.h>

#include <cstdio>
#include <stdexcept>
#include <string>

namespace padic {

// All exact arithmetic in this library runs on GMP rationals, always
// canonicalized (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// p^e as an exact rational, e of either sign.
inline Rational rational_power(long base, long exponent) {
    if (base == 0) throw std::invalid_argument("rational_power: zero base");
    Integer num;
    mpz_ui_pow_ui(num.get_mpz_t(), static_cast<unsigned long>(base),
                  static_cast<unsigned long>(exponent >= 0 ? exponent : -exponent));
    Rational q(num);
    if (exponent < 0) q = 1 / q;
    return q;
}

/// Multiplicity of the prime p in a nonzero integer.
inline long prime_multiplicity(const Integer& n, long p) {
    if (n == 0) throw std::invalid_argument("prime_multiplicity: zero argument");
    Integer reduced, prime(p);
    return static_cast<long>(mpz_remove(reduced.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t()));
}

inline std::string to_string(const Rational& q) {
    return q.get_str();
}

/// num/den in lowest terms (mpq_class does not canonicalize on its own).
inline Rational make_ratio(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "a" or "a/b"; throws std::invalid_argument on malformed input.
inline Rational parse_rational(const std::string& text) {
    Rational q;
    if (text.empty() || mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
        throw std::invalid_argument("parse_rational: malformed rational '" + text + "'");
    if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
        throw std::invalid_argument("parse_rational: zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

/// Fixed 17-significant-digit rendering; every emitted float goes through here
/// so identical runs produce identical bytes.
inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace padic
