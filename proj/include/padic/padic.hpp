#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "padic/rational.hpp"

namespace padic {

inline constexpr double two_pi = 6.283185307179586476925286766559;

/// A validated prime. Every grid, scalar and operator carries one of these,
/// so a composite modulus cannot slip in past construction.
class Prime {
  public:
    explicit Prime(long p) : p_(p) {
        if (p < 2) throw std::invalid_argument("Prime: p must be >= 2");
        for (long d = 2; d * d <= p; ++d)
            if (p % d == 0) throw std::invalid_argument("Prime: " + std::to_string(p) + " is not prime");
    }
    long value() const { return p_; }
    friend bool operator==(Prime a, Prime b) { return a.p_ == b.p_; }
    friend bool operator!=(Prime a, Prime b) { return a.p_ != b.p_; }

  private:
    long p_;
};

/// v_p(x) for nonzero rational x: multiplicity of p in the numerator minus
/// multiplicity in the denominator.
inline long padic_valuation(const Rational& x, Prime p) {
    if (x == 0) throw std::invalid_argument("padic_valuation: undefined for 0");
    return prime_multiplicity(x.get_num(), p.value()) - prime_multiplicity(x.get_den(), p.value());
}

/// |x|_p = p^(-v_p(x)), with |0|_p = 0.
inline Rational padic_norm(const Rational& x, Prime p) {
    if (x == 0) return Rational(0);
    return rational_power(p.value(), -padic_valuation(x, p));
}

/// A rational together with its cached p-adic valuation.
class PAdicRational {
  public:
    PAdicRational(Prime p, Rational value)
        : prime_(p),
          value_(std::move(value)),
          valuation_(value_ == 0 ? std::numeric_limits<long>::max() : padic_valuation(value_, p)) {}

    const Rational& value() const { return value_; }
    Prime prime() const { return prime_; }
    bool is_zero() const { return value_ == 0; }
    long valuation() const {
        if (is_zero()) throw std::domain_error("PAdicRational: valuation of 0");
        return valuation_;
    }
    Rational norm() const { return is_zero() ? Rational(0) : rational_power(prime_.value(), -valuation_); }

  private:
    Prime prime_;
    Rational value_;
    long valuation_;
};

/// The p-adic fractional part: the unique m/p^s in [0,1) with
/// |x - m/p^s|_p <= 1. Only defined when the reduced denominator of x is a
/// pure power of p; anything else is rejected rather than approximated,
/// since such arguments never arise from grid points.
inline Rational frac_part(const Rational& x, Prime p) {
    Integer den = x.get_den();
    Integer prime(p.value());
    Integer reduced;
    long s = static_cast<long>(mpz_remove(reduced.get_mpz_t(), den.get_mpz_t(), prime.get_mpz_t()));
    if (reduced != 1)
        throw std::domain_error("frac_part: denominator of " + to_string(x) + " is not a power of " +
                                std::to_string(p.value()));
    if (s == 0) return Rational(0);
    Integer modulus;
    mpz_pow_ui(modulus.get_mpz_t(), prime.get_mpz_t(), static_cast<unsigned long>(s));
    Integer m;
    mpz_mod(m.get_mpz_t(), x.get_num().get_mpz_t(), modulus.get_mpz_t());
    Rational out(m, modulus);
    out.canonicalize();
    return out;
}

/// Normalized additive character chi(x) = exp(2*pi*i*{x}_p). Exactly 1 on
/// p-adic integers.
inline std::complex<double> character(const Rational& x, Prime p) {
    Rational t = frac_part(x, p);
    if (t == 0) return {1.0, 0.0};
    return std::polar(1.0, two_pi * t.get_d());
}

/// 1 iff |x - center|_p <= p^gamma.
inline bool ball_indicator(const Rational& x, const Rational& center, long gamma, Prime p) {
    Rational d = x - center;
    if (d == 0) return true;
    return -padic_valuation(d, p) <= gamma;
}

/// 1 iff |x - center|_p = p^gamma.
inline bool sphere_indicator(const Rational& x, const Rational& center, long gamma, Prime p) {
    Rational d = x - center;
    if (d == 0) return false;
    return -padic_valuation(d, p) == gamma;
}

/// Canonical cosets of B_l inside B_r. Representative m is the rational
/// m * p^(-r) for m = 0 .. p^(r-l)-1, i.e. the base-p digits of m placed at
/// positions -r .. -l-1 (little-endian). This fixed order is what makes
/// matrices, files and test vectors reproducible.
class CosetGrid {
  public:
    CosetGrid(Prime p, long r, long l) : p_(p), r_(r), l_(l) {
        if (l >= r) throw std::invalid_argument("CosetGrid: need l < r");
        double log_size = static_cast<double>(r - l) * std::log2(static_cast<double>(p.value()));
        if (log_size > 40) throw std::length_error("CosetGrid: p^(r-l) too large");
        size_ = 1;
        for (long i = 0; i < r - l; ++i) size_ *= static_cast<std::size_t>(p.value());
    }

    Prime prime() const { return p_; }
    long ball_exponent() const { return r_; }
    long constancy_exponent() const { return l_; }
    std::size_t size() const { return size_; }

    /// Haar measure of a single coset, p^l.
    Rational coset_measure() const { return rational_power(p_.value(), l_); }
    /// Haar measure of the whole ball, p^r.
    Rational total_measure() const { return rational_power(p_.value(), r_); }

    Rational representative(std::size_t m) const {
        if (m >= size_) throw std::out_of_range("CosetGrid: representative index");
        Rational rep(static_cast<unsigned long>(m));
        return rep * rational_power(p_.value(), -r_);
    }

    std::vector<Rational> representatives() const {
        std::vector<Rational> out;
        out.reserve(size_);
        for (std::size_t m = 0; m < size_; ++m) out.push_back(representative(m));
        return out;
    }

    /// Index of the unique representative within distance p^l of x.
    /// Rejects x outside B_r.
    std::size_t index_of(const Rational& x) const {
        Rational scaled = x * rational_power(p_.value(), r_);
        const Integer& num = scaled.get_num();
        const Integer& den = scaled.get_den();
        Integer modulus(static_cast<unsigned long>(size_));
        if (mpz_divisible_p(den.get_mpz_t(), Integer(p_.value()).get_mpz_t()))
            throw std::domain_error("CosetGrid: point " + to_string(x) + " lies outside B_" + std::to_string(r_));
        Integer den_inv;
        if (mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t()) == 0)
            throw std::domain_error("CosetGrid: point " + to_string(x) + " lies outside B_" + std::to_string(r_));
        Integer m;
        mpz_mul(m.get_mpz_t(), num.get_mpz_t(), den_inv.get_mpz_t());
        mpz_mod(m.get_mpz_t(), m.get_mpz_t(), modulus.get_mpz_t());
        return static_cast<std::size_t>(mpz_get_ui(m.get_mpz_t()));
    }

    /// Indices of the cosets making up the ball B_gamma(center), as the
    /// stride-p^(r-gamma) progression through the canonical order.
    /// Requires l <= gamma <= r and center inside B_r.
    std::vector<std::size_t> ball_indices(const Rational& center, long gamma) const {
        if (gamma < l_ || gamma > r_)
            throw std::invalid_argument("CosetGrid: ball scale outside [l, r]");
        std::size_t stride = 1;
        for (long i = 0; i < r_ - gamma; ++i) stride *= static_cast<std::size_t>(p_.value());
        std::size_t base = index_of(center) % stride;
        std::vector<std::size_t> out;
        out.reserve(size_ / stride);
        for (std::size_t m = base; m < size_; m += stride) out.push_back(m);
        return out;
    }

    friend bool operator==(const CosetGrid& a, const CosetGrid& b) {
        return a.p_ == b.p_ && a.r_ == b.r_ && a.l_ == b.l_;
    }
    friend bool operator!=(const CosetGrid& a, const CosetGrid& b) { return !(a == b); }

  private:
    Prime p_;
    long r_, l_;
    std::size_t size_;
};

}  // namespace padic
