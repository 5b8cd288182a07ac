#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "padic/padic.hpp"
#include "padic/rational.hpp"

namespace padic {

/// Exact element a + b*sqrt(p) of the real quadratic field Q(sqrt(p)).
///
/// The orthonormalization amplitude k = -1 +- sqrt(p) lives here, which is
/// what lets Gram matrices and eigen-identities be checked with zero
/// tolerance. A value with b == 0 is a plain rational and carries no prime
/// (prime() == 0); mixing two different ambient primes is an error.
class QuadScalar {
  public:
    QuadScalar() : p_(0), a_(0), b_(0) {}
    QuadScalar(Rational a) : p_(0), a_(std::move(a)), b_(0) {}  // NOLINT: implicit by design
    QuadScalar(long n) : p_(0), a_(n), b_(0) {}                 // NOLINT
    QuadScalar(Prime p, Rational a, Rational b) : p_(p.value()), a_(std::move(a)), b_(std::move(b)) {
        normalize();
    }

    const Rational& rational_part() const { return a_; }
    const Rational& surd_part() const { return b_; }
    long prime() const { return p_; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    /// p^(h/2) exactly: rational for even h, a pure surd for odd h.
    static QuadScalar half_power(Prime p, long h) {
        if (h % 2 == 0) return QuadScalar(rational_power(p.value(), h / 2));
        long floor_half = (h - 1) / 2;  // h odd: p^(h/2) = p^((h-1)/2) * sqrt(p)
        return QuadScalar(p, Rational(0), rational_power(p.value(), floor_half));
    }

    double to_double() const {
        double out = a_.get_d();
        if (b_ != 0) out += b_.get_d() * std::sqrt(static_cast<double>(p_));
        return out;
    }
    std::complex<double> to_complex() const { return {to_double(), 0.0}; }

    friend QuadScalar operator+(const QuadScalar& x, const QuadScalar& y) {
        long p = combined_prime(x, y);
        return make(p, x.a_ + y.a_, x.b_ + y.b_);
    }
    friend QuadScalar operator-(const QuadScalar& x, const QuadScalar& y) {
        long p = combined_prime(x, y);
        return make(p, x.a_ - y.a_, x.b_ - y.b_);
    }
    friend QuadScalar operator-(const QuadScalar& x) { return make(x.p_, -x.a_, -x.b_); }
    friend QuadScalar operator*(const QuadScalar& x, const QuadScalar& y) {
        long p = combined_prime(x, y);
        return make(p, x.a_ * y.a_ + x.b_ * y.b_ * p, x.a_ * y.b_ + x.b_ * y.a_);
    }
    friend QuadScalar operator/(const QuadScalar& x, const QuadScalar& y) { return x * y.inverse(); }

    QuadScalar& operator+=(const QuadScalar& y) { return *this = *this + y; }
    QuadScalar& operator-=(const QuadScalar& y) { return *this = *this - y; }
    QuadScalar& operator*=(const QuadScalar& y) { return *this = *this * y; }
    QuadScalar& operator/=(const QuadScalar& y) { return *this = *this / y; }

    /// 1/(a + b sqrt(p)) = (a - b sqrt(p)) / (a^2 - p b^2); the denominator
    /// cannot vanish for nonzero input because sqrt(p) is irrational.
    QuadScalar inverse() const {
        if (is_zero()) throw std::domain_error("QuadScalar: division by zero");
        Rational denom = a_ * a_ - Rational(p_) * b_ * b_;
        return make(p_, a_ / denom, -b_ / denom);
    }

    friend bool operator==(const QuadScalar& x, const QuadScalar& y) {
        if (x.a_ != y.a_ || x.b_ != y.b_) return false;
        return x.b_ == 0 || x.p_ == y.p_;
    }
    friend bool operator!=(const QuadScalar& x, const QuadScalar& y) { return !(x == y); }

  private:
    static QuadScalar make(long p, Rational a, Rational b) {
        QuadScalar s;
        s.p_ = p;
        s.a_ = std::move(a);
        s.b_ = std::move(b);
        s.normalize();
        return s;
    }
    static long combined_prime(const QuadScalar& x, const QuadScalar& y) {
        if (x.p_ == y.p_ || y.p_ == 0) return x.p_;
        if (x.p_ == 0) return y.p_;
        throw std::invalid_argument("QuadScalar: mixed ambient primes");
    }
    void normalize() {
        if (b_ == 0) p_ = 0;
    }

    long p_;
    Rational a_, b_;
};

inline QuadScalar operator*(const Rational& q, const QuadScalar& s) { return QuadScalar(q) * s; }
inline QuadScalar operator*(const QuadScalar& s, const Rational& q) { return s * QuadScalar(q); }

enum class KSign { Plus, Minus };

/// The amplitude k = -1 +- sqrt(p), the root of p - 1 - 2k - k^2 = 0 that
/// makes the orthonormal detail family have unit Gram matrix.
inline QuadScalar orthogonality_root(Prime p, KSign sign) {
    return QuadScalar(p, Rational(-1), Rational(sign == KSign::Plus ? 1 : -1));
}

/// Defect p - 1 - 2k - k^2 of a candidate amplitude; zero for both roots.
inline QuadScalar orthogonality_defect(Prime p, const QuadScalar& k) {
    return QuadScalar(Rational(p.value() - 1)) - QuadScalar(Rational(2)) * k - k * k;
}

enum class BackendKind { ExactQuad, ComplexFloat };

/// Runtime scalar-backend descriptor used by file formats and the CLI.
/// Exact comparisons use rational equality; float comparisons use
/// |delta| <= tolerance * max(1, magnitude).
struct Backend {
    BackendKind kind;
    double tolerance;

    static Backend exact() { return {BackendKind::ExactQuad, 0.0}; }
    static Backend floating(double tol = 1e-10) { return {BackendKind::ComplexFloat, tol}; }

    bool equal(const QuadScalar& a, const QuadScalar& b) const { return a == b; }
    bool equal(const std::complex<double>& a, const std::complex<double>& b) const {
        return std::abs(a - b) <= tolerance * std::max(1.0, std::max(std::abs(a), std::abs(b)));
    }
};

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<QuadScalar> {
    static constexpr bool is_exact = true;
    static QuadScalar conj(const QuadScalar& s) { return s; }
    static QuadScalar from_rational(const Rational& q) { return QuadScalar(q); }
    static std::complex<double> to_complex(const QuadScalar& s) { return s.to_complex(); }
    static bool is_zero(const QuadScalar& s) { return s.is_zero(); }
};

template <>
struct scalar_traits<std::complex<double>> {
    static constexpr bool is_exact = false;
    static std::complex<double> conj(const std::complex<double>& s) { return std::conj(s); }
    static std::complex<double> from_rational(const Rational& q) { return {q.get_d(), 0.0}; }
    static std::complex<double> to_complex(const std::complex<double>& s) { return s; }
    static bool is_zero(const std::complex<double>& s) { return s == std::complex<double>(0.0, 0.0); }
};

}  // namespace padic
