#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "padic/grid_function.hpp"
#include "padic/padic.hpp"

namespace padic {

/// Dual enumeration of the coset grid: frequency i is i * p^l for
/// i = 0 .. p^(r-l)-1, the representatives of Q_p/B_{-r} with |k|_p <= p^(-l).
/// Index 0 is k = 0 and subtraction of frequencies is index arithmetic mod
/// p^(r-l), mirroring the coset side.
class FrequencyGrid {
  public:
    explicit FrequencyGrid(const CosetGrid& grid)
        : p_(grid.prime()), r_(grid.ball_exponent()), l_(grid.constancy_exponent()), size_(grid.size()) {}

    Prime prime() const { return p_; }
    long ball_exponent() const { return r_; }
    long constancy_exponent() const { return l_; }
    std::size_t size() const { return size_; }

    Rational frequency(std::size_t i) const {
        if (i >= size_) throw std::out_of_range("FrequencyGrid: frequency index");
        return Rational(static_cast<unsigned long>(i)) * rational_power(p_.value(), l_);
    }

    std::vector<Rational> frequencies() const {
        std::vector<Rational> out;
        out.reserve(size_);
        for (std::size_t i = 0; i < size_; ++i) out.push_back(frequency(i));
        return out;
    }

    /// Index of a frequency given as a rational multiple of p^l; reduces
    /// modulo B_{-r} (i.e. modulo p^(r-l) on indices).
    std::size_t index_of(const Rational& k) const {
        Rational scaled = k * rational_power(p_.value(), -l_);
        if (scaled.get_den() != 1)
            throw std::domain_error("FrequencyGrid: " + to_string(k) + " is not a window frequency");
        Integer m;
        mpz_mod(m.get_mpz_t(), scaled.get_num().get_mpz_t(), Integer(static_cast<unsigned long>(size_)).get_mpz_t());
        return static_cast<std::size_t>(mpz_get_ui(m.get_mpz_t()));
    }

    CosetGrid coset_grid() const { return CosetGrid(p_, r_, l_); }

    friend bool operator==(const FrequencyGrid& a, const FrequencyGrid& b) {
        return a.p_ == b.p_ && a.r_ == b.r_ && a.l_ == b.l_;
    }
    friend bool operator!=(const FrequencyGrid& a, const FrequencyGrid& b) { return !(a == b); }

  private:
    Prime p_;
    long r_, l_;
    std::size_t size_;
};

/// A transform: one complex amplitude per window frequency.
struct Spectrum {
    FrequencyGrid frequencies;
    std::vector<std::complex<double>> values;

    Spectrum(FrequencyGrid freq, std::vector<std::complex<double>> vals)
        : frequencies(freq), values(std::move(vals)) {
        if (values.size() != frequencies.size())
            throw std::invalid_argument("Spectrum: value count does not match frequency grid");
    }
};

/// spectrum[k] = p^(-r/2) * p^l * sum_m chi(k x_m) f[m].
Spectrum dft_forward(const ComplexFunction& f);
Spectrum dft_forward(const ExactFunction& f);

/// f(x_m) = p^(-r/2) * sum_k chi(-k x_m) spectrum[k]; inverts dft_forward.
ComplexFunction dft_inverse(const Spectrum& spectrum);

/// Convolution through the spectral side: sum_k chi(-kx) f~(k) g~(k).
ComplexFunction convolve_spectral(const ComplexFunction& f, const ComplexFunction& g);

/// Transform of the pointwise product from the spectral side:
/// p^(-r/2) * sum_k f~(k) g~(zeta - k), zeta - k reduced into the window.
Spectrum product_spectrum(const ComplexFunction& f, const ComplexFunction& g);

/// sum_k |f~(k)|^2 - <f, f>; zero up to roundoff by unitarity.
double parseval_gap(const ComplexFunction& f);

}  // namespace padic
