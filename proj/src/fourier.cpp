#include "padic/fourier.hpp"

#include <cmath>

namespace padic {

namespace {

// chi(k_i x_m) = omega^(i*m mod N) with omega = exp(2 pi i / N), N = p^(r-l):
// the fractional part of k_i x_m is exactly (i*m mod N)/N, so one table of
// N-th roots serves the whole window. Table lookups keep values for equal
// fractional parts bit-identical, which the support-duality identity relies on.
std::vector<std::complex<double>> root_table(std::size_t n) {
    std::vector<std::complex<double>> roots(n);
    for (std::size_t j = 0; j < n; ++j)
        roots[j] = std::polar(1.0, two_pi * static_cast<double>(j) / static_cast<double>(n));
    return roots;
}

double forward_scale(const CosetGrid& grid) {
    // p^(l - r/2)
    double p = static_cast<double>(grid.prime().value());
    return std::pow(p, static_cast<double>(grid.constancy_exponent()) -
                           static_cast<double>(grid.ball_exponent()) / 2.0);
}

double inverse_scale(const CosetGrid& grid) {
    // p^(-r/2)
    double p = static_cast<double>(grid.prime().value());
    return std::pow(p, -static_cast<double>(grid.ball_exponent()) / 2.0);
}

}  // namespace

Spectrum dft_forward(const ComplexFunction& f) {
    const std::size_t n = f.size();
    const auto roots = root_table(n);
    const double scale = forward_scale(f.grid());
    std::vector<std::complex<double>> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::complex<double> acc{};
        for (std::size_t m = 0; m < n; ++m) {
            if (f[m] == std::complex<double>{}) continue;
            acc += roots[(i * m) % n] * f[m];
        }
        out[i] = scale * acc;
    }
    return Spectrum(FrequencyGrid(f.grid()), std::move(out));
}

Spectrum dft_forward(const ExactFunction& f) { return dft_forward(to_complex(f)); }

ComplexFunction dft_inverse(const Spectrum& spectrum) {
    const std::size_t n = spectrum.frequencies.size();
    CosetGrid grid = spectrum.frequencies.coset_grid();
    const auto roots = root_table(n);
    const double scale = inverse_scale(grid);
    std::vector<std::complex<double>> out(n);
    for (std::size_t m = 0; m < n; ++m) {
        std::complex<double> acc{};
        for (std::size_t i = 0; i < n; ++i) acc += std::conj(roots[(i * m) % n]) * spectrum.values[i];
        out[m] = scale * acc;
    }
    return ComplexFunction(grid, std::move(out));
}

ComplexFunction convolve_spectral(const ComplexFunction& f, const ComplexFunction& g) {
    f.require_same_grid(g);
    Spectrum sf = dft_forward(f);
    Spectrum sg = dft_forward(g);
    const std::size_t n = sf.frequencies.size();
    const auto roots = root_table(n);
    std::vector<std::complex<double>> out(n);
    for (std::size_t m = 0; m < n; ++m) {
        std::complex<double> acc{};
        for (std::size_t i = 0; i < n; ++i) acc += std::conj(roots[(i * m) % n]) * sf.values[i] * sg.values[i];
        out[m] = acc;
    }
    return ComplexFunction(f.grid(), std::move(out));
}

Spectrum product_spectrum(const ComplexFunction& f, const ComplexFunction& g) {
    f.require_same_grid(g);
    Spectrum sf = dft_forward(f);
    Spectrum sg = dft_forward(g);
    const std::size_t n = sf.frequencies.size();
    const double scale = inverse_scale(f.grid());
    std::vector<std::complex<double>> out(n);
    for (std::size_t zeta = 0; zeta < n; ++zeta) {
        std::complex<double> acc{};
        for (std::size_t k = 0; k < n; ++k) acc += sf.values[k] * sg.values[(zeta + n - k) % n];
        out[zeta] = scale * acc;
    }
    return Spectrum(sf.frequencies, std::move(out));
}

double parseval_gap(const ComplexFunction& f) {
    Spectrum s = dft_forward(f);
    double lhs = 0.0;
    for (const auto& v : s.values) lhs += std::norm(v);
    std::complex<double> rhs = inner_product(f, f);
    return std::abs(lhs - rhs.real()) + std::abs(rhs.imag());
}

}  // namespace padic
