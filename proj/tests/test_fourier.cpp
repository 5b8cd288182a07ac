#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "padic/fourier.hpp"
#include "support/cyclotomic.hpp"
#include "support/helpers.hpp"

using namespace padic;
using namespace padic::testing;

namespace {

ComplexFunction character_function(const CosetGrid& grid, const Rational& k) {
    std::vector<std::complex<double>> values(grid.size());
    for (std::size_t m = 0; m < grid.size(); ++m)
        values[m] = character(k * grid.representative(m), grid.prime());
    return ComplexFunction(grid, std::move(values));
}

}  // namespace

TEST_CASE("frequency grid enumeration") {
    CosetGrid grid(Prime(2), 1, -1);
    FrequencyGrid freq(grid);
    CHECK(freq.size() == 4);
    CHECK(freq.frequency(0) == 0);
    CHECK(freq.frequency(1) == make_ratio(1, 2));
    CHECK(freq.frequency(3) == make_ratio(3, 2));
    for (std::size_t i = 0; i < freq.size(); ++i) {
        if (i > 0) CHECK(padic_norm(freq.frequency(i), grid.prime()) <= 2);  // |k|_p <= p^(-l)
        CHECK(freq.index_of(freq.frequency(i)) == i);
    }
    // Reduction modulo B_{-r}: k + p^r maps to the same index.
    CHECK(freq.index_of(freq.frequency(1) + 2) == 1);
}

TEST_CASE("forward transform") {
    SUBCASE("indicator of the zero coset") {
        CosetGrid grid(Prime(2), 0, -1);
        Spectrum s = dft_forward(indicator_function(grid, Rational(0), -1));
        // Two-term sums: p^(-r/2) p^l [chi(k*0)*1 + chi(k*1)*0] = 1/2 for both k.
        CHECK(close(s.values[0], {0.5, 0.0}));
        CHECK(close(s.values[1], {0.5, 0.0}));
    }
    SUBCASE("constants concentrate at zero frequency") {
        CosetGrid grid(Prime(3), 1, -1);
        std::complex<double> c{0.7, -0.2};
        Spectrum s = dft_forward(ComplexFunction::constant(grid, c));
        CHECK(close(s.values[0], c * std::pow(3.0, 0.5), 1e-12));
        for (std::size_t i = 1; i < s.values.size(); ++i) CHECK(close(s.values[i], {0.0, 0.0}, 1e-12));
    }
    SUBCASE("a conjugate character concentrates at its frequency") {
        CosetGrid grid(Prime(2), 2, -1);
        FrequencyGrid freq(grid);
        std::size_t target = 5;
        Spectrum s = dft_forward(character_function(grid, -freq.frequency(target)));
        for (std::size_t i = 0; i < s.values.size(); ++i) {
            std::complex<double> expected = i == target ? std::complex<double>{2.0, 0.0} : 0.0;  // p^(r/2)
            CHECK(close(s.values[i], expected, 1e-12));
        }
    }
}

TEST_CASE("inverse transform") {
    CosetGrid grid(Prime(2), 0, -1);
    FrequencyGrid freq(grid);
    SUBCASE("two-term inversion") {
        Spectrum s(freq, {{0.5, 0.0}, {0.5, 0.0}});
        ComplexFunction f = dft_inverse(s);
        CHECK(close(f[0], {1.0, 0.0}));
        CHECK(close(f[1], {0.0, 0.0}));  // chi(-(1/2)*1) = -1 cancels
    }
    SUBCASE("zero spectrum") {
        ComplexFunction f = dft_inverse(Spectrum(freq, {{0.0, 0.0}, {0.0, 0.0}}));
        CHECK(sup_norm(f) == 0.0);
    }
    SUBCASE("round trip on random functions") {
        auto gen = rng(808);
        for (auto g : {CosetGrid(Prime(2), 2, -2), CosetGrid(Prime(3), 1, -2), CosetGrid(Prime(5), 1, 0)}) {
            for (int i = 0; i < 34; ++i) {
                ComplexFunction f = random_complex_function(g, gen);
                CHECK(sup_distance(dft_inverse(dft_forward(f)), f) <= 1e-10);
            }
        }
    }
}

TEST_CASE("parseval identity") {
    auto gen = rng(909);
    for (auto g : {CosetGrid(Prime(2), 3, -1), CosetGrid(Prime(3), 2, 0)})
        for (int i = 0; i < 20; ++i) CHECK(parseval_gap(random_complex_function(g, gen)) <= 1e-10);
}

TEST_CASE("spectral convolution matches direct convolution") {
    SUBCASE("indicator example") {
        CosetGrid grid(Prime(2), 0, -1);
        ComplexFunction ind = to_complex(indicator_function(grid, Rational(0), -1));
        ComplexFunction h = convolve_spectral(ind, ind);
        CHECK(close(h[0], {0.5, 0.0}, 1e-12));
        CHECK(close(h[1], {0.0, 0.0}, 1e-12));
    }
    SUBCASE("zero factor") {
        auto gen = rng(111);
        CosetGrid grid(Prime(3), 1, -1);
        ComplexFunction f = random_complex_function(grid, gen);
        CHECK(sup_norm(convolve_spectral(f, ComplexFunction::zero(grid))) <= 1e-14);
    }
    SUBCASE("unit-ball indicator on B_1") {
        CosetGrid grid(Prime(2), 1, 0);
        ComplexFunction omega = to_complex(indicator_function(grid, Rational(0), 0));
        // Brute-force double sum h(x_m) = p^l sum f(y) g(x_m - y).
        ExactFunction exact = indicator_function(grid, Rational(0), 0);
        ComplexFunction h = convolve_spectral(omega, omega);
        CHECK(close(h[0], {1.0, 0.0}, 1e-12));
        CHECK(close(h[1], {0.0, 0.0}, 1e-12));
        ExactFunction direct = convolve_direct(exact, exact);
        CHECK(direct[0] == QuadScalar(Rational(1)));
        CHECK(direct[1] == QuadScalar());
    }
    SUBCASE("random pairs across grids") {
        auto gen = rng(222);
        for (auto g : {CosetGrid(Prime(2), 2, -1), CosetGrid(Prime(3), 1, -1)}) {
            for (int i = 0; i < 25; ++i) {
                ComplexFunction f = random_complex_function(g, gen);
                ComplexFunction h = random_complex_function(g, gen);
                ExactFunction fe = random_exact_function(g, gen);
                ExactFunction he = random_exact_function(g, gen);
                CHECK(sup_distance(convolve_spectral(to_complex(fe), to_complex(he)),
                                   to_complex(convolve_direct(fe, he))) <= 1e-10);
                CHECK(sup_distance(convolve_spectral(f, h), convolve_spectral(h, f)) <= 1e-10);
            }
        }
    }
}

TEST_CASE("product spectrum matches the transform of the pointwise product") {
    SUBCASE("two concentrated spectra add frequencies") {
        CosetGrid grid(Prime(3), 1, -1);
        FrequencyGrid freq(grid);
        std::size_t k1 = 2, k2 = 7;
        ComplexFunction f = character_function(grid, -freq.frequency(k1));
        ComplexFunction g = character_function(grid, -freq.frequency(k2));
        Spectrum s = product_spectrum(f, g);
        std::size_t target = (k1 + k2) % freq.size();
        for (std::size_t i = 0; i < s.values.size(); ++i)
            if (i != target) CHECK(close(s.values[i], {0.0, 0.0}, 1e-10));
        CHECK(std::abs(s.values[target]) > 1.0);
    }
    SUBCASE("multiplying by one reproduces the spectrum") {
        auto gen = rng(333);
        CosetGrid grid(Prime(2), 1, -1);
        ComplexFunction f = random_complex_function(grid, gen);
        ComplexFunction one = ComplexFunction::constant(grid, {1.0, 0.0});
        Spectrum lhs = product_spectrum(f, one);
        Spectrum rhs = dft_forward(f);
        for (std::size_t i = 0; i < lhs.values.size(); ++i)
            CHECK(close(lhs.values[i], rhs.values[i], 1e-10));
    }
    SUBCASE("random pairs") {
        auto gen = rng(444);
        CosetGrid grid(Prime(3), 1, -1);
        for (int i = 0; i < 40; ++i) {
            ComplexFunction f = random_complex_function(grid, gen);
            ComplexFunction g = random_complex_function(grid, gen);
            Spectrum lhs = product_spectrum(f, g);
            Spectrum rhs = dft_forward(pointwise_product(f, g));
            for (std::size_t k = 0; k < lhs.values.size(); ++k)
                CHECK(close(lhs.values[k], rhs.values[k], 1e-10));
        }
    }
}

TEST_CASE("support duality") {
    // f built at resolution l, viewed on refined/extended windows: the
    // transform vanishes for |k|_p > p^(-l) and is constant modulo B_{-r}.
    auto gen = rng(555);
    for (auto base : {CosetGrid(Prime(2), 1, 0), CosetGrid(Prime(3), 1, 0)}) {
        ExactFunction f = random_exact_function(base, gen);

        // Finer resolution: frequencies beyond the old window vanish exactly.
        CosetGrid fine(base.prime(), base.ball_exponent(), base.constancy_exponent() - 2);
        ExactFunction f_fine = embed(f, fine);
        FrequencyGrid freq_fine(fine);
        Spectrum s = dft_forward(f_fine);
        Rational cutoff = rational_power(base.prime().value(), -base.constancy_exponent());
        for (std::size_t i = 1; i < freq_fine.size(); ++i) {
            Rational k = freq_fine.frequency(i);
            if (padic_norm(k, base.prime()) > cutoff) {
                CHECK(RootOfUnitySum::character_sum(f_fine, k).is_zero());
                CHECK(std::abs(s.values[i]) <= 1e-10);
            }
        }

        // Larger ball: the transform is constant along k -> k + m p^r, and
        // the float values are bit-identical because equal fractional parts
        // hit the same root-table entry.
        CosetGrid wide(base.prime(), base.ball_exponent() + 2, base.constancy_exponent());
        ExactFunction f_wide = embed(f, wide);
        FrequencyGrid freq_wide(wide);
        Spectrum sw = dft_forward(f_wide);
        std::size_t period = 1;  // index stride of p^r steps: p^(r - l)
        for (long i = 0; i < base.ball_exponent() - base.constancy_exponent(); ++i)
            period *= static_cast<std::size_t>(base.prime().value());
        for (std::size_t i = 0; i < freq_wide.size(); ++i) {
            std::size_t shifted = (i + period) % freq_wide.size();
            CHECK(sw.values[i] == sw.values[shifted]);
            CHECK((RootOfUnitySum::character_sum(f_wide, freq_wide.frequency(i)) -
                   RootOfUnitySum::character_sum(f_wide, freq_wide.frequency(shifted)))
                      .is_zero());
        }
    }
}
