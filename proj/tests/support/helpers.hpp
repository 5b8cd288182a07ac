#pragma once

#include <complex>
#include <random>
#include <vector>

#include "padic/grid_function.hpp"
#include "padic/padic.hpp"
#include "padic/quad.hpp"
#include "padic/rational.hpp"

namespace padic::testing {

inline bool close(std::complex<double> a, std::complex<double> b, double tol = 1e-12) {
    return std::abs(a - b) <= tol;
}

inline bool close(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

/// Deterministic RNG; unit tests never depend on wall-clock entropy.
inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Rational random_small_rational(std::mt19937_64& gen) {
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 9);
    return make_ratio(num(gen), den(gen));
}

inline ExactFunction random_exact_function(const CosetGrid& grid, std::mt19937_64& gen) {
    std::vector<QuadScalar> values(grid.size());
    for (auto& v : values) v = QuadScalar(random_small_rational(gen));
    return ExactFunction(grid, std::move(values));
}

inline ComplexFunction random_complex_function(const CosetGrid& grid, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    std::vector<std::complex<double>> values(grid.size());
    for (auto& v : values) v = {coord(gen), coord(gen)};
    return ComplexFunction(grid, std::move(values));
}

/// Indicator of B_gamma(center) as an exact grid function, straight from the
/// definition; used as a test input everywhere.
inline ExactFunction indicator_function(const CosetGrid& grid, const Rational& center, long gamma) {
    std::vector<QuadScalar> values(grid.size());
    for (std::size_t m = 0; m < grid.size(); ++m)
        values[m] = QuadScalar(Rational(ball_indicator(grid.representative(m), center, gamma, grid.prime()) ? 1 : 0));
    return ExactFunction(grid, std::move(values));
}

}  // namespace padic::testing
