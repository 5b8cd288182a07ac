#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "padic/bases.hpp"
#include "padic/grid_function.hpp"
#include "padic/operators.hpp"

namespace padic {

struct VladimirovOperator {
    double alpha;
};

struct KernelOperator {
    KernelSpec spec;
};

/// Generators that are diagonal in the orthonormal detail family: the
/// Vladimirov operator always, hierarchical kernels when their cutoff fits
/// the window.
using EvolutionOperator = std::variant<VladimirovOperator, KernelOperator>;

struct EvolutionRun {
    CosetGrid grid;
    std::vector<double> times;
    std::vector<ComplexFunction> snapshots;
};

/// Eigenvalue of a basis element under the generator: 0 for the constant,
/// the closed-form scale eigenvalue otherwise.
double generator_eigenvalue(const EvolutionOperator& op, const CosetGrid& grid, const BasisElement& element);

/// Dense generator matrix (float), for the oracle path.
OperatorMatrix<double> generator_matrix(const EvolutionOperator& op, const CosetGrid& grid);

/// Expands the initial condition in the orthonormal basis, decays each
/// coefficient by exp(lambda t) and synthesizes one snapshot per time.
/// Coefficients and eigenvalues are exact until the final exponential when
/// the initial condition is exact.
EvolutionRun solve_spectral(const CosetGrid& grid, const EvolutionOperator& op, const ExactFunction& f0,
                            const std::vector<double>& times, KSign sign = KSign::Plus);
EvolutionRun solve_spectral(const CosetGrid& grid, const EvolutionOperator& op, const ComplexFunction& f0,
                            const std::vector<double>& times, KSign sign = KSign::Plus);

/// Snapshots through the matrix exponential; the independent check of
/// solve_spectral.
EvolutionRun solve_oracle(const CosetGrid& grid, const EvolutionOperator& op, const ExactFunction& f0,
                          const std::vector<double>& times);
EvolutionRun solve_oracle(const CosetGrid& grid, const EvolutionOperator& op, const ComplexFunction& f0,
                          const std::vector<double>& times);

/// Cosets of the ball B_gamma(center); the usual observation region.
std::vector<std::size_t> ball_region(const CosetGrid& grid, const Rational& center, long gamma);

/// s(t) = integral of the snapshot over the region (real part); an empty
/// region gives identically zero.
std::vector<double> survival_series(const EvolutionRun& run, const std::vector<std::size_t>& region);

}  // namespace padic
