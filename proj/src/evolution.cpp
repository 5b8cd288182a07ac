#include "padic/evolution.hpp"

#include <cmath>
#include <stdexcept>

namespace padic {

namespace {

void require_time_grid(const std::vector<double>& times) {
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0) throw std::invalid_argument("evolution: negative time");
        if (i > 0 && times[i] <= times[i - 1])
            throw std::invalid_argument("evolution: times must be strictly increasing");
    }
}

void require_compatible(const EvolutionOperator& op, const CosetGrid& grid) {
    if (const auto* kernel = std::get_if<KernelOperator>(&op)) {
        if (kernel->spec.prime() != grid.prime())
            throw std::invalid_argument("evolution: operator/grid prime mismatch");
        if (kernel->spec.gamma_max() > grid.ball_exponent())
            throw std::invalid_argument("evolution: kernel cutoff exceeds the window");
    }
}

EvolutionRun run_spectral(const CosetGrid& grid, const EvolutionOperator& op,
                          std::vector<std::complex<double>> coefficients, const BasisSet& basis,
                          const std::vector<double>& times) {
    std::vector<double> eigenvalues(basis.size());
    std::vector<ComplexFunction> modes;
    modes.reserve(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        eigenvalues[i] = generator_eigenvalue(op, grid, basis.elements[i]);
        modes.push_back(materialize_complex(basis, basis.elements[i]));
    }
    EvolutionRun run{grid, times, {}};
    run.snapshots.reserve(times.size());
    for (double t : times) {
        ComplexFunction snapshot = ComplexFunction::zero(grid);
        for (std::size_t i = 0; i < basis.size(); ++i) {
            std::complex<double> weight = coefficients[i] * std::exp(eigenvalues[i] * t);
            snapshot = snapshot + weight * modes[i];
        }
        run.snapshots.push_back(std::move(snapshot));
    }
    return run;
}

}  // namespace

double generator_eigenvalue(const EvolutionOperator& op, const CosetGrid& grid, const BasisElement& element) {
    if (element.kind == BasisKind::Constant) return 0.0;
    if (element.kind != BasisKind::Orthonormal && element.kind != BasisKind::Wavelet)
        throw std::invalid_argument("generator_eigenvalue: element is not diagonal for the generator");
    if (const auto* vlad = std::get_if<VladimirovOperator>(&op))
        return vladimirov_eigenvalue(grid.prime(), element.gamma, grid.ball_exponent(), vlad->alpha);
    const auto& spec = std::get<KernelOperator>(op).spec;
    Rational n = element.kind == BasisKind::Wavelet
                     ? element.offset
                     : wavelet_index_of_center(grid.prime(), element.gamma, element.offset);
    return kernel_eigenvalue(spec, element.gamma, n);
}

OperatorMatrix<double> generator_matrix(const EvolutionOperator& op, const CosetGrid& grid) {
    require_compatible(op, grid);
    if (const auto* vlad = std::get_if<VladimirovOperator>(&op)) return vladimirov_matrix(grid, vlad->alpha);
    return kernel_matrix(grid, std::get<KernelOperator>(op).spec);
}

EvolutionRun solve_spectral(const CosetGrid& grid, const EvolutionOperator& op, const ExactFunction& f0,
                            const std::vector<double>& times, KSign sign) {
    require_time_grid(times);
    require_compatible(op, grid);
    f0.require_same_grid(ExactFunction::zero(grid));
    BasisSet basis = orthonormal_basis(grid, sign);
    std::vector<QuadScalar> exact_coefficients = analyze(f0, basis);
    std::vector<std::complex<double>> coefficients(exact_coefficients.size());
    for (std::size_t i = 0; i < exact_coefficients.size(); ++i)
        coefficients[i] = exact_coefficients[i].to_complex();
    return run_spectral(grid, op, std::move(coefficients), basis, times);
}

EvolutionRun solve_spectral(const CosetGrid& grid, const EvolutionOperator& op, const ComplexFunction& f0,
                            const std::vector<double>& times, KSign sign) {
    require_time_grid(times);
    require_compatible(op, grid);
    f0.require_same_grid(ComplexFunction::zero(grid));
    BasisSet basis = orthonormal_basis(grid, sign);
    return run_spectral(grid, op, analyze(f0, basis), basis, times);
}

EvolutionRun solve_oracle(const CosetGrid& grid, const EvolutionOperator& op, const ExactFunction& f0,
                          const std::vector<double>& times) {
    return solve_oracle(grid, op, to_complex(f0), times);
}

EvolutionRun solve_oracle(const CosetGrid& grid, const EvolutionOperator& op, const ComplexFunction& f0,
                          const std::vector<double>& times) {
    require_time_grid(times);
    f0.require_same_grid(ComplexFunction::zero(grid));
    OperatorMatrix<double> matrix = generator_matrix(op, grid);
    EvolutionRun run{grid, times, {}};
    run.snapshots.reserve(times.size());
    for (double t : times) run.snapshots.push_back(matrix_exponential_apply(matrix, t, f0));
    return run;
}

std::vector<std::size_t> ball_region(const CosetGrid& grid, const Rational& center, long gamma) {
    if (gamma > grid.ball_exponent()) throw std::invalid_argument("ball_region: region outside the window");
    return grid.ball_indices(center, gamma);
}

std::vector<double> survival_series(const EvolutionRun& run, const std::vector<std::size_t>& region) {
    for (std::size_t m : region)
        if (m >= run.grid.size()) throw std::out_of_range("survival_series: coset index outside the grid");
    double measure = run.grid.coset_measure().get_d();
    std::vector<double> out;
    out.reserve(run.snapshots.size());
    for (const ComplexFunction& snapshot : run.snapshots) {
        double mass = 0.0;
        for (std::size_t m : region) mass += snapshot[m].real();
        out.push_back(measure * mass);
    }
    return out;
}

}  // namespace padic
