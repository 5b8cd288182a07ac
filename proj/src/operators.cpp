#include "padic/operators.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdlib>

namespace padic {

Rational gamma_factor_exact(Prime p, long alpha) {
    if (alpha <= 0) throw std::invalid_argument("gamma_factor: alpha must be positive");
    Rational numerator = Rational(1) - rational_power(p.value(), -alpha - 1);
    Rational denominator = Rational(1) - rational_power(p.value(), alpha);
    return numerator / denominator;
}

GammaFactor gamma_factor(Prime p, double alpha) {
    if (alpha <= 0) throw std::invalid_argument("gamma_factor: alpha must be positive");
    double pd = static_cast<double>(p.value());
    double value = (1.0 - std::pow(pd, -alpha - 1.0)) / (1.0 - std::pow(pd, alpha));
    std::optional<Rational> exact;
    if (alpha == std::floor(alpha)) {
        Rational q = gamma_factor_exact(p, static_cast<long>(alpha));
        value = q.get_d();
        exact = std::move(q);
    }
    return {value, exact};
}

OperatorMatrix<double> to_float(const OperatorMatrix<Rational>& matrix) {
    std::vector<double> entries(matrix.entries().size());
    for (std::size_t i = 0; i < entries.size(); ++i) entries[i] = matrix.entries()[i].get_d();
    return OperatorMatrix<double>(matrix.grid(), std::move(entries));
}

namespace {

// |x_i - x_j|_p = p^(r - v_p(i - j)) for distinct canonical cosets.
long distance_exponent(const CosetGrid& grid, std::size_t i, std::size_t j) {
    long diff = static_cast<long>(i) - static_cast<long>(j);
    return grid.ball_exponent() - prime_multiplicity(Integer(std::labs(diff)), grid.prime().value());
}

template <class S, class OffDiagonal>
OperatorMatrix<S> assemble_symmetric(const CosetGrid& grid, OffDiagonal off_diagonal) {
    const std::size_t n = grid.size();
    OperatorMatrix<S> matrix = OperatorMatrix<S>::zero(grid);
    for (std::size_t i = 0; i < n; ++i) {
        S row_sum{};
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            S value = off_diagonal(i, j);
            matrix.at(i, j) = value;
            row_sum += value;
        }
        matrix.at(i, i) = -row_sum;
    }
    return matrix;
}

}  // namespace

OperatorMatrix<Rational> vladimirov_matrix_exact(const CosetGrid& grid, long alpha) {
    Rational prefactor = -1 / gamma_factor_exact(grid.prime(), alpha);
    Rational measure = grid.coset_measure();
    const long p = grid.prime().value();
    return assemble_symmetric<Rational>(grid, [&](std::size_t i, std::size_t j) -> Rational {
        long gamma = distance_exponent(grid, i, j);
        return prefactor * measure * rational_power(p, -gamma * (alpha + 1));
    });
}

OperatorMatrix<double> vladimirov_matrix(const CosetGrid& grid, double alpha) {
    double prefactor = -1.0 / gamma_factor(grid.prime(), alpha).value;
    double pd = static_cast<double>(grid.prime().value());
    double l = static_cast<double>(grid.constancy_exponent());
    return assemble_symmetric<double>(grid, [&](std::size_t i, std::size_t j) -> double {
        double gamma = static_cast<double>(distance_exponent(grid, i, j));
        return prefactor * std::pow(pd, l - gamma * (alpha + 1.0));
    });
}

Rational vladimirov_eigenvalue_exact(Prime p, long gamma, long r, long alpha) {
    if (alpha <= 0) throw std::invalid_argument("vladimirov_eigenvalue: alpha must be positive");
    Rational tail = make_ratio(p.value() - 1, p.value()) * rational_power(p.value(), -alpha * r) /
                    (Rational(1) - rational_power(p.value(), -alpha - 1));
    return -rational_power(p.value(), -alpha * (gamma - 1)) + tail;
}

double vladimirov_eigenvalue(Prime p, long gamma, long r, double alpha) {
    if (alpha <= 0) throw std::invalid_argument("vladimirov_eigenvalue: alpha must be positive");
    if (alpha == std::floor(alpha))
        return vladimirov_eigenvalue_exact(p, gamma, r, static_cast<long>(alpha)).get_d();
    double pd = static_cast<double>(p.value());
    double tail = (1.0 - 1.0 / pd) * std::pow(pd, -alpha * r) / (1.0 - std::pow(pd, -alpha - 1.0));
    return -std::pow(pd, -alpha * (gamma - 1)) + tail;
}

Rational vladimirov_eigenvalue_global_exact(Prime p, long gamma, long alpha) {
    if (alpha <= 0) throw std::invalid_argument("vladimirov_eigenvalue: alpha must be positive");
    return -rational_power(p.value(), -alpha * (gamma - 1));
}

double vladimirov_eigenvalue_global(Prime p, long gamma, double alpha) {
    if (alpha <= 0) throw std::invalid_argument("vladimirov_eigenvalue: alpha must be positive");
    return -std::pow(static_cast<double>(p.value()), -alpha * static_cast<double>(gamma - 1));
}

double character_eigenvalue(Prime p, const Rational& k, long r, double alpha) {
    if (alpha <= 0) throw std::invalid_argument("character_eigenvalue: alpha must be positive");
    if (k == 0) return 0.0;
    double pd = static_cast<double>(p.value());
    double norm_k = padic_norm(k, p).get_d();
    double tail = (1.0 - 1.0 / pd) * std::pow(pd, -alpha * r) / (1.0 - std::pow(pd, -alpha - 1.0));
    return -std::pow(norm_k, alpha) + tail;
}

KernelSpec KernelSpec::vladimirov_equivalent(Prime p, long alpha, long gamma_min, long gamma_max) {
    Rational prefactor = -1 / gamma_factor_exact(p, alpha);
    KernelSpec spec(p, gamma_min, gamma_max);
    for (long gamma = gamma_min; gamma <= gamma_max; ++gamma)
        spec.set_scale_default(gamma, prefactor * rational_power(p.value(), -gamma * (alpha + 1)));
    return spec;
}

namespace {

void require_cutoff(const CosetGrid& grid, const KernelSpec& spec) {
    if (spec.prime() != grid.prime()) throw std::invalid_argument("kernel_matrix: prime mismatch");
    if (spec.gamma_max() > grid.ball_exponent())
        throw std::invalid_argument("kernel_matrix: scale cutoff exceeds the window radius");
}

}  // namespace

OperatorMatrix<Rational> kernel_matrix_exact(const CosetGrid& grid, const KernelSpec& spec) {
    require_cutoff(grid, spec);
    Rational measure = grid.coset_measure();
    Prime p = grid.prime();
    return assemble_symmetric<Rational>(grid, [&](std::size_t i, std::size_t j) -> Rational {
        long gamma = distance_exponent(grid, i, j);
        Rational n = frac_part(grid.representative(i) * rational_power(p.value(), gamma), p);
        return measure * spec.coefficient(gamma, n);
    });
}

OperatorMatrix<double> kernel_matrix(const CosetGrid& grid, const KernelSpec& spec) {
    return to_float(kernel_matrix_exact(grid, spec));
}

Rational kernel_eigenvalue_exact(const KernelSpec& spec, long gamma, const Rational& n) {
    Prime p = spec.prime();
    Rational lambda = -rational_power(p.value(), gamma) * spec.coefficient(gamma, n);
    Rational jump_weight = make_ratio(p.value() - 1, p.value());
    for (long outer = gamma + 1; outer <= spec.gamma_max(); ++outer) {
        Rational outer_index = frac_part(n * rational_power(p.value(), outer - gamma), p);
        lambda -= jump_weight * rational_power(p.value(), outer) * spec.coefficient(outer, outer_index);
    }
    return lambda;
}

double kernel_eigenvalue(const KernelSpec& spec, long gamma, const Rational& n) {
    return kernel_eigenvalue_exact(spec, gamma, n).get_d();
}

namespace {

Eigen::MatrixXd to_eigen(const OperatorMatrix<double>& matrix) {
    const auto n = static_cast<Eigen::Index>(matrix.size());
    Eigen::MatrixXd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            out(i, j) = matrix.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    return out;
}

}  // namespace

ComplexFunction matrix_exponential_apply(const OperatorMatrix<double>& matrix, double t,
                                         const ComplexFunction& f) {
    if (t < 0) throw std::invalid_argument("matrix_exponential_apply: negative time");
    if (f.grid() != matrix.grid()) throw std::invalid_argument("matrix_exponential_apply: grid mismatch");
    const auto n = static_cast<Eigen::Index>(matrix.size());
    Eigen::MatrixXd scaled = to_eigen(matrix) * t;

    int squarings = 0;
    double norm = scaled.cwiseAbs().rowwise().sum().maxCoeff();
    while (norm > 0.5) {
        scaled *= 0.5;
        norm *= 0.5;
        ++squarings;
    }

    Eigen::MatrixXd exponential = Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
    for (int k = 1; k <= 24; ++k) {
        term = term * scaled / static_cast<double>(k);
        exponential += term;
    }
    for (int s = 0; s < squarings; ++s) exponential = exponential * exponential;

    Eigen::VectorXd real(n), imag(n);
    for (Eigen::Index m = 0; m < n; ++m) {
        real(m) = f[static_cast<std::size_t>(m)].real();
        imag(m) = f[static_cast<std::size_t>(m)].imag();
    }
    Eigen::VectorXd out_real = exponential * real;
    Eigen::VectorXd out_imag = exponential * imag;
    std::vector<std::complex<double>> values(matrix.size());
    for (Eigen::Index m = 0; m < n; ++m)
        values[static_cast<std::size_t>(m)] = {out_real(m), out_imag(m)};
    return ComplexFunction(matrix.grid(), std::move(values));
}

std::vector<double> dense_spectrum(const OperatorMatrix<double>& matrix) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(to_eigen(matrix));
    if (solver.info() != Eigen::Success) throw std::runtime_error("dense_spectrum: eigensolver failed");
    std::vector<double> out(matrix.size());
    for (std::size_t i = 0; i < matrix.size(); ++i)
        out[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    return out;
}

}  // namespace padic
