#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "padic/grid_function.hpp"
#include "padic/padic.hpp"

namespace padic {

/// Gamma_p(-alpha) = (1 - p^(-alpha-1)) / (1 - p^alpha); negative for
/// alpha > 0 and exactly rational when alpha is a positive integer.
Rational gamma_factor_exact(Prime p, long alpha);

struct GammaFactor {
    double value;
    std::optional<Rational> exact;
};
GammaFactor gamma_factor(Prime p, double alpha);

/// Dense symmetric operator on a window, stored row-major in canonical coset
/// order. Row sums are zero by assembly, so constants are annihilated
/// exactly. Acting on locally constant inputs is exact, not a quadrature:
/// same-coset differences never contribute.
template <class S>
class OperatorMatrix {
  public:
    OperatorMatrix(CosetGrid grid, std::vector<S> entries) : grid_(grid), entries_(std::move(entries)) {
        if (entries_.size() != grid_.size() * grid_.size())
            throw std::invalid_argument("OperatorMatrix: entry count does not match grid");
    }

    static OperatorMatrix zero(const CosetGrid& grid) {
        return OperatorMatrix(grid, std::vector<S>(grid.size() * grid.size(), S{}));
    }

    const CosetGrid& grid() const { return grid_; }
    std::size_t size() const { return grid_.size(); }
    const S& at(std::size_t i, std::size_t j) const { return entries_[i * grid_.size() + j]; }
    S& at(std::size_t i, std::size_t j) { return entries_[i * grid_.size() + j]; }
    const std::vector<S>& entries() const { return entries_; }

    template <class T>
    GridFunction<T> apply(const GridFunction<T>& f) const {
        if (f.grid() != grid_) throw std::invalid_argument("OperatorMatrix: grid mismatch");
        std::vector<T> out(size(), T{});
        for (std::size_t i = 0; i < size(); ++i) {
            T acc{};
            for (std::size_t j = 0; j < size(); ++j) {
                if (scalar_traits<T>::is_zero(f[j])) continue;
                acc += at(i, j) * f[j];
            }
            out[i] = acc;
        }
        return GridFunction<T>(grid_, std::move(out));
    }

  private:
    CosetGrid grid_;
    std::vector<S> entries_;
};

OperatorMatrix<double> to_float(const OperatorMatrix<Rational>& matrix);

// -- Vladimirov operator on B_r ----------------------------------------------

/// A[i][j] = -(1/Gamma_p(-alpha)) p^l |x_i - x_j|_p^(-alpha-1) off the
/// diagonal, with the diagonal set to minus the row sum.
OperatorMatrix<Rational> vladimirov_matrix_exact(const CosetGrid& grid, long alpha);
OperatorMatrix<double> vladimirov_matrix(const CosetGrid& grid, double alpha);

/// lambda_gamma = -p^(-alpha(gamma-1)) + (1 - p^-1) p^(-alpha r) / (1 - p^(-alpha-1)).
Rational vladimirov_eigenvalue_exact(Prime p, long gamma, long r, long alpha);
double vladimirov_eigenvalue(Prime p, long gamma, long r, double alpha);

/// Full-space limit r -> infinity of the window eigenvalue: -p^(-alpha(gamma-1)).
Rational vladimirov_eigenvalue_global_exact(Prime p, long gamma, long alpha);
double vladimirov_eigenvalue_global(Prime p, long gamma, double alpha);

/// Eigenvalue of the window character chi(kx):
/// -|k|_p^alpha + (1 - p^-1) p^(-alpha r) / (1 - p^(-alpha-1)) for k != 0, 0 for k = 0.
double character_eigenvalue(Prime p, const Rational& k, long r, double alpha);

// -- hierarchical kernel operators -------------------------------------------

/// Radial symmetric kernel T(x,y) = sum_{gamma,n} T^(gamma,n)
/// delta(|x-y|_p - p^gamma) Omega(|x - n p^-gamma|_p p^-gamma): one
/// coefficient per ball, given as a per-scale default with optional per-ball
/// overrides, supported on scales gamma_min..gamma_max (hard cutoff).
class KernelSpec {
  public:
    struct Scale {
        Rational default_value = Rational(0);
        std::map<Rational, Rational> overrides;  // keyed by the Q_p/Z_p ball index n
    };

    KernelSpec(Prime p, long gamma_min, long gamma_max) : p_(p), gamma_min_(gamma_min), gamma_max_(gamma_max) {
        if (gamma_min > gamma_max) throw std::invalid_argument("KernelSpec: gamma_min > gamma_max");
    }

    Prime prime() const { return p_; }
    long gamma_min() const { return gamma_min_; }
    long gamma_max() const { return gamma_max_; }
    const std::map<long, Scale>& scales() const { return scales_; }

    void set_scale_default(long gamma, Rational value) {
        require_scale(gamma);
        scales_[gamma].default_value = std::move(value);
    }
    void set_override(long gamma, Rational n, Rational value) {
        require_scale(gamma);
        scales_[gamma].overrides[std::move(n)] = std::move(value);
    }

    /// T^(gamma, n); zero outside the scale window.
    Rational coefficient(long gamma, const Rational& n) const {
        if (gamma < gamma_min_ || gamma > gamma_max_) return Rational(0);
        auto scale = scales_.find(gamma);
        if (scale == scales_.end()) return Rational(0);
        auto entry = scale->second.overrides.find(n);
        return entry == scale->second.overrides.end() ? scale->second.default_value : entry->second;
    }

    /// T^(gamma,n) = -(1/Gamma_p(-alpha)) p^(-gamma(alpha+1)) on every scale of
    /// the window: the kernel whose operator agrees with the Vladimirov
    /// operator below the cutoff.
    static KernelSpec vladimirov_equivalent(Prime p, long alpha, long gamma_min, long gamma_max);

  private:
    void require_scale(long gamma) const {
        if (gamma < gamma_min_ || gamma > gamma_max_)
            throw std::invalid_argument("KernelSpec: scale outside [gamma_min, gamma_max]");
    }

    Prime p_;
    long gamma_min_, gamma_max_;
    std::map<long, Scale> scales_;
};

/// Dense kernel operator on the window. Requires gamma_max <= r: with the
/// cutoff, points outside B_r are farther than every active scale, so the
/// window matrix acts like the full-space operator on B_r-supported inputs.
OperatorMatrix<Rational> kernel_matrix_exact(const CosetGrid& grid, const KernelSpec& spec);
OperatorMatrix<double> kernel_matrix(const CosetGrid& grid, const KernelSpec& spec);

/// lambda_{gamma n} = -p^gamma T^(gamma,n)
///                  - (1 - p^-1) sum_{gamma' > gamma}^{gamma_max} p^gamma' T^(gamma', {p^(gamma'-gamma) n}).
Rational kernel_eigenvalue_exact(const KernelSpec& spec, long gamma, const Rational& n);
double kernel_eigenvalue(const KernelSpec& spec, long gamma, const Rational& n);

// -- dense float oracles -------------------------------------------------------

/// e^(At) f by scaling-and-squaring with a truncated power series: the norm
/// is scaled below 1/2, 24 Taylor terms leave a remainder under 1e-30, far
/// below the 1e-12 target relative to ||f||.
ComplexFunction matrix_exponential_apply(const OperatorMatrix<double>& matrix, double t,
                                         const ComplexFunction& f);

/// All eigenvalues of the symmetric matrix, ascending.
std::vector<double> dense_spectrum(const OperatorMatrix<double>& matrix);

}  // namespace padic
