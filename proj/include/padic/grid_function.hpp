#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "padic/padic.hpp"
#include "padic/quad.hpp"

namespace padic {

/// A locally constant function on B_r with constancy exponent l: one scalar
/// per canonical coset. Immutable after construction; every operation below
/// is a pure function and sums in canonical index order.
template <class S>
class GridFunction {
  public:
    GridFunction(CosetGrid grid, std::vector<S> values) : grid_(grid), values_(std::move(values)) {
        if (values_.size() != grid_.size())
            throw std::invalid_argument("GridFunction: value count does not match grid size");
    }

    static GridFunction zero(const CosetGrid& grid) {
        return GridFunction(grid, std::vector<S>(grid.size(), S{}));
    }
    static GridFunction constant(const CosetGrid& grid, const S& value) {
        return GridFunction(grid, std::vector<S>(grid.size(), value));
    }

    const CosetGrid& grid() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    const std::vector<S>& values() const { return values_; }
    const S& operator[](std::size_t m) const { return values_[m]; }

    /// Pointwise evaluation anywhere in B_r.
    const S& operator()(const Rational& x) const { return values_[grid_.index_of(x)]; }

    /// Haar integral over B_r: p^l * sum of coset values.
    S integrate() const {
        S acc{};
        for (const S& v : values_) acc += v;
        return scalar_traits<S>::from_rational(grid_.coset_measure()) * acc;
    }

    friend GridFunction operator+(const GridFunction& f, const GridFunction& g) {
        f.require_same_grid(g);
        std::vector<S> out(f.size());
        for (std::size_t m = 0; m < f.size(); ++m) out[m] = f.values_[m] + g.values_[m];
        return GridFunction(f.grid_, std::move(out));
    }
    friend GridFunction operator-(const GridFunction& f, const GridFunction& g) {
        f.require_same_grid(g);
        std::vector<S> out(f.size());
        for (std::size_t m = 0; m < f.size(); ++m) out[m] = f.values_[m] - g.values_[m];
        return GridFunction(f.grid_, std::move(out));
    }
    friend GridFunction operator*(const S& c, const GridFunction& f) {
        std::vector<S> out(f.size());
        for (std::size_t m = 0; m < f.size(); ++m) out[m] = c * f.values_[m];
        return GridFunction(f.grid_, std::move(out));
    }

    friend bool operator==(const GridFunction& f, const GridFunction& g) {
        return f.grid_ == g.grid_ && f.values_ == g.values_;
    }

    void require_same_grid(const GridFunction& other) const {
        if (grid_ != other.grid_) throw std::invalid_argument("GridFunction: grid mismatch");
    }

  private:
    CosetGrid grid_;
    std::vector<S> values_;
};

using ExactFunction = GridFunction<QuadScalar>;
using ComplexFunction = GridFunction<std::complex<double>>;

/// <f, g> = p^l * sum conj(f_m) g_m; the Haar inner product on B_r.
template <class S>
S inner_product(const GridFunction<S>& f, const GridFunction<S>& g) {
    f.require_same_grid(g);
    S acc{};
    for (std::size_t m = 0; m < f.size(); ++m) {
        if (scalar_traits<S>::is_zero(f[m]) || scalar_traits<S>::is_zero(g[m])) continue;
        acc += scalar_traits<S>::conj(f[m]) * g[m];
    }
    return scalar_traits<S>::from_rational(f.grid().coset_measure()) * acc;
}

template <class S>
GridFunction<S> pointwise_product(const GridFunction<S>& f, const GridFunction<S>& g) {
    f.require_same_grid(g);
    std::vector<S> out(f.size());
    for (std::size_t m = 0; m < f.size(); ++m) out[m] = f[m] * g[m];
    return GridFunction<S>(f.grid(), std::move(out));
}

/// (f * g)(x_m) = p^l * sum_{m'} f[m'] g[x_m - x_{m'}]. Because canonical
/// representatives are m * p^(-r), subtraction of cosets is index arithmetic
/// mod p^(r-l), making this a cyclic convolution in the canonical order.
template <class S>
GridFunction<S> convolve_direct(const GridFunction<S>& f, const GridFunction<S>& g) {
    f.require_same_grid(g);
    const std::size_t n = f.size();
    std::vector<S> out(n, S{});
    for (std::size_t m = 0; m < n; ++m) {
        S acc{};
        for (std::size_t j = 0; j < n; ++j) {
            if (scalar_traits<S>::is_zero(f[j])) continue;
            acc += f[j] * g[(m + n - j) % n];
        }
        out[m] = scalar_traits<S>::from_rational(f.grid().coset_measure()) * acc;
    }
    return GridFunction<S>(f.grid(), std::move(out));
}

inline ComplexFunction to_complex(const ExactFunction& f) {
    std::vector<std::complex<double>> out(f.size());
    for (std::size_t m = 0; m < f.size(); ++m) out[m] = f[m].to_complex();
    return ComplexFunction(f.grid(), std::move(out));
}

/// Embeds f into a window with r' >= r and l' <= l: values replicate across
/// sub-cosets and vanish outside B_r. The result is the same function of x.
template <class S>
GridFunction<S> embed(const GridFunction<S>& f, const CosetGrid& finer) {
    const CosetGrid& coarse = f.grid();
    if (finer.prime() != coarse.prime() || finer.ball_exponent() < coarse.ball_exponent() ||
        finer.constancy_exponent() > coarse.constancy_exponent())
        throw std::invalid_argument("embed: target window does not contain the source window");
    std::vector<S> out(finer.size(), S{});
    Rational radius = coarse.total_measure();
    for (std::size_t m = 0; m < finer.size(); ++m) {
        Rational x = finer.representative(m);
        if (padic_norm(x, finer.prime()) <= radius) out[m] = f[coarse.index_of(x)];
    }
    return GridFunction<S>(finer, std::move(out));
}

inline double sup_distance(const ComplexFunction& f, const ComplexFunction& g) {
    f.require_same_grid(g);
    double worst = 0.0;
    for (std::size_t m = 0; m < f.size(); ++m) worst = std::max(worst, std::abs(f[m] - g[m]));
    return worst;
}

inline double sup_norm(const ComplexFunction& f) {
    double worst = 0.0;
    for (std::size_t m = 0; m < f.size(); ++m) worst = std::max(worst, std::abs(f[m]));
    return worst;
}

}  // namespace padic
