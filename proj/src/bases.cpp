#include "padic/bases.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace padic {

namespace {

void require_scale_in_window(const CosetGrid& grid, long gamma) {
    if (gamma < grid.constancy_exponent() + 1 || gamma > grid.ball_exponent())
        throw std::invalid_argument("scale " + std::to_string(gamma) + " outside window [" +
                                    std::to_string(grid.constancy_exponent() + 1) + ", " +
                                    std::to_string(grid.ball_exponent()) + "]");
}

void require_center_in_ball(const CosetGrid& grid, const Rational& center) {
    if (padic_norm(center, grid.prime()) > grid.total_measure())
        throw std::invalid_argument("ball center " + to_string(center) + " outside B_" +
                                    std::to_string(grid.ball_exponent()));
}

void require_label_range(long label, long lo, long hi, const char* what) {
    if (label < lo || label > hi)
        throw std::invalid_argument(std::string(what) + " label " + std::to_string(label) + " outside [" +
                                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

std::size_t scale_stride(const CosetGrid& grid, long gamma) {
    std::size_t stride = 1;
    for (long i = 0; i < grid.ball_exponent() - gamma; ++i)
        stride *= static_cast<std::size_t>(grid.prime().value());
    return stride;
}

}  // namespace

ExactFunction detail_function(const CosetGrid& grid, long gamma, const Rational& center, long shift) {
    require_scale_in_window(grid, gamma);
    require_center_in_ball(grid, center);
    require_label_range(shift, 0, grid.prime().value() - 1, "detail shift");
    const long p = grid.prime().value();
    Rational child_center = center + Rational(shift) * rational_power(p, -gamma);
    Rational average = make_ratio(-1, p);
    std::vector<QuadScalar> values(grid.size());
    for (std::size_t m : grid.ball_indices(center, gamma)) {
        Rational v = average;
        if (ball_indicator(grid.representative(m), child_center, gamma - 1, grid.prime())) v += 1;
        values[m] = QuadScalar(v);
    }
    return ExactFunction(grid, std::move(values));
}

ExactFunction orthonormal_detail(const CosetGrid& grid, long gamma, const Rational& center, long label,
                                 KSign sign) {
    require_label_range(label, 1, grid.prime().value() - 1, "orthonormal detail");
    QuadScalar k = orthogonality_root(grid.prime(), sign);
    QuadScalar amp = QuadScalar::half_power(grid.prime(), 1 - gamma);
    ExactFunction base = detail_function(grid, gamma, center, 0);
    ExactFunction shifted = detail_function(grid, gamma, center, label);
    return (amp / k) * base + amp * shifted;
}

ExactFunction normalized_constant(const CosetGrid& grid) {
    return ExactFunction::constant(grid, QuadScalar::half_power(grid.prime(), -grid.ball_exponent()));
}

ExactFunction uniform_density(const CosetGrid& grid) {
    return ExactFunction::constant(
        grid, QuadScalar(rational_power(grid.prime().value(), -grid.ball_exponent())));
}

ComplexFunction wavelet(const CosetGrid& grid, long gamma, const Rational& n, long rotation) {
    require_scale_in_window(grid, gamma);
    require_label_range(rotation, 1, grid.prime().value() - 1, "wavelet rotation");
    const long p = grid.prime().value();
    Rational center = n * rational_power(p, -gamma);
    if (padic_norm(center, grid.prime()) > grid.total_measure())
        throw std::invalid_argument("wavelet support escapes B_" + std::to_string(grid.ball_exponent()));
    double amplitude = std::pow(static_cast<double>(p), -static_cast<double>(gamma) / 2.0);
    Rational modulation = Rational(rotation) * rational_power(p, gamma - 1);
    std::vector<std::complex<double>> values(grid.size(), std::complex<double>{});
    for (std::size_t m : grid.ball_indices(center, gamma)) {
        Rational phase = modulation * (grid.representative(m) - center);
        values[m] = amplitude * character(phase, grid.prime());
    }
    return ComplexFunction(grid, std::move(values));
}

BasisSet orthonormal_basis(const CosetGrid& grid, KSign sign) {
    BasisSet basis{grid, sign, BasisKind::Orthonormal, {}};
    basis.elements.push_back({BasisKind::Constant, grid.ball_exponent(), Rational(0), 0, std::nullopt});
    for (long gamma = grid.ball_exponent(); gamma >= grid.constancy_exponent() + 1; --gamma) {
        std::size_t centers = scale_stride(grid, gamma);
        for (std::size_t m = 0; m < centers; ++m) {
            Rational center = grid.representative(m);
            for (long b = 1; b <= grid.prime().value() - 1; ++b)
                basis.elements.push_back({BasisKind::Orthonormal, gamma, center, b, std::nullopt});
        }
    }
    return basis;
}

BasisSet wavelet_basis(const CosetGrid& grid) {
    BasisSet basis{grid, KSign::Plus, BasisKind::Wavelet, {}};
    for (long gamma = grid.ball_exponent(); gamma >= grid.constancy_exponent() + 1; --gamma) {
        std::size_t centers = scale_stride(grid, gamma);
        for (std::size_t m = 0; m < centers; ++m) {
            Rational n = wavelet_index_of_center(grid.prime(), gamma, grid.representative(m));
            for (long j = 1; j <= grid.prime().value() - 1; ++j)
                basis.elements.push_back({BasisKind::Wavelet, gamma, n, j, std::nullopt});
        }
    }
    return basis;
}

BasisSet global_orthonormal_basis(const CosetGrid& grid, KSign sign) {
    BasisSet basis = orthonormal_basis(grid, sign);
    basis.elements.erase(basis.elements.begin());
    return basis;
}

ExactFunction detail_function_global(const CosetGrid& grid, long gamma, const Rational& n, long shift) {
    return detail_function(grid, gamma, center_of_wavelet_index(gamma, n, grid.prime()), shift);
}

ExactFunction orthonormal_detail_global(const CosetGrid& grid, long gamma, const Rational& n, long label,
                                        KSign sign) {
    return orthonormal_detail(grid, gamma, center_of_wavelet_index(gamma, n, grid.prime()), label, sign);
}

ExactFunction materialize_exact(const BasisSet& basis, const BasisElement& element) {
    switch (element.kind) {
        case BasisKind::Constant:
            return normalized_constant(basis.grid);
        case BasisKind::Orthonormal:
            return orthonormal_detail(basis.grid, element.gamma, element.offset, element.label, basis.sign);
        case BasisKind::Detail:
            return detail_function(basis.grid, element.gamma, element.offset, element.label);
        default:
            throw std::invalid_argument("basis element has no exact representation");
    }
}

ComplexFunction materialize_complex(const BasisSet& basis, const BasisElement& element) {
    switch (element.kind) {
        case BasisKind::Wavelet:
            return wavelet(basis.grid, element.gamma, element.offset, element.label);
        case BasisKind::Character: {
            double amp = std::pow(static_cast<double>(basis.grid.prime().value()),
                                  -static_cast<double>(basis.grid.ball_exponent()) / 2.0);
            std::vector<std::complex<double>> values(basis.grid.size());
            for (std::size_t m = 0; m < basis.grid.size(); ++m)
                values[m] = amp * character(element.offset * basis.grid.representative(m), basis.grid.prime());
            return ComplexFunction(basis.grid, std::move(values));
        }
        default:
            return to_complex(materialize_exact(basis, element));
    }
}

namespace {

void require_orthonormal_kind(const BasisSet& basis) {
    if (basis.kind == BasisKind::Detail)
        throw std::invalid_argument("analyze: detail family is overcomplete, not an orthonormal basis");
}

}  // namespace

std::vector<QuadScalar> analyze(const ExactFunction& f, const BasisSet& basis) {
    require_orthonormal_kind(basis);
    std::vector<QuadScalar> coefficients;
    coefficients.reserve(basis.size());
    for (const BasisElement& element : basis.elements)
        coefficients.push_back(inner_product(materialize_exact(basis, element), f));
    return coefficients;
}

std::vector<std::complex<double>> analyze(const ComplexFunction& f, const BasisSet& basis) {
    require_orthonormal_kind(basis);
    std::vector<std::complex<double>> coefficients;
    coefficients.reserve(basis.size());
    for (const BasisElement& element : basis.elements)
        coefficients.push_back(inner_product(materialize_complex(basis, element), f));
    return coefficients;
}

ExactFunction synthesize(const std::vector<QuadScalar>& coefficients, const BasisSet& basis) {
    if (coefficients.size() != basis.size())
        throw std::invalid_argument("synthesize: coefficient count does not match basis size");
    ExactFunction out = ExactFunction::zero(basis.grid);
    for (std::size_t i = 0; i < basis.size(); ++i)
        out = out + coefficients[i] * materialize_exact(basis, basis.elements[i]);
    return out;
}

ComplexFunction synthesize(const std::vector<std::complex<double>>& coefficients, const BasisSet& basis) {
    if (coefficients.size() != basis.size())
        throw std::invalid_argument("synthesize: coefficient count does not match basis size");
    ComplexFunction out = ComplexFunction::zero(basis.grid);
    for (std::size_t i = 0; i < basis.size(); ++i)
        out = out + coefficients[i] * materialize_complex(basis, basis.elements[i]);
    return out;
}

UnitBallExpansion unit_ball_expansion(const CosetGrid& grid) {
    if (grid.ball_exponent() < 1 || grid.constancy_exponent() > 0)
        throw std::invalid_argument("unit_ball_expansion: window does not resolve Z_p inside B_r");
    UnitBallExpansion expansion{Rational(1), {}};
    for (long gamma = 1; gamma <= grid.ball_exponent(); ++gamma)
        expansion.detail_coefficients.emplace_back(gamma, rational_power(grid.prime().value(), 1 - gamma));
    return expansion;
}

ExactFunction reconstruct(const UnitBallExpansion& expansion, const CosetGrid& grid) {
    ExactFunction out = QuadScalar(expansion.density_coefficient) * uniform_density(grid);
    for (const auto& [gamma, coefficient] : expansion.detail_coefficients)
        out = out + QuadScalar(coefficient) * detail_function(grid, gamma, Rational(0), 0);
    return out;
}

Rational wavelet_index_of_center(Prime p, long gamma, const Rational& center) {
    return frac_part(center * rational_power(p.value(), gamma), p);
}

Rational center_of_wavelet_index(long gamma, const Rational& n, Prime p) {
    return n * rational_power(p.value(), -gamma);
}

ComplexFunction detail_from_wavelets(const CosetGrid& grid, long gamma, const Rational& n, long shift) {
    require_label_range(shift, 0, grid.prime().value() - 1, "detail shift");
    const long p = grid.prime().value();
    double amplitude = std::pow(static_cast<double>(p), static_cast<double>(gamma) / 2.0 - 1.0);
    ComplexFunction out = ComplexFunction::zero(grid);
    for (long j = 1; j <= p - 1; ++j) {
        std::complex<double> coefficient = amplitude * character(make_ratio(-j * shift, p), grid.prime());
        out = out + coefficient * wavelet(grid, gamma, n, j);
    }
    return out;
}

ComplexFunction orthonormal_detail_from_wavelets(const CosetGrid& grid, long gamma, const Rational& n,
                                                 long label, KSign sign) {
    require_label_range(label, 1, grid.prime().value() - 1, "orthonormal detail");
    const long p = grid.prime().value();
    std::complex<double> k = orthogonality_root(grid.prime(), sign).to_complex();
    std::complex<double> prefactor = std::pow(static_cast<double>(p), -0.5) / k;
    ComplexFunction out = ComplexFunction::zero(grid);
    for (long j = 1; j <= p - 1; ++j) {
        std::complex<double> coefficient =
            prefactor * (1.0 + k * character(make_ratio(-j * label, p), grid.prime()));
        out = out + coefficient * wavelet(grid, gamma, n, j);
    }
    return out;
}

ComplexFunction wavelet_from_details(const CosetGrid& grid, long gamma, const Rational& n, long rotation) {
    require_label_range(rotation, 1, grid.prime().value() - 1, "wavelet rotation");
    const long p = grid.prime().value();
    Rational center = center_of_wavelet_index(gamma, n, grid.prime());
    double amplitude = std::pow(static_cast<double>(p), -static_cast<double>(gamma) / 2.0);
    ComplexFunction out = ComplexFunction::zero(grid);
    for (long a = 0; a <= p - 1; ++a) {
        std::complex<double> coefficient = amplitude * character(make_ratio(rotation * a, p), grid.prime());
        out = out + coefficient * to_complex(detail_function(grid, gamma, center, a));
    }
    return out;
}

ComplexFunction wavelet_from_orthonormal_details(const CosetGrid& grid, long gamma, const Rational& n,
                                                 long rotation, KSign sign) {
    require_label_range(rotation, 1, grid.prime().value() - 1, "wavelet rotation");
    const long p = grid.prime().value();
    Rational center = center_of_wavelet_index(gamma, n, grid.prime());
    QuadScalar k = orthogonality_root(grid.prime(), sign);
    std::complex<double> ratio =
        ((k + QuadScalar(1)) / (QuadScalar(Rational(p)) - k - QuadScalar(1))).to_complex();
    double prefactor = std::pow(static_cast<double>(p), -0.5);
    ComplexFunction out = ComplexFunction::zero(grid);
    for (long b = 1; b <= p - 1; ++b) {
        std::complex<double> coefficient =
            prefactor * (ratio + character(make_ratio(rotation * b, p), grid.prime()));
        out = out + coefficient * to_complex(orthonormal_detail(grid, gamma, center, b, sign));
    }
    return out;
}

ExactFunction detail_zero_from_orthonormal(const CosetGrid& grid, long gamma, const Rational& center,
                                           KSign sign) {
    const long p = grid.prime().value();
    QuadScalar k = orthogonality_root(grid.prime(), sign);
    QuadScalar prefactor =
        k * QuadScalar::half_power(grid.prime(), gamma - 1) / (QuadScalar(Rational(p)) - k - QuadScalar(1));
    ExactFunction out = ExactFunction::zero(grid);
    for (long b = 1; b <= p - 1; ++b) out = out + orthonormal_detail(grid, gamma, center, b, sign);
    return prefactor * out;
}

}  // namespace padic
