#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "padic/grid_function.hpp"
#include "padic/padic.hpp"
#include "padic/quad.hpp"

namespace padic {

/// The function families on a window:
///  - Detail: difference between a shifted child-ball indicator and the ball
///    average; mean zero, supported in one ball, real, overcomplete.
///  - Orthonormal: the amplitude-k orthonormalization of the detail family.
///  - Wavelet: character modulated by a ball indicator (complex).
///  - Character: normalized additive character of a window frequency.
///  - Constant: the normalized constant p^(-r/2) on B_r.
enum class BasisKind { Detail, Orthonormal, Wavelet, Character, Constant };

/// Descriptor of one basis function. `offset` is the ball center for
/// Detail/Orthonormal, the Q_p/Z_p index n (center n*p^-gamma) for Wavelet,
/// and the frequency for Character. `label` is the child shift a, the
/// orthonormal label b, the wavelet rotation j, or the frequency index.
struct BasisElement {
    BasisKind kind;
    long gamma = 0;
    Rational offset = Rational(0);
    long label = 0;
    std::optional<double> eigenvalue;
};

struct BasisSet {
    CosetGrid grid;
    KSign sign;
    BasisKind kind;
    std::vector<BasisElement> elements;

    std::size_t size() const { return elements.size(); }
};

// -- single-function constructors -------------------------------------------

/// Child indicator minus ball average on B_gamma(center), shifted to child
/// `shift`: takes the value 1 - 1/p on the child, -1/p on the rest of the
/// ball, 0 outside. Requires l+1 <= gamma <= r and center in B_r.
ExactFunction detail_function(const CosetGrid& grid, long gamma, const Rational& center, long shift);

/// Unit-norm combination (p^((1-gamma)/2)/k) * (detail_0 + k * detail_b)
/// with k = -1 +- sqrt(p); the exact amplitudes live in Q(sqrt(p)).
ExactFunction orthonormal_detail(const CosetGrid& grid, long gamma, const Rational& center, long label,
                                 KSign sign);

/// The unit-norm constant p^(-r/2) on B_r.
ExactFunction normalized_constant(const CosetGrid& grid);

/// The constant p^(-r): the uniform probability density on B_r.
ExactFunction uniform_density(const CosetGrid& grid);

/// Wavelet p^(-gamma/2) chi(p^(gamma-1) j (x - n p^-gamma)) on the ball
/// B_gamma(n p^-gamma), zero outside. Throws if the support escapes B_r.
ComplexFunction wavelet(const CosetGrid& grid, long gamma, const Rational& n, long rotation);

// -- enumerations ------------------------------------------------------------

/// The complete orthonormal set on the window: the constant, then scales
/// gamma = r down to l+1, centers in canonical coset order, labels ascending.
/// Exactly p^(r-l) elements.
BasisSet orthonormal_basis(const CosetGrid& grid, KSign sign);

/// All wavelets whose support fits the window, same scale/center order,
/// rotations ascending: p^(r-l) - 1 elements (the constant is not a wavelet).
BasisSet wavelet_basis(const CosetGrid& grid);

/// The window part of the full-space orthonormal family: the same elements
/// as orthonormal_basis without the constant. On the window it spans only
/// the mean-zero subspace; completeness holds on the full space, not here.
BasisSet global_orthonormal_basis(const CosetGrid& grid, KSign sign);

// Full-space variants indexed by the Q_p/Z_p ball index n, i.e. centered at
// n * p^(-gamma) mapped onto grid representatives.
ExactFunction detail_function_global(const CosetGrid& grid, long gamma, const Rational& n, long shift);
ExactFunction orthonormal_detail_global(const CosetGrid& grid, long gamma, const Rational& n, long label,
                                        KSign sign);

ExactFunction materialize_exact(const BasisSet& basis, const BasisElement& element);
ComplexFunction materialize_complex(const BasisSet& basis, const BasisElement& element);

// -- analysis / synthesis ----------------------------------------------------

/// Coefficients <e_i, f> against an orthonormal family. Detail sets are
/// rejected (overcomplete, not a basis).
std::vector<QuadScalar> analyze(const ExactFunction& f, const BasisSet& basis);
std::vector<std::complex<double>> analyze(const ComplexFunction& f, const BasisSet& basis);

ExactFunction synthesize(const std::vector<QuadScalar>& coefficients, const BasisSet& basis);
ComplexFunction synthesize(const std::vector<std::complex<double>>& coefficients, const BasisSet& basis);

// -- expansion of the unit-ball indicator ------------------------------------

/// Indicator of Z_p as uniform density plus details at the origin:
/// coefficient 1 on p^(-r), p^(1-gamma) on the scale-gamma detail.
/// Exact at finite resolution; requires r >= 1 and l <= 0.
struct UnitBallExpansion {
    Rational density_coefficient;
    std::vector<std::pair<long, Rational>> detail_coefficients;  // (gamma, coefficient)
};

UnitBallExpansion unit_ball_expansion(const CosetGrid& grid);
ExactFunction reconstruct(const UnitBallExpansion& expansion, const CosetGrid& grid);

// -- wavelet bridge ----------------------------------------------------------

/// Q_p/Z_p wavelet index of the ball containing `center` at scale gamma.
Rational wavelet_index_of_center(Prime p, long gamma, const Rational& center);
/// Ball center n * p^(-gamma) for a wavelet index.
Rational center_of_wavelet_index(long gamma, const Rational& n, Prime p);

/// Detail function from wavelets: p^(gamma/2 - 1) sum_j chi(-ja/p) psi_j
/// (translating a wavelet by a p^-gamma multiplies it by chi(-ja/p)).
ComplexFunction detail_from_wavelets(const CosetGrid& grid, long gamma, const Rational& n, long shift);

/// Orthonormal detail from wavelets:
/// (p^(-1/2)/k) sum_j (1 + k chi(-jb/p)) psi_j.
ComplexFunction orthonormal_detail_from_wavelets(const CosetGrid& grid, long gamma, const Rational& n,
                                                 long label, KSign sign);

/// Wavelet from details: p^(-gamma/2) sum_a chi(ja/p) detail_a.
ComplexFunction wavelet_from_details(const CosetGrid& grid, long gamma, const Rational& n, long rotation);

/// Wavelet from orthonormal details:
/// p^(-1/2) sum_b ((k+1)/(p-k-1) + chi(jb/p)) phi_b.
ComplexFunction wavelet_from_orthonormal_details(const CosetGrid& grid, long gamma, const Rational& n,
                                                 long rotation, KSign sign);

/// Exact inverse transition: detail_0 = (k p^((gamma-1)/2)/(p-k-1)) sum_b phi_b.
ExactFunction detail_zero_from_orthonormal(const CosetGrid& grid, long gamma, const Rational& center,
                                           KSign sign);

}  // namespace padic
