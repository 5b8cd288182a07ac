#include "padic/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include "padic/bases.hpp"
#include "padic/evolution.hpp"
#include "padic/fourier.hpp"
#include "padic/grid_function.hpp"
#include "padic/operators.hpp"

namespace padic {

namespace {

struct Session {
    VerifyConfig config;
    CosetGrid grid;
    std::mt19937_64 gen;
    std::vector<CheckResult> results;

    explicit Session(const VerifyConfig& c) : config(c), grid(c.p, c.r, c.l), gen(c.seed) {}

    Rational small_rational() {
        std::uniform_int_distribution<long> num(-9, 9);
        std::uniform_int_distribution<long> den(1, 9);
        return make_ratio(num(gen), den(gen));
    }
    ExactFunction random_exact() {
        std::vector<QuadScalar> values(grid.size());
        for (auto& v : values) v = QuadScalar(small_rational());
        return ExactFunction(grid, std::move(values));
    }
    ComplexFunction random_complex() {
        std::uniform_real_distribution<double> coord(-1.0, 1.0);
        std::vector<std::complex<double>> values(grid.size());
        for (auto& v : values) v = {coord(gen), coord(gen)};
        return ComplexFunction(grid, std::move(values));
    }

    void exact_check(const std::string& name, const std::function<QuadScalar()>& worst_defect) {
        QuadScalar defect = worst_defect();
        double residual = std::abs(defect.to_double());
        results.push_back({name, defect.is_zero(), residual, 0.0});
    }
    void float_check(const std::string& name, double bound, const std::function<double()>& worst_defect) {
        double residual = worst_defect();
        results.push_back({name, residual <= bound, residual, bound});
    }
};

QuadScalar worse(const QuadScalar& a, const QuadScalar& b) {
    return std::abs(a.to_double()) >= std::abs(b.to_double()) ? a : b;
}

ExactFunction exact_indicator(const CosetGrid& grid, const Rational& center, long gamma) {
    std::vector<QuadScalar> values(grid.size());
    for (std::size_t m = 0; m < grid.size(); ++m)
        values[m] =
            QuadScalar(Rational(ball_indicator(grid.representative(m), center, gamma, grid.prime()) ? 1 : 0));
    return ExactFunction(grid, std::move(values));
}

// -- exact identities ---------------------------------------------------------

void check_ultrametric(Session& s) {
    s.exact_check("core.ultrametric", [&] {
        QuadScalar defect;
        for (int i = 0; i < 500; ++i) {
            Rational x = s.small_rational(), y = s.small_rational();
            Rational nx = padic_norm(x, s.config.p), ny = padic_norm(y, s.config.p);
            Rational bound = std::max(nx, ny);
            Rational sum = padic_norm(x + y, s.config.p);
            if (sum > bound) defect = worse(defect, QuadScalar(sum - bound));
            if (nx != ny && sum != bound) defect = worse(defect, QuadScalar(sum - bound));
        }
        return defect;
    });
}

void check_coset_partition(Session& s) {
    s.exact_check("core.coset-partition", [&] {
        CosetGrid fine(s.config.p, s.grid.ball_exponent(), s.grid.constancy_exponent() - 2);
        QuadScalar defect;
        for (std::size_t m = 0; m < fine.size(); ++m) {
            long hits = 0;
            for (std::size_t i = 0; i < s.grid.size(); ++i)
                hits += ball_indicator(fine.representative(m), s.grid.representative(i),
                                       s.grid.constancy_exponent(), s.config.p);
            defect = worse(defect, QuadScalar(Rational(hits - 1)));
        }
        return defect;
    });
}

void check_round_trip(Session& s) {
    s.exact_check("core.enumeration-round-trip", [&] {
        QuadScalar defect;
        for (std::size_t m = 0; m < s.grid.size(); ++m) {
            long gap = static_cast<long>(s.grid.index_of(s.grid.representative(m))) - static_cast<long>(m);
            defect = worse(defect, QuadScalar(Rational(gap)));
        }
        return defect;
    });
}

void check_root_equation(Session& s) {
    s.exact_check("scalars.root-equation", [&] {
        QuadScalar defect;
        for (KSign sign : {KSign::Plus, KSign::Minus})
            defect = worse(defect, orthogonality_defect(s.config.p, orthogonality_root(s.config.p, sign)));
        return defect;
    });
}

void check_convolution_algebra(Session& s) {
    s.exact_check("space.convolution-algebra", [&] {
        QuadScalar defect;
        for (int i = 0; i < 5; ++i) {
            ExactFunction f = s.random_exact(), g = s.random_exact(), h = s.random_exact();
            QuadScalar c(s.small_rational());
            ExactFunction sym = convolve_direct(f, g) - convolve_direct(g, f);
            ExactFunction lin =
                convolve_direct(f, g + c * h) - (convolve_direct(f, g) + c * convolve_direct(f, h));
            for (std::size_t m = 0; m < s.grid.size(); ++m) defect = worse(worse(defect, sym[m]), lin[m]);
        }
        return defect;
    });
}

void check_product_integral(Session& s) {
    s.exact_check("space.product-integral", [&] {
        QuadScalar defect;
        for (int i = 0; i < 5; ++i) {
            ExactFunction f = s.random_exact(), g = s.random_exact();
            defect = worse(defect, pointwise_product(f, g).integrate() - inner_product(f, g));
        }
        return defect;
    });
}

void check_gram_identity(Session& s) {
    s.exact_check("bases.gram-identity", [&] {
        BasisSet basis = orthonormal_basis(s.grid, s.config.sign);
        std::vector<ExactFunction> functions;
        functions.reserve(basis.size());
        for (const auto& e : basis.elements) functions.push_back(materialize_exact(basis, e));
        QuadScalar defect;
        for (std::size_t i = 0; i < functions.size(); ++i)
            for (std::size_t j = i; j < functions.size(); ++j)
                defect = worse(defect, inner_product(functions[i], functions[j]) -
                                           QuadScalar(Rational(i == j ? 1 : 0)));
        return defect;
    });
}

void check_detail_relations(Session& s) {
    s.exact_check("bases.detail-relations", [&] {
        QuadScalar defect;
        const long p = s.config.p.value();
        for (long gamma = s.grid.constancy_exponent() + 1; gamma <= s.grid.ball_exponent(); ++gamma) {
            ExactFunction sum = ExactFunction::zero(s.grid);
            for (long a = 0; a < p; ++a) sum = sum + detail_function(s.grid, gamma, Rational(0), a);
            for (std::size_t m = 0; m < s.grid.size(); ++m) defect = worse(defect, sum[m]);
            for (long a = 0; a < p; ++a)
                for (long b = 0; b < p; ++b) {
                    QuadScalar expected(rational_power(p, gamma - 1) *
                                        (Rational(a == b ? 1 : 0) - make_ratio(1, p)));
                    defect = worse(defect, inner_product(detail_function(s.grid, gamma, Rational(0), a),
                                                         detail_function(s.grid, gamma, Rational(0), b)) -
                                               expected);
                }
        }
        return defect;
    });
}

void check_unit_ball_expansion(Session& s) {
    if (s.grid.ball_exponent() < 1 || s.grid.constancy_exponent() > 0) return;
    s.exact_check("bases.unit-ball-expansion", [&] {
        ExactFunction lhs = reconstruct(unit_ball_expansion(s.grid), s.grid);
        ExactFunction rhs = exact_indicator(s.grid, Rational(0), 0);
        QuadScalar defect;
        for (std::size_t m = 0; m < s.grid.size(); ++m) defect = worse(defect, lhs[m] - rhs[m]);
        return defect;
    });
}

void check_eigen_identity(Session& s) {
    s.exact_check("operators.eigen-identity", [&] {
        long alpha = static_cast<long>(s.config.alpha);
        OperatorMatrix<Rational> a = vladimirov_matrix_exact(s.grid, alpha);
        BasisSet basis = orthonormal_basis(s.grid, s.config.sign);
        QuadScalar defect;
        for (const auto& e : basis.elements) {
            ExactFunction phi = materialize_exact(basis, e);
            QuadScalar lambda(e.kind == BasisKind::Constant
                                  ? Rational(0)
                                  : vladimirov_eigenvalue_exact(s.config.p, e.gamma,
                                                                s.grid.ball_exponent(), alpha));
            ExactFunction gap = a.apply(phi) - lambda * phi;
            for (std::size_t m = 0; m < s.grid.size(); ++m) defect = worse(defect, gap[m]);
        }
        return defect;
    });
}

void check_kernel_vladimirov(Session& s) {
    s.exact_check("operators.kernel-vladimirov-agreement", [&] {
        long alpha = static_cast<long>(s.config.alpha);
        KernelSpec spec = KernelSpec::vladimirov_equivalent(s.config.p, alpha,
                                                            s.grid.constancy_exponent() + 1,
                                                            s.grid.ball_exponent());
        OperatorMatrix<Rational> lhs = kernel_matrix_exact(s.grid, spec);
        OperatorMatrix<Rational> rhs = vladimirov_matrix_exact(s.grid, alpha);
        QuadScalar defect;
        for (std::size_t i = 0; i < lhs.entries().size(); ++i)
            defect = worse(defect, QuadScalar(lhs.entries()[i] - rhs.entries()[i]));
        return defect;
    });
}

void check_row_sums(Session& s) {
    s.exact_check("operators.row-sums", [&] {
        long alpha = static_cast<long>(s.config.alpha);
        OperatorMatrix<Rational> a = vladimirov_matrix_exact(s.grid, alpha);
        QuadScalar defect;
        for (std::size_t i = 0; i < a.size(); ++i) {
            Rational row(0);
            for (std::size_t j = 0; j < a.size(); ++j) row += a.at(i, j);
            defect = worse(defect, QuadScalar(row));
        }
        return defect;
    });
}

// -- float identities ---------------------------------------------------------

void check_character_additivity(Session& s) {
    s.float_check("core.character-additivity", 1e-12, [&] {
        std::uniform_int_distribution<long> digit(-200, 200);
        std::uniform_int_distribution<long> power(0, 12);
        double residual = 0.0;
        for (int i = 0; i < 300; ++i) {
            Rational x = Rational(digit(s.gen)) * rational_power(s.config.p.value(), -power(s.gen));
            Rational y = Rational(digit(s.gen)) * rational_power(s.config.p.value(), -power(s.gen));
            residual = std::max(residual, std::abs(character(x + y, s.config.p) -
                                                   character(x, s.config.p) * character(y, s.config.p)));
        }
        return residual;
    });
}

void check_float_embedding(Session& s) {
    s.float_check("scalars.float-embedding", 1e-10, [&] {
        double sqrtp = std::sqrt(static_cast<double>(s.config.p.value()));
        double residual = 0.0;
        for (int i = 0; i < 500; ++i) {
            QuadScalar x(s.config.p, s.small_rational(), s.small_rational());
            QuadScalar y(s.config.p, s.small_rational(), s.small_rational());
            double xd = x.rational_part().get_d() + x.surd_part().get_d() * sqrtp;
            double yd = y.rational_part().get_d() + y.surd_part().get_d() * sqrtp;
            residual = std::max(residual, std::abs((x * y).to_double() - xd * yd) / (1 + std::abs(xd * yd)));
            residual = std::max(residual, std::abs((x + y).to_double() - (xd + yd)));
        }
        return residual;
    });
}

void check_fourier_round_trip(Session& s) {
    s.float_check("fourier.round-trip", 1e-10, [&] {
        double residual = 0.0;
        for (int i = 0; i < 10; ++i) {
            ComplexFunction f = s.random_complex();
            residual = std::max(residual, sup_distance(dft_inverse(dft_forward(f)), f));
        }
        return residual;
    });
}

void check_parseval(Session& s) {
    s.float_check("fourier.parseval", 1e-10, [&] {
        double residual = 0.0;
        for (int i = 0; i < 10; ++i) residual = std::max(residual, parseval_gap(s.random_complex()));
        return residual;
    });
}

void check_convolution_theorem(Session& s) {
    s.float_check("fourier.convolution-theorem", 1e-10, [&] {
        double residual = 0.0;
        for (int i = 0; i < 10; ++i) {
            ExactFunction f = s.random_exact(), g = s.random_exact();
            residual = std::max(residual, sup_distance(convolve_spectral(to_complex(f), to_complex(g)),
                                                       to_complex(convolve_direct(f, g))));
        }
        return residual;
    });
}

void check_product_theorem(Session& s) {
    s.float_check("fourier.product-theorem", 1e-10, [&] {
        double residual = 0.0;
        for (int i = 0; i < 10; ++i) {
            ComplexFunction f = s.random_complex(), g = s.random_complex();
            Spectrum lhs = product_spectrum(f, g);
            Spectrum rhs = dft_forward(pointwise_product(f, g));
            for (std::size_t k = 0; k < lhs.values.size(); ++k)
                residual = std::max(residual, std::abs(lhs.values[k] - rhs.values[k]));
        }
        return residual;
    });
}

void check_support_duality(Session& s) {
    s.float_check("fourier.support-duality", 1e-10, [&] {
        ExactFunction f = s.random_exact();
        double residual = 0.0;
        // Refine l: the transform must vanish beyond the old dual window.
        CosetGrid fine(s.config.p, s.grid.ball_exponent(), s.grid.constancy_exponent() - 2);
        Spectrum spectrum = dft_forward(embed(f, fine));
        FrequencyGrid freq(fine);
        Rational cutoff = rational_power(s.config.p.value(), -s.grid.constancy_exponent());
        for (std::size_t i = 1; i < freq.size(); ++i)
            if (padic_norm(freq.frequency(i), s.config.p) > cutoff)
                residual = std::max(residual, std::abs(spectrum.values[i]));
        // Extend r: the transform is constant modulo B_{-r}, bit-exactly.
        CosetGrid wide(s.config.p, s.grid.ball_exponent() + 2, s.grid.constancy_exponent());
        Spectrum spread = dft_forward(embed(f, wide));
        std::size_t period = 1;
        for (long i = 0; i < s.grid.ball_exponent() - s.grid.constancy_exponent(); ++i)
            period *= static_cast<std::size_t>(s.config.p.value());
        for (std::size_t i = 0; i < spread.values.size(); ++i)
            residual = std::max(residual,
                                std::abs(spread.values[i] - spread.values[(i + period) % spread.values.size()]));
        return residual;
    });
}

void check_character_spectrum(Session& s) {
    s.float_check("operators.character-spectrum", 1e-10, [&] {
        OperatorMatrix<double> a = vladimirov_matrix(s.grid, s.config.alpha);
        FrequencyGrid freq(s.grid);
        double residual = 0.0;
        for (std::size_t i = 0; i < freq.size(); ++i) {
            Rational k = freq.frequency(i);
            std::vector<std::complex<double>> values(s.grid.size());
            for (std::size_t m = 0; m < s.grid.size(); ++m)
                values[m] = character(k * s.grid.representative(m), s.config.p);
            ComplexFunction chi(s.grid, std::move(values));
            double lambda = character_eigenvalue(s.config.p, k, s.grid.ball_exponent(), s.config.alpha);
            double gap = sup_distance(a.apply(chi), std::complex<double>(lambda, 0.0) * chi);
            residual = std::max(residual, gap / std::max(1.0, std::abs(lambda)));
        }
        return residual;
    });
}

void check_wavelet_orthonormality(Session& s) {
    s.float_check("bases.wavelet-orthonormality", 1e-10, [&] {
        BasisSet basis = wavelet_basis(s.grid);
        std::vector<ComplexFunction> psis;
        psis.reserve(basis.size());
        for (const auto& e : basis.elements) psis.push_back(materialize_complex(basis, e));
        double residual = 0.0;
        for (std::size_t i = 0; i < psis.size(); ++i)
            for (std::size_t j = i; j < psis.size(); ++j)
                residual = std::max(residual, std::abs(inner_product(psis[i], psis[j]) -
                                                       std::complex<double>(i == j ? 1.0 : 0.0, 0.0)));
        return residual;
    });
}

void check_wavelet_bridge(Session& s) {
    s.float_check("bases.wavelet-bridge", 1e-10, [&] {
        double residual = 0.0;
        const long p = s.config.p.value();
        for (long gamma = s.grid.constancy_exponent() + 1; gamma <= s.grid.ball_exponent(); ++gamma) {
            Rational center(0);
            Rational n = wavelet_index_of_center(s.config.p, gamma, center);
            for (long a = 0; a < p; ++a)
                residual = std::max(residual,
                                    sup_distance(detail_from_wavelets(s.grid, gamma, n, a),
                                                 to_complex(detail_function(s.grid, gamma, center, a))));
            for (long b = 1; b < p; ++b)
                residual = std::max(
                    residual,
                    sup_distance(orthonormal_detail_from_wavelets(s.grid, gamma, n, b, s.config.sign),
                                 to_complex(orthonormal_detail(s.grid, gamma, center, b, s.config.sign))));
            for (long j = 1; j < p; ++j) {
                ComplexFunction psi = wavelet(s.grid, gamma, n, j);
                residual =
                    std::max(residual, sup_distance(wavelet_from_details(s.grid, gamma, n, j), psi));
                residual = std::max(
                    residual,
                    sup_distance(wavelet_from_orthonormal_details(s.grid, gamma, n, j, s.config.sign), psi));
            }
        }
        return residual;
    });
}

void check_wavelet_eigen_identity(Session& s) {
    s.float_check("operators.wavelet-eigen-identity", 1e-10, [&] {
        KernelSpec spec(s.config.p, s.grid.constancy_exponent() + 1, s.grid.ball_exponent());
        for (long gamma = spec.gamma_min(); gamma <= spec.gamma_max(); ++gamma) {
            Rational w = s.small_rational();
            spec.set_scale_default(gamma, w < 0 ? Rational(-w) : w);
        }
        OperatorMatrix<double> a = kernel_matrix(s.grid, spec);
        BasisSet basis = wavelet_basis(s.grid);
        double residual = 0.0;
        for (const auto& e : basis.elements) {
            ComplexFunction psi = materialize_complex(basis, e);
            double lambda = kernel_eigenvalue(spec, e.gamma, e.offset);
            residual = std::max(residual,
                                sup_distance(a.apply(psi), std::complex<double>(lambda, 0.0) * psi));
        }
        return residual;
    });
}

void check_spectral_completeness(Session& s) {
    s.float_check("operators.spectral-completeness", 1e-8, [&] {
        std::vector<double> expected{0.0};
        for (long gamma = s.grid.constancy_exponent() + 1; gamma <= s.grid.ball_exponent(); ++gamma) {
            std::size_t multiplicity = static_cast<std::size_t>(s.config.p.value() - 1);
            for (long i = 0; i < s.grid.ball_exponent() - gamma; ++i)
                multiplicity *= static_cast<std::size_t>(s.config.p.value());
            expected.insert(expected.end(), multiplicity,
                            vladimirov_eigenvalue(s.config.p, gamma, s.grid.ball_exponent(),
                                                  s.config.alpha));
        }
        std::sort(expected.begin(), expected.end());
        std::vector<double> computed = dense_spectrum(vladimirov_matrix(s.grid, s.config.alpha));
        double residual = 0.0;
        for (std::size_t i = 0; i < computed.size(); ++i)
            residual = std::max(residual, std::abs(computed[i] - expected[i]));
        return residual;
    });
}

void check_negative_spectrum(Session& s) {
    s.float_check("operators.negative-spectrum", 0.0, [&] {
        double worst = -1.0;  // any nonzero closed-form eigenvalue at or above 0 is a failure
        for (long gamma = s.grid.constancy_exponent() + 1; gamma <= s.grid.ball_exponent(); ++gamma)
            worst = std::max(worst, vladimirov_eigenvalue(s.config.p, gamma, s.grid.ball_exponent(),
                                                          s.config.alpha));
        return worst < 0.0 ? 0.0 : worst + 1.0;
    });
}

void check_evolution(Session& s) {
    std::vector<double> times{0.0, 0.5, 1.0, 2.0, 10.0};
    ExactFunction f0 = exact_indicator(s.grid, Rational(0), s.grid.constancy_exponent());
    EvolutionOperator op = VladimirovOperator{s.config.alpha};
    EvolutionRun spectral = solve_spectral(s.grid, op, f0, times, s.config.sign);
    EvolutionRun oracle = solve_oracle(s.grid, op, f0, times);

    s.float_check("evolution.oracle-agreement", 1e-8, [&] {
        double residual = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i)
            residual = std::max(residual, sup_distance(spectral.snapshots[i], oracle.snapshots[i]));
        return residual;
    });
    s.float_check("evolution.mass-conservation", 1e-10, [&] {
        std::complex<double> mass0 = to_complex(f0).integrate();
        double residual = 0.0;
        for (const auto& snap : spectral.snapshots)
            residual = std::max(residual, std::abs(snap.integrate() - mass0));
        return residual;
    });
    s.float_check("evolution.semigroup", 1e-9, [&] {
        EvolutionRun first = solve_spectral(s.grid, op, f0, {0.6}, s.config.sign);
        EvolutionRun second = solve_spectral(s.grid, op, first.snapshots[0], {1.1}, s.config.sign);
        EvolutionRun direct = solve_spectral(s.grid, op, f0, {1.7}, s.config.sign);
        return sup_distance(second.snapshots[0], direct.snapshots[0]);
    });
    s.float_check("evolution.monotone-decay", 1e-12, [&] {
        std::complex<double> level = to_complex(f0).integrate() / s.grid.total_measure().get_d();
        double previous = std::numeric_limits<double>::infinity();
        double residual = 0.0;
        for (const auto& snap : spectral.snapshots) {
            ComplexFunction gap = snap - ComplexFunction::constant(s.grid, level);
            double l2 = std::sqrt(std::abs(inner_product(gap, gap).real()));
            residual = std::max(residual, l2 - previous);
            previous = l2;
        }
        return std::max(residual, 0.0);
    });
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyConfig& config) {
    if (config.alpha <= 0) throw std::invalid_argument("verify: alpha must be positive");
    if (config.backend == BackendKind::ExactQuad && config.alpha != std::floor(config.alpha))
        throw std::invalid_argument("verify: exact backend requires integer alpha");
    Session session(config);
    if (config.backend == BackendKind::ExactQuad) {
        check_ultrametric(session);
        check_coset_partition(session);
        check_round_trip(session);
        check_root_equation(session);
        check_convolution_algebra(session);
        check_product_integral(session);
        check_gram_identity(session);
        check_detail_relations(session);
        check_unit_ball_expansion(session);
        check_eigen_identity(session);
        check_kernel_vladimirov(session);
        check_row_sums(session);
    } else {
        check_character_additivity(session);
        check_float_embedding(session);
        check_fourier_round_trip(session);
        check_parseval(session);
        check_convolution_theorem(session);
        check_product_theorem(session);
        check_support_duality(session);
        check_character_spectrum(session);
        check_wavelet_orthonormality(session);
        check_wavelet_bridge(session);
        check_wavelet_eigen_identity(session);
        check_spectral_completeness(session);
        check_negative_spectrum(session);
        check_evolution(session);
    }
    return session.results;
}

}  // namespace padic
