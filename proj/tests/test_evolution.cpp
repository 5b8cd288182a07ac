#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "padic/evolution.hpp"
#include "support/helpers.hpp"

using namespace padic;
using namespace padic::testing;

TEST_CASE("spectral solution of the diffusion problem on two cosets") {
    CosetGrid grid(Prime(2), 1, 0);
    ExactFunction f0 = indicator_function(grid, Rational(0), 0);
    EvolutionOperator op = VladimirovOperator{1.0};
    std::vector<double> times{0.0, 1.0, 2.0};
    EvolutionRun run = solve_spectral(grid, op, f0, times);

    SUBCASE("time zero reproduces the initial condition") {
        CHECK(sup_distance(run.snapshots[0], to_complex(f0)) <= 1e-14);
    }
    SUBCASE("closed form at t = 1 and t = 2") {
        for (std::size_t i : {std::size_t(1), std::size_t(2)}) {
            double decay = std::exp(-2.0 * times[i] / 3.0);
            ComplexFunction expected(grid, {{0.5 + 0.5 * decay, 0.0}, {0.5 - 0.5 * decay, 0.0}});
            CHECK(sup_distance(run.snapshots[i], expected) <= 1e-12);
        }
    }
    SUBCASE("constants are fixed points") {
        ExactFunction one = ExactFunction::constant(grid, QuadScalar(Rational(1)));
        EvolutionRun still = solve_spectral(grid, op, one, {0.0, 5.0, 100.0});
        for (const auto& snap : still.snapshots)
            CHECK(sup_distance(snap, to_complex(one)) <= 1e-12);
    }
}

TEST_CASE("term-by-term match with the series solution") {
    // f(x,t) = p^-r + sum_gamma p^(1-gamma) f_gamma(x) exp(lambda_gamma t):
    // coefficients from the unit-ball expansion, decay rates from the
    // closed-form eigenvalues, both exact before the final exponential.
    for (auto grid : {CosetGrid(Prime(2), 2, 0), CosetGrid(Prime(3), 1, -1)}) {
        long alpha = 1;
        ExactFunction f0 = indicator_function(grid, Rational(0), 0);
        UnitBallExpansion expansion = unit_ball_expansion(grid);
        for (double t : {0.0, 0.7, 3.0}) {
            ComplexFunction series =
                expansion.density_coefficient.get_d() * to_complex(uniform_density(grid));
            for (const auto& [gamma, coefficient] : expansion.detail_coefficients) {
                double rate =
                    vladimirov_eigenvalue_exact(grid.prime(), gamma, grid.ball_exponent(), alpha).get_d();
                std::complex<double> weight = coefficient.get_d() * std::exp(rate * t);
                series = series + weight * to_complex(detail_function(grid, gamma, Rational(0), 0));
            }
            EvolutionRun run = solve_spectral(grid, VladimirovOperator{1.0}, f0,
                                              t == 0.0 ? std::vector<double>{0.0} : std::vector<double>{t});
            CHECK(sup_distance(run.snapshots.back(), series) <= 1e-12);
        }
    }
}

TEST_CASE("spectral solver agrees with the matrix exponential oracle") {
    auto gen = rng(881);
    std::vector<double> times{0.0, 0.5, 1.0, 2.0, 10.0};
    for (auto grid : {CosetGrid(Prime(2), 2, -1), CosetGrid(Prime(3), 2, 0), CosetGrid(Prime(5), 1, -1)}) {
        ExactFunction f0 = random_exact_function(grid, gen);

        
        EvolutionRun spectral = solve_spectral(grid, VladimirovOperator{1.0}, f0, times);
        EvolutionRun oracle = solve_oracle(grid, VladimirovOperator{1.0}, f0, times);
        for (std::size_t i = 0; i < times.size(); ++i)
            CHECK(sup_distance(spectral.snapshots[i], oracle.snapshots[i]) <= 1e-8);

        // A kernel generator with random per-scale weights (negated absolute
        // values keep it dissipative, matching the physical sign convention).
        KernelSpec spec(grid.prime(), grid.constancy_exponent() + 1, grid.ball_exponent());
        for (long gamma = spec.gamma_min(); gamma <= spec.gamma_max(); ++gamma) {
            Rational w = random_small_rational(gen);
            spec.set_scale_default(gamma, w < 0 ? Rational(-w) : w);
        }
        EvolutionRun kernel_spectral = solve_spectral(grid, KernelOperator{spec}, f0, times);
        EvolutionRun kernel_oracle = solve_oracle(grid, KernelOperator{spec}, f0, times);
        for (std::size_t i = 0; i < times.size(); ++i)
            CHECK(sup_distance(kernel_spectral.snapshots[i], kernel_oracle.snapshots[i]) <= 1e-8);
    }
}

TEST_CASE("long-time limit is the mass-preserving constant") {
    CosetGrid grid(Prime(2), 2, -1);
    ExactFunction f0 = indicator_function(grid, Rational(0), -1);
    EvolutionRun run = solve_spectral(grid, VladimirovOperator{1.0}, f0, {1000.0});
    std::complex<double> mass = to_complex(f0).integrate();
    std::complex<double> level = mass / grid.total_measure().get_d();
    CHECK(sup_distance(run.snapshots[0], ComplexFunction::constant(grid, level)) <= 1e-12);
}

TEST_CASE("single eigenfunction decays as a pure exponential") {
    CosetGrid grid(Prime(3), 1, -1);
    BasisSet basis = orthonormal_basis(grid, KSign::Plus);
    ExactFunction phi = materialize_exact(basis, basis.elements[1]);
    double lambda =
        vladimirov_eigenvalue(grid.prime(), basis.elements[1].gamma, grid.ball_exponent(), 1.0);
    EvolutionRun run = solve_spectral(grid, VladimirovOperator{1.0}, phi, {0.0, 0.9, 3.1});
    for (std::size_t i = 0; i < run.times.size(); ++i) {
        auto coeffs = analyze(run.snapshots[i], basis);
        for (std::size_t c = 0; c < coeffs.size(); ++c) {
            if (c == 1)
                CHECK(close(coeffs[c], {std::exp(lambda * run.times[i]), 0.0}, 1e-10));
            else
                CHECK(std::abs(coeffs[c]) <= 1e-10);
        }
    }
}

TEST_CASE("semigroup property") {
    CosetGrid grid(Prime(2), 2, 0);
    auto gen = rng(991);
    ExactFunction f0 = random_exact_function(grid, gen);
    double t1 = 0.6, t2 = 1.7;
    EvolutionRun direct = solve_spectral(grid, VladimirovOperator{1.5}, f0, {t1 + t2});
    EvolutionRun first = solve_spectral(grid, VladimirovOperator{1.5}, f0, {t1});
    EvolutionRun second = solve_spectral(grid, VladimirovOperator{1.5}, first.snapshots[0], {t2});
    CHECK(sup_distance(direct.snapshots[0], second.snapshots[0]) <= 1e-9);
}

TEST_CASE("mass conservation and monotone relaxation") {
    CosetGrid grid(Prime(3), 1, -1);
    auto gen = rng(992);
    ExactFunction f0 = random_exact_function(grid, gen);
    std::vector<double> times{0.0, 0.2, 0.5, 1.0, 2.0, 5.0};
    EvolutionRun run = solve_spectral(grid, VladimirovOperator{1.0}, f0, times);
    std::complex<double> mass0 = to_complex(f0).integrate();
    std::complex<double> level = mass0 / grid.total_measure().get_d();
    double previous = std::numeric_limits<double>::infinity();
    for (const auto& snap : run.snapshots) {
        CHECK(std::abs(snap.integrate() - mass0) <= 1e-10);
        ComplexFunction gap = snap - ComplexFunction::constant(grid, level);
        double l2 = std::sqrt(inner_product(gap, gap).real());
        CHECK(l2 <= previous + 1e-12);
        previous = l2;
    }
}

TEST_CASE("survival series") {
    CosetGrid grid(Prime(2), 1, 0);
    ExactFunction f0 = indicator_function(grid, Rational(0), 0);
    std::vector<double> times{0.0, 0.5, 1.0, 4.0};
    EvolutionRun run = solve_spectral(grid, VladimirovOperator{1.0}, f0, times);

    SUBCASE("whole-ball region sees the conserved mass") {
        auto series = survival_series(run, ball_region(grid, Rational(0), 1));
        for (double s : series) CHECK(close(s, 1.0, 1e-12));
    }
    SUBCASE("unit-ball region decays as 1/2 + e^(-2t/3)/2") {
        auto series = survival_series(run, ball_region(grid, Rational(0), 0));
        for (std::size_t i = 0; i < times.size(); ++i)
            CHECK(close(series[i], 0.5 + 0.5 * std::exp(-2.0 * times[i] / 3.0), 1e-12));
    }
    SUBCASE("empty region integrates to zero") {
        auto series = survival_series(run, {});
        for (double s : series) CHECK(s == 0.0);
    }
    SUBCASE("region outside the window is rejected") {
        CHECK_THROWS_AS(ball_region(grid, Rational(0), 2), std::invalid_argument);
        CHECK_THROWS_AS(survival_series(run, {7}), std::out_of_range);
    }
}

TEST_CASE("evolution argument validation") {
    CosetGrid grid(Prime(2), 1, 0);
    ExactFunction f0 = indicator_function(grid, Rational(0), 0);
    CHECK_THROWS_AS(solve_spectral(grid, VladimirovOperator{1.0}, f0, {-1.0}), std::invalid_argument);
    CHECK_THROWS_AS(solve_spectral(grid, VladimirovOperator{1.0}, f0, {0.0, 0.0}), std::invalid_argument);
    KernelSpec wide(Prime(2), 0, 3);
    CHECK_THROWS_AS(solve_spectral(grid, KernelOperator{wide}, f0, {1.0}), std::invalid_argument);
    KernelSpec other(Prime(3), 0, 1);
    CHECK_THROWS_AS(solve_spectral(grid, KernelOperator{other}, f0, {1.0}), std::invalid_argument);
}
