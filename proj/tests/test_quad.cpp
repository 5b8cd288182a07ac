#include <doctest.h>

#include <cmath>
#include <random>

#include "padic/quad.hpp"
#include "support/helpers.hpp"

using namespace padic;
using namespace padic::testing;

namespace {

QuadScalar surd(long p, long a_num, long a_den, long b_num, long b_den) {
    return QuadScalar(Prime(p), make_ratio(a_num, a_den), make_ratio(b_num, b_den));
}

}  // namespace

TEST_CASE("field arithmetic in Q(sqrt p)") {
    QuadScalar k_plus = surd(2, -1, 1, 1, 1);   // -1 + sqrt2
    QuadScalar k_minus = surd(2, -1, 1, -1, 1); // -1 - sqrt2

    CHECK(k_plus * k_minus == QuadScalar(Rational(-1)));
    CHECK(k_plus + surd(2, 1, 1, -1, 1) == QuadScalar());

    QuadScalar inv = QuadScalar(Rational(1)) / k_plus;
    CHECK(inv * k_plus == QuadScalar(Rational(1)));  // independent confirmation
    CHECK(inv == surd(2, 1, 1, 1, 1));               // 1 + sqrt2

    CHECK_THROWS_AS(k_plus / QuadScalar(), std::domain_error);
    CHECK_THROWS_AS(surd(2, 0, 1, 1, 1) * surd(3, 0, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("half powers") {
    CHECK(QuadScalar::half_power(Prime(2), 4) == QuadScalar(Rational(4)));
    CHECK(QuadScalar::half_power(Prime(2), 1) == surd(2, 0, 1, 1, 1));
    CHECK(QuadScalar::half_power(Prime(3), -1) == surd(3, 0, 1, 1, 3));  // 1/sqrt3 = sqrt3/3
    CHECK(QuadScalar::half_power(Prime(5), -4) == QuadScalar(make_ratio(1, 25)));
    // p^(h/2) * p^(-h/2) = 1 for both parities
    for (long h : {-3L, -2L, -1L, 0L, 1L, 2L, 3L})
        CHECK(QuadScalar::half_power(Prime(3), h) * QuadScalar::half_power(Prime(3), -h) ==
              QuadScalar(Rational(1)));
}

TEST_CASE("orthogonality root") {
    CHECK(orthogonality_root(Prime(2), KSign::Plus) == surd(2, -1, 1, 1, 1));
    CHECK(orthogonality_root(Prime(3), KSign::Minus) == surd(3, -1, 1, -1, 1));
    for (long p : {2L, 3L, 5L, 7L})
        for (KSign sign : {KSign::Plus, KSign::Minus})
            CHECK(orthogonality_defect(Prime(p), orthogonality_root(Prime(p), sign)) == QuadScalar());
}

TEST_CASE("backend comparison rules") {
    Backend exact = Backend::exact();
    CHECK(exact.tolerance == 0.0);
    CHECK(exact.equal(surd(2, 1, 2, 0, 1), QuadScalar(make_ratio(1, 2))));
    CHECK_FALSE(exact.equal(QuadScalar(make_ratio(1, 2)), QuadScalar(make_ratio(1, 3))));

    Backend fl = Backend::floating();
    CHECK(fl.equal({1.0, 0.0}, {1.0 + 1e-12, 0.0}));
    CHECK_FALSE(fl.equal({1.0, 0.0}, {1.0 + 1e-9, 0.0}));
    // Tolerance scales with magnitude above 1.
    CHECK(fl.equal({1e6, 0.0}, {1e6 + 1e-5, 0.0}));
}

TEST_CASE("float embedding tracks float arithmetic") {
    auto gen = rng(303);
    for (long p : {2L, 3L, 5L}) {
        double sqrtp = std::sqrt(static_cast<double>(p));
        for (int i = 0; i < 1000; ++i) {
            QuadScalar x(Prime(p), random_small_rational(gen), random_small_rational(gen));
            QuadScalar y(Prime(p), random_small_rational(gen), random_small_rational(gen));
            double xd = x.rational_part().get_d() + x.surd_part().get_d() * sqrtp;
            double yd = y.rational_part().get_d() + y.surd_part().get_d() * sqrtp;
            CHECK(close((x + y).to_double(), xd + yd, 1e-12));
            CHECK(close((x * y).to_double(), xd * yd, 1e-10 * (1 + std::abs(xd * yd))));
        }
    }
}
