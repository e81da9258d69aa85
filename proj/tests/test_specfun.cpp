#include <doctest.h>

#include <cmath>

#include "kgh/errors.hpp"
#include "kgh/specfun.hpp"
#include "oracles.hpp"

using namespace kgh;
using namespace kgh::specfun;
using kgh::testing::Sampler;

TEST_CASE("jacobi low orders")
{
    Sampler rng(11);
    for (int i = 0; i < 10; ++i) {
        const double a = rng.uniform(-0.9, 4.0);
        const double b = rng.uniform(-0.9, 4.0);
        const double x = rng.uniform(-1.0, 1.0);
        CHECK(jacobi_eval({a, b, 0}, x) == 1.0);
        const double p1 = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x;
        CHECK(jacobi_eval({a, b, 1}, x) == doctest::Approx(p1).epsilon(1e-14));
        // Rodrigues in z = (1 - x)/2: P_n = rodrigues / n!.
        const double z = 0.5 * (1.0 - x);
        CHECK(kgh::testing::rodrigues(1, a, b, z) == doctest::Approx(p1).epsilon(1e-12));
    }
}

TEST_CASE("jacobi reflection symmetry")
{
    Sampler rng(12);
    for (int n : {1, 2, 3}) {
        for (int i = 0; i < 10; ++i) {
            const double a = rng.uniform(-0.9, 5.0);
            const double b = rng.uniform(-0.9, 5.0);
            const double x = rng.uniform(-1.0, 1.0);
            const double lhs = jacobi_eval({a, b, n}, -x);
            const double rhs = (n % 2 ? -1.0 : 1.0) * jacobi_eval({b, a, n}, x);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
        }
    }
}

TEST_CASE("jacobi endpoint value")
{
    for (int alpha = 0; alpha <= 4; ++alpha) {
        for (int n = 0; n <= 5; ++n) {
            const double expected = kgh::testing::binom(n + alpha, n);
            CHECK(jacobi_eval({static_cast<double>(alpha), 1.5, n}, 1.0) == doctest::Approx(expected).epsilon(1e-14));
        }
    }
}

TEST_CASE("jacobi matches explicit sum and Rodrigues up to a constant")
{
    Sampler rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const double a = rng.uniform(-0.9, 6.0);
        const double b = rng.uniform(-0.9, 6.0);
        for (int n = 0; n <= 5; ++n) {
            double lo = 1e300;
            double hi = -1e300;
            for (int k = 0; k < 12; ++k) {
                const double z = (k + 0.37) / 12.0;
                const double P = jacobi_eval({a, b, n}, 1.0 - 2.0 * z);
                CHECK(P == doctest::Approx(kgh::testing::jacobi_explicit(n, a, b, z)).epsilon(1e-11));
                const double R = kgh::testing::rodrigues(n, a, b, z);
                if (std::abs(P) > 1e-8) {
                    lo = std::min(lo, R / P);
                    hi = std::max(hi, R / P);
                }
            }
            CHECK((hi - lo) / std::abs(hi) < 1e-8);
        }
    }
}

TEST_CASE("jacobi stable at high degree")
{
    // Legendre case against std::legendre.
    for (int n : {20, 50, 100}) {
        for (double x : {-0.93, -0.2, 0.41, 0.999}) {
            CHECK(jacobi_eval({0.0, 0.0, n}, x) == doctest::Approx(std::legendre(n, x)).epsilon(1e-10));
        }
    }
}

TEST_CASE("jacobi derivatives")
{
    CHECK(jacobi_derivative({1.3, 0.4, 0}, 0.2) == 0.0);
    Sampler rng(14);
    for (int i = 0; i < 10; ++i) {
        const double a = rng.uniform(-0.9, 4.0);
        const double b = rng.uniform(-0.9, 4.0);
        const double x = rng.uniform(-1.0, 1.0);
        CHECK(jacobi_derivative({a, b, 1}, x) == doctest::Approx(0.5 * (a + b + 2.0)).epsilon(1e-14));
    }
    for (int n : {2, 3, 4}) {
        for (int i = 0; i < 10; ++i) {
            const double a = rng.uniform(-0.9, 4.0);
            const double b = rng.uniform(-0.9, 4.0);
            const double x = rng.uniform(-0.95, 0.95);
            const double h = 1e-6;
            const double fd = (jacobi_eval({a, b, n}, x + h) - jacobi_eval({a, b, n}, x - h)) / (2 * h);
            const double d = jacobi_derivative({a, b, n}, x);
            CHECK(std::abs(fd - d) <= 1e-6 * std::max(1.0, std::abs(d)));
            const double fd2 = (jacobi_derivative({a, b, n}, x + h) - jacobi_derivative({a, b, n}, x - h)) / (2 * h);
            const double d2 = jacobi_derivative({a, b, n}, x, 2);
            CHECK(std::abs(fd2 - d2) <= 1e-6 * std::max(1.0, std::abs(d2)));
        }
    }
}

TEST_CASE("gauss-legendre rules")
{
    for (int m : {2, 3, 8, 16}) {
        const QuadratureRule rule = gauss_legendre(m, 1);
        double sum = 0.0;
        for (double w : rule.weights) {
            CHECK(w > 0.0);
            sum += w;
        }
        CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(rule.nodes.size() == rule.weights.size());
        for (double x : rule.nodes) {
            CHECK(std::abs(x) < 1.0);
        }
        CHECK(std::abs(integrate([](double x) { return x * x * x; }, 0.0, 1.0, rule) - 0.25) < 1e-15);
        // Exact up to degree 2m - 1.
        const int deg = 2 * m - 1;
        const double exact = 1.0 / (deg + 1);
        CHECK(integrate([deg](double x) { return std::pow(x, deg); }, 0.0, 1.0, rule)
              == doctest::Approx(exact).epsilon(1e-13));
    }
    CHECK(default_rule().nodes.size() == 16);
    CHECK(default_rule().panels == 64);
}

TEST_CASE("quadrature integrals")
{
    const QuadratureRule& rule = default_rule();
    // Orthogonality of P_1 and P_2 under (1-x)(1+x)^2.
    const double ortho = integrate(
        [](double x) {
            return (1.0 - x) * (1.0 + x) * (1.0 + x) * jacobi_eval({1.0, 2.0, 1}, x)
                   * jacobi_eval({1.0, 2.0, 2}, x);
        },
        -1.0, 1.0, rule);
    CHECK(std::abs(ortho) < 1e-10);

    // Integral of e^{-r} over (0, inf) mapped through z = 1 - e^{-r}: integrand is 1.
    const double mapped = integrate([](double z) { return (1.0 - z) / (1.0 - z); }, 0.0, 1.0, rule);
    CHECK(std::abs(mapped - 1.0) < 1e-10);

    // Integrable endpoint singularity: nodes avoid x = 0, convergence is slow.
    CHECK(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, rule)
          == doctest::Approx(2.0).epsilon(1e-2));

    try {
        integrate([](double) { return std::nan(""); }, 0.0, 1.0, rule);
        FAIL("expected integration error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::integration);
    }
}
