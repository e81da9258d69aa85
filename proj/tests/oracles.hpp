#ifndef KGH_TESTS_ORACLES_HPP
#define KGH_TESTS_ORACLES_HPP

// Test-only reference computations. Nothing here calls into the library's
// evaluation paths: each routine re-derives its value from first principles.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace kgh::testing {

/// Generalized binomial coefficient C(a, k) for real a.
inline double binom(double a, int k)
{
    double c = 1.0;
    for (int i = 0; i < k; ++i) {
        c *= (a - i) / (k - i);
    }
    return c;
}

/// Falling factorial a (a-1) ... (a-k+1).
inline double falling(double a, int k)
{
    double f = 1.0;
    for (int i = 0; i < k; ++i) {
        f *= a - i;
    }
    return f;
}

/// d^n/dz^n [z^{n+p} (1-z)^{n+q}] / (z^p (1-z)^q) by the Leibniz rule.
/// Proportional to P_n^{(p,q)}(1 - 2z).
inline double rodrigues(int n, double p, double q, double z)
{
    double sum = 0.0;
    for (int j = 0; j <= n; ++j) {
        const double left = falling(n + p, j) * std::pow(z, n - j);
        const double right = falling(n + q, n - j) * ((n - j) % 2 ? -1.0 : 1.0) * std::pow(1.0 - z, j);
        sum += binom(n, j) * left * right;
    }
    return sum;
}

/// Explicit sum P_n^{(a,b)}(1 - 2z) = sum_s C(n+a, n-s) C(n+b, s) (-z)^s (1-z)^{n-s}.
inline double jacobi_explicit(int n, double a, double b, double z)
{
    double sum = 0.0;
    for (int s = 0; s <= n; ++s) {
        sum += binom(n + a, n - s) * binom(n + b, s) * std::pow(-z, s) * std::pow(1.0 - z, n - s);
    }
    return sum;
}

inline double beta_fn(double x, double y)
{
    return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
}

/// Integral over r in (0, inf) of [z^e1 (1-z)^e2 P_n^{(a,b)}(1-2z)]^2 with
/// z = 1 - exp(-beta r), summed term by term with Beta functions.
inline double norm_exact(int n, double a, double b, double e1, double e2, double beta)
{
    std::vector<double> c(n + 1);
    for (int s = 0; s <= n; ++s) {
        c[s] = binom(n + a, n - s) * binom(n + b, s) * (s % 2 ? -1.0 : 1.0);
    }
    double sum = 0.0;
    for (int s = 0; s <= n; ++s) {
        for (int t = 0; t <= n; ++t) {
            sum += c[s] * c[t] * beta_fn(2.0 * e1 + s + t + 1.0, 2.0 * e2 + 2.0 * n - s - t);
        }
    }
    return sum / beta;
}

/// W(r) for phi'' = W phi written out from the potential, mass and
/// centrifugal definitions (natural units unless hbar_c given).
inline double radial_coefficient(double V0, double beta, double m0, double m1, int l, double E,
                                 double r, bool approx, double hbar_c = 1.0)
{
    const double x = std::exp(-beta * r);
    const double z = 1.0 - x;
    const double V = -V0 * x / z;
    const double m = m0 - m1 / z;
    const double ll = l * (l + 1.0);
    const double cent = approx ? beta * beta * ll * x / (z * z) : ll / (r * r);
    return cent + (m * m - (E - V) * (E - V)) / (hbar_c * hbar_c);
}

/// Deterministic generator for hand-rolled property loops.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi)
    {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }

    int integer(int lo, int hi)
    {
        return std::uniform_int_distribution<int>(lo, hi)(rng_);
    }

private:
    std::mt19937_64 rng_;
};

/// Bound-state energies from an adaptive-step shooting solver written
/// separately (outward integration in ln r to 40/beta, root of the tail
/// amplitude), natural units, approximated centrifugal term unless noted.
struct ShootingFixture {
    double beta, m0, m1, V0;
    int l;
    std::vector<double> energies; // by node count 0, 1, 2, ...
};

inline const std::vector<ShootingFixture>& shooting_fixtures()
{
    static const std::vector<ShootingFixture> fixtures{
        {0.1, 1.0, 0.3, 0.3, 0, {-0.531483534573, -0.182873112082, 0.136551940483, 0.363938457523}},
        {0.2, 1.0, 0.4, 0.35, 0, {-0.051864516724, 0.357279258602, 0.538760320374, 0.597840853797}},
        {0.2, 1.0, 0.4, 0.35, 1, {0.263261836004, 0.500035327383, 0.589084510890}},
        {0.5, 1.0, 0.2, 0.25, 0, {0.649847233680}},
        {0.3, 1.0, 0.05, 0.12, 0, {0.843132327997}},
        {0.2, 1.0, 0.0, 0.1, 1, {0.998413450945}},
    };
    return fixtures;
}

/// V0 = 0.2, beta = 0.2, m0 = 1, m1 = 0, l = 1, n = 0 in both centrifugal modes.
constexpr double centrifugal_fixture_approx = 0.9351206247378012;
constexpr double centrifugal_fixture_exact = 0.9378784885068032;

} // namespace kgh::testing

#endif // KGH_TESTS_ORACLES_HPP
