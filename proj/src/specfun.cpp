#include "kgh/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kgh/errors.hpp"

namespace kgh::specfun {

double jacobi_eval(const JacobiParams& p, double x)
{
    const int n = p.n;
    if (n < 0) {
        throw Error(ErrorCode::precondition, "Jacobi degree must be >= 0");
    }
    const double a = p.alpha;
    const double b = p.beta;
    if (n == 0) {
        return 1.0;
    }

    double pm2 = 1.0;
    double pm1 = 0.5 * ((a - b) + (a + b + 2.0) * x);
    const double ab = a + b;
    const double a2b2 = a * a - b * b;
    for (int k = 2; k <= n; ++k) {
        const double kk = k;
        const double c = 2.0 * kk + ab;
        const double denom = 2.0 * kk * (kk + ab) * (c - 2.0);
        const double lin = (c - 1.0) * (c * (c - 2.0) * x + a2b2);
        const double back = 2.0 * (kk + a - 1.0) * (kk + b - 1.0) * c;
        const double pk = (lin * pm1 - back * pm2) / denom;
        pm2 = pm1;
        pm1 = pk;
    }
    return pm1;
}

double jacobi_derivative(const JacobiParams& p, double x, int order)
{
    if (order < 0) {
        throw Error(ErrorCode::precondition, "derivative order must be >= 0");
    }
    if (order > p.n) {
        return 0.0;
    }
    // Product of (n + a + b + 1 + j)/2 for j = 0..order-1.
    double scale = 1.0;
    for (int j = 0; j < order; ++j) {
        scale *= 0.5 * (p.n + p.alpha + p.beta + 1.0 + j);
    }
    return scale * jacobi_eval({p.alpha + order, p.beta + order, p.n - order}, x);
}

QuadratureRule gauss_legendre(int nodes_per_panel, int panels)
{
    if (nodes_per_panel < 1 || panels < 1) {
        throw Error(ErrorCode::precondition, "quadrature needs >= 1 node and >= 1 panel");
    }
    const int m = nodes_per_panel;
    QuadratureRule rule;
    rule.nodes.assign(m, 0.0);
    rule.weights.assign(m, 0.0);
    rule.panels = panels;

    for (int i = 0; i < (m + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = 0.0;
            for (int j = 1; j <= m; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
            }
            dp = m * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[m - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[m - 1 - i] = w;
    }
    return rule;
}

const QuadratureRule& default_rule()
{
    static const QuadratureRule rule = gauss_legendre(16, 64);
    return rule;
}

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureRule& rule)
{
    if (!(lo < hi)) {
        throw Error(ErrorCode::precondition, "integration interval requires lo < hi");
    }
    const double width = (hi - lo) / rule.panels;
    double total = 0.0;
    for (int k = 0; k < rule.panels; ++k) {
        const double a = lo + k * width;
        const double mid = a + 0.5 * width;
        double panel = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double x = mid + 0.5 * width * rule.nodes[i];
            const double fx = f(x);
            if (!std::isfinite(fx)) {
                throw Error(ErrorCode::integration,
                            "non-finite integrand at x = " + std::to_string(x));
            }
            panel += rule.weights[i] * fx;
        }
        total += 0.5 * width * panel;
    }
    return total;
}

} // namespace kgh::specfun
