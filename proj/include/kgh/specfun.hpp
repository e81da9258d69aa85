#ifndef KGH_SPECFUN_HPP
#define KGH_SPECFUN_HPP

#include <cstddef>
#include <functional>
#include <vector>

namespace kgh::specfun {

/// Degree and superscripts of P_n^{(alpha, beta)}. Orthogonality on [-1, 1]
/// needs alpha > -1 and beta > -1; evaluation itself accepts any reals.
struct JacobiParams {
    double alpha = 0.0;
    double beta = 0.0;
    int n = 0;
};

/// P_n^{(alpha,beta)}(x) by the three-term recurrence, normalized so that
/// P_n(1) = binom(n + alpha, n).
double jacobi_eval(const JacobiParams& p, double x);

/// d^order/dx^order P_n^{(alpha,beta)}(x), using
/// d/dx P_n^{(a,b)} = (n + a + b + 1)/2 * P_{n-1}^{(a+1,b+1)}.
double jacobi_derivative(const JacobiParams& p, double x, int order = 1);

/// Composite Gauss-Legendre rule: `nodes`/`weights` live on [-1, 1] and are
/// replicated over `panels` equal sub-intervals by integrate().
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int panels = 1;
};

/// Gauss-Legendre nodes/weights by Newton iteration on P_m.
QuadratureRule gauss_legendre(int nodes_per_panel, int panels = 1);

/// 64 panels x 16 nodes.
const QuadratureRule& default_rule();

/// Composite estimate of the integral of f over [lo, hi]. Nodes never touch
/// the endpoints, so integrable endpoint singularities are tolerated. A
/// non-finite integrand value raises Error(integration).
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const QuadratureRule& rule);

} // namespace kgh::specfun

#endif // KGH_SPECFUN_HPP
