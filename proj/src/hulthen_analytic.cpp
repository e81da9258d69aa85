#include "kgh/hulthen_analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kgh/errors.hpp"

namespace kgh::hulthen {

namespace {

constexpr double zero_tol = 1e-12;

double sq(double x)
{
    return x * x;
}

void require_quantum_numbers(int n, int l)
{
    if (n < 0 || l < 0) {
        throw Error(ErrorCode::precondition, "quantum numbers must satisfy n >= 0, l >= 0");
    }
}

/// sqrt(1 + 4 a3^2) for a3^2 fixed by (system, l); a3^2 has no E dependence.
std::optional<double> root_a3_for(const PhysicalSystem& system, int l)
{
    return coefficients_at(system, l, 0.0).root_a3();
}

/// Checks the unsquared condition sqrt(a1^2) = N/2 + A that the squared
/// closed-form quadratic may violate, and the confinement window.
LevelStatus classify(const PhysicalSystem& system, int l, double N, double E)
{
    if (!(std::abs(E) < system.asymptotic_mass())) {
        return LevelStatus::unbound;
    }
    const CoefficientSet c = coefficients_at(system, l, E);
    if (!c.A || c.a1_sq < 0.0) {
        return LevelStatus::spurious;
    }
    const double a1 = std::sqrt(c.a1_sq);
    const double defect = std::abs(a1 - (0.5 * N + *c.A));
    return defect <= 1e-8 * std::max(1.0, a1) ? LevelStatus::bound : LevelStatus::spurious;
}

ClosedFormSpectrum assemble(const PhysicalSystem& system, int n, int l, double N, double midpoint,
                            double half_gap)
{
    ClosedFormSpectrum out;
    out.N = N;
    out.midpoint = midpoint;
    out.lower = {midpoint - half_gap, Branch::lower, n, l, Method::closed_form, LevelStatus::bound};
    out.upper = {midpoint + half_gap, Branch::upper, n, l, Method::closed_form, LevelStatus::bound};
    out.lower.status = classify(system, l, N, out.lower.value);
    out.upper.status = classify(system, l, N, out.upper.value);
    return out;
}

struct ClosedFormTerms {
    double N;
    double radicand;
    double denom;
};

ClosedFormTerms closed_form_terms(const PhysicalSystem& system, int n, int l)
{
    require_quantum_numbers(n, l);
    const auto root = root_a3_for(system, l);
    if (!root) {
        throw Error(ErrorCode::invalid_regime, "1 + 4 a3^2 < 0: N is complex for l = "
                                                   + std::to_string(l));
    }
    const double Q = system.Q();
    const double V0 = system.V0();
    const double m0 = system.m0();
    const double m1 = system.m1();
    const double N = (2.0 * n + 1.0) + *root;
    const double N2 = N * N;

    const double radicand = 16.0 * sq(sq(Q)) * (sq(V0) - sq(m1))
                                * (sq(m1) - 4.0 * m0 * m1 + 4.0 * sq(m0) - sq(V0))
                            + 8.0 * sq(Q) * N2 * (2.0 * sq(m0) - 2.0 * m0 * m1 + sq(m1) - sq(V0))
                            - N2 * N2;
    if (radicand < 0.0) {
        throw Error(ErrorCode::no_bound_state, "closed-form radicand negative for (n, l) = ("
                                                   + std::to_string(n) + ", " + std::to_string(l)
                                                   + ")");
    }
    return {N, radicand, 4.0 * sq(Q) * (N2 + 4.0 * sq(Q) * sq(V0))};
}

} // namespace

std::optional<double> CoefficientSet::root_a3() const
{
    const double v = 1.0 + 4.0 * a3_sq;
    if (v >= 0.0) {
        return std::sqrt(v);
    }
    if (v >= -zero_tol * std::max(1.0, 4.0 * std::abs(a3_sq))) {
        return 0.0;
    }
    return std::nullopt;
}

CoefficientSet coefficients_at(const PhysicalSystem& system, int l, double E)
{
    if (l < 0) {
        throw Error(ErrorCode::precondition, "angular momentum must be >= 0");
    }
    const double Q2 = sq(system.Q());
    const double V0 = system.V0();
    const double m0 = system.m0();
    const double m1 = system.m1();
    const double ll = static_cast<double>(l) * (l + 1.0);

    CoefficientSet c;
    c.energy = E;
    c.a1_sq = -Q2 * (E * E - 2.0 * E * V0 + V0 * V0 - m0 * m0);
    c.a2_sq = -(Q2 * (2.0 * m0 * m1 + 2.0 * E * V0 - 2.0 * V0 * V0) + ll);
    c.a3_sq = -(Q2 * (V0 * V0 - m1 * m1) - ll);
    const double A_sq = c.a1_sq + c.a2_sq + c.a3_sq;
    if (A_sq >= 0.0) {
        c.A = std::sqrt(A_sq);
    }
    return c;
}

nu::NUProblem build_nu_problem(const CoefficientSet& coeffs)
{
    return nu::NUProblem({0.0, -1.0}, {-coeffs.a3_sq, -coeffs.a2_sq, -coeffs.a1_sq});
}

double quantization_residual(const PhysicalSystem& system, int n, int l, double E,
                             nu::BranchPolicy policy)
{
    require_quantum_numbers(n, l);
    const CoefficientSet c = coefficients_at(system, l, E);
    if (!c.A) {
        throw Error(ErrorCode::complex_regime, "A is not real at E = " + std::to_string(E));
    }
    if (!c.root_a3()) {
        throw Error(ErrorCode::complex_regime, "1 + 4 a3^2 < 0");
    }
    const nu::NUProblem problem = build_nu_problem(c);
    const std::vector<nu::NUCandidate> candidates = nu::all_candidates(problem);
    const nu::NUCandidate chosen = nu::select_candidate(problem, candidates, policy);
    const nu::EigenPair ev = nu::eigen_pair(chosen, problem, n);
    return ev.lambda - ev.lambda_n;
}

ClosedFormSpectrum energy_closed_form(const PhysicalSystem& system, int n, int l)
{
    const ClosedFormTerms t = closed_form_terms(system, n, l);
    const double Q = system.Q();
    const double V0 = system.V0();
    const double m0 = system.m0();
    const double m1 = system.m1();
    const double midpoint = 0.5 * V0 + 8.0 * sq(sq(Q)) * V0 * m1 * (m1 - 2.0 * m0) / t.denom;
    const double half_gap = Q * t.N * std::sqrt(t.radicand) / t.denom;
    return assemble(system, n, l, t.N, midpoint, half_gap);
}

ClosedFormSpectrum energy_closed_form_as_printed(const PhysicalSystem& system, int n, int l)
{
    const ClosedFormTerms t = closed_form_terms(system, n, l);
    const double Q = system.Q();
    const double V0 = system.V0();
    const double m0 = system.m0();
    const double m1 = system.m1();
    const double midpoint = 0.5 * V0 + 8.0 * Q * sq(Q) * m1 * (m1 - 2.0 * m0) / t.denom;
    const double half_gap = t.N * std::sqrt(t.radicand) / t.denom;
    return assemble(system, n, l, t.N, midpoint, half_gap);
}

ClosedFormSpectrum energy_constant_mass_s(const PhysicalSystem& system, int n)
{
    require_quantum_numbers(n, 0);
    if (!system.constant_mass()) {
        throw Error(ErrorCode::precondition, "constant-mass spectrum requires m1 = 0");
    }
    const double Q = system.Q();
    const double V0 = system.V0();
    const double m0 = system.m0();
    const double coupling = 4.0 * sq(Q) * sq(V0);

    double inner = 1.0 - coupling;
    if (inner < 0.0) {
        if (inner < -zero_tol * std::max(1.0, coupling)) {
            throw Error(ErrorCode::invalid_regime, "1 - 4 Q^2 V0^2 < 0");
        }
        inner = 0.0;
    }
    const double Np = (2.0 * n + 1.0) + std::sqrt(inner);
    const double radicand = sq(m0) / (coupling + sq(Np)) - 1.0 / (16.0 * sq(Q));
    if (radicand < 0.0) {
        throw Error(ErrorCode::no_bound_state,
                    "constant-mass radicand negative for n = " + std::to_string(n));
    }
    return assemble(system, n, 0, Np, 0.5 * V0, Np * std::sqrt(radicand));
}

RootSolveResult energy_root_solve(const PhysicalSystem& system, int n, int l, EnergyWindow window,
                                  const RootSolveOptions& options)
{
    require_quantum_numbers(n, l);
    const double m_inf = system.asymptotic_mass();
    if (!(window.lo < window.hi) || window.lo <= -m_inf || window.hi >= m_inf) {
        throw Error(ErrorCode::precondition,
                    "root-solve window must lie inside (-(m0 - m1), m0 - m1)");
    }
    if (options.intervals < 1) {
        throw Error(ErrorCode::precondition, "root-solve needs at least one interval");
    }

    RootSolveResult result;
    auto residual = [&](double E) -> std::optional<double> {
        try {
            return quantization_residual(system, n, l, E, options.policy);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::complex_regime || e.code() == ErrorCode::no_real_k
                || e.code() == ErrorCode::invalid_k || e.code() == ErrorCode::no_admissible_branch
                || e.code() == ErrorCode::branch_mismatch) {
                return std::nullopt;
            }
            throw;
        }
    };

    // Branch labels follow the closed-form midpoint when it exists.
    double midpoint = 0.5 * system.V0();
    try {
        midpoint = energy_closed_form(system, n, l).midpoint;
    } catch (const Error&) {
    }

    const int count = options.intervals;
    const double width = (window.hi - window.lo) / count;
    const double tol = 1e-12 * system.m0();
    std::vector<std::optional<double>> f(count + 1);
    for (int i = 0; i <= count; ++i) {
        f[i] = residual(i == count ? window.hi : window.lo + i * width);
    }

    for (int i = 0; i < count; ++i) {
        double lo = window.lo + i * width;
        double hi = i + 1 == count ? window.hi : lo + width;
        if (!f[i] || !f[i + 1]) {
            if (f[i] || f[i + 1]) {
                result.diagnostics.push_back("residual undefined on part of [" + std::to_string(lo)
                                             + ", " + std::to_string(hi) + "]; skipped");
            }
            ++result.skipped_intervals;
            continue;
        }
        double flo = *f[i];
        const double fhi = *f[i + 1];
        if (flo == 0.0 && i > 0) {
            continue; // counted as the right endpoint of the previous interval
        }
        if (flo != 0.0 && fhi != 0.0 && std::signbit(flo) == std::signbit(fhi)) {
            continue;
        }
        double root = flo == 0.0 ? lo : hi;
        if (flo != 0.0 && fhi != 0.0) {
            while (hi - lo > tol) {
                const double mid = 0.5 * (lo + hi);
                const auto fm = residual(mid);
                if (!fm) {
                    break;
                }
                if (*fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if (std::signbit(*fm) == std::signbit(flo)) {
                    lo = mid;
                    flo = *fm;
                } else {
                    hi = mid;
                }
            }
            root = 0.5 * (lo + hi);
        }
        EnergyLevel level;
        level.value = root;
        level.branch = root >= midpoint ? Branch::upper : Branch::lower;
        level.n = n;
        level.l = l;
        level.method = Method::quantization_root;
        level.status = LevelStatus::bound;
        result.levels.push_back(level);
    }
    return result;
}

double ChartWavefunction::value(double z) const
{
    const double g = std::pow(z, e1) * std::pow(1.0 - z, e2);
    return g * specfun::jacobi_eval({alpha, beta, n}, 1.0 - 2.0 * z);
}

double ChartWavefunction::d1(double z) const
{
    const double g = std::pow(z, e1) * std::pow(1.0 - z, e2);
    const double L = e1 / z - e2 / (1.0 - z);
    const double x = 1.0 - 2.0 * z;
    const double P = specfun::jacobi_eval({alpha, beta, n}, x);
    const double Pz = -2.0 * specfun::jacobi_derivative({alpha, beta, n}, x, 1);
    return g * (L * P + Pz);
}

double ChartWavefunction::d2(double z) const
{
    const double g = std::pow(z, e1) * std::pow(1.0 - z, e2);
    const double L = e1 / z - e2 / (1.0 - z);
    const double dL = -e1 / (z * z) - e2 / ((1.0 - z) * (1.0 - z));
    const double x = 1.0 - 2.0 * z;
    const double P = specfun::jacobi_eval({alpha, beta, n}, x);
    const double Pz = -2.0 * specfun::jacobi_derivative({alpha, beta, n}, x, 1);
    const double Pzz = 4.0 * specfun::jacobi_derivative({alpha, beta, n}, x, 2);
    return g * ((L * L + dL) * P + 2.0 * L * Pz + Pzz);
}

ChartResidual chart_residual(const CoefficientSet& coeffs, const ChartWavefunction& phi, double z)
{
    const double s = z * (1.0 - z);
    const double sigma_tilde = -coeffs.a1_sq * z * z - coeffs.a2_sq * z - coeffs.a3_sq;
    const double t1 = phi.d2(z);
    const double t2 = -phi.d1(z) / (1.0 - z);
    const double t3 = sigma_tilde / (s * s) * phi.value(z);
    return {t1 + t2 + t3, std::max({std::abs(t1), std::abs(t2), std::abs(t3)})};
}

double norm_integral(const ChartWavefunction& phi, double beta, const specfun::QuadratureRule& rule)
{
    if (!(phi.e2 > 0.0)) {
        throw Error(ErrorCode::non_normalizable, "decay exponent must be > 0");
    }
    // phi^2 dr = z^{2 e1} (1-z)^{2 e2 - 1} P^2 dz / beta. The endpoint powers
    // are fractional, so z = s^q / (s^q + (1-s)^q) flattens both ends first.
    constexpr double q = 6.0;
    auto integrand = [&](double s) {
        const double ls = std::log(s);
        const double lt = std::log1p(-s);
        const double ld = std::log(std::exp(q * ls) + std::exp(q * lt));
        const double log_z = q * ls - ld;
        const double log_w = q * lt - ld;
        const double z = std::exp(log_z);
        const double P = specfun::jacobi_eval({phi.alpha, phi.beta, phi.n}, 1.0 - 2.0 * z);
        const double log_jac = std::log(q) + (q - 1.0) * (ls + lt) - 2.0 * ld;
        return std::exp(2.0 * phi.e1 * log_z + (2.0 * phi.e2 - 1.0) * log_w + log_jac) * P * P;
    };
    return specfun::integrate(integrand, 0.0, 1.0, rule) / beta;
}

RadialWavefunction wavefunction(const PhysicalSystem& system, int n, int l, double E,
                                const RadialGrid& grid)
{
    require_quantum_numbers(n, l);
    const CoefficientSet c = coefficients_at(system, l, E);
    if (!c.A || !(*c.A > 0.0)) {
        throw Error(ErrorCode::non_normalizable, "A <= 0: no decaying solution at E = "
                                                     + std::to_string(E));
    }
    if (!c.root_a3()) {
        throw Error(ErrorCode::non_normalizable, "1 + 4 a3^2 < 0");
    }

    const nu::NUProblem problem = build_nu_problem(c);
    const nu::NUSolution sol = nu::solve(problem, nu::BranchPolicy::admissible);
    if (!sol.normalizable) {
        throw Error(ErrorCode::non_normalizable, "Jacobi parameters must exceed -1");
    }
    const nu::EigenPair ev = nu::eigen_pair(sol.candidate, problem, n);
    if (std::abs(ev.lambda - ev.lambda_n) > 1e-6 * std::max(1.0, std::abs(ev.lambda_n))) {
        throw Error(ErrorCode::precondition, "E = " + std::to_string(E)
                                                 + " does not satisfy the quantization condition");
    }

    RadialWavefunction wf;
    wf.coefficients = c;
    wf.chart = {n, sol.candidate.xi.a, sol.candidate.xi.b, sol.jacobi_alpha, sol.jacobi_beta};
    wf.e1 = wf.chart.e1;
    wf.e2 = wf.chart.e2;
    wf.jacobi_alpha = wf.chart.alpha;
    wf.jacobi_beta = wf.chart.beta;

    const double integral = norm_integral(wf.chart, system.beta(), specfun::default_rule());
    if (!(integral > 0.0) || !std::isfinite(integral)) {
        throw Error(ErrorCode::integration, "wavefunction norm integral is not positive");
    }
    double scale = 1.0 / std::sqrt(integral);
    // Jacobi P_n(1) > 0 for alpha > -1, so phi > 0 near the origin already;
    // the check keeps the convention explicit.
    if (specfun::jacobi_eval({wf.jacobi_alpha, wf.jacobi_beta, n}, 1.0) < 0.0) {
        scale = -scale;
    }
    wf.normalization = scale;
    const auto& rule = specfun::default_rule();
    wf.norm = scale * scale
              * norm_integral(wf.chart, system.beta(), specfun::gauss_legendre(
                                                           static_cast<int>(rule.nodes.size()),
                                                           2 * rule.panels));

    const std::size_t m = grid.points();
    wf.grid = grid.values();
    wf.z.resize(m);
    wf.raw.resize(m);
    wf.values.resize(m);
    const double beta = system.beta();
    int nodes = 0;
    double last = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = wf.grid[i];
        const double z = -std::expm1(-beta * r);
        const double P = specfun::jacobi_eval({wf.jacobi_alpha, wf.jacobi_beta, n}, 1.0 - 2.0 * z);
        // (1 - z)^e2 = exp(-e2 beta r) avoids cancellation for large r.
        const double phi = std::exp(wf.e1 * std::log(z) - wf.e2 * beta * r) * P;
        wf.z[i] = z;
        wf.raw[i] = phi;
        wf.values[i] = scale * phi;
        if (phi != 0.0) {
            if (last != 0.0 && std::signbit(phi) != std::signbit(last)) {
                ++nodes;
            }
            last = phi;
        }
    }
    wf.node_count = nodes;
    return wf;
}

} // namespace kgh::hulthen
