#ifndef KGH_HULTHEN_ANALYTIC_HPP
#define KGH_HULTHEN_ANALYTIC_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "kgh/model.hpp"
#include "kgh/nu_engine.hpp"
#include "kgh/specfun.hpp"

// Closed-form and root-solved bound states of the radial Klein-Gordon
// equation with the Hulthen potential, the mass profile m0 - m1/z and the
// exponential centrifugal replacement, in the chart z = 1 - exp(-beta r):
//
//   phi'' - z/(z(1-z)) phi' + (-a1^2 z^2 - a2^2 z - a3^2)/(z(1-z))^2 phi = 0.

namespace kgh::hulthen {

struct CoefficientSet {
    double a1_sq = 0.0;
    double a2_sq = 0.0;
    double a3_sq = 0.0;        // independent of the energy
    std::optional<double> A;   // sqrt(a1^2 + a2^2 + a3^2) when real
    double energy = 0.0;

    /// sqrt(1 + 4 a3^2), or nullopt when the radicand is negative. Rounding
    /// noise below 1e-12 of the scale is treated as an exact zero.
    std::optional<double> root_a3() const;
};

CoefficientSet coefficients_at(const PhysicalSystem& system, int l, double E);

/// sigma = z(1-z), tau_tilde = -z, sigma_tilde = -a1^2 z^2 - a2^2 z - a3^2.
nu::NUProblem build_nu_problem(const CoefficientSet& coeffs);

/// lambda(E) - lambda_n(E) for the NU branch picked by `policy`.
/// The admissible branch is the one regular at the origin and decaying at
/// infinity; paper_branch reproduces the literal tau(z) = 1 - 2S - 2(A - S + 1) z
/// bookkeeping. Throws Error(complex_regime) when A or sqrt(1 + 4 a3^2) is not
/// real.
double quantization_residual(const PhysicalSystem& system, int n, int l, double E,
                             nu::BranchPolicy policy = nu::BranchPolicy::admissible);

/// Both roots of the quadratic-in-E spectrum, sorted so that `lower.value <=
/// upper.value`. `N` is (2n + 1) + sqrt(1 + 4 a3^2), `midpoint` the
/// energy-independent prefix (E_upper + E_lower) / 2.
struct ClosedFormSpectrum {
    EnergyLevel upper;
    EnergyLevel lower;
    double N = 0.0;
    double midpoint = 0.0;
};

/// Closed-form spectrum
///
///   E = V0/2 + [8 Q^4 V0 m1 (m1 - 2 m0) -/+ Q N sqrt(R)] / (4 Q^2 (N^2 + 4 Q^2 V0^2)),
///   R = 16 Q^4 (V0^2 - m1^2)(m1^2 - 4 m0 m1 + 4 m0^2 - V0^2)
///       + 8 Q^2 N^2 (2 m0^2 - 2 m0 m1 + m1^2 - V0^2) - N^4,
///
/// i.e. the roots of N a1 = a1^2 - A^2 + N^2/4 after squaring. A root that
/// only solves the squared equation is marked LevelStatus::spurious.
/// Throws Error(invalid_regime) if 1 + 4 a3^2 < 0 and Error(no_bound_state)
/// if R < 0.
ClosedFormSpectrum energy_closed_form(const PhysicalSystem& system, int n, int l);

/// Variant with 8 Q^3 m1 (m1 - 2 m0) in the midpoint term and N sqrt(R)
/// without the factor Q. It is not dimensionally consistent and coincides
/// with energy_closed_form only when Q = 1 and m1 = 0; kept so the
/// discrepancy stays measurable.
ClosedFormSpectrum energy_closed_form_as_printed(const PhysicalSystem& system, int n, int l);

/// Constant-mass s-wave spectrum
/// E = V0/2 +/- N' sqrt(m0^2 / (4 Q^2 V0^2 + N'^2) - 1/(16 Q^2)),
/// N' = (2n + 1) + sqrt(1 - 4 Q^2 V0^2). Requires m1 = 0.
ClosedFormSpectrum energy_constant_mass_s(const PhysicalSystem& system, int n);

struct RootSolveOptions {
    int intervals = 2000;
    nu::BranchPolicy policy = nu::BranchPolicy::admissible;
};

struct RootSolveResult {
    std::vector<EnergyLevel> levels;
    /// Scan intervals skipped because the residual was undefined there.
    std::size_t skipped_intervals = 0;
    std::vector<std::string> diagnostics;
};

/// Every root of quantization_residual inside `window`, by uniform bracketing
/// followed by bisection to |dE| < 1e-12 m0.
RootSolveResult energy_root_solve(const PhysicalSystem& system, int n, int l, EnergyWindow window,
                                  const RootSolveOptions& options = {});

/// phi(z) = z^e1 (1 - z)^e2 P_n^{(alpha, beta)}(1 - 2z) with analytic z-derivatives.
struct ChartWavefunction {
    int n = 0;
    double e1 = 0.0;
    double e2 = 0.0;
    double alpha = 0.0;
    double beta = 0.0;

    double value(double z) const;
    double d1(double z) const;
    double d2(double z) const;
};

/// Residual of the chart equation at z for phi, and the largest of its three
/// terms (for relative comparisons).
struct ChartResidual {
    double residual = 0.0;
    double scale = 0.0;
};
ChartResidual chart_residual(const CoefficientSet& coeffs, const ChartWavefunction& phi, double z);

struct RadialWavefunction {
    std::vector<double> grid;           // r
    std::vector<double> z;              // 1 - exp(-beta r)
    std::vector<double> raw;            // unnormalized phi
    std::vector<double> values;         // normalized phi
    int node_count = 0;
    double norm = 0.0;                  // integral of values^2, refined rule
    double normalization = 0.0;         // values = normalization * raw
    double jacobi_alpha = 0.0;
    double jacobi_beta = 0.0;
    double e1 = 0.0;
    double e2 = 0.0;
    CoefficientSet coefficients;        // frozen at E
    ChartWavefunction chart;
};

/// Analytic radial wavefunction at the eigenvalue E, normalized to unit
/// integral of phi^2 over r in (0, inf) and positive as r -> 0+.
/// Throws Error(non_normalizable) when A <= 0 or a Jacobi parameter is <= -1,
/// Error(precondition) if E does not satisfy the quantization condition.
RadialWavefunction wavefunction(const PhysicalSystem& system, int n, int l, double E,
                                const RadialGrid& grid);

/// Integral of phi^2 dr over (0, inf) for the chart wavefunction: z chart,
/// endpoints smoothed by z = s^6 / (s^6 + (1-s)^6), then the given rule.
double norm_integral(const ChartWavefunction& phi, double beta, const specfun::QuadratureRule& rule);

} // namespace kgh::hulthen

#endif // KGH_HULTHEN_ANALYTIC_HPP
