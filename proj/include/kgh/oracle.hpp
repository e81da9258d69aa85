#ifndef KGH_ORACLE_HPP
#define KGH_ORACLE_HPP

#include <span>
#include <string>
#include <vector>

#include "kgh/model.hpp"

// Independent shooting solver for phi'' = W(r, E) phi on r in (0, inf).
// It never touches the z-chart or the NU reduction, so it can serve as a
// check on both.

namespace kgh::oracle {

/// W(r, E) = centrifugal(r) + (m(r)^2 - (E - V(r))^2) / (hbar c)^2.
double ode_coefficient(const PhysicalSystem& system, int l, double E, double r, CentrifugalMode mode);

struct ShootingDiagnostics {
    double energy = 0.0;
    int node_count = 0;
    /// Normalized Wronskian of the outward and inward solutions at the
    /// matching point; zero at an eigenvalue.
    double tail_mismatch = 0.0;
    /// Bracket below energy_tol * m0 and |tail_mismatch| < mismatch_tol.
    bool converged = false;
    /// Probability density peaks within 1e-3 / beta of the origin: the state
    /// is bound by the m(r) singularity rather than the Hulthen well.
    bool origin_localized = false;
    double matching_radius = 0.0;
};

struct ShootingOptions {
    /// Uniform energy samples across the window before refinement.
    int scan_points = 400;
    /// Bisection stops once the bracket is below energy_tol * m0.
    double energy_tol = 1e-10;
    /// A located root counts as converged only if |mismatch| stays below this.
    double mismatch_tol = 1e-6;
    /// RK4 sub-steps per grid interval in the bulk.
    int substeps = 1;
};

/// One outward + inward integration at fixed E.
struct Shot {
    double mismatch = 0.0;     // normalized Wronskian
    int outward_nodes = 0;     // zeros of the outward solution on the full grid
    int state_nodes = 0;       // zeros of the matched solution
    double matching_radius = 0.0;
    bool origin_localized = false;
};

Shot shoot(const PhysicalSystem& system, int l, double E, CentrifugalMode mode,
           const RadialGrid& grid, const ShootingOptions& options = {});

/// Bound states in `window`, sorted by energy. Brackets come from sign
/// changes of the matching Wronskian, cross-checked against jumps in the
/// outward node count, then refined by bisection. Throws
/// Error(grid_resolution) when the node counts of successive states are not
/// strictly increasing, and Error(invalid_regime) when the r -> 0 behaviour
/// admits no regular solution.
std::vector<ShootingDiagnostics> find_bound_states(const PhysicalSystem& system, int l,
                                                   EnergyWindow window, CentrifugalMode mode,
                                                   const RadialGrid& grid,
                                                   const ShootingOptions& options = {});

struct ApproxErrorRow {
    double beta = 0.0;
    int n = 0;
    int l = 0;
    double E_approx = 0.0;
    double E_exact = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;
    bool matched = false;
    /// "ok" when matched, otherwise the error token that stopped one of the
    /// modes (e.g. invalid_regime) or no_bound_state.
    std::string status = "ok";
};

/// Exact versus exponential centrifugal term: for each beta, the state with
/// n nodes in both modes on the default grid for that beta. Missing states
/// and solver errors produce a row with matched = false, NaN energies and a
/// status token.
std::vector<ApproxErrorRow> approximation_error(const PhysicalSystem& system, int n, int l,
                                                std::span<const double> betas,
                                                const ShootingOptions& options = {});

} // namespace kgh::oracle

#endif // KGH_ORACLE_HPP
