#include "kgh/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "kgh/errors.hpp"

namespace kgh::oracle {

namespace {

constexpr double rescale_above = 1e100;
constexpr int max_refine_depth = 10;

/// W(r) without argument checks; r > 0 is guaranteed by the grid.
struct Coefficient {
    const PhysicalSystem& system;
    double ll;
    double E;
    CentrifugalMode mode;

    double operator()(double r) const
    {
        const double beta = system.beta();
        const double x = beta * r;
        const double e = std::exp(-x);
        const double z = -std::expm1(-x);
        const double V = -system.V0() * e / z;
        const double m = system.m0() - system.m1() / z;
        const double cent = mode == CentrifugalMode::exact ? ll / (r * r) : beta * beta * ll * e / (z * z);
        const double hc = system.hbar_c();
        const double k = E - V;
        return cent + (m * m - k * k) / (hc * hc);
    }
};

/// (phi, r phi') in t = ln r, so that the r^{-2} behaviour near the origin
/// becomes a constant-coefficient system.
struct LogState {
    double y1 = 0.0;
    double y2 = 0.0;
};

LogState rhs(const Coefficient& W, double t, const LogState& y)
{
    const double r = std::exp(t);
    return {y.y2, y.y2 + r * r * W(r) * y.y1};
}

void rk4(const Coefficient& W, double t, double dt, LogState& y)
{
    const LogState k1 = rhs(W, t, y);
    const LogState k2 = rhs(W, t + 0.5 * dt, {y.y1 + 0.5 * dt * k1.y1, y.y2 + 0.5 * dt * k1.y2});
    const LogState k3 = rhs(W, t + 0.5 * dt, {y.y1 + 0.5 * dt * k2.y1, y.y2 + 0.5 * dt * k2.y2});
    const LogState k4 = rhs(W, t + dt, {y.y1 + dt * k3.y1, y.y2 + dt * k3.y2});
    y.y1 += dt / 6.0 * (k1.y1 + 2.0 * k2.y1 + 2.0 * k3.y1 + k4.y1);
    y.y2 += dt / 6.0 * (k1.y2 + 2.0 * k2.y2 + 2.0 * k3.y2 + k4.y2);
}

/// Sub-steps for the grid interval [a, b]: the log-step never exceeds
/// h beta, which near the origin refines geometrically and in the bulk
/// reduces to one step per interval.
int substeps_for(double a, double b, double h, double beta, int bulk)
{
    const double span = std::abs(std::log(b / a));
    const double limit = h * beta;
    return bulk * std::max(1, static_cast<int>(std::ceil(span / limit - 1e-12)));
}

/// Integrates over one grid interval in either direction. Returns the log
/// of the rescaling factor applied to keep the state finite.
double advance(const Coefficient& W, double r_from, double r_to, int steps, LogState& y)
{
    const double t0 = std::log(r_from);
    const double dt = (std::log(r_to) - t0) / steps;
    for (int s = 0; s < steps; ++s) {
        rk4(W, t0 + s * dt, dt, y);
    }
    const double mag = std::abs(y.y1) + std::abs(y.y2);
    if (!std::isfinite(mag)) {
        throw Error(ErrorCode::integration, "shooting integration overflowed");
    }
    if (mag > rescale_above) {
        y.y1 /= mag;
        y.y2 /= mag;
        return std::log(mag);
    }
    return 0.0;
}

std::size_t matching_index(const Coefficient& W, const RadialGrid& grid)
{
    const std::size_t m = grid.points();
    const double target = grid.r_max() / 3.0;
    std::size_t best = m / 2;
    double best_dist = std::numeric_limits<double>::infinity();
    double prev = W(grid[0]);
    for (std::size_t i = 1; i < m; ++i) {
        const double cur = W(grid[i]);
        if (std::signbit(cur) != std::signbit(prev)) {
            const double dist = std::abs(grid[i] - target);
            if (dist < best_dist) {
                best_dist = dist;
                best = i;
            }
        }
        prev = cur;
    }
    // Keep both integrations non-empty.
    return std::clamp<std::size_t>(best, 1, m - 2);
}

int sign_changes(double prev, double cur)
{
    return (prev != 0.0 && cur != 0.0 && std::signbit(prev) != std::signbit(cur)) ? 1 : 0;
}

/// Regular solution at the origin, r^s (1 + b1 r + ...), from the expansion
/// r^2 W(r) = c0 + c1 r + O(r^2) (the centrifugal term adds no linear part
/// in either mode).
struct Frobenius {
    double s = 0.0;
    double b1 = 0.0;
};

Frobenius frobenius_start(const PhysicalSystem& system, int l, double E, CentrifugalMode mode,
                          double r_min)
{
    const double ll = static_cast<double>(l) * (l + 1.0);
    const double beta = system.beta();
    const double hc = system.hbar_c();
    const double m0 = system.m0();
    const double m1 = system.m1();
    const double V0 = system.V0();
    const double bh2 = beta * beta * hc * hc;
    const double c0 = ll + (m1 * m1 - V0 * V0) / bh2;
    const double scale = ll + (m1 * m1 + V0 * V0) / bh2;
    double disc = 1.0 + 4.0 * c0;
    if (disc < -1e-12 * (1.0 + 4.0 * scale)) {
        throw Error(ErrorCode::invalid_regime,
                    "r^2 W(r) -> " + std::to_string(c0)
                        + " < -1/4 at the origin: no regular solution");
    }
    if (!std::isfinite(Coefficient{system, ll, E, mode}(r_min))) {
        throw Error(ErrorCode::integration, "W(r_min) is not finite; increase r_min");
    }
    disc = std::max(disc, 0.0);
    const double c1 = -(2.0 * m0 * m1 - m1 * m1 + 2.0 * V0 * E - V0 * V0) / (beta * hc * hc);
    Frobenius f;
    f.s = 0.5 * (1.0 + std::sqrt(disc));
    f.b1 = c1 / (2.0 * f.s);
    return f;
}

} // namespace

double ode_coefficient(const PhysicalSystem& system, int l, double E, double r, CentrifugalMode mode)
{
    if (!(r > 0.0)) {
        throw Error(ErrorCode::domain, "radial coordinate must be > 0");
    }
    if (l < 0) {
        throw Error(ErrorCode::precondition, "angular momentum must be >= 0");
    }
    return Coefficient{system, static_cast<double>(l) * (l + 1.0), E, mode}(r);
}

Shot shoot(const PhysicalSystem& system, int l, double E, CentrifugalMode mode,
           const RadialGrid& grid, const ShootingOptions& options)
{
    const Coefficient W{system, static_cast<double>(l) * (l + 1.0), E, mode};
    const std::size_t m = grid.points();
    const double h = grid.step();
    const double beta = system.beta();
    const std::size_t im = matching_index(W, grid);
    const double rm = grid[im];

    // Outward: regular Frobenius start phi ~ r^s, continued to r_max so the
    // node count covers the whole grid.
    const Frobenius f = frobenius_start(system, l, E, mode, grid.r_min());
    const double r0 = grid.r_min();
    LogState out{1.0 + f.b1 * r0, f.s + (f.s + 1.0) * f.b1 * r0};
    double out_log = f.s * std::log(r0);
    LogState at_match;
    double match_log_out = 0.0;
    int nodes_left = 0;
    int nodes_total = 0;
    double peak_log = out_log;
    double peak_r = grid.r_min();
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double a = grid[i];
        const double b = grid[i + 1];
        const double prev = out.y1;
        out_log += advance(W, a, b, substeps_for(a, b, h, beta, options.substeps), out);
        const int change = sign_changes(prev, out.y1);
        nodes_total += change;
        if (i + 1 <= im) {
            nodes_left += change;
            const double lg = out_log + std::log(std::abs(out.y1));
            if (lg > peak_log) {
                peak_log = lg;
                peak_r = b;
            }
        }
        if (i + 1 == im) {
            at_match = out;
            match_log_out = out_log;
        }
    }

    // Inward: decaying start phi' = -kappa phi at r_max.
    const double w_end = W(grid.r_max());
    const double kappa = std::sqrt(std::max(w_end, 0.0));
    LogState in{1.0, -kappa * grid.r_max()};
    double in_log = 0.0;
    int nodes_right = 0;
    std::vector<std::pair<double, double>> right_logs; // (r, log|phi_in|)
    right_logs.reserve(m - im);
    right_logs.emplace_back(grid.r_max(), 0.0);
    for (std::size_t i = m - 1; i > im; --i) {
        const double a = grid[i];
        const double b = grid[i - 1];
        const double prev = in.y1;
        in_log += advance(W, a, b, substeps_for(b, a, h, beta, options.substeps), in);
        nodes_right += sign_changes(prev, in.y1);
        right_logs.emplace_back(b, in_log + std::log(std::abs(in.y1)));
    }

    const double phi_o = at_match.y1;
    const double dphi_o = at_match.y2 / rm;
    const double phi_i = in.y1;
    const double dphi_i = in.y2 / rm;
    const double k = std::sqrt(std::abs(W(rm))) + beta;
    const double wronskian = dphi_o * phi_i - phi_o * dphi_i;
    const double norm = k * std::hypot(phi_o, dphi_o / k) * std::hypot(phi_i, dphi_i / k);

    // Peak of the matched function, right part scaled to meet phi_out at rm.
    const double shift = match_log_out + std::log(std::abs(phi_o)) - (in_log + std::log(std::abs(phi_i)));
    for (const auto& [r, lg] : right_logs) {
        if (std::isfinite(lg) && lg + shift > peak_log) {
            peak_log = lg + shift;
            peak_r = r;
        }
    }

    Shot shot;
    shot.mismatch = norm > 0.0 ? wronskian / norm : 0.0;
    shot.outward_nodes = nodes_total;
    shot.state_nodes = nodes_left + nodes_right;
    shot.matching_radius = rm;
    shot.origin_localized = peak_r < 1e-3 / beta;
    return shot;
}

std::vector<ShootingDiagnostics> find_bound_states(const PhysicalSystem& system, int l,
                                                   EnergyWindow window, CentrifugalMode mode,
                                                   const RadialGrid& grid,
                                                   const ShootingOptions& options)
{
    const double m_inf = system.asymptotic_mass();
    if (!(window.lo < window.hi) || window.lo <= -m_inf || window.hi >= m_inf) {
        throw Error(ErrorCode::precondition, "shooting window must lie inside (-(m0 - m1), m0 - m1)");
    }
    if (options.scan_points < 2) {
        throw Error(ErrorCode::precondition, "shooting scan needs at least two energies");
    }
    // Fails fast on a collapsing origin; the exponent barely depends on E.
    frobenius_start(system, l, 0.5 * (window.lo + window.hi), mode, grid.r_min());

    const double tol = options.energy_tol * system.m0();
    auto fire = [&](double E) { return shoot(system, l, E, mode, grid, options); };

    std::vector<ShootingDiagnostics> states;
    auto bisect = [&](double lo, double hi, Shot slo) {
        Shot mid_shot = slo;
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            mid_shot = fire(mid);
            if (mid_shot.mismatch == 0.0) {
                lo = hi = mid;
                break;
            }
            if (std::signbit(mid_shot.mismatch) == std::signbit(slo.mismatch)) {
                lo = mid;
                slo = mid_shot;
            } else {
                hi = mid;
            }
        }
        const double E = 0.5 * (lo + hi);
        const Shot final_shot = fire(E);
        ShootingDiagnostics d;
        d.energy = E;
        d.node_count = final_shot.state_nodes;
        d.tail_mismatch = final_shot.mismatch;
        d.converged = hi - lo <= tol && std::abs(final_shot.mismatch) < options.mismatch_tol;
        d.origin_localized = final_shot.origin_localized;
        d.matching_radius = final_shot.matching_radius;
        states.push_back(d);
    };

    // Refines [lo, hi] until the Wronskian sign changes and the outward node
    // jumps tell the same story, then bisects.
    auto refine = [&](auto&& self, double lo, double hi, const Shot& slo, const Shot& shi,
                      int depth) -> void {
        const bool flip = std::signbit(slo.mismatch) != std::signbit(shi.mismatch);
        const int jump = std::abs(shi.outward_nodes - slo.outward_nodes);
        const bool consistent = (flip && jump == 1) || (!flip && jump == 0);
        if (consistent || depth >= max_refine_depth || hi - lo <= tol) {
            if (flip) {
                bisect(lo, hi, slo);
            }
            return;
        }
        constexpr int parts = 4;
        const double w = (hi - lo) / parts;
        Shot left = slo;
        double a = lo;
        for (int p = 1; p <= parts; ++p) {
            const double b = p == parts ? hi : lo + p * w;
            const Shot right = p == parts ? shi : fire(b);
            self(self, a, b, left, right, depth + 1);
            a = b;
            left = right;
        }
    };

    const int count = options.scan_points;
    const double width = (window.hi - window.lo) / (count - 1);
    Shot prev = fire(window.lo);
    for (int j = 1; j < count; ++j) {
        const double lo = window.lo + (j - 1) * width;
        const double hi = j + 1 == count ? window.hi : window.lo + j * width;
        const Shot cur = fire(hi);
        refine(refine, lo, hi, prev, cur, 0);
        prev = cur;
    }

    std::sort(states.begin(), states.end(),
              [](const ShootingDiagnostics& a, const ShootingDiagnostics& b) { return a.energy < b.energy; });
    for (std::size_t i = 1; i < states.size(); ++i) {
        if (states[i].node_count <= states[i - 1].node_count) {
            throw Error(ErrorCode::grid_resolution,
                        "node counts not increasing across states near E = "
                            + std::to_string(states[i].energy)
                            + "; refine the radial grid (more points or larger r_max)");
        }
    }
    return states;
}

std::vector<ApproxErrorRow> approximation_error(const PhysicalSystem& system, int n, int l,
                                                std::span<const double> betas,
                                                const ShootingOptions& options)
{
    if (n < 0 || l < 0) {
        throw Error(ErrorCode::precondition, "quantum numbers must satisfy n >= 0, l >= 0");
    }
    std::vector<ApproxErrorRow> rows;
    rows.reserve(betas.size());
    for (double beta : betas) {
        const PhysicalSystem sys(system.V0(), beta, system.m0(), system.m1(), system.hbar_c());
        const RadialGrid grid = RadialGrid::default_for(sys);
        const EnergyWindow window = bound_state_window(sys);

        std::string status = "ok";
        auto pick = [&](CentrifugalMode mode) -> std::optional<double> {
            try {
                for (const auto& s : find_bound_states(sys, l, window, mode, grid, options)) {
                    if (s.node_count == n) {
                        return s.energy;
                    }
                }
            } catch (const Error& e) {
                status = std::string(to_string(e.code()));
                return std::nullopt;
            }
            if (status == "ok") {
                status = std::string(to_string(ErrorCode::no_bound_state));
            }
            return std::nullopt;
        };
        const auto approx = pick(CentrifugalMode::approx);
        const auto exact = pick(CentrifugalMode::exact);

        ApproxErrorRow row;
        row.beta = beta;
        row.n = n;
        row.l = l;
        row.matched = approx && exact;
        row.status = row.matched ? "ok" : status;
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.E_approx = approx.value_or(nan);
        row.E_exact = exact.value_or(nan);
        row.abs_err = row.matched ? std::abs(*approx - *exact) : nan;
        row.rel_err = row.matched ? row.abs_err / std::abs(*exact) : nan;
        rows.push_back(row);
    }
    return rows;
}

} // namespace kgh::oracle
