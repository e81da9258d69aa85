#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "kgh/errors.hpp"
#include "kgh/hulthen_analytic.hpp"
#include "kgh/oracle.hpp"
#include "oracles.hpp"

using namespace kgh;
using namespace kgh::oracle;
using kgh::testing::Sampler;

namespace {

ErrorCode code_of(auto&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected kgh::Error");
    return ErrorCode::config;
}

std::vector<ShootingDiagnostics> solve(const PhysicalSystem& s, int l, CentrifugalMode mode,
                                       const ShootingOptions& options = {})
{
    return find_bound_states(s, l, bound_state_window(s), mode, RadialGrid::default_for(s), options);
}

} // namespace

TEST_CASE("ode coefficient")
{
    const PhysicalSystem s(0.25, 0.5, 1.0, 0.2);
    CHECK(ode_coefficient(s, 1, 0.5, 2.0, CentrifugalMode::approx)
          == doctest::Approx(0.5109893942232646).epsilon(1e-13));
    CHECK(ode_coefficient(s, 1, 0.5, 2.0, CentrifugalMode::exact)
          == doctest::Approx(0.5506525971193685).epsilon(1e-13));

    Sampler rng(41);
    for (int i = 0; i < 100; ++i) {
        const double m1 = rng.uniform(0.0, 0.5);
        const PhysicalSystem p(rng.uniform(-0.5, 0.5), rng.uniform(0.05, 1.0), 1.0, m1, rng.uniform(0.5, 2.0));
        const int l = rng.integer(0, 3);
        const double E = rng.uniform(-0.9, 0.9);
        const double r = rng.uniform(1e-3, 30.0) / p.beta();
        for (auto mode : {CentrifugalMode::approx, CentrifugalMode::exact}) {
            const double w = ode_coefficient(p, l, E, r, mode);
            const double ref = kgh::testing::radial_coefficient(p.V0(), p.beta(), p.m0(), p.m1(), l, E, r,
                                                                mode == CentrifugalMode::approx, p.hbar_c());
            CHECK(std::abs(w - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
        }
        CHECK(ode_coefficient(p, 0, E, r, CentrifugalMode::approx)
              == ode_coefficient(p, 0, E, r, CentrifugalMode::exact));

        // Far from the origin only the asymptotic mass survives.
        const double far = rng.uniform(40.0, 60.0) / p.beta();
        const double m = p.asymptotic_mass();
        const double limit = (m * m - E * E) / (p.hbar_c() * p.hbar_c());
        for (auto mode : {CentrifugalMode::approx, CentrifugalMode::exact}) {
            const double w = ode_coefficient(p, l, E, far, mode);
            if (mode == CentrifugalMode::approx || l == 0) {
                CHECK(std::abs(w - limit) <= 1e-10 * std::abs(limit));
            }
        }
    }

    CHECK(code_of([&] { ode_coefficient(s, 0, 0.5, 0.0, CentrifugalMode::approx); }) == ErrorCode::domain);
    CHECK(code_of([&] { ode_coefficient(s, 0, 0.5, -1.0, CentrifugalMode::exact); }) == ErrorCode::domain);
}

TEST_CASE("free particle has no bound states")
{
    const PhysicalSystem s(0.0, 0.3, 1.0);
    for (int l = 0; l <= 1; ++l) {
        for (auto mode : {CentrifugalMode::approx, CentrifugalMode::exact}) {
            CHECK(solve(s, l, mode).empty());
        }
    }
}

TEST_CASE("oracle matches independent shooting fixtures")
{
    for (const auto& f : kgh::testing::shooting_fixtures()) {
        const PhysicalSystem s(f.V0, f.beta, f.m0, f.m1);
        const auto states = solve(s, f.l, CentrifugalMode::approx);
        REQUIRE(states.size() >= f.energies.size());
        for (std::size_t n = 0; n < f.energies.size(); ++n) {
            CHECK(std::abs(states[n].energy - f.energies[n]) < 1e-6 * std::abs(f.energies[n]));
        }
        for (std::size_t k = 0; k < states.size(); ++k) {
            CHECK(states[k].node_count == static_cast<int>(k));
            CHECK(states[k].converged);
            CHECK(std::abs(states[k].tail_mismatch) < ShootingOptions{}.mismatch_tol);
            CHECK_FALSE(states[k].origin_localized);
        }
    }
}

TEST_CASE("oracle agrees with the analytic spectrum")
{
    const std::array<PhysicalSystem, 3> sets{
        PhysicalSystem(0.3, 0.1, 1.0, 0.3),
        PhysicalSystem(0.35, 0.2, 1.0, 0.4),
        PhysicalSystem(0.45, 0.3, 1.0, 0.5),
    };
    int compared = 0;
    for (const auto& s : sets) {
        for (int l = 0; l <= 1; ++l) {
            const auto states = solve(s, l, CentrifugalMode::approx);
            for (int n = 0; n <= 1; ++n) {
                const auto roots = hulthen::energy_root_solve(s, n, l, bound_state_window(s)).levels;
                REQUIRE(roots.size() == 1);
                REQUIRE(static_cast<int>(states.size()) > n);
                CHECK(std::abs(states[n].energy - roots[0].value) < 1e-6 * std::abs(roots[0].value));
                ++compared;
            }
        }
    }
    CHECK(compared == 12);
}

TEST_CASE("grid convergence at default resolution")
{
    const PhysicalSystem s(0.35, 0.2, 1.0, 0.4);
    const RadialGrid coarse = RadialGrid::default_for(s);
    const RadialGrid fine(coarse.r_min(), coarse.r_max(), 2 * coarse.points() - 1);
    for (auto mode : {CentrifugalMode::approx, CentrifugalMode::exact}) {
        const auto a = find_bound_states(s, 1, bound_state_window(s), mode, coarse);
        const auto b = find_bound_states(s, 1, bound_state_window(s), mode, fine);
        REQUIRE(a.size() == b.size());
        REQUIRE_FALSE(a.empty());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(std::abs(a[i].energy - b[i].energy) < 1e-8 * s.m0());
        }
    }
}

TEST_CASE("s-wave modes agree")
{
    const PhysicalSystem s(0.35, 0.2, 1.0, 0.4);
    const auto a = solve(s, 0, CentrifugalMode::approx);
    const auto b = solve(s, 0, CentrifugalMode::exact);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(std::abs(a[i].energy - b[i].energy) < 1e-9 * s.m0());
    }
}

TEST_CASE("window and option checks")
{
    const PhysicalSystem s(0.3, 0.1, 1.0, 0.3);
    const RadialGrid g = RadialGrid::default_for(s);
    CHECK(code_of([&] { find_bound_states(s, 0, {-1.0, 0.5}, CentrifugalMode::approx, g); })
          == ErrorCode::precondition);
    CHECK(code_of([&] { find_bound_states(s, 0, {0.5, 0.1}, CentrifugalMode::approx, g); })
          == ErrorCode::precondition);
    ShootingOptions bad;
    bad.scan_points = 1;
    CHECK(code_of([&] { find_bound_states(s, 0, bound_state_window(s), CentrifugalMode::approx, g, bad); })
          == ErrorCode::precondition);
}

TEST_CASE("collapsing origin is rejected")
{
    // Q V0 = 1.5 with m1 = 0.1: no regular s-wave solution.
    const PhysicalSystem s(0.3, 0.2, 1.0, 0.1);
    CHECK(code_of([&] { solve(s, 0, CentrifugalMode::approx); }) == ErrorCode::invalid_regime);
}

TEST_CASE("a too coarse scan is reported")
{
    // Levels crowd against the threshold for a weak, wide well.
    const PhysicalSystem s(0.3, 0.1, 1.0, 0.3);
    ShootingOptions coarse;
    coarse.scan_points = 3;
    try {
        const auto states = solve(s, 0, CentrifugalMode::approx, coarse);
        for (std::size_t k = 0; k < states.size(); ++k) {
            CHECK(states[k].node_count == static_cast<int>(k));
        }
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::grid_resolution);
    }
}

TEST_CASE("centrifugal approximation error")
{
    const PhysicalSystem s(0.2, 0.2, 1.0);
    const std::array<double, 1> one{0.2};
    const auto rows = approximation_error(s, 0, 1, one);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].matched);
    CHECK(rows[0].status == "ok");
    CHECK(std::abs(rows[0].E_approx - kgh::testing::centrifugal_fixture_approx) < 1e-9);
    CHECK(std::abs(rows[0].E_exact - kgh::testing::centrifugal_fixture_exact) < 1e-9);
    CHECK(rows[0].abs_err == doctest::Approx(std::abs(rows[0].E_exact - rows[0].E_approx)));
    CHECK(rows[0].rel_err == doctest::Approx(rows[0].abs_err / std::abs(rows[0].E_exact)));

    // No p-wave state in either mode: the row is kept and flagged.
    const PhysicalSystem pdm(0.25, 0.5, 1.0, 0.2);
    const std::array<double, 1> half{0.5};
    const auto missing = approximation_error(pdm, 0, 1, half);
    REQUIRE(missing.size() == 1);
    CHECK_FALSE(missing[0].matched);
    CHECK(missing[0].status == "no_bound_state");
    CHECK(std::isnan(missing[0].E_approx));
    CHECK(std::isnan(missing[0].E_exact));
    CHECK(find_bound_states(pdm, 1, bound_state_window(pdm), CentrifugalMode::exact,
                            RadialGrid::default_for(pdm))
              .empty());

    // Strong coupling at small beta: the s-wave-like collapse shows as a status.
    const std::array<double, 2> small{0.1, 0.05};
    for (const auto& row : approximation_error(s, 0, 1, small)) {
        CHECK_FALSE(row.matched);
        CHECK(row.status == "invalid_regime");
    }
}

TEST_CASE("s-wave approximation error vanishes")
{
    const PhysicalSystem s(0.1, 0.4, 1.0, 0.1);
    const std::array<double, 2> betas{0.4, 0.3};
    for (const auto& row : approximation_error(s, 0, 0, betas)) {
        REQUIRE(row.matched);
        CHECK(row.abs_err < 1e-9);
    }
}
