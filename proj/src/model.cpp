#include "kgh/model.hpp"

#include <cmath>
#include <string>

#include "kgh/errors.hpp"

namespace kgh {

std::string_view to_string(Branch b) noexcept
{
    return b == Branch::upper ? "upper" : "lower";
}

std::string_view to_string(Method m) noexcept
{
    switch (m) {
        case Method::closed_form: return "closed_form";
        case Method::quantization_root: return "quantization_root";
        case Method::oracle_approx: return "oracle_approx";
        case Method::oracle_exact: return "oracle_exact";
    }
    return "unknown";
}

std::string_view to_string(LevelStatus s) noexcept
{
    switch (s) {
        case LevelStatus::bound: return "ok";
        case LevelStatus::unbound: return "unbound";
        case LevelStatus::spurious: return "spurious";
    }
    return "unknown";
}

namespace {

void require(bool ok, const std::string& what)
{
    if (!ok) {
        throw Error(ErrorCode::invalid_system, what);
    }
}

void require_positive_r(double r)
{
    if (!(r > 0.0)) {
        throw Error(ErrorCode::domain, "radial coordinate must be > 0, got " + std::to_string(r));
    }
}

} // namespace

PhysicalSystem::PhysicalSystem(double V0, double beta, double m0, double m1, double hbar_c)
    : V0_(V0), beta_(beta), m0_(m0), m1_(m1), hbar_c_(hbar_c)
{
    require(std::isfinite(V0) && std::isfinite(beta) && std::isfinite(m0) && std::isfinite(m1)
                && std::isfinite(hbar_c),
            "physical parameters must be finite");
    require(beta > 0.0, "beta must be > 0");
    require(hbar_c > 0.0, "hbar_c must be > 0");
    require(m1 >= 0.0, "m1 must be >= 0");
    require(m0 > m1, "mass condition m0 > m1 violated");
}

EnergyWindow bound_state_window(const PhysicalSystem& system)
{
    const double eps = 1e-9 * system.m0();
    const double m_inf = system.asymptotic_mass();
    return {-m_inf + eps, m_inf - eps};
}

RadialGrid::RadialGrid(double r_min, double r_max, std::size_t points)
    : r_min_(r_min), r_max_(r_max), points_(points)
{
    if (!(r_min > 0.0) || !(r_max > r_min)) {
        throw Error(ErrorCode::precondition, "radial grid requires 0 < r_min < r_max");
    }
    if (points < 100) {
        throw Error(ErrorCode::precondition, "radial grid requires at least 100 points");
    }
}

RadialGrid RadialGrid::default_for(const PhysicalSystem& system)
{
    return RadialGrid(1e-6 / system.beta(), 40.0 / system.beta(), 4000);
}

double RadialGrid::operator[](std::size_t i) const noexcept
{
    if (i + 1 == points_) {
        return r_max_;
    }
    return r_min_ + static_cast<double>(i) * step();
}

std::vector<double> RadialGrid::values() const
{
    std::vector<double> r(points_);
    for (std::size_t i = 0; i < points_; ++i) {
        r[i] = (*this)[i];
    }
    return r;
}

double mass_at(const PhysicalSystem& system, double r)
{
    require_positive_r(r);
    // 1 - e^{-x} via expm1 keeps the small-r end accurate.
    const double z = -std::expm1(-system.beta() * r);
    return system.m0() - system.m1() / z;
}

double potential_at(const PhysicalSystem& system, double r)
{
    require_positive_r(r);
    const double x = system.beta() * r;
    return -system.V0() * std::exp(-x) / (-std::expm1(-x));
}

double centrifugal_at(const PhysicalSystem& system, int l, double r, CentrifugalMode mode)
{
    require_positive_r(r);
    if (l < 0) {
        throw Error(ErrorCode::precondition, "angular momentum must be >= 0");
    }
    const double ll = static_cast<double>(l) * static_cast<double>(l + 1);
    if (mode == CentrifugalMode::exact) {
        return ll / (r * r);
    }
    const double b = system.beta();
    const double x = b * r;
    const double z = -std::expm1(-x);
    return b * b * ll * std::exp(-x) / (z * z);
}

} // namespace kgh
