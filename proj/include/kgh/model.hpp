#ifndef KGH_MODEL_HPP
#define KGH_MODEL_HPP

#include <cstddef>
#include <string_view>
#include <vector>

namespace kgh {

/// Parameters of the Hulthen potential with the exponential-type mass
/// profile m(r) = m0 - m1 / (1 - exp(-beta r)).
///
/// Masses are carried as rest energies (m c^2), so the only unit constant
/// is hbar_c (energy x length). With the default hbar_c = 1 every quantity
/// is in natural units. Instances are validated on construction and
/// immutable afterwards.
class PhysicalSystem {
public:
    PhysicalSystem(double V0, double beta, double m0, double m1 = 0.0, double hbar_c = 1.0);

    double V0() const noexcept { return V0_; }
    double beta() const noexcept { return beta_; }
    double m0() const noexcept { return m0_; }
    double m1() const noexcept { return m1_; }
    double hbar_c() const noexcept { return hbar_c_; }

    /// Q = 1 / (beta hbar_c), the inverse energy scale of the z-chart.
    double Q() const noexcept { return 1.0 / (beta_ * hbar_c_); }
    /// Rest energy far from the origin, (m0 - m1) c^2.
    double asymptotic_mass() const noexcept { return m0_ - m1_; }
    bool constant_mass() const noexcept { return m1_ == 0.0; }
    /// False when V0 <= 0: the type accepts it, but no binding is expected.
    bool attractive() const noexcept { return V0_ > 0.0; }

private:
    double V0_;
    double beta_;
    double m0_;
    double m1_;
    double hbar_c_;
};

struct QuantumNumbers {
    int n = 0;
    int l = 0;
};

enum class Branch { upper, lower };
enum class Method { closed_form, quantization_root, oracle_approx, oracle_exact };

/// bound: |E| < (m0 - m1) c^2 and the level solves the quantization condition.
/// unbound: the value lies outside the confinement window.
/// spurious: the value solves only the squared form of the condition.
enum class LevelStatus { bound, unbound, spurious };

std::string_view to_string(Branch b) noexcept;
std::string_view to_string(Method m) noexcept;
std::string_view to_string(LevelStatus s) noexcept;

struct EnergyLevel {
    double value = 0.0;
    Branch branch = Branch::upper;
    int n = 0;
    int l = 0;
    Method method = Method::closed_form;
    LevelStatus status = LevelStatus::bound;
};

/// Closed energy interval used for bound-state searches.
struct EnergyWindow {
    double lo = 0.0;
    double hi = 0.0;
};

/// The confinement window (-(m0-m1) + eps, (m0-m1) - eps) with eps = 1e-9 m0.
EnergyWindow bound_state_window(const PhysicalSystem& system);

/// Uniform radial grid r_i = r_min + i (r_max - r_min) / (points - 1).
class RadialGrid {
public:
    RadialGrid(double r_min, double r_max, std::size_t points);

    /// r_min = 1e-6 / beta, r_max = 40 / beta, 4000 points.
    static RadialGrid default_for(const PhysicalSystem& system);

    double r_min() const noexcept { return r_min_; }
    double r_max() const noexcept { return r_max_; }
    std::size_t points() const noexcept { return points_; }
    double step() const noexcept { return (r_max_ - r_min_) / static_cast<double>(points_ - 1); }
    double operator[](std::size_t i) const noexcept;
    std::vector<double> values() const;

private:
    double r_min_;
    double r_max_;
    std::size_t points_;
};

enum class CentrifugalMode { exact, approx };

double mass_at(const PhysicalSystem& system, double r);
double potential_at(const PhysicalSystem& system, double r);

/// exact: l(l+1)/r^2. approx: beta^2 l(l+1) e^{-beta r} / (1 - e^{-beta r})^2.
double centrifugal_at(const PhysicalSystem& system, int l, double r, CentrifugalMode mode);

} // namespace kgh

#endif // KGH_MODEL_HPP
