#ifndef KGH_NU_ENGINE_HPP
#define KGH_NU_ENGINE_HPP

#include <span>
#include <string_view>
#include <vector>

// Nikiforov-Uvarov reduction of
//
//     phi'' + (tau_tilde / sigma) phi' + (sigma_tilde / sigma^2) phi = 0
//
// on the chart sigma(z) = z (1 - z), z in (0, 1). With phi = xi(z) psi(z)
// the equation becomes sigma psi'' + tau psi' + lambda psi = 0, whose
// polynomial solutions are Jacobi polynomials in x = 1 - 2z. On this chart
// both the weight rho and xi are pure power laws z^a (1 - z)^b, so every
// closure is available in closed form.

namespace kgh::nu {

/// c0 + c1 z.
struct Linear {
    double c0 = 0.0;
    double c1 = 0.0;

    double operator()(double z) const noexcept { return c0 + c1 * z; }
};

/// c0 + c1 z + c2 z^2.
struct Quadratic {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;

    double operator()(double z) const noexcept { return c0 + z * (c1 + z * c2); }
};

/// z^a (1 - z)^b.
struct PowerLaw {
    double a = 0.0;
    double b = 0.0;

    double operator()(double z) const;
};

/// Hypergeometric-type equation data. sigma is fixed to z(1 - z).
class NUProblem {
public:
    NUProblem(Linear tau_tilde, Quadratic sigma_tilde);

    const Quadratic& sigma() const noexcept { return sigma_; }
    const Linear& tau_tilde() const noexcept { return tau_tilde_; }
    const Quadratic& sigma_tilde() const noexcept { return sigma_tilde_; }

private:
    Quadratic sigma_{0.0, 1.0, -1.0};
    Linear tau_tilde_;
    Quadratic sigma_tilde_;
};

enum class Sign { plus, minus };
std::string_view to_string(Sign s) noexcept;

struct NUCandidate {
    double k = 0.0;
    Sign sign = Sign::plus;
    Linear pi;
    Linear tau;
    double tau_slope = 0.0;
    PowerLaw weight; // rho(z), from (sigma rho)' = tau rho
    PowerLaw xi;     // xi(z), from xi'/xi = pi / sigma
};

struct NUSolution {
    NUCandidate candidate;
    double lambda = 0.0;
    double jacobi_alpha = 0.0; // exponent of z in rho
    double jacobi_beta = 0.0;  // exponent of (1 - z) in rho
    bool normalizable = false;
};

struct EigenPair {
    double lambda = 0.0;   // k + pi'
    double lambda_n = 0.0; // -n tau' - n(n-1)/2 sigma''
};

/// paper_branch: the tau(z) = 1 - 2 sqrt(1/4 + a3^2) - 2(A - sqrt(1/4 + a3^2) + 1) z
/// branch, with a3^2 = -sigma_tilde(0) and A^2 = -sigma_tilde(1).
/// admissible: negative tau slope and both weight exponents > -1; ties broken
/// by the largest tau(0), then by the steepest tau slope.
enum class BranchPolicy { paper_branch, admissible };

/// Quadratic radicand ((sigma' - tau_tilde)/2)^2 - sigma_tilde + k sigma.
Quadratic radicand(const NUProblem& problem, double k);

/// |b^2 - 4ac| / max(1, b^2) of the radicand at k.
double discriminant_residual(const NUProblem& problem, double k);

/// The k values making the radicand a perfect square, ascending, double
/// roots repeated. Throws Error(no_real_k) when none are real.
std::vector<double> k_candidates(const NUProblem& problem);

/// pi(z) = (sigma' - tau_tilde)/2 +/- sqrt(radicand). The square root is
/// taken as the linear factor with non-negative leading coefficient.
/// Throws Error(invalid_k) if the radicand is not a perfect square.
Linear pi_from_k(const NUProblem& problem, double k, Sign sign);

/// Builds tau = tau_tilde + 2 pi and the power-law closures for (k, sign).
NUCandidate make_candidate(const NUProblem& problem, double k, Sign sign);

/// All four (k, sign) combinations, k ascending, plus before minus.
std::vector<NUCandidate> all_candidates(const NUProblem& problem);

NUCandidate select_candidate(const NUProblem& problem, std::span<const NUCandidate> candidates,
                             BranchPolicy policy);

EigenPair eigen_pair(const NUCandidate& candidate, const NUProblem& problem, int n);

NUSolution closure_functions(const NUCandidate& candidate, const NUProblem& problem);

/// Convenience: enumerate, select, close.
NUSolution solve(const NUProblem& problem, BranchPolicy policy);

} // namespace kgh::nu

#endif // KGH_NU_ENGINE_HPP
