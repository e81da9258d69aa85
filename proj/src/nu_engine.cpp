#include "kgh/nu_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kgh/errors.hpp"

namespace kgh::nu {

namespace {

constexpr double discriminant_tol = 1e-10;
constexpr double branch_match_tol = 1e-10;

bool finite(const Linear& p)
{
    return std::isfinite(p.c0) && std::isfinite(p.c1);
}

bool finite(const Quadratic& p)
{
    return std::isfinite(p.c0) && std::isfinite(p.c1) && std::isfinite(p.c2);
}

/// (sigma' - tau_tilde) / 2
Linear half_shift(const NUProblem& problem)
{
    const Quadratic& s = problem.sigma();
    const Linear& t = problem.tau_tilde();
    return {0.5 * (s.c1 - t.c0), 0.5 * (2.0 * s.c2 - t.c1)};
}

bool close(double a, double b, double tol)
{
    return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

} // namespace

double PowerLaw::operator()(double z) const
{
    return std::pow(z, a) * std::pow(1.0 - z, b);
}

NUProblem::NUProblem(Linear tau_tilde, Quadratic sigma_tilde)
    : tau_tilde_(tau_tilde), sigma_tilde_(sigma_tilde)
{
    if (!finite(tau_tilde) || !finite(sigma_tilde)) {
        throw Error(ErrorCode::precondition, "NU problem coefficients must be finite");
    }
}

std::string_view to_string(Sign s) noexcept
{
    return s == Sign::plus ? "plus" : "minus";
}

Quadratic radicand(const NUProblem& problem, double k)
{
    const Linear h = half_shift(problem);
    const Quadratic& s = problem.sigma();
    const Quadratic& u = problem.sigma_tilde();
    return {h.c0 * h.c0 - u.c0 + k * s.c0,
            2.0 * h.c0 * h.c1 - u.c1 + k * s.c1,
            h.c1 * h.c1 - u.c2 + k * s.c2};
}

double discriminant_residual(const NUProblem& problem, double k)
{
    const Quadratic r = radicand(problem, k);
    return std::abs(r.c1 * r.c1 - 4.0 * r.c2 * r.c0) / std::max(1.0, r.c1 * r.c1);
}

std::vector<double> k_candidates(const NUProblem& problem)
{
    // Radicand coefficients are affine in k: r_i = base_i + k * slope_i.
    const Quadratic base = radicand(problem, 0.0);
    const Quadratic& s = problem.sigma();

    // disc(k) = r1^2 - 4 r2 r0 = qa k^2 + qb k + qc
    const double qa = s.c1 * s.c1 - 4.0 * s.c2 * s.c0;
    const double qb = 2.0 * base.c1 * s.c1 - 4.0 * (base.c2 * s.c0 + s.c2 * base.c0);
    const double qc = base.c1 * base.c1 - 4.0 * base.c2 * base.c0;

    if (qa == 0.0) {
        if (qb == 0.0) {
            throw Error(ErrorCode::no_real_k, "discriminant is independent of k");
        }
        const double k = -qc / qb;
        return {k, k};
    }

    double delta = qb * qb - 4.0 * qa * qc;
    const double scale = qb * qb + std::abs(4.0 * qa * qc);
    if (delta < 0.0) {
        if (delta < -1e-12 * scale) {
            throw Error(ErrorCode::no_real_k,
                        "no real k: discriminant of the k-quadratic is " + std::to_string(delta));
        }
        delta = 0.0;
    }
    const double root = std::sqrt(delta);
    const double t = -0.5 * (qb + std::copysign(root, qb));
    double k1 = 0.0;
    double k2 = 0.0;
    if (t == 0.0) {
        k1 = k2 = 0.0;
    } else {
        k1 = t / qa;
        k2 = qc / t;
    }
    if (delta == 0.0) {
        k1 = k2 = -qb / (2.0 * qa);
    }
    if (k1 > k2) {
        std::swap(k1, k2);
    }
    return {k1, k2};
}

Linear pi_from_k(const NUProblem& problem, double k, Sign sign)
{
    const Quadratic r = radicand(problem, k);
    const double residual = discriminant_residual(problem, k);
    const double mag = std::max({1.0, std::abs(r.c0), std::abs(r.c2)});
    if (residual > discriminant_tol || r.c2 < -discriminant_tol * mag
        || r.c0 < -discriminant_tol * mag) {
        throw Error(ErrorCode::invalid_k,
                    "radicand is not a perfect square at k = " + std::to_string(k)
                        + " (residual " + std::to_string(residual) + ")");
    }

    // sqrt(r2 z^2 + r1 z + r0) = lead z + cst, lead >= 0.
    const double lead = std::sqrt(std::max(r.c2, 0.0));
    const double root0 = std::sqrt(std::max(r.c0, 0.0));
    const double cst = lead > 0.0 ? std::copysign(root0, r.c1) : root0;

    const Linear h = half_shift(problem);
    const double sgn = sign == Sign::plus ? 1.0 : -1.0;
    return {h.c0 + sgn * cst, h.c1 + sgn * lead};
}

NUCandidate make_candidate(const NUProblem& problem, double k, Sign sign)
{
    NUCandidate c;
    c.k = k;
    c.sign = sign;
    c.pi = pi_from_k(problem, k, sign);
    c.tau = {problem.tau_tilde().c0 + 2.0 * c.pi.c0, problem.tau_tilde().c1 + 2.0 * c.pi.c1};
    c.tau_slope = c.tau.c1;

    // (z(1-z) z^a (1-z)^b)' = z^a (1-z)^b [(a+1) - (a+b+2) z]  =>  match tau.
    c.weight.a = c.tau.c0 - 1.0;
    c.weight.b = -c.tau.c1 - c.weight.a - 2.0;

    // pi / (z(1-z)) = pi(0)/z + pi(1)/(1-z)  =>  xi = z^{pi(0)} (1-z)^{-pi(1)}.
    c.xi.a = c.pi(0.0);
    c.xi.b = -c.pi(1.0);
    return c;
}

std::vector<NUCandidate> all_candidates(const NUProblem& problem)
{
    std::vector<NUCandidate> out;
    out.reserve(4);
    for (double k : k_candidates(problem)) {
        out.push_back(make_candidate(problem, k, Sign::plus));
        out.push_back(make_candidate(problem, k, Sign::minus));
    }
    return out;
}

NUCandidate select_candidate(const NUProblem& problem, std::span<const NUCandidate> candidates,
                             BranchPolicy policy)
{
    if (candidates.empty()) {
        throw Error(ErrorCode::precondition, "no NU candidates supplied");
    }
    const bool any_decreasing = std::any_of(candidates.begin(), candidates.end(),
                                            [](const NUCandidate& c) { return c.tau_slope < 0.0; });
    if (!any_decreasing) {
        throw Error(ErrorCode::no_admissible_branch, "no candidate has a negative tau slope");
    }

    if (policy == BranchPolicy::paper_branch) {
        const Quadratic& u = problem.sigma_tilde();
        const double a3_sq = -u.c0;
        const double A_sq = -(u.c0 + u.c1 + u.c2);
        const double tol = 1e-12 * std::max({1.0, std::abs(u.c0), std::abs(u.c1), std::abs(u.c2)});
        if (A_sq < -tol || 0.25 + a3_sq < -tol) {
            throw Error(ErrorCode::branch_mismatch, "literal branch needs real A and sqrt(1/4 + a3^2)");
        }
        const double A = std::sqrt(std::max(A_sq, 0.0));
        const double S = std::sqrt(std::max(0.25 + a3_sq, 0.0));
        const Linear target{1.0 - 2.0 * S, -2.0 * (A - S + 1.0)};
        for (const NUCandidate& c : candidates) {
            if (close(c.tau.c0, target.c0, branch_match_tol)
                && close(c.tau.c1, target.c1, branch_match_tol)) {
                return c;
            }
        }
        throw Error(ErrorCode::branch_mismatch, "no candidate reproduces the literal tau branch");
    }

    const NUCandidate* best = nullptr;
    for (const NUCandidate& c : candidates) {
        if (!(c.tau_slope < 0.0) || !(c.weight.a > -1.0) || !(c.weight.b > -1.0)) {
            continue;
        }
        if (best == nullptr) {
            best = &c;
            continue;
        }
        if (close(c.tau.c0, best->tau.c0, 1e-12)) {
            if (c.tau_slope < best->tau_slope) {
                best = &c;
            }
        } else if (c.tau.c0 > best->tau.c0) {
            best = &c;
        }
    }
    if (best == nullptr) {
        throw Error(ErrorCode::no_admissible_branch,
                    "no candidate with negative tau slope and weight exponents > -1");
    }
    return *best;
}

EigenPair eigen_pair(const NUCandidate& candidate, const NUProblem& problem, int n)
{
    if (n < 0) {
        throw Error(ErrorCode::precondition, "radial quantum number must be >= 0");
    }
    const double sigma_pp = 2.0 * problem.sigma().c2;
    const double nn = n;
    return {candidate.k + candidate.pi.c1,
            -nn * candidate.tau_slope - 0.5 * nn * (nn - 1.0) * sigma_pp};
}

NUSolution closure_functions(const NUCandidate& candidate, const NUProblem& problem)
{
    NUSolution s;
    s.candidate = candidate;
    s.lambda = eigen_pair(candidate, problem, 0).lambda;
    s.jacobi_alpha = candidate.weight.a;
    s.jacobi_beta = candidate.weight.b;
    s.normalizable = s.jacobi_alpha > -1.0 && s.jacobi_beta > -1.0;
    return s;
}

NUSolution solve(const NUProblem& problem, BranchPolicy policy)
{
    const std::vector<NUCandidate> candidates = all_candidates(problem);
    return closure_functions(select_candidate(problem, candidates, policy), problem);
}

} // namespace kgh::nu
