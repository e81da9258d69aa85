#ifndef KGH_ERRORS_HPP
#define KGH_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace kgh {

/// Failure categories raised by the solvers. The CLI maps these onto
/// per-record status tokens, so every code has a stable snake_case name.
enum class ErrorCode {
    domain,               // evaluation outside r > 0
    invalid_system,       // PhysicalSystem invariant violated
    precondition,         // caller broke an operation precondition
    no_real_k,            // NU discriminant-of-discriminant negative
    invalid_k,            // k does not make the radicand a perfect square
    no_admissible_branch, // no NU candidate with negative tau slope
    branch_mismatch,      // requested literal branch not among candidates
    complex_regime,       // A or sqrt(1 + 4 a3^2) not real
    invalid_regime,       // 1 + 4 a3^2 < 0 for the closed forms
    no_bound_state,       // closed-form radicand negative
    non_normalizable,     // wavefunction exponents do not decay
    grid_resolution,      // shooting scan inconsistent at this grid
    integration,          // non-finite integrand / ODE overflow
    config,               // bad CLI/JSON configuration
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace kgh

#endif // KGH_ERRORS_HPP
