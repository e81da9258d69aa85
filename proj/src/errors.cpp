#include "kgh/errors.hpp"

namespace kgh {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
        case ErrorCode::domain: return "domain_error";
        case ErrorCode::invalid_system: return "invalid_system";
        case ErrorCode::precondition: return "precondition";
        case ErrorCode::no_real_k: return "no_real_k";
        case ErrorCode::invalid_k: return "invalid_k";
        case ErrorCode::no_admissible_branch: return "no_admissible_branch";
        case ErrorCode::branch_mismatch: return "branch_mismatch";
        case ErrorCode::complex_regime: return "complex_regime";
        case ErrorCode::invalid_regime: return "invalid_regime";
        case ErrorCode::no_bound_state: return "no_bound_state";
        case ErrorCode::non_normalizable: return "non_normalizable";
        case ErrorCode::grid_resolution: return "grid_resolution";
        case ErrorCode::integration: return "integration_error";
        case ErrorCode::config: return "config_error";
    }
    return "unknown";
}

} // namespace kgh
