#ifndef KGH_CLI_HPP
#define KGH_CLI_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "kgh/model.hpp"

namespace kgh::cli {

enum class Command { spectrum, wavefunction, validate, approx_error };
enum class BranchSelection { upper, lower, both };
enum class SolveMethod { closed_form, quantization_root, oracle };
enum class OutputFormat { csv, json };

std::string_view to_string(Command c) noexcept;

struct GridOverrides {
    std::optional<double> r_min;
    std::optional<double> r_max;
    std::optional<std::size_t> points;
};

struct RunConfig {
    explicit RunConfig(PhysicalSystem s) : system(s) {}

    PhysicalSystem system;
    Command command = Command::spectrum;
    int n_max = 2;
    int l_max = 1;
    BranchSelection branch = BranchSelection::both;
    SolveMethod method = SolveMethod::quantization_root;
    GridOverrides grid;
    OutputFormat format = OutputFormat::csv;
    std::optional<std::string> output_path;
    /// Divide reported energies by m0 c^2.
    bool report_in_rest_units = false;
    /// Single state for `wavefunction` and `approx_error`.
    int n = 0;
    int l = 1;
    std::vector<double> betas{0.4, 0.2, 0.1, 0.05};

    RadialGrid radial_grid() const;
};

/// Flag name (without dashes, snake_case: "V0", "hbar_c", "n_max", ...) to its
/// raw text value.
using FlagMap = std::map<std::string, std::string>;

/// Merges the JSON config text (may be empty) with command-line flags, flags
/// winning. Throws Error(config) naming the offending key or flag.
RunConfig parse_config(std::string_view source, const FlagMap& flags, Command command);

/// One output cell. monostate marks a value that does not exist (an energy
/// for an unsolvable state); it serializes as an empty CSV field or null.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

/// Records sharing one schema.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    /// Human-readable diagnostics; not part of the serialized output.
    std::vector<std::string> notes;
};

/// Never throws for solver failures: those become status tokens in the
/// records.
Table execute(const RunConfig& config);

/// CSV: header row, 17 significant digits, '\n' line endings. JSON: array of
/// objects with keys in column order.
std::string serialize(const Table& table, OutputFormat format);

/// Inverse of serialize for the JSON format.
Table parse_json_table(std::string_view text);

/// True if any `validate` record reports a failed check.
bool has_failures(const Table& validate_report);

} // namespace kgh::cli

#endif // KGH_CLI_HPP
