#include "kgh/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "kgh/errors.hpp"
#include "kgh/hulthen_analytic.hpp"
#include "kgh/nu_engine.hpp"
#include "kgh/oracle.hpp"

namespace kgh::cli {

namespace {

using json = nlohmann::ordered_json;

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

[[noreturn]] void config_error(const std::string& what)
{
    throw Error(ErrorCode::config, what);
}

const std::set<std::string>& known_keys()
{
    static const std::set<std::string> keys{
        "V0", "beta", "m0", "m1", "hbar_c", "report_in_rest_units", "n_max", "l_max", "branch",
        "method", "format", "output", "r_min", "r_max", "points", "n", "l", "betas"};
    return keys;
}

double parse_number(std::string_view text, const std::string& where)
{
    double value = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
        config_error(where + ": '" + std::string(text) + "' is not a finite number");
    }
    return value;
}

long long parse_integer(std::string_view text, const std::string& where)
{
    long long value = 0;
    const char* first = text.data();
    const char* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        config_error(where + ": '" + std::string(text) + "' is not an integer");
    }
    return value;
}

bool parse_bool(std::string_view text, const std::string& where)
{
    if (text == "true" || text == "1") {
        return true;
    }
    if (text == "false" || text == "0") {
        return false;
    }
    config_error(where + ": '" + std::string(text) + "' is not a boolean");
}

/// One config value, from the file or a flag, with its location for messages.
struct Source {
    const json* file = nullptr;
    const std::string* flag = nullptr;
    std::string where;
};

class Settings {
public:
    Settings(const json& file, const FlagMap& flags) : file_(file), flags_(flags) {}

    Source find(const std::string& key) const
    {
        Source s;
        if (auto it = flags_.find(key); it != flags_.end()) {
            s.flag = &it->second;
            s.where = "flag --" + dashed(key);
        } else if (file_.is_object() && file_.contains(key)) {
            s.file = &file_.at(key);
            s.where = "config key '" + key + "'";
        }
        return s;
    }

    bool has(const std::string& key) const
    {
        const Source s = find(key);
        return s.file != nullptr || s.flag != nullptr;
    }

    std::optional<double> number(const std::string& key) const
    {
        const Source s = find(key);
        if (s.flag != nullptr) {
            return parse_number(*s.flag, s.where);
        }
        if (s.file != nullptr) {
            if (!s.file->is_number()) {
                config_error(s.where + ": expected a number, got " + s.file->dump());
            }
            const double v = s.file->get<double>();
            if (!std::isfinite(v)) {
                config_error(s.where + ": value must be finite");
            }
            return v;
        }
        return std::nullopt;
    }

    std::optional<long long> integer(const std::string& key) const
    {
        const Source s = find(key);
        if (s.flag != nullptr) {
            return parse_integer(*s.flag, s.where);
        }
        if (s.file != nullptr) {
            if (!s.file->is_number_integer()) {
                config_error(s.where + ": expected an integer, got " + s.file->dump());
            }
            return s.file->get<long long>();
        }
        return std::nullopt;
    }

    std::optional<std::string> text(const std::string& key) const
    {
        const Source s = find(key);
        if (s.flag != nullptr) {
            return *s.flag;
        }
        if (s.file != nullptr) {
            if (!s.file->is_string()) {
                config_error(s.where + ": expected a string, got " + s.file->dump());
            }
            return s.file->get<std::string>();
        }
        return std::nullopt;
    }

    std::optional<bool> boolean(const std::string& key) const
    {
        const Source s = find(key);
        if (s.flag != nullptr) {
            return parse_bool(*s.flag, s.where);
        }
        if (s.file != nullptr) {
            if (!s.file->is_boolean()) {
                config_error(s.where + ": expected true or false, got " + s.file->dump());
            }
            return s.file->get<bool>();
        }
        return std::nullopt;
    }

    /// Comma-separated on the command line, a JSON array in the file.
    std::optional<std::vector<double>> numbers(const std::string& key) const
    {
        const Source s = find(key);
        std::vector<double> out;
        if (s.flag != nullptr) {
            std::string_view rest = *s.flag;
            while (true) {
                const auto comma = rest.find(',');
                out.push_back(parse_number(rest.substr(0, comma), s.where));
                if (comma == std::string_view::npos) {
                    break;
                }
                rest.remove_prefix(comma + 1);
            }
            return out;
        }
        if (s.file != nullptr) {
            if (!s.file->is_array()) {
                config_error(s.where + ": expected an array of numbers");
            }
            for (std::size_t i = 0; i < s.file->size(); ++i) {
                const json& v = s.file->at(i);
                if (!v.is_number() || !std::isfinite(v.get<double>())) {
                    config_error(s.where + "[" + std::to_string(i) + "]: expected a finite number");
                }
                out.push_back(v.get<double>());
            }
            return out;
        }
        return std::nullopt;
    }

private:
    static std::string dashed(std::string key)
    {
        std::replace(key.begin(), key.end(), '_', '-');
        return key;
    }

    const json& file_;
    const FlagMap& flags_;
};

template <typename Enum, std::size_t N>
Enum parse_enum(const std::string& value, const std::string& where,
                const std::pair<const char*, Enum> (&names)[N])
{
    for (const auto& [name, e] : names) {
        if (value == name) {
            return e;
        }
    }
    std::string allowed;
    for (const auto& [name, e] : names) {
        allowed += allowed.empty() ? name : std::string(", ") + name;
    }
    config_error(where + ": '" + value + "' is not one of " + allowed);
}

int non_negative(long long v, const std::string& key)
{
    if (v < 0 || v > 1000) {
        config_error(key + " must lie in [0, 1000], got " + std::to_string(v));
    }
    return static_cast<int>(v);
}

// ---------------------------------------------------------------------------
// dispatch helpers

std::string token(const Error& e)
{
    return std::string(to_string(e.code()));
}

std::string branch_name(Branch b)
{
    return std::string(to_string(b));
}

std::vector<Branch> requested(BranchSelection sel)
{
    switch (sel) {
        case BranchSelection::upper: return {Branch::upper};
        case BranchSelection::lower: return {Branch::lower};
        case BranchSelection::both: return {Branch::upper, Branch::lower};
    }
    return {};
}

bool wanted(BranchSelection sel, Branch b)
{
    return sel == BranchSelection::both || (sel == BranchSelection::upper) == (b == Branch::upper);
}

double midpoint_for(const PhysicalSystem& system, int n, int l)
{
    try {
        return hulthen::energy_closed_form(system, n, l).midpoint;
    } catch (const Error&) {
        return 0.5 * system.V0();
    }
}

/// Approx-mode oracle states per l, or the error token that stopped the scan.
struct OracleScan {
    std::vector<oracle::ShootingDiagnostics> states;
    std::optional<Error> error;
};

OracleScan scan_oracle(const PhysicalSystem& system, int l, CentrifugalMode mode,
                       const RadialGrid& grid)
{
    OracleScan scan;
    try {
        scan.states = oracle::find_bound_states(system, l, bound_state_window(system), mode, grid);
    } catch (const Error& e) {
        scan.error = e;
    }
    return scan;
}

std::optional<double> oracle_energy(const OracleScan& scan, int n)
{
    for (const auto& s : scan.states) {
        if (s.node_count == n) {
            return s.energy;
        }
    }
    return std::nullopt;
}

struct Outcome {
    std::optional<double> energy;
    std::string status;
};

Table run_spectrum(const RunConfig& cfg)
{
    Table t;
    t.columns = {"n", "l", "branch", "method", "energy", "status"};
    const PhysicalSystem& sys = cfg.system;
    const double unit = cfg.report_in_rest_units ? sys.m0() : 1.0;
    const std::vector<Branch> branches = requested(cfg.branch);

    std::vector<OracleScan> scans;
    if (cfg.method == SolveMethod::oracle) {
        const RadialGrid grid = cfg.radial_grid();
        for (int l = 0; l <= cfg.l_max; ++l) {
            scans.push_back(scan_oracle(sys, l, CentrifugalMode::approx, grid));
        }
    }

    std::string method_name;
    switch (cfg.method) {
        case SolveMethod::closed_form: method_name = "closed_form"; break;
        case SolveMethod::quantization_root: method_name = "quantization_root"; break;
        case SolveMethod::oracle: method_name = "oracle_approx"; break;
    }

    for (int n = 0; n <= cfg.n_max; ++n) {
        for (int l = 0; l <= cfg.l_max; ++l) {
            std::map<Branch, Outcome> out;
            for (Branch b : branches) {
                out[b] = {std::nullopt, std::string(to_string(ErrorCode::no_bound_state))};
            }
            try {
                switch (cfg.method) {
                    case SolveMethod::closed_form: {
                        const auto cf = hulthen::energy_closed_form(sys, n, l);
                        for (const EnergyLevel& lv : {cf.upper, cf.lower}) {
                            if (!out.count(lv.branch)) {
                                continue;
                            }
                            if (lv.status == LevelStatus::bound) {
                                out[lv.branch] = {lv.value, "ok"};
                            } else {
                                // Roots of the squared condition only, or outside the window.
                                t.notes.push_back("(n, l) = (" + std::to_string(n) + ", " + std::to_string(l)
                                                  + ") " + branch_name(lv.branch) + ": closed form gives "
                                                  + format_double(lv.value) + " ("
                                                  + std::string(to_string(lv.status)) + ")");
                            }
                        }
                        break;
                    }
                    case SolveMethod::quantization_root: {
                        if (!hulthen::coefficients_at(sys, l, 0.0).root_a3()) {
                            throw Error(ErrorCode::invalid_regime, "1 + 4 a3^2 < 0");
                        }
                        const auto res = hulthen::energy_root_solve(sys, n, l, bound_state_window(sys));
                        for (const EnergyLevel& lv : res.levels) {
                            if (out.count(lv.branch) && !out[lv.branch].energy) {
                                out[lv.branch] = {lv.value, "ok"};
                            }
                        }
                        break;
                    }
                    case SolveMethod::oracle: {
                        const OracleScan& scan = scans[static_cast<std::size_t>(l)];
                        if (scan.error) {
                            throw *scan.error;
                        }
                        if (const auto E = oracle_energy(scan, n)) {
                            const Branch b = *E >= midpoint_for(sys, n, l) ? Branch::upper : Branch::lower;
                            if (out.count(b)) {
                                out[b] = {*E, "ok"};
                            }
                        }
                        break;
                    }
                }
            } catch (const Error& e) {
                for (auto& [b, o] : out) {
                    o = {std::nullopt, token(e)};
                }
            }
            for (Branch b : branches) {
                const Outcome& o = out[b];
                Cell energy = o.energy ? Cell{*o.energy / unit} : Cell{};
                t.rows.push_back({std::int64_t{n}, std::int64_t{l}, branch_name(b), method_name,
                                  energy, o.status});
            }
        }
    }
    return t;
}

Table run_wavefunction(const RunConfig& cfg)
{
    Table t;
    t.columns = {"r", "z", "phi", "phi_normalized"};
    const PhysicalSystem& sys = cfg.system;
    std::vector<double> energies;
    try {
        if (cfg.method == SolveMethod::closed_form) {
            const auto cf = hulthen::energy_closed_form(sys, cfg.n, cfg.l);
            for (const EnergyLevel& lv : {cf.upper, cf.lower}) {
                if (lv.status == LevelStatus::bound && wanted(cfg.branch, lv.branch)) {
                    energies.push_back(lv.value);
                }
            }
        } else {
            const auto res = hulthen::energy_root_solve(sys, cfg.n, cfg.l, bound_state_window(sys));
            for (const EnergyLevel& lv : res.levels) {
                if (wanted(cfg.branch, lv.branch)) {
                    energies.push_back(lv.value);
                }
            }
        }
    } catch (const Error& e) {
        t.notes.push_back("no energy for (n, l) = (" + std::to_string(cfg.n) + ", "
                          + std::to_string(cfg.l) + "): " + token(e));
        return t;
    }
    if (energies.empty()) {
        t.notes.push_back("no bound state for (n, l) = (" + std::to_string(cfg.n) + ", "
                          + std::to_string(cfg.l) + ")");
        return t;
    }

    const RadialGrid grid = cfg.radial_grid();
    for (double E : energies) {
        try {
            const auto wf = hulthen::wavefunction(sys, cfg.n, cfg.l, E, grid);
            for (std::size_t i = 0; i < wf.grid.size(); ++i) {
                t.rows.push_back({wf.grid[i], wf.z[i], wf.raw[i], wf.values[i]});
            }
            return t;
        } catch (const Error& e) {
            t.notes.push_back("wavefunction at E = " + std::to_string(E) + ": " + token(e));
        }
    }
    return t;
}

Table run_approx_error(const RunConfig& cfg)
{
    Table t;
    t.columns = {"beta", "E_approx", "E_exact", "abs_err", "rel_err"};
    const double unit = cfg.report_in_rest_units ? cfg.system.m0() : 1.0;
    const auto rows = oracle::approximation_error(cfg.system, cfg.n, cfg.l, cfg.betas);
    auto cell = [](double v, double scale) { return std::isfinite(v) ? Cell{v / scale} : Cell{}; };
    for (const auto& r : rows) {
        t.rows.push_back({r.beta, cell(r.E_approx, unit), cell(r.E_exact, unit), cell(r.abs_err, unit),
                          cell(r.rel_err, 1.0)});
        if (!r.matched) {
            t.notes.push_back("beta = " + std::to_string(r.beta) + " unmatched: " + r.status);
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// validate

struct Check {
    std::string name;
    double tolerance = 0.0;
    double measured = 0.0;
    bool any = false;
    bool failed = false;
    std::string detail;

    Check(std::string n, double tol) : name(std::move(n)), tolerance(tol) {}

    void record(double value, const std::string& where)
    {
        if (!any || value > measured) {
            measured = value;
            if (!failed) {
                detail = "worst at " + where;
            }
        }
        any = true;
        if (!(value < tolerance)) {
            fail("exceeds tolerance at " + where);
        }
    }

    void fail(const std::string& why)
    {
        if (!failed) {
            detail = why;
        }
        failed = true;
        any = true;
    }
};

std::string at(int n, int l)
{
    return "(n=" + std::to_string(n) + ", l=" + std::to_string(l) + ")";
}

double rel(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

Table run_validate(const RunConfig& cfg)
{
    const PhysicalSystem& sys = cfg.system;
    const EnergyWindow window = bound_state_window(sys);
    const RadialGrid grid = cfg.radial_grid();

    Check closed_root{"closed_vs_root", 1e-9};
    Check closed_oracle{"closed_vs_oracle", 1e-6};
    Check root_oracle{"root_vs_oracle", 1e-6};
    Check quantization{"quantization_residual", 1e-8};
    Check midpoint{"branch_midpoint", 1e-12};
    Check reduction{"constant_mass_reduction", 1e-12};
    Check wf_nodes{"wavefunction_nodes", 0.5};
    Check wf_norm{"wavefunction_norm", 1e-8};
    Check wf_residual{"wavefunction_residual", 1e-6};
    Check node_theorem{"oracle_node_theorem", 0.5};
    Check modes{"mode_agreement_l0", 1e-9};
    Check ground{"ground_state_inside_window", 0.5};

    std::vector<OracleScan> scans;
    for (int l = 0; l <= cfg.l_max; ++l) {
        scans.push_back(scan_oracle(sys, l, CentrifugalMode::approx, grid));
    }

    std::optional<double> lowest;
    for (int l = 0; l <= cfg.l_max; ++l) {
        const OracleScan& scan = scans[static_cast<std::size_t>(l)];
        const bool oracle_ok = !scan.error || scan.error->code() == ErrorCode::invalid_regime;
        if (!oracle_ok) {
            root_oracle.fail("oracle " + token(*scan.error) + " at l=" + std::to_string(l));
            closed_oracle.fail("oracle " + token(*scan.error) + " at l=" + std::to_string(l));
        }
        for (std::size_t k = 0; k < scan.states.size() && k <= 3; ++k) {
            node_theorem.record(std::abs(scan.states[k].node_count - static_cast<int>(k)),
                                "state " + std::to_string(k) + ", l=" + std::to_string(l));
        }

        for (int n = 0; n <= cfg.n_max; ++n) {
            const std::string where = at(n, l);
            std::vector<double> bound_cf;
            try {
                const auto cf = hulthen::energy_closed_form(sys, n, l);
                const double sum = cf.upper.value + cf.lower.value;
                const double denom = std::max({std::abs(cf.upper.value), std::abs(cf.lower.value),
                                               std::abs(2.0 * cf.midpoint)});
                midpoint.record(std::abs(sum - 2.0 * cf.midpoint) / denom, where);
                for (const EnergyLevel& lv : {cf.upper, cf.lower}) {
                    if (lv.status == LevelStatus::bound) {
                        bound_cf.push_back(lv.value);
                    }
                }
                if (sys.constant_mass() && l == 0) {
                    const auto s = hulthen::energy_constant_mass_s(sys, n);
                    reduction.record(std::max(rel(s.upper.value, cf.upper.value),
                                              rel(s.lower.value, cf.lower.value)),
                                     where);
                }
            } catch (const Error& e) {
                if (sys.constant_mass() && l == 0) {
                    try {
                        hulthen::energy_constant_mass_s(sys, n);
                        reduction.fail("closed form " + token(e) + " but s-wave limit solved at " + where);
                    } catch (const Error& e2) {
                        if (e2.code() != e.code()) {
                            reduction.fail("error mismatch at " + where);
                        }
                    }
                }
            }

            for (double E : bound_cf) {
                const auto c = hulthen::coefficients_at(sys, l, E);
                const auto problem = hulthen::build_nu_problem(c);
                const auto sol = nu::solve(problem, nu::BranchPolicy::admissible);
                const auto ev = nu::eigen_pair(sol.candidate, problem, n);
                quantization.record(std::abs(ev.lambda - ev.lambda_n) / std::max(1.0, std::abs(ev.lambda_n)),
                                    where);
            }

            std::vector<double> roots;
            try {
                for (const auto& lv : hulthen::energy_root_solve(sys, n, l, window).levels) {
                    roots.push_back(lv.value);
                }
            } catch (const Error& e) {
                closed_root.fail("root solve " + token(e) + " at " + where);
            }

            // Pairwise matching in both directions.
            auto match = [&](Check& check, const std::vector<double>& a, const std::vector<double>& b) {
                if (a.size() != b.size()) {
                    check.fail("state count differs at " + where);
                    return;
                }
                for (double x : a) {
                    double best = std::numeric_limits<double>::infinity();
                    for (double y : b) {
                        best = std::min(best, rel(x, y));
                    }
                    check.record(best, where);
                }
            };
            match(closed_root, bound_cf, roots);

            std::vector<double> shot;
            if (const auto E = oracle_energy(scan, n)) {
                shot.push_back(*E);
            }
            if (oracle_ok) {
                match(root_oracle, roots, shot);
                match(closed_oracle, bound_cf, shot);
            }

            for (double E : roots) {
                if (!lowest || E < *lowest) {
                    lowest = E;
                }
                try {
                    const auto wf = hulthen::wavefunction(sys, n, l, E, grid);
                    wf_nodes.record(std::abs(wf.node_count - n), where);
                    wf_norm.record(std::abs(wf.norm - 1.0), where);
                    double worst = 0.0;
                    constexpr int samples = 50;
                    for (int j = 0; j < samples; ++j) {
                        const double z = (j + 0.5) / samples;
                        const auto r = hulthen::chart_residual(wf.coefficients, wf.chart, z);
                        worst = std::max(worst, std::abs(r.residual) / r.scale);
                    }
                    wf_residual.record(worst, where);
                } catch (const Error& e) {
                    wf_norm.fail("wavefunction " + token(e) + " at " + where);
                }
            }
        }
    }

    if (lowest) {
        const bool inside = *lowest != 0.0 && std::abs(*lowest) < sys.asymptotic_mass();
        ground.record(inside ? 0.0 : 1.0, "lowest root");
    }

    if (cfg.l_max >= 0) {
        const OracleScan& approx = scans[0];
        const OracleScan exact = scan_oracle(sys, 0, CentrifugalMode::exact, grid);
        if (approx.error || exact.error) {
            const bool both_invalid = approx.error && exact.error
                                      && approx.error->code() == ErrorCode::invalid_regime
                                      && exact.error->code() == ErrorCode::invalid_regime;
            if (!both_invalid) {
                modes.fail("oracle error in one mode at l=0");
            }
        } else if (approx.states.size() != exact.states.size()) {
            modes.fail("state count differs between modes at l=0");
        } else {
            for (std::size_t k = 0; k < approx.states.size(); ++k) {
                modes.record(std::abs(approx.states[k].energy - exact.states[k].energy) / sys.m0(),
                             "state " + std::to_string(k));
            }
        }
    }

    Table t;
    t.columns = {"check", "measured", "tolerance", "result", "detail"};
    for (const Check* c : {&closed_root, &closed_oracle, &root_oracle, &quantization, &midpoint,
                           &reduction, &wf_nodes, &wf_norm, &wf_residual, &node_theorem, &modes,
                           &ground}) {
        const std::string result = c->failed ? "fail" : (c->any ? "pass" : "skip");
        t.rows.push_back({c->name, c->measured, c->tolerance, result, c->any ? c->detail : "nothing to compare"});
    }
    return t;
}

// ---------------------------------------------------------------------------
// serialization

std::string csv_field(const Cell& c)
{
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "";
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, double>) {
                return format_double(v);
            } else {
                if (v.find_first_of(",\"\n") == std::string::npos) {
                    return v;
                }
                std::string q = "\"";
                for (char ch : v) {
                    q += ch;
                    if (ch == '"') {
                        q += '"';
                    }
                }
                return q + "\"";
            }
        },
        c);
}

json json_value(const Cell& c)
{
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else {
                return v;
            }
        },
        c);
}

} // namespace

std::string_view to_string(Command c) noexcept
{
    switch (c) {
        case Command::spectrum: return "spectrum";
        case Command::wavefunction: return "wavefunction";
        case Command::validate: return "validate";
        case Command::approx_error: return "approx_error";
    }
    return "unknown";
}

RadialGrid RunConfig::radial_grid() const
{
    const RadialGrid d = RadialGrid::default_for(system);
    return RadialGrid(grid.r_min.value_or(d.r_min()), grid.r_max.value_or(d.r_max()),
                      grid.points.value_or(d.points()));
}

RunConfig parse_config(std::string_view source, const FlagMap& flags, Command command)
{
    json file = json::object();
    const bool blank = std::all_of(source.begin(), source.end(),
                                   [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; });
    if (!blank) {
        try {
            file = json::parse(source);
        } catch (const json::parse_error& e) {
            config_error(std::string("config is not valid JSON: ") + e.what());
        }
        if (!file.is_object()) {
            config_error("config must be a JSON object");
        }
        for (const auto& [key, value] : file.items()) {
            if (!known_keys().count(key)) {
                config_error("unknown config key '" + key + "'");
            }
        }
    }
    for (const auto& [key, value] : flags) {
        if (!known_keys().count(key)) {
            config_error("unknown flag '" + key + "'");
        }
    }

    const Settings s(file, flags);
    auto required = [&](const char* key) {
        const auto v = s.number(key);
        if (!v) {
            config_error(std::string("missing required key ") + key);
        }
        return *v;
    };
    const double V0 = required("V0");
    const double beta = required("beta");
    const double m0 = required("m0");
    const double m1 = s.number("m1").value_or(0.0);
    const double hbar_c = s.number("hbar_c").value_or(1.0);
    if (!(m0 > m1)) {
        config_error("m0 > m1 is required (got m0 = " + format_double(m0) + ", m1 = "
                     + format_double(m1) + ")");
    }

    RunConfig cfg([&] {
        try {
            return PhysicalSystem(V0, beta, m0, m1, hbar_c);
        } catch (const Error& e) {
            config_error(e.what());
        }
    }());
    cfg.command = command;
    if (const auto v = s.integer("n_max")) {
        cfg.n_max = non_negative(*v, "n_max");
    }
    if (const auto v = s.integer("l_max")) {
        cfg.l_max = non_negative(*v, "l_max");
    }
    if (const auto v = s.integer("n")) {
        cfg.n = non_negative(*v, "n");
    }
    if (const auto v = s.integer("l")) {
        cfg.l = non_negative(*v, "l");
    } else if (command == Command::wavefunction) {
        cfg.l = 0;
    }
    if (const auto v = s.text("branch")) {
        static const std::pair<const char*, BranchSelection> names[] = {
            {"upper", BranchSelection::upper}, {"lower", BranchSelection::lower}, {"both", BranchSelection::both}};
        cfg.branch = parse_enum(*v, s.find("branch").where, names);
    }
    if (const auto v = s.text("method")) {
        static const std::pair<const char*, SolveMethod> names[] = {
            {"closed_form", SolveMethod::closed_form},
            {"quantization_root", SolveMethod::quantization_root},
            {"oracle", SolveMethod::oracle}};
        cfg.method = parse_enum(*v, s.find("method").where, names);
        if (command == Command::wavefunction && cfg.method == SolveMethod::oracle) {
            config_error("wavefunction needs an analytic method (closed_form or quantization_root)");
        }
        if (command == Command::approx_error && cfg.method != SolveMethod::oracle) {
            config_error("approx-error always uses the oracle; --method must be oracle if given");
        }
    } else if (command == Command::approx_error) {
        cfg.method = SolveMethod::oracle;
    }
    if (const auto v = s.text("format")) {
        static const std::pair<const char*, OutputFormat> names[] = {{"csv", OutputFormat::csv},
                                                                     {"json", OutputFormat::json}};
        cfg.format = parse_enum(*v, s.find("format").where, names);
    }
    if (const auto v = s.text("output")) {
        cfg.output_path = *v;
    }
    if (const auto v = s.boolean("report_in_rest_units")) {
        cfg.report_in_rest_units = *v;
    }
    cfg.grid.r_min = s.number("r_min");
    cfg.grid.r_max = s.number("r_max");
    if (const auto v = s.integer("points")) {
        if (*v < 100) {
            config_error("points must be >= 100");
        }
        cfg.grid.points = static_cast<std::size_t>(*v);
    }
    try {
        (void)cfg.radial_grid();
    } catch (const Error& e) {
        config_error(std::string("grid: ") + e.what());
    }
    if (const auto v = s.numbers("betas")) {
        if (v->empty() || std::any_of(v->begin(), v->end(), [](double b) { return !(b > 0.0); })) {
            config_error("betas must be a non-empty list of positive numbers");
        }
        cfg.betas = *v;
    }
    return cfg;
}

Table execute(const RunConfig& config)
{
    switch (config.command) {
        case Command::spectrum: return run_spectrum(config);
        case Command::wavefunction: return run_wavefunction(config);
        case Command::validate: return run_validate(config);
        case Command::approx_error: return run_approx_error(config);
    }
    throw std::logic_error("unhandled command");
}

std::string serialize(const Table& table, OutputFormat format)
{
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw std::logic_error("record does not match the table schema");
        }
    }
    if (format == OutputFormat::json) {
        json arr = json::array();
        for (const auto& row : table.rows) {
            json obj = json::object();
            for (std::size_t i = 0; i < row.size(); ++i) {
                obj[table.columns[i]] = json_value(row[i]);
            }
            arr.push_back(std::move(obj));
        }
        return arr.dump(2) + "\n";
    }
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        out += (i ? "," : "") + table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) {
                out += ',';
            }
            out += csv_field(row[i]);
        }
        out += '\n';
    }
    return out;
}

Table parse_json_table(std::string_view text)
{
    const json arr = json::parse(text);
    if (!arr.is_array()) {
        throw Error(ErrorCode::config, "expected a JSON array of records");
    }
    Table t;
    for (const json& obj : arr) {
        if (!obj.is_object()) {
            throw Error(ErrorCode::config, "expected a JSON object per record");
        }
        if (t.columns.empty()) {
            for (const auto& [key, value] : obj.items()) {
                t.columns.push_back(key);
            }
        }
        if (obj.size() != t.columns.size()) {
            throw Error(ErrorCode::config, "records do not share one schema");
        }
        std::vector<Cell> row;
        for (const std::string& key : t.columns) {
            if (!obj.contains(key)) {
                throw Error(ErrorCode::config, "record lacks column '" + key + "'");
            }
            const json& v = obj.at(key);
            if (v.is_null()) {
                row.emplace_back();
            } else if (v.is_number_integer()) {
                row.emplace_back(v.get<std::int64_t>());
            } else if (v.is_number_float()) {
                row.emplace_back(v.get<double>());
            } else if (v.is_string()) {
                row.emplace_back(v.get<std::string>());
            } else {
                throw Error(ErrorCode::config, "unsupported value for column '" + key + "'");
            }
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

bool has_failures(const Table& validate_report)
{
    const auto col = std::find(validate_report.columns.begin(), validate_report.columns.end(), "result");
    if (col == validate_report.columns.end()) {
        return false;
    }
    const auto idx = static_cast<std::size_t>(col - validate_report.columns.begin());
    return std::any_of(validate_report.rows.begin(), validate_report.rows.end(), [&](const auto& row) {
        const auto* s = std::get_if<std::string>(&row[idx]);
        return s != nullptr && *s == "fail";
    });
}

} // namespace kgh::cli
