#include "dirac_pauli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "dirac_pauli/ode_oracle.hpp"

namespace dirac_pauli::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr int max_quantum_number = 64;

// Hard thresholds of the verification report.
constexpr double canonical_threshold = 1e-9;
constexpr double defining_threshold = 1e-12;
constexpr double complementary_threshold = 1e-9;
constexpr double shooting_threshold = 1e-6;
constexpr double normalization_threshold = 1e-10;
constexpr double closed_form_threshold = 1e-10;

class ManifestError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Tables

using Cell = std::variant<std::string, double, int>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string format_real(double x) { return fmt::format("{:.17g}", x); }

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos)
        return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"')
            quoted += '"';
        quoted += c;
    }
    return quoted + '"';
}

void write_csv(const Table& table, std::ostream& out) {
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out << (i ? "," : "") << csv_escape(table.columns[i]);
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "");
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, std::string>)
                        out << csv_escape(v);
                    else if constexpr (std::is_same_v<T, double>)
                        out << format_real(v);
                    else
                        out << v;
                },
                row[i]);
        }
        out << '\n';
    }
}

void write_json(const std::string& command, const Table& table, std::ostream& out) {
    Json doc;
    doc["command"] = command;
    Json rows = Json::array();
    for (const auto& row : table.rows) {
        Json obj;
        for (std::size_t i = 0; i < row.size(); ++i)
            std::visit([&](const auto& v) { obj[table.columns[i]] = v; }, row[i]);
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << '\n';
}

void emit(const RunManifest& m, const std::string& command, const Table& table, std::ostream& out) {
    if (m.format == Format::Csv)
        write_csv(table, out);
    else
        write_json(command, table, out);
}

// ---------------------------------------------------------------------------
// Commands

Convention resolve_convention(const RunManifest& m) {
    return m.convention.value_or(default_convention(m.branch));
}

std::vector<double> linear_points(double lo, double hi, int steps) {
    std::vector<double> pts(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i)
        pts[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
    return pts;
}

std::vector<Cell> spectrum_row(const FieldConfig& cfg, Branch branch, Convention conv, int n, int ell) {
    const QuantumNumbers qn(n, ell);
    const double L = angular_exponent(cfg, ell, branch, conv);
    const double energy = energy_level(cfg, qn, branch, conv);
    return {std::string(to_string(branch)), n, ell, cfg.a, cfg.b, cfg.mu,
            std::string(to_string(conv)), L, energy, std::string(to_string(classify_state(energy)))};
}

const std::vector<std::string> spectrum_columns = {"branch", "n",   "ell",    "a",     "b",
                                                   "mu",     "convention", "L", "energy", "classification"};

int run_spectrum(const RunManifest& m, std::ostream& out) {
    const Convention conv = resolve_convention(m);
    Table table{spectrum_columns, {}};
    for (int n = m.n; n <= m.n_max.value_or(m.n); ++n)
        for (int ell = m.ell; ell <= m.ell_max.value_or(m.ell); ++ell)
            table.rows.push_back(spectrum_row(m.cfg, m.branch, conv, n, ell));
    emit(m, "spectrum", table, out);
    return exit_code::success;
}

int run_wavefunction(const RunManifest& m, std::ostream& out) {
    const BoundState state = make_bound_state(m.cfg, QuantumNumbers(m.n, m.ell), m.branch, resolve_convention(m));
    const auto grid = log_grid(m.min.value_or(0.05), m.max.value_or(40.0 / state.ode.c2), m.steps.value_or(200));
    Table table{{"r", "upper", "partner", "density"}, {}};
    for (double r : grid) {
        const double upper = wavefunction_upper(state, r);
        const double partner = wavefunction_partner(state, r, m.partner);
        table.rows.push_back({r, upper, partner, (upper * upper + partner * partner) * r * r});
    }
    emit(m, "wavefunction", table, out);
    return exit_code::success;
}

FieldConfig with_parameter(FieldConfig cfg, SweepParameter p, double value) {
    switch (p) {
        case SweepParameter::A: cfg.a = value; break;
        case SweepParameter::B: cfg.b = value; break;
        case SweepParameter::Mu: cfg.mu = value; break;
    }
    return cfg;
}

std::string_view to_string(SweepParameter p) {
    switch (p) {
        case SweepParameter::A: return "a";
        case SweepParameter::B: return "b";
        case SweepParameter::Mu: return "mu";
    }
    return "a";
}

int run_figures(const RunManifest& m, std::ostream& out) {
    // Figure 1: energy against a at b = 1; figure 2: energy against b at a = 1.
    // Both at mu = -0.001 and with the literal level formulas.
    FieldConfig base = m.cfg;
    if (!m.mu_given)
        base.mu = -0.001;
    if (m.which == 1 && !m.b_given)
        base.b = 1.0;
    if (m.which == 2)
        base.a = m.a_given ? m.cfg.a : 1.0;
    const SweepParameter param = m.which == 1 ? SweepParameter::A : SweepParameter::B;
    const Convention conv = m.convention.value_or(Convention::PaperLiteral);
    const auto points = linear_points(m.min.value_or(0.0), m.max.value_or(10.0), m.steps.value_or(201));

    static constexpr std::array<std::array<int, 2>, 3> series = {{{0, 0}, {1, 0}, {1, 1}}};
    Table table{{"figure", "series", "n", "ell", "a", "b", "mu", "energy"}, {}};
    for (const auto& [n, ell] : series) {
        const std::string label = fmt::format("n{}_l{}", n, ell);
        for (double x : points) {
            const FieldConfig cfg = with_parameter(base, param, x);
            const double energy = energy_level(cfg, QuantumNumbers(n, ell), m.branch, conv);
            table.rows.push_back({m.which, label, n, ell, cfg.a, cfg.b, cfg.mu, energy});
        }
    }
    emit(m, "figures", table, out);
    return exit_code::success;
}

int run_sweep(const RunManifest& m, std::ostream& out) {
    const Convention conv = resolve_convention(m);
    const auto points = linear_points(m.min.value_or(0.0), m.max.value_or(10.0), m.steps.value_or(201));
    std::vector<std::string> columns = {"parameter", "value"};
    columns.insert(columns.end(), spectrum_columns.begin(), spectrum_columns.end());
    Table table{columns, {}};
    for (int n = m.n; n <= m.n_max.value_or(m.n); ++n) {
        for (int ell = m.ell; ell <= m.ell_max.value_or(m.ell); ++ell) {
            for (double x : points) {
                std::vector<Cell> row{std::string(to_string(m.sweep_parameter)), x};
                auto rest = spectrum_row(with_parameter(m.cfg, m.sweep_parameter, x), m.branch, conv, n, ell);
                row.insert(row.end(), rest.begin(), rest.end());
                table.rows.push_back(std::move(row));
            }
        }
    }
    emit(m, "sweep", table, out);
    return exit_code::success;
}

Json residual_json(const ResidualReport& report) {
    Json j;
    j["points"] = report.grid.size();
    j["max_rel"] = report.max_rel;
    j["rms_rel"] = report.rms_rel;
    return j;
}

struct CheckList {
    Json items = Json::array();
    bool all_passed = true;

    void add(const std::string& name, double value, double threshold) {
        const bool ok = std::isfinite(value) && value <= threshold;
        all_passed = all_passed && ok;
        Json j;
        j["name"] = name;
        j["value"] = value;
        j["threshold"] = threshold;
        j["passed"] = ok;
        items.push_back(std::move(j));
    }
};

int run_verify(const RunManifest& m, std::ostream& out) {
    const Convention conv = resolve_convention(m);
    const int n_max = m.n_max.value_or(2);
    const int ell_max = m.ell_max.value_or(2);
    const bool plus = m.branch == Branch::Plus;

    Json doc;
    doc["command"] = "verify";
    doc["branch"] = to_string(m.branch);
    doc["convention"] = to_string(conv);
    doc["a"] = m.cfg.a;
    doc["b"] = m.cfg.b;
    doc["mu"] = m.cfg.mu;
    doc["n_max"] = n_max;
    doc["ell_max"] = ell_max;
    doc["partner_mode"] = to_string(m.partner);

    CheckList checks;
    Json states = Json::array();
    for (int n = 0; n <= n_max; ++n) {
        for (int ell = 0; ell <= ell_max; ++ell) {
            BoundState state = make_bound_state(m.cfg, QuantumNumbers(n, ell), m.branch, conv);
            if (m.partner != PartnerMode::RelationDerived)
                state.amplitude = normalization_numeric(state, m.partner);
            const auto grid = standard_grid(state.ode);
            const auto canonical = canonical_residual(state.ode, state, grid);
            const auto first_order = first_order_residual(state, m.partner, grid);
            const double integral = normalization_integral(state, m.partner);
            const double closed_vs_numeric = std::abs(state.norm.N / state.amplitude - 1.0);
            const std::string tag = fmt::format("n={} ell={}", n, ell);

            Json s;
            s["n"] = n;
            s["ell"] = ell;
            s["energy"] = state.energy;
            s["L"] = state.ode.L;
            s["quantization_residual"] = quantization_residual(state);
            s["canonical_residual"] = residual_json(canonical);
            Json fo;
            fo["defining"] = residual_json(first_order.defining);
            fo["complementary"] = residual_json(first_order.complementary);
            fo["complementary_asserted"] = plus;
            s["first_order_residual"] = std::move(fo);
            Json norm;
            norm["closed_N"] = state.norm.N;
            norm["numeric_N"] = state.amplitude;
            norm["closed_vs_numeric_rel"] = closed_vs_numeric;
            norm["closed_vs_numeric_asserted"] = plus;
            norm["integral_minus_one"] = integral - 1.0;
            s["normalization"] = std::move(norm);
            states.push_back(std::move(s));

            checks.add("canonical_residual " + tag, canonical.max_rel, canonical_threshold);
            checks.add("defining_relation " + tag, first_order.defining.max_rel, defining_threshold);
            if (plus) {
                checks.add("complementary_relation " + tag, first_order.complementary.max_rel,
                           complementary_threshold);
                checks.add("closed_vs_numeric_N " + tag, closed_vs_numeric, closed_form_threshold);
            }
            checks.add("normalization_integral " + tag, std::abs(integral - 1.0), normalization_threshold);
        }
    }
    doc["states"] = std::move(states);

    Json table = Json::array();
    for (const auto& row : compare_spectrum(m.cfg, m.branch, conv, n_max, ell_max)) {
        Json j;
        j["n"] = row.qn.n();
        j["ell"] = row.qn.ell();
        j["closed"] = row.closed;
        j["shot"] = row.shot;
        j["rel_diff"] = row.rel_diff;
        j["node_count"] = row.node_count;
        j["error"] = row.error ? Json(*row.error) : Json(nullptr);
        j["passed"] = row.passed(shooting_threshold);
        table.push_back(std::move(j));
        const std::string tag = fmt::format("n={} ell={}", row.qn.n(), row.qn.ell());
        checks.add("shooting_rel_diff " + tag,
                   row.passed(shooting_threshold) ? row.rel_diff : std::numeric_limits<double>::infinity(),
                   shooting_threshold);
    }
    doc["spectrum_comparison"] = std::move(table);
    doc["checks"] = std::move(checks.items);
    doc["passed"] = checks.all_passed;
    out << doc.dump(2) << '\n';
    return checks.all_passed ? exit_code::success : exit_code::verification_failure;
}

// ---------------------------------------------------------------------------
// Errors

Json error_json(const std::exception& e) {
    Json j;
    if (const auto* c = dynamic_cast<const ComplexExponentError*>(&e)) {
        j["error"] = "ComplexExponentError";
        j["message"] = c->what();
        j["value"] = c->value();
    } else if (const auto* nn = dynamic_cast<const NonNormalizableError*>(&e)) {
        j["error"] = "NonNormalizableError";
        j["message"] = nn->what();
        j["decay_rate"] = nn->decay_rate();
    } else if (dynamic_cast<const DomainError*>(&e)) {
        j["error"] = "DomainError";
        j["message"] = e.what();
    } else {
        j["error"] = "ConstructionError";
        j["message"] = e.what();
    }
    return j;
}

// ---------------------------------------------------------------------------
// Parsing

template <typename T>
T parse_enum(const std::map<std::string, T>& table, const std::string& value, const std::string& flag) {
    const auto it = table.find(value);
    if (it == table.end())
        throw ManifestError("invalid value '" + value + "' for --" + flag);
    return it->second;
}

void apply_config(CLI::App& app, const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ManifestError("cannot read config file '" + path + "'");
    Json cfg;
    try {
        cfg = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ManifestError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!cfg.is_object())
        throw ManifestError("config file must hold a flat JSON object");
    for (const auto& [key, value] : cfg.items()) {
        if (key == "config")
            throw ManifestError("config file may not name another config file");
        CLI::Option* opt = app.get_option_no_throw("--" + key);
        if (opt == nullptr)
            throw ManifestError("unknown config key '" + key + "'");
        if (opt->count() > 0)
            continue;  // flags override the file
        std::string text;
        if (value.is_string())
            text = value.get<std::string>();
        else if (value.is_number() || value.is_boolean())
            text = value.dump();
        else
            throw ManifestError("config key '" + key + "' must be a string or number");
        opt->add_result(text);
        opt->run_callback();
    }
}

void validate(const RunManifest& m) {
    const auto in_range = [](int v) { return v >= 0 && v <= max_quantum_number; };
    if (!in_range(m.n) || !in_range(m.ell))
        throw ManifestError("--n and --ell must lie in [0, 64]");
    if (m.n_max && (!in_range(*m.n_max) || (m.command != Command::Verify && *m.n_max < m.n)))
        throw ManifestError("--n-max must lie in [n, 64]");
    if (m.ell_max && (!in_range(*m.ell_max) || (m.command != Command::Verify && *m.ell_max < m.ell)))
        throw ManifestError("--ell-max must lie in [ell, 64]");
    if (m.which != 1 && m.which != 2)
        throw ManifestError("--which must be 1 or 2");
    if (m.steps && *m.steps < 2)
        throw ManifestError("--steps must be at least 2");
    if (m.min && m.max && !(*m.max > *m.min))
        throw ManifestError("--max must exceed --min");
    if (m.command == Command::Wavefunction && m.min && !(*m.min > 0.0))
        throw ManifestError("--min must be positive for wavefunction grids");
}

}  // namespace

int execute(const RunManifest& manifest, std::ostream& out, std::ostream& err) {
    std::ofstream file;
    std::ostream* sink = &out;
    if (manifest.out) {
        file.open(*manifest.out, std::ios::binary);
        if (!file) {
            err << "cannot open output file '" << *manifest.out << "'\n";
            return exit_code::invalid_manifest;
        }
        sink = &file;
    }
    // Buffer so that a failing run leaves no partial table behind.
    std::ostringstream buffer;
    int code = exit_code::success;
    try {
        switch (manifest.command) {
            case Command::Spectrum: code = run_spectrum(manifest, buffer); break;
            case Command::Wavefunction: code = run_wavefunction(manifest, buffer); break;
            case Command::Verify: code = run_verify(manifest, buffer); break;
            case Command::Figures: code = run_figures(manifest, buffer); break;
            case Command::Sweep: code = run_sweep(manifest, buffer); break;
        }
    } catch (const std::exception& e) {
        err << error_json(e).dump() << '\n';
        return exit_code::construction_error;
    }
    *sink << buffer.str();
    return code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Closed-form bound states of the effective-mass Dirac-Pauli equation in E(r) = a + b/r"};
    app.fallthrough();
    app.require_subcommand(1);

    std::string branch = "plus", convention, format = "csv", partner = "relation-derived", param = "a";
    std::string out_path, config_path;
    double a = 1.0, b = 1.0, mu = 0.001, min = 0.0, max = 0.0;
    int n = 0, ell = 0, n_max = 0, ell_max = 0, which = 1, steps = 0;

    app.add_option("--branch", branch, "plus | minus");
    app.add_option("--convention", convention, "paper-literal | sign-aware | corrected-minus");
    app.add_option("--a", a, "linear field strength");
    app.add_option("--b", b, "inverse-linear field strength");
    app.add_option("--mu", mu, "anomalous magnetic moment");
    app.add_option("--n", n, "radial quantum number (range start)");
    app.add_option("--ell", ell, "orbital quantum number (range start)");
    app.add_option("--n-max", n_max, "last radial quantum number");
    app.add_option("--ell-max", ell_max, "last orbital quantum number");
    app.add_option("--which", which, "figure number (1: vary a, 2: vary b)");
    app.add_option("--param", param, "swept parameter: a | b | mu");
    app.add_option("--min", min, "range start");
    app.add_option("--max", max, "range end");
    app.add_option("--steps", steps, "number of points");
    app.add_option("--format", format, "csv | json");
    app.add_option("--partner", partner, "relation-derived | paper-literal");
    app.add_option("--out", out_path, "output file (default: standard output)");
    app.add_option("--config", config_path, "flat JSON object of flag values");

    const std::map<std::string, Command> commands = {{"spectrum", Command::Spectrum},
                                                     {"wavefunction", Command::Wavefunction},
                                                     {"verify", Command::Verify},
                                                     {"figures", Command::Figures},
                                                     {"sweep", Command::Sweep}};
    app.add_subcommand("spectrum", "energy levels over an (n, ell) range");
    app.add_subcommand("wavefunction", "radial components on a log grid");
    app.add_subcommand("verify", "closed forms against numerical oracles (JSON report)");
    app.add_subcommand("figures", "energy sweeps in a (--which 1) or b (--which 2)");
    app.add_subcommand("sweep", "energy sweep over one parameter");

    RunManifest m;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        if (app.count("--config") > 0)
            apply_config(app, config_path);

        m.command = commands.at(app.get_subcommands().front()->get_name());
        m.cfg = FieldConfig(a, b, mu);
        m.a_given = app.count("--a") > 0;
        m.b_given = app.count("--b") > 0;
        m.mu_given = app.count("--mu") > 0;
        m.branch = parse_enum<Branch>({{"plus", Branch::Plus}, {"minus", Branch::Minus}}, branch, "branch");
        if (app.count("--convention") > 0)
            m.convention = parse_enum<Convention>({{"paper-literal", Convention::PaperLiteral},
                                                   {"sign-aware", Convention::SignAware},
                                                   {"corrected-minus", Convention::CorrectedMinus}},
                                                  convention, "convention");
        m.n = n;
        m.ell = ell;
        if (app.count("--n-max") > 0)
            m.n_max = n_max;
        if (app.count("--ell-max") > 0)
            m.ell_max = ell_max;
        m.which = which;
        m.sweep_parameter = parse_enum<SweepParameter>(
            {{"a", SweepParameter::A}, {"b", SweepParameter::B}, {"mu", SweepParameter::Mu}}, param, "param");
        if (app.count("--min") > 0)
            m.min = min;
        if (app.count("--max") > 0)
            m.max = max;
        if (app.count("--steps") > 0)
            m.steps = steps;
        m.format = parse_enum<Format>({{"csv", Format::Csv}, {"json", Format::Json}}, format, "format");
        m.partner = parse_enum<PartnerMode>(
            {{"relation-derived", PartnerMode::RelationDerived}, {"paper-literal", PartnerMode::PaperLiteral}},
            partner, "partner");
        if (app.count("--out") > 0)
            m.out = out_path;
        validate(m);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::success;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return exit_code::invalid_manifest;
    } catch (const ManifestError& e) {
        err << e.what() << '\n';
        return exit_code::invalid_manifest;
    } catch (const DomainError& e) {
        err << e.what() << '\n';
        return exit_code::invalid_manifest;
    }
    return execute(m, out, err);
}

}  // namespace dirac_pauli::cli
