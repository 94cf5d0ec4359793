#include "rieszwell/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "rieszwell/errors.hpp"
#include "rieszwell/riesz.hpp"

namespace rieszwell::cli {
namespace {

// Raised by a command whose requested check failed; carries the report already printed.
struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::map<std::string, Command>& command_names() {
    static const std::map<std::string, Command> names = {
        {"riesz-apply", Command::RieszApply},   {"well-check", Command::WellCheck},
        {"pv-eval", Command::PvEval},           {"controversy", Command::Controversy},
        {"multiplier-check", Command::MultiplierCheck}};
    return names;
}

std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    while (!s.empty() && s.back() == ' ') {
        s.pop_back();
    }
    return s;
}

std::string json_array(const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? ", " : "") + format_number(v[i]);
    }
    return s + "]";
}

std::string json_array(const std::vector<int>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? ", " : "") + std::to_string(v[i]);
    }
    return s + "]";
}

int single_n(const RunConfig& c) {
    if (c.n.size() != 1) {
        throw DomainError(to_string(c.command) + " takes exactly one --n");
    }
    return c.n.front();
}

double single_alpha(const RunConfig& c) {
    if (c.alpha.size() != 1) {
        throw DomainError(to_string(c.command) + " takes exactly one --alpha");
    }
    return c.alpha.front();
}

// Files are written only after every computation has succeeded.
void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << content) || !(f.flush())) {
        throw DomainError("cannot write '" + path + "'");
    }
}

std::string csv_text(const GridFunction& f) {
    std::ostringstream s;
    write_csv(f, s);
    return s.str();
}

void riesz_apply(const RunConfig& c, std::ostream& out) {
    const double alpha = single_alpha(c);
    const RieszRepresentation rep = parse_representation(c.rep);
    if (c.input.empty() || c.output.empty()) {
        throw DomainError("riesz-apply needs --input and --output");
    }
    std::ifstream in(c.input);
    if (!in) {
        throw DomainError("cannot read '" + c.input + "'");
    }
    const GridFunction f = read_csv(in);
    RieszOptions opt;
    if (c.pad) {
        opt.transform.pad = *c.pad;
    }
    const GridFunction d = riesz_derivative(f, alpha, rep, opt);
    write_file(c.output, csv_text(d));
    out << JsonObject()
               .add("command", "riesz-apply")
               .add("alpha", alpha)
               .add("rep", to_string(rep))
               .add("input_points", f.size())
               .add("output_points", d.size())
               .add("output", c.output)
               .str();
}

void well_check(const RunConfig& c, std::ostream& out) {
    const ReconstructMethod method = parse_method(c.method);
    if (c.points < 1) {
        throw DomainError("--points must be >= 1");
    }
    if (method == ReconstructMethod::NumericPV && c.span > 0.95) {
        throw DomainError("numeric-pv sweeps need --span <= 0.95");
    }
    const double A = c.units.amplitude;
    const double tolerance = c.tolerance.value_or(method == ReconstructMethod::AnalyticPV ? 1e-12 * A : 5e-3 * A);
    const auto rows = consistency_sweep(c.units, c.n, c.alpha, c.points, c.span, method, c.pv_tolerance);
    double worst = 0.0;
    for (const auto& r : rows) {
        worst = std::max(worst, r.abs_error);
    }
    const bool pass = worst <= tolerance;
    const std::string summary = JsonObject()
                                    .add("command", "well-check")
                                    .add("method", to_string(method))
                                    .add_raw("n", json_array(c.n))
                                    .add_raw("alpha", json_array(c.alpha))
                                    .add("points", c.points)
                                    .add("span", c.span)
                                    .add("rows", rows.size())
                                    .add("max_abs_error", worst)
                                    .add("tolerance", tolerance)
                                    .add("pass", pass)
                                    .str();
    if (!c.output.empty()) {
        std::ostringstream csv;
        write_sweep_csv(csv, rows);
        write_file(c.output, csv.str());
    }
    if (!c.summary.empty()) {
        write_file(c.summary, summary);
    }
    out << summary;
    if (!pass) {
        throw CheckFailure("well-check: max_abs_error " + format_number(worst) + " exceeds tolerance " +
                           format_number(tolerance));
    }
}

void pv_eval(const RunConfig& c, std::ostream& out) {
    const int n = single_n(c);
    const double alpha = single_alpha(c);
    const double a = c.units.a;
    if (std::abs(c.x) > 0.95 * a) {
        throw DomainError("pv-eval: the engine covers |x| <= 0.95a; use the closed form at the walls");
    }
    const double tol = c.tolerance.value_or(1e-6);
    if (c.max_levels < 2 || c.max_levels > 30) {
        throw DomainError("pv-eval: --max-levels must lie in [2, 30]");
    }
    PVOptions opt;
    opt.max_levels = c.max_levels;
    opt.min_levels = std::min(opt.min_levels, c.max_levels);
    const PVResult r = pv_oscillatory(PoleIntegrand::for_well(n, c.x, a, alpha), tol, opt);
    const double closed = pv_closed_form(n, c.x, a, n % 2 == 1 ? Parity::Odd : Parity::Even);
    std::string levels = "[";
    for (std::size_t i = 0; i < r.regulator_values.size(); ++i) {
        const auto& [eta, v] = r.regulator_values[i];
        levels += (i ? ", [" : "[") + format_number(eta) + ", " + format_number(v.real()) + ", " +
                  format_number(v.imag()) + "]";
    }
    levels += "]";
    const double deviation = std::abs(r.value.real() - closed);
    const bool agrees = deviation <= 5e-3 * (1.0 + std::abs(closed));
    const std::string report = JsonObject()
                                   .add("command", "pv-eval")
                                   .add("n", n)
                                   .add("alpha", alpha)
                                   .add("x", c.x)
                                   .add("a", a)
                                   .add("value_re", r.value.real())
                                   .add("value_im", r.value.imag())
                                   .add("extrapolation_error", r.extrapolation_error)
                                   .add("pole_error", r.pole_error)
                                   .add("converged", r.converged)
                                   .add_raw("regulator_values", levels)
                                   .add("closed_form", closed)
                                   .add("closed_form_deviation", deviation)
                                   .add("closed_form_agrees", agrees)
                                   .str();
    if (!c.summary.empty()) {
        write_file(c.summary, report);
    }
    out << report;
    if (!r.converged) {
        throw ConvergenceError("pv-eval: extrapolation error " + format_number(r.extrapolation_error) +
                               " or pole error " + format_number(r.pole_error) + " above " + format_number(tol));
    }
    if (c.check && !agrees) {
        throw CheckFailure("pv-eval: |value - closed form| = " + format_number(deviation) + " exceeds 5e-3 (1 + |target|)");
    }
}

void controversy(const RunConfig& c, std::ostream& out) {
    const WellState state(single_n(c), c.units);
    const double alpha = single_alpha(c);
    const Region region = c.region.empty() ? region_of(c.x, c.units.a) : parse_region(c.region);
    const double value = controversy_derivative(state, alpha, c.x, region);
    JsonObject report;
    report.add("command", "controversy")
        .add("n", state.n)
        .add("alpha", alpha)
        .add("x", c.x)
        .add("region", to_string(region))
        .add("value", value);
    bool pass = true;
    std::string reason;
    if (region == Region::Interior) {
        // No target is asserted for the interior; the eigen-relation is reported for inspection.
        const double target = -std::pow(state.n * M_PI / (2.0 * c.units.a), alpha) * eigenfunction(state, c.x);
        report.add("eigen_relation_target", target).add("raw_difference", value - target);
    } else {
        const ResidualReport residual = schrodinger_residual(state, alpha);
        const double scaled = c.units.d_alpha * std::pow(c.units.hbar, alpha) * std::abs(value);
        const bool nonzero = std::abs(value) > 1e-6;
        const bool contrast = 100.0 * residual.interior_max <= scaled;
        report.add("scaled_value", scaled)
            .add("residual_interior_max", residual.interior_max)
            .add("residual_exterior_max", residual.exterior_max)
            .add("nonzero", nonzero)
            .add("contrast_pass", contrast);
        pass = nonzero && contrast;
        if (!pass) {
            reason = "controversy: nonzero=" + std::string(nonzero ? "true" : "false") +
                     " contrast_pass=" + (contrast ? "true" : "false") + " (residual interior max " +
                     format_number(residual.interior_max) + ", scaled value " + format_number(scaled) + ")";
        }
    }
    const std::string text = report.str();
    if (!c.summary.empty()) {
        write_file(c.summary, text);
    }
    out << text;
    if (c.check && !pass) {
        throw CheckFailure(reason);
    }
}

void multiplier_check(const RunConfig& c, std::ostream& out) {
    const double alpha = single_alpha(c);
    const RieszRepresentation rep = parse_representation(c.rep);
    if (!(c.dx > 0.0) || !(c.x_max > c.x_min)) {
        throw DomainError("multiplier-check: need --dx > 0 and --x-max > --x-min");
    }
    const auto grid = UniformGrid::with_spacing(c.x_min, c.x_max, c.dx);
    const auto f = GridFunction::sample_real(grid, [](double x) { return std::exp(-x * x); });
    RieszOptions opt;
    opt.transform.pad = c.pad.value_or(32);
    const GridFunction d = riesz_derivative(f, alpha, rep, opt);
    MultiplierCheckOptions mopt;
    mopt.tail_exponent = 1.0 + alpha;
    const auto dev = multiplier_deviation(
        f, d, [alpha](double w) { return complex(-std::pow(std::abs(w), alpha)); }, mopt);
    const double tolerance = c.tolerance.value_or(1e-3);
    const bool pass = dev.max_relative <= tolerance;
    const std::string report = JsonObject()
                                   .add("command", "multiplier-check")
                                   .add("alpha", alpha)
                                   .add("rep", to_string(rep))
                                   .add("max_relative", dev.max_relative)
                                   .add("worst_omega", dev.worst_omega)
                                   .add("band_limit", dev.band_limit)
                                   .add("samples", dev.samples)
                                   .add("tolerance", tolerance)
                                   .add("pass", pass)
                                   .str();
    if (!c.summary.empty()) {
        write_file(c.summary, report);
    }
    out << report;
    if (!pass) {
        throw CheckFailure("multiplier-check: max relative deviation " + format_number(dev.max_relative) +
                           " exceeds " + format_number(tolerance));
    }
}

// Turns a JSON config object into the equivalent argument list.
std::vector<std::string> expand_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw DomainError("cannot read config '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError("config '" + path + "' is not valid JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("command") || !j["command"].is_string()) {
        throw DomainError("config must be a JSON object with a string \"command\"");
    }
    std::vector<std::string> args = {j["command"].get<std::string>()};
    auto scalar = [&](const std::string& key, const nlohmann::json& v) -> std::string {
        if (v.is_string()) {
            return v.get<std::string>();
        }
        if (v.is_number()) {
            return v.dump();
        }
        throw DomainError("config key '" + key + "' must hold a number or string");
    };
    for (const auto& [key, value] : j.items()) {
        if (key == "command") {
            continue;
        }
        if (key == "config") {
            throw DomainError("config files cannot nest --config");
        }
        if (value.is_boolean()) {
            if (value.get<bool>()) {
                args.push_back("--" + key);
            }
        } else if (value.is_array()) {
            if (value.empty()) {
                throw DomainError("config key '" + key + "' holds an empty list");
            }
            args.push_back("--" + key);
            for (const auto& v : value) {
                args.push_back(scalar(key, v));
            }
        } else {
            args.push_back("--" + key);
            args.push_back(scalar(key, value));
        }
    }
    return args;
}

}  // namespace

std::string to_string(Command command) {
    for (const auto& [name, c] : command_names()) {
        if (c == command) {
            return name;
        }
    }
    return "unknown";
}

std::string json_quote(const std::string& s) {
    std::string q = "\"";
    for (char ch : s) {
        switch (ch) {
            case '"':
                q += "\\\"";
                break;
            case '\\':
                q += "\\\\";
                break;
            case '\n':
                q += "\\n";
                break;
            case '\t':
                q += "\\t";
                break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    q += buf;
                } else {
                    q += ch;
                }
        }
    }
    return q + "\"";
}

JsonObject& JsonObject::add(const std::string& key, double value) {
    if (!std::isfinite(value)) {
        return add_raw(key, "null");
    }
    return add_raw(key, format_number(value));
}
JsonObject& JsonObject::add(const std::string& key, int value) { return add_raw(key, std::to_string(value)); }
JsonObject& JsonObject::add(const std::string& key, std::size_t value) {
    return add_raw(key, std::to_string(value));
}
JsonObject& JsonObject::add(const std::string& key, bool value) { return add_raw(key, value ? "true" : "false"); }
JsonObject& JsonObject::add(const std::string& key, const std::string& value) {
    return add_raw(key, json_quote(value));
}
JsonObject& JsonObject::add_raw(const std::string& key, std::string json) {
    entries_.emplace_back(key, std::move(json));
    return *this;
}

std::string JsonObject::str() const {
    std::string s = "{\n";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        s += "  " + json_quote(entries_[i].first) + ": " + entries_[i].second;
        s += i + 1 < entries_.size() ? ",\n" : "\n";
    }
    return s + "}\n";
}

std::optional<RunConfig> parse(const std::vector<std::string>& args, std::ostream& out) {
    std::vector<std::string> effective = args;
    if (!args.empty() && args.front() == "--config") {
        if (args.size() != 2) {
            throw DomainError("--config must be the only argument: --config path.json");
        }
        effective = expand_config(args[1]);
    } else if (std::find(args.begin(), args.end(), "--config") != args.end()) {
        throw DomainError("--config must be the only argument: --config path.json");
    }

    RunConfig c;
    CLI::App app{"Riesz fractional operators and the fractional infinite square well", "rieszwell"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every command");

    auto add_units = [&c](CLI::App* sub) {
        sub->add_option("--hbar", c.units.hbar, "Reduced Planck constant")->capture_default_str();
        sub->add_option("--d-alpha", c.units.d_alpha, "Coefficient D_alpha")->capture_default_str();
        sub->add_option("--a", c.units.a, "Well half-width")->capture_default_str();
        sub->add_option("--amplitude", c.units.amplitude, "Eigenfunction amplitude A")->capture_default_str();
    };
    auto add_n = [&c](CLI::App* sub, bool many) {
        auto* o = sub->add_option("--n", c.n, many ? "Quantum numbers (comma separated)" : "Quantum number");
        o->capture_default_str();
        if (many) {
            o->delimiter(',');
        } else {
            o->expected(1);
        }
    };
    auto add_alpha = [&c](CLI::App* sub, bool many) {
        auto* o = sub->add_option("--alpha", c.alpha, many ? "Orders (comma separated)" : "Order alpha");
        o->capture_default_str();
        if (many) {
            o->delimiter(',');
        } else {
            o->expected(1);
        }
    };
    auto tolerance = [&c](CLI::App* sub, const char* what) {
        sub->add_option_function<double>("--tolerance", [&c](const double& v) { c.tolerance = v; }, what);
    };
    auto pad = [&c](CLI::App* sub) {
        sub->add_option_function<int>("--pad", [&c](const int& v) { c.pad = v; }, "Zero-padding factor of the FFT");
    };

    auto* apply = app.add_subcommand("riesz-apply", "Apply the Riesz derivative to a CSV function");
    add_alpha(apply, false);
    apply->add_option("--rep", c.rep, "spectral, caputo, rl or second-difference")->capture_default_str();
    apply->add_option("--input", c.input, "Input CSV (x,re,im)")->required();
    apply->add_option("--output", c.output, "Output CSV")->required();
    pad(apply);

    auto* well = app.add_subcommand("well-check", "Momentum-space reconstruction sweep of the well eigenfunctions");
    add_n(well, true);
    add_alpha(well, true);
    well->add_option("--method", c.method, "analytic-pv or numeric-pv")->capture_default_str();
    well->add_option("--points", c.points, "Points in [-span a, span a]")->capture_default_str();
    well->add_option("--span", c.span, "Sweep half-width in units of a")->capture_default_str();
    well->add_option("--output", c.output, "Sweep CSV");
    well->add_option("--summary", c.summary, "Summary JSON");
    tolerance(well, "Pass threshold on max_abs_error (default 1e-12 A analytic, 5e-3 A numeric)");
    well->add_option("--pv-tolerance", c.pv_tolerance, "Principal-value tolerance of the numeric path")
        ->capture_default_str();
    add_units(well);

    auto* pv = app.add_subcommand("pv-eval", "Principal value of the well's pole integral");
    add_n(pv, false);
    add_alpha(pv, false);
    pv->add_option("--x", c.x, "Position")->capture_default_str();
    pv->add_option("--summary", c.summary, "Report JSON");
    pv->add_flag("--check", c.check, "Fail unless the value matches the closed form within 5e-3 (1 + |target|)");
    tolerance(pv, "Extrapolation tolerance (default 1e-6)");
    pv->add_option("--max-levels", c.max_levels, "Regulator levels before giving up")->capture_default_str();
    add_units(pv);

    auto* contro = app.add_subcommand("controversy", "Segmented configuration-space values F1, F2, F3");
    add_n(contro, false);
    add_alpha(contro, false);
    contro->add_option("--x", c.x, "Position")->capture_default_str();
    contro->add_option("--region", c.region, "left-exterior, interior or right-exterior (default: from x)");
    contro->add_option("--summary", c.summary, "Report JSON");
    contro->add_flag("--check", c.check, "Fail unless the exterior value is nonzero and 100x above the residual");
    add_units(contro);

    auto* mult = app.add_subcommand("multiplier-check", "Fourier multiplier deviation on a Gaussian");
    add_alpha(mult, false);
    mult->add_option("--rep", c.rep, "spectral, caputo, rl or second-difference")->capture_default_str();
    mult->add_option("--x-min", c.x_min, "Grid start")->capture_default_str();
    mult->add_option("--x-max", c.x_max, "Grid end")->capture_default_str();
    mult->add_option("--dx", c.dx, "Grid spacing")->capture_default_str();
    mult->add_option("--summary", c.summary, "Report JSON");
    pad(mult);
    tolerance(mult, "Pass threshold on the relative deviation (default 1e-3)");

    std::vector<std::string> reversed(effective.rbegin(), effective.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return std::nullopt;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return std::nullopt;
    }
    for (const auto& [name, command] : command_names()) {
        if (app.got_subcommand(name)) {
            c.command = command;
        }
    }
    return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        config.units.validate();
        switch (config.command) {
            case Command::RieszApply:
                riesz_apply(config, out);
                break;
            case Command::WellCheck:
                well_check(config, out);
                break;
            case Command::PvEval:
                pv_eval(config, out);
                break;
            case Command::Controversy:
                controversy(config, out);
                break;
            case Command::MultiplierCheck:
                multiplier_check(config, out);
                break;
        }
        return Pass;
    } catch (const CheckFailure& e) {
        err << "rieszwell: check-failed: " << one_line(e.what()) << '\n';
        return CheckFailed;
    } catch (const ConvergenceError& e) {
        err << "rieszwell: non-convergence: " << one_line(e.what()) << '\n';
        return NonConvergence;
    } catch (const DomainError& e) {
        err << "rieszwell: invalid: " << one_line(e.what()) << '\n';
        return UsageError;
    } catch (const std::exception& e) {
        err << "rieszwell: invalid: " << one_line(e.what()) << '\n';
        return UsageError;
    }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::optional<RunConfig> config;
    try {
        config = parse(args, out);
    } catch (const CLI::ParseError& e) {
        err << "rieszwell: usage: " << one_line(e.what()) << '\n';
        return UsageError;
    } catch (const std::exception& e) {
        err << "rieszwell: usage: " << one_line(e.what()) << '\n';
        return UsageError;
    }
    return config ? run(*config, out, err) : Pass;
}

}  // namespace rieszwell::cli
