#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rieszwell/well.hpp"

namespace rieszwell::cli {

enum class Command { RieszApply, WellCheck, PvEval, Controversy, MultiplierCheck };

std::string to_string(Command command);

/// Exit statuses of run().
enum ExitCode : int { Pass = 0, CheckFailed = 1, UsageError = 2, NonConvergence = 3 };

/// Parsed parameters of one invocation. Fields unused by the command keep their defaults.
struct RunConfig {
    Command command = Command::PvEval;
    std::vector<int> n{1};
    std::vector<double> alpha{1.5};
    std::string rep = "spectral";
    std::string method = "analytic-pv";
    int points = 33;
    double span = 0.9;
    double x = 0.0;
    std::string region;  ///< empty: inferred from x
    std::string input;
    std::string output;
    std::string summary;
    std::optional<double> tolerance;
    double x_min = -50.0;
    double x_max = 50.0;
    double dx = 1.0 / 128;
    std::optional<int> pad;
    int max_levels = 10;
    /// Principal-value tolerance of numeric well sweeps.
    double pv_tolerance = 1e-4;
    bool check = false;
    WellParams units{};
};

/// Parses command-line arguments (argv[0] excluded). `--config file.json` expands a JSON
/// object whose keys are the long flag names, plus "command". Throws CLI11 parse
/// errors or DomainError; returns nullopt when help was printed to `out`.
std::optional<RunConfig> parse(const std::vector<std::string>& args, std::ostream& out);

/// Executes the command, writing reports to `out` and files named in the config.
/// Returns the exit status; failures are reported as one line on `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse + run with the exit-code mapping of the command-line tool.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Minimal insertion-ordered JSON object writer; numbers use format_number().
class JsonObject {
public:
    JsonObject& add(const std::string& key, double value);
    JsonObject& add(const std::string& key, int value);
    JsonObject& add(const std::string& key, std::size_t value);
    JsonObject& add(const std::string& key, bool value);
    JsonObject& add(const std::string& key, const std::string& value);
    JsonObject& add(const std::string& key, const char* value) { return add(key, std::string(value)); }
    JsonObject& add_raw(const std::string& key, std::string json);
    std::string str() const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

std::string json_quote(const std::string& s);

}  // namespace rieszwell::cli
