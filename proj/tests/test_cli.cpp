#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rieszwell/cli.hpp"

using namespace rieszwell;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::main_entry(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch() {
    const fs::path dir = fs::temp_directory_path() / "rieszwell_cli_test";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void spit(const fs::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

bool one_line_reason(const std::string& err) {
    return !err.empty() && err.find('\n') == err.size() - 1 && err.rfind("rieszwell: ", 0) == 0;
}

}  // namespace

TEST_CASE("parsing fills the run configuration") {
    std::ostringstream sink;
    const auto c = cli::parse({"well-check", "--n", "1,2,3", "--alpha", "1.2,1.8", "--method", "numeric-pv",
                               "--points", "9", "--hbar", "0.5"},
                              sink);
    REQUIRE(c);
    CHECK(c->command == cli::Command::WellCheck);
    CHECK(c->n == std::vector<int>{1, 2, 3});
    CHECK(c->alpha == std::vector<double>{1.2, 1.8});
    CHECK(c->method == "numeric-pv");
    CHECK(c->points == 9);
    CHECK(c->units.hbar == 0.5);
    CHECK_FALSE(c->tolerance);

    const auto help = cli::parse({"--help"}, sink);
    CHECK_FALSE(help);
    CHECK(sink.str().find("well-check") != std::string::npos);
}

TEST_CASE("well-check analytic path passes and writes artifacts") {
    const fs::path dir = scratch();
    const auto r = invoke({"well-check", "--n", "1", "--alpha", "1.5", "--method", "analytic-pv", "--points", "33",
                           "--output", (dir / "sweep.csv").string(), "--summary", (dir / "summary.json").string()});
    CHECK(r.code == 0);
    CHECK(r.err.empty());
    CHECK(r.out == slurp(dir / "summary.json"));
    CHECK(r.out.find("\"pass\": true") != std::string::npos);
    const std::string csv = slurp(dir / "sweep.csv");
    CHECK(csv.rfind("n,alpha,x,expected,reconstructed,abs_error,method\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 34);
}

TEST_CASE("well-check numeric path in the classical limit") {
    const auto r = invoke({"well-check", "--n", "1,2", "--alpha", "2", "--method", "numeric-pv", "--points", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"rows\": 10") != std::string::npos);
}

TEST_CASE("riesz-apply reduces to the second derivative at alpha = 2") {
    const fs::path dir = scratch();
    const auto grid = UniformGrid::with_spacing(-12.0, 12.0, 1.0 / 64);
    {
        std::ofstream f(dir / "gauss.csv");
        write_csv(GridFunction::sample_real(grid, [](double x) { return std::exp(-x * x); }), f);
    }
    const auto r = invoke({"riesz-apply", "--alpha", "2", "--rep", "spectral", "--input", (dir / "gauss.csv").string(),
                           "--output", (dir / "d2.csv").string()});
    REQUIRE(r.code == 0);
    std::ifstream in(dir / "d2.csv");
    const GridFunction d = read_csv(in);
    double worst = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k) {
        const double x = d.x(k);
        worst = std::max(worst, std::abs(d[k] - (4.0 * x * x - 2.0) * std::exp(-x * x)));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("pv-eval report and exit codes") {
    const auto r = invoke({"pv-eval", "--n", "1", "--alpha", "1.5", "--x", "0"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"value_re\": -2.9002147") != std::string::npos);
    CHECK(r.out.find("\"closed_form\": -3.141592653590e+00") != std::string::npos);
    CHECK(r.out.find("\"converged\": true") != std::string::npos);

    // The requested closed-form check fails for the true principal value.
    const auto checked = invoke({"pv-eval", "--n", "1", "--alpha", "1.5", "--x", "0", "--check"});
    CHECK(checked.code == 1);
    CHECK(one_line_reason(checked.err));

    const auto starved = invoke({"pv-eval", "--n", "1", "--alpha", "1.5", "--x", "0.3", "--max-levels", "2"});
    CHECK(starved.code == 3);
    CHECK(one_line_reason(starved.err));
    CHECK(starved.err.find("non-convergence") != std::string::npos);
}

TEST_CASE("controversy reports") {
    const auto ext = invoke({"controversy", "--n", "1", "--alpha", "1.5", "--x", "1.5"});
    CHECK(ext.code == 0);
    CHECK(ext.out.find("\"value\": 2.2141101") != std::string::npos);
    CHECK(ext.out.find("\"region\": \"right-exterior\"") != std::string::npos);
    CHECK(ext.out.find("residual_interior_max") != std::string::npos);
    const auto in = invoke({"controversy", "--n", "1", "--alpha", "1.5", "--x", "0", "--region", "interior"});
    CHECK(in.code == 0);
    CHECK(in.out.find("raw_difference") != std::string::npos);
}

TEST_CASE("multiplier-check") {
    const auto r = invoke({"multiplier-check", "--alpha", "1.5", "--rep", "second-difference"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\"pass\": true") != std::string::npos);
    const auto strict = invoke({"multiplier-check", "--alpha", "1.5", "--rep", "spectral", "--tolerance", "1e-9"});
    CHECK(strict.code == 1);
}

TEST_CASE("JSON config mirrors the flags") {
    const fs::path dir = scratch();
    spit(dir / "pv.json", R"({"command": "pv-eval", "n": 2, "alpha": 1.8, "x": 0.3})");
    const auto from_config = invoke({"--config", (dir / "pv.json").string()});
    const auto from_flags = invoke({"pv-eval", "--n", "2", "--alpha", "1.8", "--x", "0.3"});
    CHECK(from_config.code == 0);
    CHECK(from_config.out == from_flags.out);

    spit(dir / "well.json", R"({"command": "well-check", "n": [1, 2], "alpha": [1.2, 1.5], "points": 3, "check": false})");
    const auto lists = invoke({"--config", (dir / "well.json").string()});
    CHECK(lists.code == 0);
    CHECK(lists.out.find("\"rows\": 12") != std::string::npos);

    spit(dir / "bad.json", R"({"command": "pv-eval", "n": 1, "colour": "blue"})");
    CHECK(invoke({"--config", (dir / "bad.json").string()}).code == 2);
    spit(dir / "broken.json", "{not json");
    CHECK(invoke({"--config", (dir / "broken.json").string()}).code == 2);
    CHECK(invoke({"--config", (dir / "missing.json").string()}).code == 2);
    CHECK(invoke({"--config", (dir / "pv.json").string(), "--x", "1"}).code == 2);
}

TEST_CASE("every precondition violation exits with status 2") {
    const fs::path dir = scratch();
    const std::vector<std::vector<std::string>> bad = {
        {},
        {"frobnicate"},
        {"pv-eval", "--n", "0"},
        {"pv-eval", "--alpha", "2.5"},
        {"pv-eval", "--alpha", "abc"},
        {"pv-eval", "--x", "0.97"},
        {"pv-eval", "--tolerance", "1e-9"},
        {"pv-eval", "--a", "-1"},
        {"pv-eval", "--n", "1,2"},
        {"pv-eval", "--unknown", "3"},
        {"well-check", "--method", "magic"},
        {"well-check", "--points", "0"},
        {"well-check", "--alpha", "0.9"},
        {"well-check", "--method", "numeric-pv", "--span", "0.99"},
        {"well-check", "--hbar", "0"},
        {"well-check", "--amplitude", "-1"},
        {"controversy", "--x", "1.01"},
        {"controversy", "--x", "0.5", "--region", "right-exterior"},
        {"controversy", "--x", "1.5", "--alpha", "2"},
        {"controversy", "--x", "1.5", "--region", "outside"},
        {"multiplier-check", "--rep", "fourier"},
        {"multiplier-check", "--alpha", "1"},
        {"multiplier-check", "--dx", "-0.1"},
        {"multiplier-check", "--pad", "0"},
        {"riesz-apply", "--input", (dir / "nope.csv").string(), "--output", (dir / "o.csv").string()},
        {"riesz-apply", "--output", (dir / "o.csv").string()},
        {"riesz-apply", "--input", (dir / "sweep.csv").string(), "--output", (dir / "o.csv").string()},
    };
    for (const auto& args : bad) {
        std::string joined;
        for (const auto& a : args) {
            joined += a + " ";
        }
        CAPTURE(joined);
        const auto r = invoke(args);
        CHECK(r.code == 2);
        CHECK(one_line_reason(r.err));
    }
}

TEST_CASE("reruns are byte-identical") {
    const fs::path dir = scratch();
    std::vector<std::string> outs;
    for (int run = 0; run < 2; ++run) {
        const auto r = invoke({"well-check", "--n", "1,3", "--alpha", "1.5", "--method", "numeric-pv", "--points", "3",
                               "--output", (dir / ("rerun" + std::to_string(run) + ".csv")).string()});
        CHECK(r.code == 1);
        outs.push_back(r.out + slurp(dir / ("rerun" + std::to_string(run) + ".csv")));
    }
    CHECK(outs[0] == outs[1]);
}
