#pragma once

// Command-line front end. Parsing and the workflows live here so the tests
// can drive them without spawning a process.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wscov/sim.hpp"

namespace wscov::cli {

enum ExitCode : int {
    kOk = 0,
    kValidationFailed = 1,
    kParseError = 2,
    kSolverError = 3,
    kEigensolverError = 4,
};

struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    std::size_t count = 0;
};

enum class Format { csv, json };

struct RunConfig {
    std::string command;
    std::string h_spec;
    std::string d_spec = "dirac:1";
    /// Weight law of the limit curve that validate compares against.
    std::optional<std::string> reference_d_spec;
    std::optional<double> c;
    std::optional<GridSpec> grid;
    double epsilon = 1e-6;
    std::optional<double> threshold;
    std::optional<std::size_t> n;
    std::string noise = "gauss-r";
    std::uint64_t seed = 0;
    bool rotate_weights = false;
    bool rotate_population = false;
    std::string out_path;
    std::optional<Format> format;
    unsigned threads = 1;
};

/// "min,max,count". Throws ConfigParseError.
GridSpec parse_grid(const std::string& text);

/// Builds a RunConfig from argv-style arguments (program name excluded).
/// Values from --config FILE are applied first and explicit flags override
/// them. Throws ConfigParseError or LawParseError; returns std::nullopt
/// after printing help.
std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out);

/// The workflows. Each writes to cfg.out_path, or to `out` when it is empty,
/// and returns an exit code. Errors propagate as exceptions; run() maps them.
int run_density(const RunConfig& cfg, std::ostream& out);
int run_support(const RunConfig& cfg, std::ostream& out);
int run_simulate(const RunConfig& cfg, std::ostream& out);
int run_validate(const RunConfig& cfg, std::ostream& out);
int run_mp_check(const RunConfig& cfg, std::ostream& out);

/// Dispatches on cfg.command and maps exceptions to exit codes, printing the
/// message to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// parse_args + run.
int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wscov::cli
