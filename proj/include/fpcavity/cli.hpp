#pragma once

// Command-line front end: xi, kernel, verify and dicke subcommands.
// Exit codes: 0 success / all checks pass, 1 verification or numerical
// failure, 2 argument or domain error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fpcavity/report_io.hpp"
#include "fpcavity/tolerance.hpp"

namespace fpcav::cli {

enum class Command { xi, kernel, verify, dicke };

struct RunConfig {
    Command command = Command::verify;
    Tolerance tol;
    OutputFormat format = OutputFormat::json;
    std::optional<std::string> output_path;
    std::uint64_t seed = 42;

    // xi / kernel
    double u = 1.0;
    double v = 0.0;
    double phi = 0.0;
    std::string family = "E";
    std::string sign = "plus";
    bool spectral = false;
    double eps = 0.05;

    // verify
    std::string verify_target = "all";
    std::string cutoff_shape = "gaussian";

    // dicke
    std::string dicke_target = "ground";
    double omega_a = 1.0;
    double omega_c = 1.0;
    double y = 0.5;
    double y_min = 0.0;
    double y_max = 3.0;
    int steps = 13;
    int n_atoms = 8;
    int cutoff = 60;
};

/// Parses argv (without the program name), runs the command and writes the
/// result to `out` or to --output. Diagnostics go to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Runs an already parsed configuration.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace fpcav::cli
