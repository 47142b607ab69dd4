#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nopath/geometry.hpp"
#include "nopath/nonlin.hpp"

namespace nopath::cli {

struct RunConfig {
    std::string command;
    ExampleTag example = ExampleTag::A;
    ExampleConfig build;
    int grid_n = 0;    // 0: example default
    double tol = -1;   // < 0: example default
    std::string out = "out";
};

// Parses argv into a config; flags override --config FILE. Throws
// InvalidArgument on unknown keys or out-of-range values.
RunConfig parse(int argc, const char* const* argv);

// Runs the command; returns the process exit code. Writes progress to `log`.
int run(const RunConfig& cfg, std::ostream& log);

// Full entry point: parse + run, mapping usage and IO errors to exit code 2.
int main_entry(int argc, const char* const* argv, std::ostream& log);

}  // namespace nopath::cli
