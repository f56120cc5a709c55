#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace invpt {

struct RunConfig {
    std::string command;  // compute | test-equivariance | suspend | blend | verify-suspension
    std::string body;
    std::string bodies;      // directory of body files, read in filename order
    std::string functional;  // centroid | mvee | blend (comma-separated for verify-suspension)
    std::string spec;        // blend spec file
    std::string base;        // suspension base body file
    int profile = 0;         // vertex count of a generated asymmetric base
    int maps = 20;
    std::uint64_t seed = 0;
    std::optional<double> tol;
    std::string out;
    std::string plot;
    int grid = 5;
    std::optional<std::string> mode;  // soft | hard, overrides the spec
};

enum ExitCode : int { kPass = 0, kVerificationFailure = 1, kInputError = 2 };

/// Executes one command. Results go to `config.out` when set, otherwise to
/// `out`; errors are reported as JSON { "error": { "code", "message" } } on
/// `err`. Every random stream is derived from config.seed and the command
/// name, so identical configurations give byte-identical outputs.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace invpt
