#pragma once

// Batch command line: every subcommand reads JSON artifacts, runs one
// operation and answers with an envelope {status, payload, diagnostics}.

#include "fraisse/io.hpp"

#include <string>
#include <vector>

namespace fraisse::cli {

struct CommandResult {
    std::string status = "ok";  // ok | contract-violation | witness-not-found | resource-limit
    Json payload;
    std::vector<std::string> diagnostics;
    int exit_code = 0;           // 0, 2, 3, 4 in the order above
    bool pretty = false;
    std::string output_path;     // -o FILE, empty for stdout
    std::string help;            // set when --help was requested

    Json envelope() const;
    /// The text the process writes: the JSON envelope, or for --pretty an
    /// indented payload (raw DOT for export-dot) followed by diagnostics.
    std::string render() const;
};

/// args excludes the program name.
CommandResult run(const std::vector<std::string>& args);

/// Runs, writes the rendered result and returns the exit code.
int main(int argc, char** argv);

}  // namespace fraisse::cli
