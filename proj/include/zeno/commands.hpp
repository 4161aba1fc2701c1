// commands.hpp — the batch commands behind the CLI: N-sweeps, optimum
// reports, the reference table of estimates vs exact search, and the
// general lossy-framework study.

#pragma once

#include <iosfwd>
#include <string>

#include "zeno/config.hpp"

namespace zeno::cli {

// Renders the configured command to its full output text (CSV or JSON,
// trailing newline included). Deterministic: equal configs give equal bytes.
std::string render(const RunConfig& cfg);

// Writes to cfg.output_path, or to fallback when the path is empty.
// Throws IoError on failure.
void write_output(const RunConfig& cfg, const std::string& text, std::ostream& fallback);

// Full front end: parses argv, runs the command, maps errors to exit codes
// (0 ok, 1 config, 2 I/O, 3 numerical consistency).
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace zeno::cli
