// config.hpp — run configuration for the batch front end: flat key=value
// config files plus command-line overrides, validated strictly per command.

#pragma once

#include <map>
#include <optional>
#include <string>

#include "zeno/mirror.hpp"
#include "zeno/optimizer.hpp"

namespace zeno::cli {

enum class Command { Sweep, Opt, Table1, General };
enum class OutputFormat { Csv, Json };

const char* command_name(Command cmd) noexcept;

// Raw key=value pairs, file values already overridden by flags.
using KeyValues = std::map<std::string, std::string>;

// Reads a flat key = value file ('#' starts a comment). Throws IoError if
// the file cannot be read, ConfigError on malformed lines.
KeyValues parse_config_file(const std::string& path);

struct RunConfig {
    Command command = Command::Sweep;
    double theta = 0.0;
    bool theta_given = false;
    std::optional<MirrorModel> mirror;
    long n_min = 1;
    long n_max = 1;
    std::optional<long> search_ceiling; // opt: override of the default ceiling
    std::optional<LossModel> loss_model;
    std::string output_path;            // empty = stdout
    OutputFormat format = OutputFormat::Csv;
};

// Validates keys against the chosen command (unknown or missing fields are
// ConfigErrors naming the field) and builds the typed configuration.
RunConfig build_run_config(Command cmd, const KeyValues& kv);

} // namespace zeno::cli
