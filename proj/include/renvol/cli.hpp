#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace renvol {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parsed invocation: `renvol <command> [--opt value]...`.
/// An optional JSON config file (--config path) supplies defaults; flags
/// override file entries.
struct RunConfig {
    std::string command;
    std::map<std::string, std::string> opts;
    unsigned long long seed = 0;
    std::string out_path;  // JSON report target; empty = stdout only
};

RunConfig parse_cli(const std::vector<std::string>& args);

/// Execute the command and emit the JSON report. Exit status: 0 all
/// assertions pass, 1 assertion failure, 2 config error, 3 numerical
/// non-convergence.
int run_config(const RunConfig& config, std::string* report_out = nullptr);

/// parse + run, mapping ConfigError to exit code 2
int run_cli(const std::vector<std::string>& args, std::string* report_out = nullptr);

}  // namespace renvol
