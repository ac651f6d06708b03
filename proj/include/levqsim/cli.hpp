#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace levqsim::cli {

enum ExitCode : int { exit_ok = 0, exit_validation = 2, exit_numerical = 3, exit_io = 4 };

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

const std::vector<std::string>& commands();

struct RunConfig {
    std::string command;
    nlohmann::json params; // the command block with every default filled in
    std::string out_dir = ".";
    std::string format = "csv"; // csv | json
    unsigned threads = 1;

    /// Top-level document that parses back to this configuration.
    nlohmann::json to_json() const;
};

struct Overrides {
    std::string command;
    std::string out_dir;
    std::string format;
    unsigned threads = 0; // 0: keep the file value
};

/// Strict parsing: unknown keys, wrong types and out-of-range values throw
/// ValidationError. Command-line overrides win over file values.
RunConfig parse_config(const nlohmann::json& doc, const Overrides& overrides = {});

/// Runs the command and returns the list of files written (relative to out_dir).
std::vector<std::string> run(const RunConfig& config);

/// Maps an exception thrown by run/parse_config to an exit code and error JSON.
int report_error(const std::exception& ex, std::string& error_json);

/// Full command-line entry point.
int main_entry(int argc, char** argv);

} // namespace levqsim::cli
