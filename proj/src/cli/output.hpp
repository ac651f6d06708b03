#pragma once

#include "levqsim/cli.hpp"

#include <json.hpp>

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace levqsim::cli {

using Cell = std::variant<double, long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

using Metadata = std::vector<std::pair<std::string, std::string>>;

const char* tool_version();

/// Writes `content` to dir/name through a temporary file and a rename.
void atomic_write(const std::string& dir, const std::string& name, const std::string& content);

/// Table as CSV (comment-line provenance header) or JSON, chosen by config.format.
/// Returns the file name with extension.
std::string write_table(const RunConfig& config, const std::string& stem, const Table& table,
                        const Metadata& meta = {});

/// JSON document with a provenance block; always .json.
std::string write_json(const RunConfig& config, const std::string& stem, nlohmann::json body);

/// Provenance header lines of a CSV file, parsed back into the config document.
nlohmann::json config_from_csv_header(const std::string& csv_text);

std::string format_number(double v);

} // namespace levqsim::cli
