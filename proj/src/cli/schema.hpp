#pragma once

#include "levqsim/cli.hpp"

#include <json.hpp>

#include <limits>
#include <string>
#include <vector>

namespace levqsim::cli {

using nlohmann::json;

enum class Kind { real, integer, boolean, string, real_list, string_list, block };
enum class Sign { any, positive, non_negative, negative_or_zero };

struct Field {
    std::string key;
    Kind kind;
    json fallback;                     // null: required
    Sign sign = Sign::any;
    std::vector<std::string> choices;  // for strings
    std::vector<Field> children;       // for blocks
    long min_int = std::numeric_limits<long>::min();
};

Field real(std::string key, double fallback, Sign sign = Sign::any);
Field integer(std::string key, long fallback, long min_value);
Field boolean(std::string key, bool fallback);
Field text(std::string key, std::string fallback, std::vector<std::string> choices = {});
// Accepts an array of numbers or {"start", "stop", "count"}; stored expanded.
Field real_list(std::string key, std::vector<double> fallback, Sign sign = Sign::any);
Field string_list(std::string key, std::vector<std::string> fallback, std::vector<std::string> choices);
Field block(std::string key, std::vector<Field> children);

std::vector<double> linspace(double lo, double hi, std::size_t n);

/// Names accepted by reproduce.figures, in manifest order.
const std::vector<std::string>& figure_names();

/// Validates `in` against `fields` and returns a copy with defaults filled in.
json resolve(const json& in, const std::vector<Field>& fields, const std::string& path);

/// Schema of each command block.
const std::vector<Field>& schema_for(const std::string& command);

} // namespace levqsim::cli
