#include "output.hpp"

#include "levqsim/core/constants.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef LEVQSIM_VERSION
#define LEVQSIM_VERSION "unknown"
#endif

namespace levqsim::cli {

namespace fs = std::filesystem;

const char* tool_version() { return LEVQSIM_VERSION; }

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void atomic_write(const std::string& dir, const std::string& name, const std::string& content)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create output directory " + dir + ": " + ec.message());
    const fs::path target = fs::path(dir) / name;
    const fs::path tmp = fs::path(dir) / ("." + name + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out)
            throw IoError("write to " + tmp.string() + " failed");
    }
    fs::rename(tmp, target, ec);
    if (ec)
        throw IoError("cannot rename " + tmp.string() + " to " + target.string() + ": " + ec.message());
}

namespace {

nlohmann::json provenance(const RunConfig& config, const Metadata& meta)
{
    nlohmann::json p = {
        {"tool", "levqsim"},
        {"version", tool_version()},
        {"constants", std::string(kConstants.id)},
        {"config", config.to_json()},
    };
    for (const auto& [k, v] : meta)
        p["metadata"][k] = v;
    return p;
}

nlohmann::json cell_json(const Cell& c)
{
    if (const double* d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d))
            return nullptr;
        return *d;
    }
    if (const long* l = std::get_if<long>(&c))
        return *l;
    return std::get<std::string>(c);
}

std::string cell_text(const Cell& c)
{
    if (const double* d = std::get_if<double>(&c))
        return format_number(*d);
    if (const long* l = std::get_if<long>(&c))
        return std::to_string(*l);
    return std::get<std::string>(c);
}

} // namespace

std::string write_table(const RunConfig& config, const std::string& stem, const Table& table, const Metadata& meta)
{
    if (config.format == "json") {
        nlohmann::json body;
        body["columns"] = table.columns;
        body["rows"] = nlohmann::json::array();
        for (const auto& row : table.rows) {
            nlohmann::json r = nlohmann::json::array();
            for (const auto& c : row)
                r.push_back(cell_json(c));
            body["rows"].push_back(std::move(r));
        }
        body["provenance"] = provenance(config, meta);
        const std::string name = stem + ".json";
        atomic_write(config.out_dir, name, body.dump(1) + "\n");
        return name;
    }
    std::string out;
    out += std::string("# tool: levqsim ") + tool_version() + "\n";
    out += std::string("# constants: ") + std::string(kConstants.id) + "\n";
    out += "# config: " + config.to_json().dump() + "\n";
    for (const auto& [k, v] : meta)
        out += "# " + k + ": " + v + "\n";
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        out += (i ? "," : "") + table.columns[i];
    out += "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                out += ',';
            out += cell_text(row[i]);
        }
        out += '\n';
    }
    const std::string name = stem + ".csv";
    atomic_write(config.out_dir, name, out);
    return name;
}

std::string write_json(const RunConfig& config, const std::string& stem, nlohmann::json body)
{
    body["provenance"] = provenance(config, {});
    const std::string name = stem + ".json";
    atomic_write(config.out_dir, name, body.dump(1) + "\n");
    return name;
}

nlohmann::json config_from_csv_header(const std::string& csv_text)
{
    std::istringstream in(csv_text);
    std::string line;
    const std::string tag = "# config: ";
    while (std::getline(in, line)) {
        if (line.rfind("#", 0) != 0)
            break;
        if (line.rfind(tag, 0) == 0)
            return nlohmann::json::parse(line.substr(tag.size()));
    }
    throw ValidationError("no config line in CSV header");
}

} // namespace levqsim::cli
