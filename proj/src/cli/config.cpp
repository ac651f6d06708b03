#include "levqsim/cli.hpp"

#include "levqsim/core/errors.hpp"
#include "output.hpp"
#include "schema.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace levqsim::cli {

const std::vector<std::string>& commands()
{
    static const std::vector<std::string> names = {"trap",   "wkb",     "ring",     "eigen", "sweep",
                                                   "couple", "laplace", "reproduce"};
    return names;
}

nlohmann::json RunConfig::to_json() const
{
    // Output directory and thread count do not change file contents, so they
    // stay out of the recorded configuration.
    return {{"command", command}, {"output", {{"format", format}}}, {command, params}};
}

RunConfig parse_config(const nlohmann::json& doc, const Overrides& overrides)
{
    if (!doc.is_object())
        throw ValidationError("config: top level must be a JSON object");
    if (doc.empty())
        throw ValidationError("config: empty configuration (no command given)");

    for (const auto& [k, _] : doc.items()) {
        bool known = k == "command" || k == "output" || k == "threads";
        for (const auto& c : commands())
            known = known || k == c;
        if (!known)
            throw ValidationError("config: unknown key '" + k + "'");
    }

    RunConfig rc;
    if (!overrides.command.empty()) {
        rc.command = overrides.command;
    } else if (doc.contains("command")) {
        if (!doc["command"].is_string())
            throw ValidationError("config.command: expected a string");
        rc.command = doc["command"].get<std::string>();
    } else {
        throw ValidationError("config: no command given");
    }
    bool known_command = false;
    for (const auto& c : commands())
        known_command = known_command || c == rc.command;
    if (!known_command)
        throw ValidationError("config: unknown command '" + rc.command + "'");

    for (const auto& c : commands())
        if (c != rc.command && doc.contains(c))
            throw ValidationError("config: block '" + c + "' given for command '" + rc.command + "'");

    const nlohmann::json block = doc.contains(rc.command) ? doc[rc.command] : nlohmann::json::object();
    rc.params = resolve(block, schema_for(rc.command), rc.command);

    const nlohmann::json out = resolve(doc.contains("output") ? doc["output"] : nlohmann::json::object(),
                                       {text("dir", "."), text("format", "csv", {"csv", "json"})}, "output");
    rc.out_dir = out["dir"].get<std::string>();
    rc.format = out["format"].get<std::string>();
    if (doc.contains("threads")) {
        if (!doc["threads"].is_number_integer() || doc["threads"].get<long>() < 1)
            throw ValidationError("config.threads: expected a positive integer");
        rc.threads = static_cast<unsigned>(doc["threads"].get<long>());
    }

    if (!overrides.out_dir.empty())
        rc.out_dir = overrides.out_dir;
    if (!overrides.format.empty()) {
        if (overrides.format != "csv" && overrides.format != "json")
            throw ValidationError("--format must be csv or json");
        rc.format = overrides.format;
    }
    if (overrides.threads > 0)
        rc.threads = overrides.threads;
    return rc;
}

int report_error(const std::exception& ex, std::string& error_json)
{
    int code = exit_numerical;
    std::string kind = "numerical";
    if (dynamic_cast<const IoError*>(&ex) || dynamic_cast<const std::filesystem::filesystem_error*>(&ex)) {
        code = exit_io;
        kind = "io";
    } else if (dynamic_cast<const ValidationError*>(&ex) || dynamic_cast<const std::invalid_argument*>(&ex) ||
               dynamic_cast<const std::domain_error*>(&ex) || dynamic_cast<const std::out_of_range*>(&ex) ||
               dynamic_cast<const nlohmann::json::exception*>(&ex)) {
        code = exit_validation;
        kind = "validation";
    }
    error_json = nlohmann::json{{"error", {{"kind", kind}, {"exit_code", code}, {"message", ex.what()}}}}.dump();
    return code;
}

int main_entry(int argc, char** argv)
{
    CLI::App app{"levqsim: levitated electron-on-neon qubit simulator"};
    std::string command, config_path, out_dir, format;
    unsigned threads = 0;
    app.add_option("command", command, "trap | wkb | ring | eigen | sweep | couple | laplace | reproduce")
        ->required()
        ->check(CLI::IsMember(commands()));
    app.add_option("--config", config_path, "JSON configuration file")->required();
    app.add_option("--out", out_dir, "output directory (overrides output.dir)");
    app.add_option("--format", format, "csv or json (overrides output.format)")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", threads, "worker threads for sweeps")->check(CLI::PositiveNumber);
    app.set_version_flag("--version", tool_version());

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        if (rc == 0)
            return 0;
        std::cerr << nlohmann::json{{"error", {{"kind", "validation"}, {"exit_code", 2}, {"message", e.what()}}}}.dump()
                  << "\n";
        return exit_validation;
    }

    std::string error_json;
    try {
        std::ifstream in(config_path);
        if (!in)
            throw IoError("cannot read config file " + config_path);
        std::stringstream text;
        text << in.rdbuf();
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text.str());
        } catch (const nlohmann::json::parse_error& e) {
            throw ValidationError(std::string("config is not valid JSON: ") + e.what());
        }
        const RunConfig rc = parse_config(doc, {command, out_dir, format, threads});
        const auto files = run(rc);
        std::cout << nlohmann::json{{"status", "ok"}, {"command", rc.command}, {"out_dir", rc.out_dir}, {"files", files}}
                         .dump()
                  << "\n";
        return exit_ok;
    } catch (const std::exception& ex) {
        const int code = report_error(ex, error_json);
        std::cerr << error_json << "\n";
        return code;
    }
}

} // namespace levqsim::cli
