#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace noiselab::cli {

// Exit codes: 0 success, 1 usage/config error, 2 degenerate result.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

// Every report embeds the config that produced it. JSON reports carry
// top-level keys "config" and "results"; CSV reports carry a leading
// "# config: {...}" comment line.
std::string render_json_report(const nlohmann::json& config, const nlohmann::json& results);

struct Report {
    nlohmann::json config;
    nlohmann::json results;
};
Report parse_json_report(const std::string& text);
nlohmann::json parse_csv_config(const std::string& text);

}  // namespace noiselab::cli
