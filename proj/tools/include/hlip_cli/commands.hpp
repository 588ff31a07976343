#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "hlip/approx.hpp"
#include "hlip/graph.hpp"

namespace hlip::cli {

using Json = nlohmann::ordered_json;

enum ExitCode : int { kOk = 0, kPrecondition = 1, kVerification = 2 };

struct RunConfig {
    std::string command;
    std::vector<std::filesystem::path> inputs;
    std::filesystem::path out;  // empty: no files written
    int n = 2;
    std::uint64_t seed = kDefaultSeed;
    int threads = 0;  // 0 keeps the runtime default
    Json params = Json::object();
};

// Reads {"command", "inputs", "out", "n", "seed", "threads", "params"}; missing keys keep defaults.
RunConfig load_config(const std::filesystem::path& path);
RunConfig config_from_json(const Json& j);
PipelineConfig pipeline_config(const Json& params, std::uint64_t seed);

struct Report {
    Json body;
    int exit_code = kOk;
    std::string hash;  // FNV-1a 64 of body without wall_time
};

// FNV-1a 64 over the compact dump with any top-level "wall_time" removed.
std::string report_hash(const Json& body);
std::uint64_t fnv1a64(std::string_view bytes);

Report cmd_constants(const RunConfig& cfg);
Report cmd_gen(const RunConfig& cfg);
Report cmd_minimize(const RunConfig& cfg);
Report cmd_excess(const RunConfig& cfg);
Report cmd_approx(const RunConfig& cfg);
Report cmd_truncate(const RunConfig& cfg);
Report cmd_verify(const RunConfig& cfg);

// Dispatches on cfg.command; precondition and format errors become exit code 1.
Report run(const RunConfig& cfg);

}  // namespace hlip::cli
