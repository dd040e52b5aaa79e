#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace ap3 {

inline constexpr const char* kArtifactName = "ap3lab";
inline constexpr const char* kArtifactVersion = "0.1.0";

struct Verdict {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Machine-readable run record: same command + params + seed reproduces all
/// metrics and verdicts (timestamps excepted).
struct RunReport {
    std::string command;
    nlohmann::json params = nlohmann::json::object();
    std::uint64_t seed = 0;
    nlohmann::json metrics = nlohmann::json::object();
    std::vector<Verdict> verdicts;
    std::string started;
    std::string finished;

    void begin(const std::string& cmd, std::uint64_t run_seed);
    void end();
    void verdict(const std::string& name, bool pass, const std::string& detail = "");
    bool all_pass() const;

    nlohmann::json to_json() const;
    // The deterministic portion (no timestamps), for replay comparison.
    nlohmann::json deterministic_json() const;
    static RunReport from_json(const nlohmann::json& j);
};

std::string iso8601_now();

}  // namespace ap3
