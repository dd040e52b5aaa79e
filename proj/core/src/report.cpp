#include "ap3/report.hpp"

#include <chrono>
#include <ctime>

namespace ap3 {

std::string iso8601_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void RunReport::begin(const std::string& cmd, std::uint64_t run_seed) {
    command = cmd;
    seed = run_seed;
    started = iso8601_now();
}

void RunReport::end() { finished = iso8601_now(); }

void RunReport::verdict(const std::string& name, bool pass, const std::string& detail) {
    verdicts.push_back({name, pass, detail});
}

bool RunReport::all_pass() const {
    for (const auto& v : verdicts)
        if (!v.pass) return false;
    return true;
}

nlohmann::json RunReport::deterministic_json() const {
    nlohmann::json j;
    j["artifact"] = kArtifactName;
    j["version"] = kArtifactVersion;
    j["command"] = command;
    j["params"] = params;
    j["seed"] = seed;
    j["metrics"] = metrics;
    j["verdicts"] = nlohmann::json::array();
    for (const auto& v : verdicts)
        j["verdicts"].push_back({{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});
    j["all_pass"] = all_pass();
    return j;
}

nlohmann::json RunReport::to_json() const {
    nlohmann::json j = deterministic_json();
    j["timestamps"] = {{"started", started}, {"finished", finished}};
    return j;
}

RunReport RunReport::from_json(const nlohmann::json& j) {
    RunReport r;
    r.command = j.at("command").get<std::string>();
    r.params = j.value("params", nlohmann::json::object());
    r.seed = j.value("seed", 0ULL);
    r.metrics = j.value("metrics", nlohmann::json::object());
    for (const auto& v : j.at("verdicts"))
        r.verdicts.push_back({v.at("name").get<std::string>(), v.at("pass").get<bool>(),
                              v.value("detail", std::string{})});
    if (j.contains("timestamps")) {
        r.started = j["timestamps"].value("started", std::string{});
        r.finished = j["timestamps"].value("finished", std::string{});
    }
    return r;
}

}  // namespace ap3
