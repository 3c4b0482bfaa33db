#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace spinorbit {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Machine-readable run report. Schema (stable):
//   {"command": str, "system": str,
//    "checks": [{"name": str, "status": "pass"|"fail", "detail": str}],
//    "elapsed_ms": int}
struct Report {
    std::string command;
    std::string system;
    std::vector<Check> checks;
    long long elapsed_ms = 0;

    bool all_pass() const {
        for (const auto &c : checks)
            if (!c.pass)
                return false;
        return true;
    }
};

inline nlohmann::json report_to_json(const Report &r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto &c : r.checks)
        checks.push_back({{"name", c.name},
                          {"status", c.pass ? "pass" : "fail"},
                          {"detail", c.detail}});
    return nlohmann::json{{"command", r.command},
                          {"system", r.system},
                          {"checks", checks},
                          {"elapsed_ms", r.elapsed_ms}};
}

inline std::string check_to_text(const Check &c) {
    std::string line = c.pass ? "PASS  " : "FAIL  ";
    line += c.name;
    if (!c.detail.empty())
        line += "  [" + c.detail + "]";
    return line;
}

inline std::string report_to_text(const Report &r) {
    std::string out;
    for (const auto &c : r.checks)
        out += check_to_text(c) + "\n";
    size_t failed = 0;
    for (const auto &c : r.checks)
        if (!c.pass)
            ++failed;
    out += r.command + "/" + r.system + ": " + std::to_string(r.checks.size() - failed) + "/" +
           std::to_string(r.checks.size()) + " checks passed (" + std::to_string(r.elapsed_ms) +
           " ms)\n";
    return out;
}

// Structural validation against the stable schema; extra keys are allowed.
inline bool validate_report_json(const nlohmann::json &j, std::string *why = nullptr) {
    auto fail = [&](const std::string &m) {
        if (why)
            *why = m;
        return false;
    };
    if (!j.is_object())
        return fail("root is not an object");
    if (!j.contains("command") || !j["command"].is_string())
        return fail("missing string field: command");
    if (!j.contains("system") || !j["system"].is_string())
        return fail("missing string field: system");
    if (!j.contains("elapsed_ms") || !j["elapsed_ms"].is_number_integer())
        return fail("missing integer field: elapsed_ms");
    if (!j.contains("checks") || !j["checks"].is_array())
        return fail("missing array field: checks");
    for (const auto &c : j["checks"]) {
        if (!c.is_object())
            return fail("check entry is not an object");
        if (!c.contains("name") || !c["name"].is_string())
            return fail("check missing string field: name");
        if (!c.contains("detail") || !c["detail"].is_string())
            return fail("check missing string field: detail");
        if (!c.contains("status") || !c["status"].is_string() ||
            (c["status"] != "pass" && c["status"] != "fail"))
            return fail("check status must be \"pass\" or \"fail\"");
    }
    return true;
}

}  // namespace spinorbit
