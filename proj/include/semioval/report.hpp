#pragma once

// JSON run reports. Every CLI command emits one self-describing report:
// re-running the command with the embedded parameters reproduces the
// payload. Verdict-bearing numbers are integers (or exact strings), never
// floats.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "version.hpp"

namespace semioval {

using json = nlohmann::json;

inline std::string fnv1a_hex(const std::string& data) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << "fnv1a64:" << std::hex << h;
    return out.str();
}

inline std::string hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "missing";
    std::ostringstream buf;
    buf << in.rdbuf();
    return fnv1a_hex(buf.str());
}

inline json make_report(const std::string& command, const json& parameters, int q,
                        const json& results, long long wall_ms,
                        const json& input_hashes = json::object()) {
    json r;
    r["report_version"] = 1;
    r["tool"] = "semioval";
    r["version"] = SEMIOVAL_VERSION;
    r["command"] = command;
    r["parameters"] = parameters;
    r["q"] = q;
    r["results"] = results;
    r["wall_time_ms"] = wall_ms;
    r["input_hashes"] = input_hashes;
    return r;
}

inline bool validate_report(const json& r, std::string* why = nullptr) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (!r.is_object()) return fail("report is not an object");
    for (const char* key : {"report_version", "tool", "version", "command", "parameters", "q",
                            "results", "wall_time_ms", "input_hashes"})
        if (!r.contains(key)) return fail(std::string("missing key ") + key);
    if (r["report_version"] != 1) return fail("unknown report_version");
    if (!r["q"].is_number_integer()) return fail("q must be an integer");
    if (!r["wall_time_ms"].is_number_integer()) return fail("wall_time_ms must be an integer");
    if (!r["parameters"].is_object() || !r["results"].is_object())
        return fail("parameters/results must be objects");
    return true;
}

} // namespace semioval
