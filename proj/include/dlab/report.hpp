#pragma once

// Report assembly and serialization.  Every CLI run emits one JSON report
// (and optionally a CSV table).  There are no timestamps anywhere: rerunning
// with the same config and seed reproduces every numeric field bit-for-bit
// where the arithmetic is exact, except wall_time_seconds, which is explicitly
// outside the determinism contract.
//
// report.json layout:
// {
//   "tool": "dirichlet-lab", "version": "...",
//   "command": "freq check",            // subcommand path
//   "argv": ["freq", "check", ...],     // echo of the full argument vector
//   "seed": 123,                        // resolved master seed
//   "config": { ... resolved values ... },
//   "checks": [ { "name": ..., "inputs": { ... }, "value": ...,
//                 "reference": ..., "asserted": true, "pass": true }, ... ],
//   "results": { ... subcommand-specific payload ... },
//   "notes": [ ... ],
//   "wall_time_seconds": ...
// }
//
// Exit-code convention of the driver: 0 when every asserted check passes,
// 1 when some asserted check fails, 2 for unusable configuration.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace dlab {

inline constexpr const char* kToolName = "dirichlet-lab";
inline constexpr const char* kToolVersion = "0.1.0";

struct CheckRecord {
    std::string name;
    nlohmann::json inputs;   // echo of the inputs that produced the numbers
    double value = 0.0;      // computed value
    double reference = 0.0;  // bound or oracle it is held against
    bool asserted = true;    // informational records set this to false
    bool pass = true;        // meaningful only when asserted
};

struct ExperimentReport {
    std::string command;
    std::vector<std::string> argv_echo;
    std::uint64_t seed = 0;
    nlohmann::json config = nlohmann::json::object();
    nlohmann::json results = nlohmann::json::object();
    std::vector<CheckRecord> checks;
    std::vector<std::string> notes;
    double wall_time_seconds = 0.0;

    void add_check(CheckRecord record) { checks.push_back(std::move(record)); }
    void add_info(std::string name, double value, double reference = 0.0,
                  nlohmann::json inputs = nlohmann::json::object());
    bool all_passed() const;
    nlohmann::json to_json() const;
};

void write_report(const ExperimentReport& report, const std::string& path);

// Plain CSV: header row, then one row per record, doubles at full round-trip
// precision (%.17g).
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace dlab
