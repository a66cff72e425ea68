#include "dlab/report.hpp"

#include <cstdio>
#include <fstream>

#include "dlab/common.hpp"

namespace dlab {

void ExperimentReport::add_info(std::string name, double value, double reference,
                                nlohmann::json inputs) {
    CheckRecord record;
    record.name = std::move(name);
    record.inputs = std::move(inputs);
    record.value = value;
    record.reference = reference;
    record.asserted = false;
    record.pass = true;
    checks.push_back(std::move(record));
}

bool ExperimentReport::all_passed() const {
    for (const auto& c : checks) {
        if (c.asserted && !c.pass) return false;
    }
    return true;
}

nlohmann::json ExperimentReport::to_json() const {
    nlohmann::json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = command;
    j["argv"] = argv_echo;
    j["seed"] = seed;
    j["config"] = config;
    nlohmann::json checks_json = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json cj;
        cj["name"] = c.name;
        cj["inputs"] = c.inputs;
        cj["value"] = c.value;
        cj["reference"] = c.reference;
        cj["asserted"] = c.asserted;
        if (c.asserted) {
            cj["pass"] = c.pass;
        } else {
            cj["pass"] = nullptr;
        }
        checks_json.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks_json);
    j["results"] = results;
    j["notes"] = notes;
    j["wall_time_seconds"] = wall_time_seconds;
    return j;
}

void write_report(const ExperimentReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw Error("invalid-parameter", "cannot open report path " + path);
    }
    out << report.to_json().dump(2) << '\n';
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) {
        throw Error("invalid-parameter", "cannot open csv path " + path);
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        out << (i == 0 ? "" : ",") << header[i];
    }
    out << '\n';
    char buf[64];
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", row[i]);
            out << (i == 0 ? "" : ",") << buf;
        }
        out << '\n';
    }
}

}  // namespace dlab
