#include "fantomlab/reporting.hpp"

#include <json.hpp>

namespace fantomlab {

const char* to_string(ClaimStatus status) {
    switch (status) {
        case ClaimStatus::Verified: return "verified";
        case ClaimStatus::Violated: return "violated";
        case ClaimStatus::AuditedPass: return "audited-pass";
        case ClaimStatus::AuditedFail: return "audited-fail";
    }
    return "unknown";
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string emit_claim(const ClaimReport& report, OutputFormat format) {
    switch (format) {
        case OutputFormat::Json: {
            nlohmann::ordered_json j;
            j["type"] = "claim";
            j["claim"] = report.id;
            j["status"] = to_string(report.status);
            nlohmann::ordered_json params = nlohmann::ordered_json::object();
            for (const auto& [k, v] : report.params) params[k] = v;
            j["params"] = params;
            j["evidence"] = report.evidence;
            return j.dump();
        }
        case OutputFormat::Csv: {
            std::string params;
            for (const auto& [k, v] : report.params) {
                if (!params.empty()) params += ';';
                params += k + "=" + v;
            }
            return "claim," + csv_escape(report.id) + "," + to_string(report.status) + "," +
                   csv_escape(params) + "," + csv_escape(report.evidence);
        }
        case OutputFormat::Text: {
            std::string params;
            for (const auto& [k, v] : report.params) {
                params += " " + k + "=" + v;
            }
            return "[" + std::string(to_string(report.status)) + "] " + report.id + params +
                   " :: " + report.evidence;
        }
    }
    return {};
}

}  // namespace fantomlab
