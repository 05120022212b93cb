#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fantomlab {

// Theorems are verified or violated; the claims the source material asserts
// without proof are audited and may fail without aborting the run.
enum class ClaimStatus { Verified, Violated, AuditedPass, AuditedFail };
const char* to_string(ClaimStatus status);

struct ClaimReport {
    std::string id;  // stable identifier, never renamed
    ClaimStatus status = ClaimStatus::Verified;
    std::vector<std::pair<std::string, std::string>> params;
    std::string evidence;
    double seconds = 0.0;  // reported on stderr only, never in the byte stream
};

enum class OutputFormat { Text, Json, Csv };

std::string csv_escape(const std::string& field);
std::string emit_claim(const ClaimReport& report, OutputFormat format);

}  // namespace fantomlab
