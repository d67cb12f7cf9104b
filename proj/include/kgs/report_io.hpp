#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "kgs/harness.hpp"

namespace kgs {

inline constexpr const char* kCsvHeader = "scheme,c,tau,err_u_h1,err_psi_h1,runtime_ms,diverged";

/// Write-to-temporary then rename, so readers never see partial files.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string format_csv(const std::vector<ErrorRow>& rows);
std::vector<ErrorRow> parse_csv(const std::string& text);

void emit_csv(const ConvergenceReport& report, const std::filesystem::path& path);
std::vector<ErrorRow> read_csv(const std::filesystem::path& path);

/// Log-log plot of err_u + err_psi against tau: one polyline per c and
/// guide lines of slope 1 and 2.
std::string format_svg(const ConvergenceReport& report);
void emit_svg(const ConvergenceReport& report, const std::filesystem::path& path);

std::string report_json(const ConvergenceReport& report);
std::string report_json(const ConsistencyReport& report);
std::string report_json(const OracleReport& report);

std::string format_consistency_csv(const ConsistencyReport& report);
std::string format_oracle_csv(const OracleReport& report);

}  // namespace kgs
