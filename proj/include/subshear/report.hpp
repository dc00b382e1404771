#pragma once

// Serialization of scan results. JSON output is deterministic: fixed key
// order and shortest round-trip floats, non-finite values written as null.

#include <iosfwd>
#include <string>
#include <vector>

#include "subshear/scan.hpp"

namespace subshear {

enum class ReportFormat { json, csv, text };

ReportFormat parse_report_format(const std::string& name);

std::string scan_json(const ScanConfig& config, const ScanResult& result);
std::string scan_csv(const ScanResult& result);
std::string scan_text(const ScanConfig& config, const ScanResult& result);
std::string format_scan(ReportFormat format, const ScanConfig& config, const ScanResult& result);

/// Records and summary read back from scan_json output.
ScanResult parse_scan_json(const std::string& text);

std::string locus_json(const ScanConfig& config, const LocusResult& locus);
std::string locus_text(const LocusResult& locus);

/// Columns written by scan_csv after the grid coordinates.
const std::vector<std::string>& csv_columns();

}  // namespace subshear
