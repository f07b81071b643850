#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "modent/entanglement.hpp"
#include "modent/sweep.hpp"

namespace modent {

inline constexpr const char* kReportSchema = "modent.report/1";
inline constexpr const char* kSweepSchema = "modent.sweep/1";
inline constexpr const char* kThresholdSchema = "modent.threshold/1";

/// 17 significant digits, round-trip safe.
std::string format_number(double x);
/// As format_number, but values below kConcurrenceZero are written as 0.
std::string format_concurrence(double c);

/// Canonical JSON: sorted keys, two-space indent, shortest round-trip doubles.
std::string to_json(const EntanglementReport& r);
EntanglementReport report_from_json(std::string_view text);

std::string report_csv_header();
std::string to_csv_row(const EntanglementReport& r);

std::string to_json(const SweepTable& t);
SweepTable sweep_from_json(std::string_view text);

/// Sweep CSV. Each comment line is written as "# <line>" before the header.
std::string sweep_csv_header();
std::string to_csv(const SweepTable& t, const std::vector<std::string>& comments = {});
/// Data rows only, for concatenating several tables under one header.
std::string sweep_csv_rows(const SweepTable& t);

std::string to_json(const ThresholdResult& r, const ModularPattern& base);
std::string threshold_csv_header();
std::string to_csv_row(const ThresholdResult& r, const ModularPattern& base);

std::string spec_to_json(const ChainSpec& spec);
ChainSpec spec_from_json(std::string_view text);

}  // namespace modent
