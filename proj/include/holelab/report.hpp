#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace holelab {

inline constexpr const char* kVersion = "0.1.0";

using Json = nlohmann::ordered_json;

// One result of a CLI command. params/results are flat-ish JSON objects whose
// key order is the schema order; intervals are {"lo": ..., "hi": ...}.
struct ReportRecord {
  std::string command;
  Json params = Json::object();
  Json results = Json::object();
  std::uint64_t seed = 0;
  std::string version = kVersion;
  long wall_time_ms = 0;

  bool operator==(const ReportRecord& other) const;
};

// Non-finite values become null (JSON has no inf/nan).
Json number(double v);
Json number(std::optional<double> v);
Json interval(double lo, double hi);

Json to_json(const ReportRecord& r);
ReportRecord record_from_json(const Json& j);

enum class Format { Json, Csv };
Format format_from_string(const std::string& s);

// JSON: one object per line. CSV: header from the first record's flattened keys,
// one row per record. Doubles are written so that parsing recovers them bitwise.
void emit(const std::vector<ReportRecord>& records, Format format, std::ostream& out);
// Writes to `path`, or to `fallback` when path is empty or "-". Throws
// std::runtime_error when the file cannot be opened.
void emit(const std::vector<ReportRecord>& records, Format format, const std::string& path, std::ostream& fallback);

std::vector<std::string> csv_header(const ReportRecord& r);
std::string format_double(double v);

}  // namespace holelab
