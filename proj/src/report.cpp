#include "holelab/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace holelab {

bool ReportRecord::operator==(const ReportRecord& o) const {
  return command == o.command && params == o.params && results == o.results && seed == o.seed &&
         version == o.version && wall_time_ms == o.wall_time_ms;
}

Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

Json number(std::optional<double> v) { return v ? number(*v) : Json(nullptr); }

Json interval(double lo, double hi) {
  Json j = Json::object();
  j["lo"] = number(lo);
  j["hi"] = number(hi);
  return j;
}

Json to_json(const ReportRecord& r) {
  Json j;
  j["command"] = r.command;
  j["params"] = r.params;
  j["results"] = r.results;
  j["seed"] = r.seed;
  j["version"] = r.version;
  j["wall_time_ms"] = r.wall_time_ms;
  return j;
}

ReportRecord record_from_json(const Json& j) {
  ReportRecord r;
  r.command = j.at("command").get<std::string>();
  r.params = j.at("params");
  r.results = j.at("results");
  r.seed = j.at("seed").get<std::uint64_t>();
  r.version = j.at("version").get<std::string>();
  r.wall_time_ms = j.at("wall_time_ms").get<long>();
  return r;
}

Format format_from_string(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw std::invalid_argument("unknown format '" + s + "' (expected json or csv)");
}

std::string format_double(double v) {
  if (!std::isfinite(v)) return "";
  char buf[64];
  // 17 significant digits always round-trip an IEEE double.
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, const Json*>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix + "." + it.key(), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else {
    out.emplace_back(prefix, &j);
  }
}

std::string csv_cell(const Json& j) {
  if (j.is_null()) return "";
  if (j.is_number_float()) return format_double(j.get<double>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + "\"";
  }
  return j.dump();
}

template <typename Fn>
void with_fields(const ReportRecord& r, Fn&& fn) {
  const Json command = r.command, seed = r.seed, version = r.version, wall = r.wall_time_ms;
  std::vector<std::pair<std::string, const Json*>> fields;
  fields.emplace_back("command", &command);
  fields.emplace_back("version", &version);
  fields.emplace_back("seed", &seed);
  flatten(r.params, "params", fields);
  flatten(r.results, "results", fields);
  fields.emplace_back("wall_time_ms", &wall);
  fn(fields);
}

}  // namespace

std::vector<std::string> csv_header(const ReportRecord& r) {
  std::vector<std::string> names;
  with_fields(r, [&](const auto& fields) {
    for (const auto& [name, _] : fields) names.push_back(name);
  });
  return names;
}

void emit(const std::vector<ReportRecord>& records, Format format, std::ostream& out) {
  if (format == Format::Json) {
    for (const auto& r : records) out << to_json(r).dump() << '\n';
    return;
  }
  if (records.empty()) return;
  const auto header = csv_header(records.front());
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& r : records) {
    with_fields(r, [&](const auto& fields) {
      for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << csv_cell(*fields[i].second);
    });
    out << '\n';
  }
}

void emit(const std::vector<ReportRecord>& records, Format format, const std::string& path, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    emit(records, format, fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
  emit(records, format, file);
  if (!file) throw std::runtime_error("failed writing output file '" + path + "'");
}

}  // namespace holelab
