#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include <json.hpp>

#include "vilenkin/harness.hpp"

namespace vilenkin {

std::string format_number(double v) {
  if (v == 0.0) return "0";  // no "-0"
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string text_of(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&v)) return format_number(*d);
  return std::get<std::string>(v);
}

// JSON carries the same rounded value the CSV shows.
nlohmann::ordered_json json_of(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  if (const auto* d = std::get_if<double>(&v)) {
    if (!std::isfinite(*d)) return nullptr;
    return std::stod(format_number(*d));
  }
  return std::get<std::string>(v);
}

std::string csv_field(std::string text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
  return quoted + '"';
}

void emit_csv(const RunResult& r, std::ostream& out) {
  for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << r.columns[i];
  out << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(text_of(row[i]));
    out << '\n';
  }
  for (const auto& c : r.criteria) out << "# criterion: " << c.name << '=' << (c.pass ? "pass" : "fail") << " (" << c.detail << ")\n";
  out << "# summary:";
  for (const auto& [key, value] : r.summary) out << ' ' << key << '=' << text_of(value) << ';';
  out << " pass=" << (r.pass() ? "yes" : "no") << '\n';
}

void emit_json(const RunResult& r, std::ostream& out) {
  auto doc = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json rec;
    rec["kind"] = "record";
    for (std::size_t i = 0; i < row.size(); ++i) rec[r.columns[i]] = json_of(row[i]);
    doc.push_back(std::move(rec));
  }
  nlohmann::ordered_json summary;
  summary["kind"] = "summary";
  summary["experiment"] = r.experiment;
  for (const auto& [key, value] : r.summary) summary[key] = json_of(value);
  summary["criteria"] = nlohmann::ordered_json::array();
  for (const auto& c : r.criteria) summary["criteria"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  summary["pass"] = r.pass();
  doc.push_back(std::move(summary));
  out << doc.dump(1) << '\n';
}

}  // namespace

void emit(const RunResult& result, Format format, std::ostream& out) {
  if (format == Format::csv) emit_csv(result, out);
  else emit_json(result, out);
}

void emit(const RunResult& result, Format format, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  require(static_cast<bool>(out), ErrorCode::io_failure, "cannot open '" + path.string() + "' for writing");
  emit(result, format, out);
  out.flush();
  require(static_cast<bool>(out), ErrorCode::io_failure, "write failed for '" + path.string() + "'");
}

}  // namespace vilenkin
