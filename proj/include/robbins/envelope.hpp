#pragma once

// Deterministic output: 12-significant-digit, locale-independent reals,
// sorted-key JSON envelopes, RFC 4180 CSV with LF line endings.

#include <charconv>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

namespace robbins::out {

inline constexpr std::string_view kArtifactVersion = "1.0.0";
inline constexpr int kSignificantDigits = 12;

using Json = nlohmann::json;

inline std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, kSignificantDigits);
  return std::string(buf, res.ptr);
}

/// v rounded to 12 significant digits, as a double.
inline double round_real(double v) {
  const std::string s = format_real(v);
  double r = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), r);
  return r;
}

inline Json real(double v) { return Json(round_real(v)); }

inline Json envelope(std::string command, Json params, Json results) {
  Json j = Json::object();
  j["artifact-version"] = std::string(kArtifactVersion);
  j["command"] = std::move(command);
  j["params"] = std::move(params);
  j["results"] = std::move(results);
  return j;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

inline std::string csv_field(std::string_view f) {
  if (f.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(f);
  std::string q = "\"";
  for (char c : f) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<std::string> row) {
    if (row.size() != header_.size()) throw std::logic_error("csv row width mismatch");
    rows_.push_back(std::move(row));
  }

  const std::vector<std::string>& header() const noexcept { return header_; }
  const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }

  std::string str() const {
    std::string s;
    auto line = [&s](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) s += ',';
        s += csv_field(r[i]);
      }
      s += '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return s;
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace robbins::out
