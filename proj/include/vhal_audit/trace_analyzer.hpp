// Copyright 2026 The vhal-audit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vhal_audit/core_model.hpp"
#include "vhal_audit/io.hpp"

namespace vhal_audit {

// The five shapes a VHAL property access takes in a frida-trace log.
enum class TraceKind : std::uint8_t {
  GetPropertyIdReturn = 1,         // CarPropertyValue.getPropertyId() <= ID
  StubProxyGetProperty = 2,        // ICarProperty$Stub$Proxy.getProperty(ID, ...)
  ManagerExGetProperty = 3,        // CarPropertyManagerEx.getProperty(ID, ...)
  PropAssignment = 4,              // .prop = ID
  RegisterListenerNotInConfig = 5, // registerListener: propId is not in config list: ID
};

struct ClassifiedLine {
  TraceKind kind;
  std::uint32_t property;

  friend bool operator==(const ClassifiedLine&, const ClassifiedLine&) = default;
};

namespace detail {

inline std::size_t skip_spaces(std::string_view s, std::size_t i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return i;
}

// Reads an optionally quoted decimal or 0x-hex id starting at i. On success
// returns the value and sets `end` to the index just past the id (and its
// closing quote).
inline std::optional<std::uint32_t> read_trace_id(std::string_view s, std::size_t i, std::size_t& end) {
  char quote = 0;
  if (i < s.size() && (s[i] == '\'' || s[i] == '"')) quote = s[i++];
  std::size_t j = i;
  std::optional<std::uint32_t> value;
  if (j + 1 < s.size() && s[j] == '0' && (s[j + 1] == 'x' || s[j + 1] == 'X')) {
    j += 2;
    const std::size_t digits = j;
    while (j < s.size() && is_hex_digit(s[j])) ++j;
    if (j == digits || j - digits > 8) return std::nullopt;
    value = parse_numeric_id(s.substr(i, j - i));
  } else {
    while (j < s.size() && is_digit(s[j])) ++j;
    if (j == i || j - i > 10) return std::nullopt;
    value = parse_numeric_id(s.substr(i, j - i));
  }
  if (!value) return std::nullopt;
  if (quote) {
    if (j >= s.size() || s[j] != quote) return std::nullopt;
    ++j;
  }
  end = j;
  return value;
}

enum class IdTail { Boundary, ArgumentEnd };

// Tries every occurrence of `anchor` in the line; the id must follow the
// anchor (after optional spaces when allow_space) and satisfy the tail rule.
inline std::optional<std::uint32_t> match_anchor(std::string_view line, std::string_view anchor, bool allow_space,
                                                 IdTail tail) {
  for (auto pos = line.find(anchor); pos != std::string_view::npos; pos = line.find(anchor, pos + 1)) {
    std::size_t i = pos + anchor.size();
    if (allow_space) i = skip_spaces(line, i);
    std::size_t end = 0;
    auto id = read_trace_id(line, i, end);
    if (!id) continue;
    if (tail == IdTail::Boundary) {
      if (end < line.size() && is_ident_char(line[end])) continue;
    } else {
      end = skip_spaces(line, end);
      if (end >= line.size() || (line[end] != ',' && line[end] != ')')) continue;
    }
    return id;
  }
  return std::nullopt;
}

// `<=` and `=` may be surrounded by spaces; the anchor up to the operator
// is matched literally.
inline std::optional<std::uint32_t> match_operator(std::string_view line, std::string_view head, std::string_view op) {
  for (auto pos = line.find(head); pos != std::string_view::npos; pos = line.find(head, pos + 1)) {
    std::size_t i = skip_spaces(line, pos + head.size());
    if (line.substr(i, op.size()) != op) continue;
    i = skip_spaces(line, i + op.size());
    std::size_t end = 0;
    auto id = read_trace_id(line, i, end);
    if (!id) continue;
    if (end < line.size() && is_ident_char(line[end])) continue;
    return id;
  }
  return std::nullopt;
}

}  // namespace detail

// Patterns are tried in kind order; the first that matches decides.
inline std::optional<ClassifiedLine> classify_line(std::string_view line) {
  using detail::IdTail;
  if (auto id = detail::match_operator(line, "CarPropertyValue.getPropertyId()", "<="))
    return ClassifiedLine{TraceKind::GetPropertyIdReturn, *id};
  if (auto id = detail::match_anchor(line, "ICarProperty$Stub$Proxy.getProperty(", true, IdTail::ArgumentEnd))
    return ClassifiedLine{TraceKind::StubProxyGetProperty, *id};
  if (auto id = detail::match_anchor(line, "CarPropertyManagerEx.getProperty(", true, IdTail::ArgumentEnd))
    return ClassifiedLine{TraceKind::ManagerExGetProperty, *id};
  if (auto id = detail::match_operator(line, ".prop", "="))
    return ClassifiedLine{TraceKind::PropAssignment, *id};
  if (auto id = detail::match_anchor(line, "registerListener: propId is not in config list:", true, IdTail::Boundary))
    return ClassifiedLine{TraceKind::RegisterListenerNotInConfig, *id};
  return std::nullopt;
}

struct TraceEvent {
  std::int64_t timestamp_ms = 0;
  std::string package;
  TraceKind kind = TraceKind::GetPropertyIdReturn;
  std::uint32_t property = 0;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct TraceWindow {
  std::int64_t start_ms = 0;
  std::int64_t duration_ms = 300'000;
  std::vector<TraceEvent> events;
  std::vector<std::string> warnings;

  double duration_seconds() const { return static_cast<double>(duration_ms) / 1000.0; }
};

struct TraceOptions {
  std::int64_t window_ms = 300'000;
  // Spacing used to synthesize timestamps for lines without a usable prefix.
  std::int64_t synthetic_spacing_ms = 1;
};

namespace detail {

enum class StampState { Absent, Valid, Malformed };

// frida-trace prefixes lines with a relative time like "  12345 ms  ".
inline StampState read_timestamp(std::string_view line, std::int64_t& ms) {
  std::size_t i = skip_spaces(line, 0);
  std::size_t j = i;
  while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
  if (j == i) return StampState::Absent;
  const std::size_t k = skip_spaces(line, j);
  if (line.substr(k, 2) != "ms" || (k + 2 < line.size() && line[k + 2] != ' ' && line[k + 2] != '\t'))
    return StampState::Absent;
  const auto token = line.substr(i, j - i);
  if (!std::all_of(token.begin(), token.end(), is_digit) || token.size() > 15) return StampState::Malformed;
  ms = std::stoll(std::string(token));
  return StampState::Valid;
}

}  // namespace detail

inline TraceWindow parse_trace_text(std::string_view text, const std::string& package, const TraceOptions& opts = {}) {
  TraceWindow window;
  window.duration_ms = opts.window_ms;
  const auto lines = split_lines(text);
  for (std::size_t index = 0; index < lines.size(); ++index) {
    const auto& line = lines[index];
    auto cls = classify_line(line);
    if (!cls) continue;
    std::int64_t ts = 0;
    switch (detail::read_timestamp(line, ts)) {
      case detail::StampState::Valid:
        break;
      case detail::StampState::Malformed:
        window.warnings.push_back("line " + std::to_string(index + 1) + ": malformed timestamp, synthesized");
        [[fallthrough]];
      case detail::StampState::Absent:
        ts = static_cast<std::int64_t>(index) * opts.synthetic_spacing_ms;
        break;
    }
    window.events.push_back({ts, package, cls->kind, cls->property});
  }
  std::stable_sort(window.events.begin(), window.events.end(),
                   [](const TraceEvent& a, const TraceEvent& b) { return a.timestamp_ms < b.timestamp_ms; });
  const auto end_ms = window.start_ms + window.duration_ms;
  const auto before = window.events.size();
  std::erase_if(window.events, [&](const TraceEvent& e) { return e.timestamp_ms < window.start_ms || e.timestamp_ms > end_ms; });
  if (window.events.size() != before) {
    window.warnings.push_back(std::to_string(before - window.events.size()) + " event(s) outside the " +
                              std::to_string(window.duration_ms / 1000) + " s window dropped");
  }
  return window;
}

inline TraceWindow parse_trace(const fs::path& file, const std::string& package, const TraceOptions& opts = {}) {
  auto text = try_read_file(file);
  if (!text) throw ParseError("cannot read trace: " + file.string());
  return parse_trace_text(*text, package, opts);
}

struct OccurrenceHistogram {
  // property key -> raw occurrences
  std::map<std::string, std::uint64_t> per_property;
  std::array<std::uint64_t, 7> per_category{};
  // package -> property key -> occurrences
  std::map<std::string, std::map<std::string, std::uint64_t>> per_package;
  // bucket index -> property key -> occurrences; empty when bucketing is off
  std::int64_t bucket_ms = 0;
  std::vector<std::map<std::string, std::uint64_t>> buckets;
  // property key -> catalog record (synthesized for unknown ids)
  std::map<std::string, VhalPropertyRecord> records;

  std::uint64_t total() const {
    std::uint64_t s = 0;
    for (const auto& [k, v] : per_property) s += v;
    return s;
  }
};

// Raw counts, no deduplication. Ids missing from the catalog are kept under
// their hex rendering and counted as Uncategorized.
inline OccurrenceHistogram occurrence_histogram(const TraceWindow& window, const OemProfile& catalog,
                                                std::int64_t bucket_ms = 0) {
  OccurrenceHistogram h;
  h.bucket_ms = bucket_ms;
  if (bucket_ms > 0) {
    const auto n = (window.duration_ms + bucket_ms - 1) / bucket_ms;
    h.buckets.resize(static_cast<std::size_t>(std::max<std::int64_t>(n, 1)));
  }
  std::unordered_map<std::uint32_t, const VhalPropertyRecord*> by_id;
  for (const auto& p : catalog.properties) {
    if (p.id.numeric) by_id.emplace(*p.id.numeric, &p);
  }
  for (const auto& e : window.events) {
    std::string key;
    PropertyCategory cat = PropertyCategory::Uncategorized;
    if (auto it = by_id.find(e.property); it != by_id.end()) {
      key = it->second->key();
      cat = it->second->category;
      h.records.emplace(key, *it->second);
    } else {
      key = hex_id(e.property);
      if (!h.records.count(key)) {
        VhalPropertyRecord rec;
        rec.id.numeric = e.property;
        rec.description = "unknown property " + key;
        rec.oem = catalog.label;
        h.records.emplace(key, std::move(rec));
      }
    }
    ++h.per_property[key];
    ++h.per_category[static_cast<std::size_t>(cat)];
    ++h.per_package[e.package][key];
    if (bucket_ms > 0) {
      auto idx = static_cast<std::size_t>((e.timestamp_ms - window.start_ms) / bucket_ms);
      idx = std::min(idx, h.buckets.size() - 1);
      ++h.buckets[idx][key];
    }
  }
  return h;
}

inline double round2(double v) { return std::round(v * 100.0) / 100.0; }

// Events per second for one property, rounded to two decimals.
inline double access_frequency(const TraceWindow& window, std::uint32_t property) {
  if (window.duration_ms <= 0) throw DomainError("access frequency over a zero-length window");
  const auto n = std::count_if(window.events.begin(), window.events.end(),
                               [&](const TraceEvent& e) { return e.property == property; });
  return round2(static_cast<double>(n) / window.duration_seconds());
}

inline double access_frequency(std::uint64_t count, double duration_seconds) {
  if (duration_seconds <= 0.0) throw DomainError("access frequency over a zero-length window");
  return round2(static_cast<double>(count) / duration_seconds);
}

inline std::string format_hz(double hz) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", hz);
  return buf;
}

inline TraceWindow merge_windows(const std::vector<TraceWindow>& windows) {
  TraceWindow merged;
  if (windows.empty()) return merged;
  merged.start_ms = windows.front().start_ms;
  merged.duration_ms = windows.front().duration_ms;
  for (const auto& w : windows) {
    merged.events.insert(merged.events.end(), w.events.begin(), w.events.end());
    merged.warnings.insert(merged.warnings.end(), w.warnings.begin(), w.warnings.end());
  }
  std::stable_sort(merged.events.begin(), merged.events.end(),
                   [](const TraceEvent& a, const TraceEvent& b) { return a.timestamp_ms < b.timestamp_ms; });
  return merged;
}

// {package: {property: count}, "categories": {A..F,U: count}, "frequency": {property: hz}}
inline json dynamic_json(const OccurrenceHistogram& h, const TraceWindow& window) {
  json j = json::object();
  for (const auto& [pkg, props] : h.per_package) j[pkg] = props;
  json cats = json::object();
  for (auto c : kAllCategories) cats[std::string(1, category_letter(c))] = h.per_category[static_cast<std::size_t>(c)];
  j["categories"] = cats;
  json freq = json::object();
  for (const auto& [key, n] : h.per_property) freq[key] = access_frequency(n, window.duration_seconds());
  j["frequency"] = freq;
  return j;
}

inline std::string timeline_csv(const OccurrenceHistogram& h) {
  std::string out = "bucket_start_s,property,count\n";
  for (std::size_t i = 0; i < h.buckets.size(); ++i) {
    const auto start_s = static_cast<double>(static_cast<std::int64_t>(i) * h.bucket_ms) / 1000.0;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", start_s);
    for (const auto& [key, n] : h.buckets[i]) out += std::string(buf) + "," + csv_field(key) + "," + std::to_string(n) + "\n";
  }
  return out;
}

inline json dynamic_summary_json(const OccurrenceHistogram& h, const TraceWindow& window, const std::string& oem) {
  json records = json::object();
  for (const auto& [key, rec] : h.records) {
    json r = {{"description", rec.description}, {"category", std::string(1, category_letter(rec.category))}};
    if (!rec.id.symbolic.empty()) r["name"] = rec.id.symbolic;
    if (rec.id.numeric) r["id"] = hex_id(*rec.id.numeric);
    records[key] = r;
  }
  json cats = json::object();
  for (auto c : kAllCategories) cats[std::string(1, category_letter(c))] = h.per_category[static_cast<std::size_t>(c)];
  return {{"oem", oem},
          {"window_s", window.duration_seconds()},
          {"event_count", h.total()},
          {"category_occurrences", cats},
          {"records", records},
          {"warnings", window.warnings}};
}

}  // namespace vhal_audit
