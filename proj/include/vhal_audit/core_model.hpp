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
#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vhal_audit/errors.hpp"
#include "vhal_audit/io.hpp"

namespace vhal_audit {

// Six functional groups of vendor properties, plus a fallback bucket for
// names no lexicon rule recognises.
enum class PropertyCategory : std::uint8_t {
  UserPreferencesAndNotifications,
  DrivingAssistanceAndModeSecurity,
  EnergyAndMaintenance,
  Lighting,
  DiagnosticAndMonitoring,
  ClimateAndComfort,
  Uncategorized,
};

inline constexpr std::array<PropertyCategory, 7> kAllCategories = {
    PropertyCategory::UserPreferencesAndNotifications,
    PropertyCategory::DrivingAssistanceAndModeSecurity,
    PropertyCategory::EnergyAndMaintenance,
    PropertyCategory::Lighting,
    PropertyCategory::DiagnosticAndMonitoring,
    PropertyCategory::ClimateAndComfort,
    PropertyCategory::Uncategorized,
};

inline constexpr char category_letter(PropertyCategory c) {
  constexpr std::array<char, 7> letters = {'A', 'B', 'C', 'D', 'E', 'F', 'U'};
  return letters[static_cast<std::size_t>(c)];
}

inline constexpr std::string_view category_name(PropertyCategory c) {
  constexpr std::array<std::string_view, 7> names = {
      "UserPreferencesAndNotifications",
      "DrivingAssistanceAndModeSecurity",
      "EnergyAndMaintenance",
      "Lighting",
      "DiagnosticAndMonitoring",
      "ClimateAndComfort",
      "Uncategorized",
  };
  return names[static_cast<std::size_t>(c)];
}

// Short table labels used in rendered reports.
inline constexpr std::string_view category_title(PropertyCategory c) {
  constexpr std::array<std::string_view, 7> titles = {
      "User Preferences",        "Driving assistance",          "Energy and Maintenance",
      "Lighting",                "Diagnostic and Monitoring",   "Climate and Comfort",
      "Uncategorized",
  };
  return titles[static_cast<std::size_t>(c)];
}

// Accepts a letter ("F"), or a full category name.
inline std::optional<PropertyCategory> parse_category(std::string_view s) {
  for (auto c : kAllCategories) {
    if (s.size() == 1 && (s[0] == category_letter(c) || s[0] == category_letter(c) + ('a' - 'A')))
      return c;
    if (s == category_name(c)) return c;
  }
  return std::nullopt;
}

inline std::string hex_id(std::uint32_t v) {
  char buf[16];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v, 16);
  return "0x" + std::string(buf, end);
}

// Parses "0x1A2B" / "0X1a2b" or plain decimal. Rejects anything that does not
// fit in 32 bits or has trailing characters.
inline std::optional<std::uint32_t> parse_numeric_id(std::string_view s) {
  int base = 10;
  if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    s.remove_prefix(2);
    base = 16;
  }
  if (s.empty()) return std::nullopt;
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (ec != std::errc() || ptr != s.data() + s.size() || v > 0xFFFFFFFFULL) return std::nullopt;
  return static_cast<std::uint32_t>(v);
}

// Upper-cases and folds every non-alphanumeric character into a single
// underscore separator, then strips leading/trailing separators.
inline std::string normalize_name(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_sep = false;
  for (char c : raw) {
    const bool alnum = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
    if (!alnum) {
      pending_sep = true;
      continue;
    }
    if (pending_sep && !out.empty()) out += '_';
    pending_sep = false;
    out += (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c;
  }
  if (out.empty()) throw NormalizationError("name is empty after normalization: '" + std::string(raw) + "'");
  return out;
}

inline std::vector<std::string> split_tokens(std::string_view normalized) {
  std::vector<std::string> tokens;
  std::size_t start = 0;
  while (start < normalized.size()) {
    auto end = normalized.find('_', start);
    if (end == std::string_view::npos) end = normalized.size();
    if (end > start) tokens.emplace_back(normalized.substr(start, end - start));
    start = end + 1;
  }
  return tokens;
}

// Numeric and/or symbolic identity of a vehicle property. The key form is the
// symbolic name when present, otherwise the 0x-hex rendering.
struct PropertyId {
  std::optional<std::uint32_t> numeric;
  std::string symbolic;

  std::string key() const { return symbolic.empty() ? (numeric ? hex_id(*numeric) : std::string()) : symbolic; }

  static PropertyId from_key(std::string_view raw) {
    PropertyId id;
    const auto t = trim(raw);
    if (t.size() > 2 && t[0] == '0' && (t[1] == 'x' || t[1] == 'X')) {
      id.numeric = parse_numeric_id(t);
      if (!id.numeric) throw NormalizationError("bad hex property id: " + std::string(raw));
      return id;
    }
    if (!t.empty() && std::all_of(t.begin(), t.end(), is_digit)) {
      id.numeric = parse_numeric_id(t);
      if (!id.numeric) throw NormalizationError("property id out of range: " + std::string(raw));
      return id;
    }
    id.symbolic = normalize_name(t);
    return id;
  }

  friend bool operator==(const PropertyId&, const PropertyId&) = default;
};

struct LexiconRule {
  std::set<std::string> tokens;
  PropertyCategory category = PropertyCategory::Uncategorized;
  int priority = 0;
};

class CategoryLexicon {
public:
  CategoryLexicon() = default;
  explicit CategoryLexicon(std::vector<LexiconRule> rules) : rules_(std::move(rules)) {}

  const std::vector<LexiconRule>& rules() const { return rules_; }

  // Highest priority wins; among equal priorities the earlier rule wins.
  PropertyCategory categorize(std::string_view normalized) const {
    const auto tokens = split_tokens(normalized);
    const LexiconRule* best = nullptr;
    for (const auto& rule : rules_) {
      const bool hit = std::any_of(tokens.begin(), tokens.end(),
                                   [&](const std::string& t) { return rule.tokens.count(t) > 0; });
      if (hit && (best == nullptr || rule.priority > best->priority)) best = &rule;
    }
    return best ? best->category : PropertyCategory::Uncategorized;
  }

  static CategoryLexicon from_json(const json& j) {
    if (!j.is_array()) throw ConfigError("lexicon must be a JSON array");
    std::vector<LexiconRule> rules;
    for (const auto& entry : j) {
      if (!entry.is_object() || !entry.contains("tokens") || !entry.contains("category"))
        throw ConfigError("lexicon rule needs 'tokens' and 'category'");
      LexiconRule rule;
      for (const auto& t : entry.at("tokens")) rule.tokens.insert(normalize_name(t.get<std::string>()));
      auto cat = parse_category(entry.at("category").get<std::string>());
      if (!cat || *cat == PropertyCategory::Uncategorized)
        throw ConfigError("lexicon category must be A..F, got " + entry.at("category").dump());
      rule.category = *cat;
      rule.priority = entry.value("priority", 0);
      rules.push_back(std::move(rule));
    }
    return CategoryLexicon(std::move(rules));
  }

  static CategoryLexicon load(const fs::path& path) { return from_json(read_json_file(path)); }

  static CategoryLexicon builtin();

private:
  std::vector<LexiconRule> rules_;
};

inline PropertyCategory categorize_property(std::string_view name, const CategoryLexicon& lexicon) {
  return lexicon.categorize(name);
}

// Shipped as data/lexicon.json too; a unit test keeps both copies identical.
inline constexpr std::string_view kDefaultLexiconJson = R"([
  {"tokens": ["HVAC", "CLIMATE", "FAN", "AC", "DEFROST", "DEFROSTER", "TEMPERATURE", "TEMP", "HEATER", "HEATED", "VENTILATION", "VENTILATED", "RECIRC", "RECIRCULATION", "COMFORT", "MASSAGE", "HUMIDITY", "AIRFLOW"], "category": "F", "priority": 30},
  {"tokens": ["LIGHT", "LIGHTS", "LIGHTING", "LAMP", "HEADLIGHT", "HEADLIGHTS", "HAZARD", "FOG", "ILLUMINATION", "AMBIENT", "BEAM", "HIGHBEAM", "DRL", "DIMMING", "DAYTIME"], "category": "D", "priority": 30},
  {"tokens": ["BATTERY", "CHARGE", "CHARGING", "CHARGER", "EV", "FUEL", "ENERGY", "RANGE", "MAINTENANCE", "OIL", "VOLTAGE", "CONSUMPTION", "CONNECTOR", "PROPULSION", "SERVICE"], "category": "C", "priority": 25},
  {"tokens": ["BELT", "AIRBAG", "LANE", "CRUISE", "COLLISION", "ADAS", "ASSIST", "BLIND", "PARKING", "PARK", "GEAR", "BRAKE", "STEERING", "SECURITY", "ALARM", "LOCK", "TRAILER", "DRIVE", "DRIVING", "MODE", "IGNITION", "TRANSMISSION"], "category": "B", "priority": 25},
  {"tokens": ["DIAGNOSTIC", "DIAGNOSTICS", "DTC", "FAULT", "ERROR", "TPMS", "TIRE", "PRESSURE", "ODOMETER", "ENGINE", "RPM", "MONITOR", "MONITORING", "SENSOR", "SPEED", "MASS", "ESTIMATE", "VIN", "MAKE", "MODEL"], "category": "E", "priority": 20},
  {"tokens": ["SEAT", "MIRROR", "WINDOW", "SUNROOF"], "category": "F", "priority": 15},
  {"tokens": ["PREFERENCE", "PREFERENCES", "PROFILE", "USER", "NOTIFICATION", "NOTIFICATIONS", "ALERT", "CHIME", "REMINDER", "LANGUAGE", "UNITS", "UNIT", "DISPLAY", "THEME", "CLOCK", "MEMORY", "PERSONALIZATION", "VOLUME", "SETTING", "SETTINGS"], "category": "A", "priority": 10}
]
)";

inline CategoryLexicon CategoryLexicon::builtin() {
  return from_json(json::parse(kDefaultLexiconJson));
}

struct VhalPropertyRecord {
  PropertyId id;
  std::string description;
  PropertyCategory category = PropertyCategory::Uncategorized;
  std::string oem;

  std::string key() const { return id.key(); }

  // Name used for token-based matching. Hex-only records fall back to their
  // description so they can still be categorized and mapped.
  std::string match_name() const {
    if (!id.symbolic.empty()) return id.symbolic;
    try {
      return normalize_name(description);
    } catch (const NormalizationError&) {
      return {};
    }
  }
};

struct OemProfile {
  std::string label;
  std::vector<VhalPropertyRecord> properties;
  std::set<std::string> permissions;

  const VhalPropertyRecord* find_key(std::string_view key) const {
    for (const auto& p : properties) {
      if (p.key() == key) return &p;
    }
    return nullptr;
  }

  const VhalPropertyRecord* find_numeric(std::uint32_t v) const {
    for (const auto& p : properties) {
      if (p.id.numeric && *p.id.numeric == v) return &p;
    }
    return nullptr;
  }
};

// Catalog JSON: {"<hex id or symbolic name>": "description"} or, for richer
// catalogs, {"<key>": {"description": "...", "id": "0x..", "name": "..", "category": "F"}}.
inline OemProfile parse_catalog(const json& j, std::string label, const CategoryLexicon& lexicon) {
  if (!j.is_object()) throw ConfigError("catalog must be a JSON object");
  OemProfile profile;
  profile.label = std::move(label);
  std::set<std::string> seen_keys;
  std::set<std::uint32_t> seen_numeric;
  for (const auto& [raw_key, value] : j.items()) {
    VhalPropertyRecord rec;
    rec.oem = profile.label;
    rec.id = PropertyId::from_key(raw_key);
    std::optional<PropertyCategory> explicit_category;
    if (value.is_string()) {
      rec.description = value.get<std::string>();
    } else if (value.is_object()) {
      rec.description = value.value("description", std::string());
      if (value.contains("name")) rec.id.symbolic = normalize_name(value.at("name").get<std::string>());
      if (value.contains("id")) {
        const auto& idv = value.at("id");
        std::optional<std::uint32_t> n;
        if (idv.is_number_unsigned()) n = idv.get<std::uint32_t>();
        else if (idv.is_string()) n = parse_numeric_id(idv.get<std::string>());
        if (!n) throw ConfigError("bad numeric id for catalog entry " + raw_key);
        rec.id.numeric = n;
      }
      if (value.contains("category")) {
        explicit_category = parse_category(value.at("category").get<std::string>());
        if (!explicit_category) throw ConfigError("bad category for catalog entry " + raw_key);
      }
    } else {
      throw ConfigError("catalog value for " + raw_key + " must be a string or object");
    }
    if (rec.description.empty()) throw ConfigError("catalog entry " + raw_key + " has an empty description");
    if (!seen_keys.insert(rec.key()).second) throw ConfigError("duplicate property in catalog: " + rec.key());
    if (rec.id.numeric && !seen_numeric.insert(*rec.id.numeric).second)
      throw ConfigError("duplicate numeric property id in catalog: " + hex_id(*rec.id.numeric));
    if (explicit_category) {
      rec.category = *explicit_category;
    } else {
      const auto name = rec.match_name();
      rec.category = name.empty() ? PropertyCategory::Uncategorized : lexicon.categorize(name);
    }
    profile.properties.push_back(std::move(rec));
  }
  return profile;
}

inline OemProfile load_catalog(const fs::path& path, std::string label, const CategoryLexicon& lexicon) {
  return parse_catalog(read_json_file(path), std::move(label), lexicon);
}

// Permission catalog: JSON array of strings, or plain text with one
// permission per line ('#' comments allowed).
inline std::set<std::string> parse_permission_catalog(std::string_view text) {
  std::set<std::string> perms;
  const auto t = trim(text);
  if (!t.empty() && t.front() == '[') {
    json j;
    try {
      j = json::parse(t);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("permission catalog: ") + e.what());
    }
    for (const auto& p : j) perms.insert(p.get<std::string>());
    return perms;
  }
  for (const auto& line : split_lines(text)) {
    const auto l = trim(line);
    if (l.empty() || l.front() == '#') continue;
    perms.emplace(l);
  }
  return perms;
}

inline std::set<std::string> load_permission_catalog(const fs::path& path) {
  return parse_permission_catalog(read_file(path));
}

// Distinct-property counts per category, indexed by PropertyCategory.
using CategoryCounts = std::array<std::size_t, 7>;

inline std::size_t total(const CategoryCounts& c) {
  std::size_t s = 0;
  for (auto v : c) s += v;
  return s;
}

inline CategoryCounts category_counts(const OemProfile& profile) {
  CategoryCounts counts{};
  for (const auto& p : profile.properties) ++counts[static_cast<std::size_t>(p.category)];
  return counts;
}

inline json category_counts_json(const CategoryCounts& c) {
  json j = json::object();
  for (auto cat : kAllCategories) j[std::string(1, category_letter(cat))] = c[static_cast<std::size_t>(cat)];
  return j;
}

}  // namespace vhal_audit
