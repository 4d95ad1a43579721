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

// Keyword scanning over decompiled package source trees. Each directory
// directly under the scan root is one package (named by its reverse-DNS
// package name); every regular file below it with a scanned extension is
// searched for catalog property keys and vendor permission strings.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vhal_audit/core_model.hpp"
#include "vhal_audit/io.hpp"
#include "vhal_audit/parallel.hpp"

namespace vhal_audit {

struct ScanWarning {
  std::string path;
  std::string message;
};

struct ScanLog {
  std::vector<ScanWarning> warnings;
};

struct PropertyHit {
  std::string description;
  std::uint64_t occurrences = 0;

  friend bool operator==(const PropertyHit&, const PropertyHit&) = default;
};

using PackageProperties = std::map<std::string, PropertyHit>;
// package -> property key -> hit
using PropertyOccurrenceMap = std::map<std::string, PackageProperties>;
// package -> permissions found
using PermissionUsageMap = std::map<std::string, std::set<std::string>>;

class SourceTree {
public:
  explicit SourceTree(fs::path root,
                      std::vector<std::string> extensions = {".java", ".smali", ".xml", ".txt"})
      : root_(std::move(root)), extensions_(std::move(extensions)) {}

  const fs::path& root() const { return root_; }

  // (package name, directory) in lexicographic order.
  std::vector<std::pair<std::string, fs::path>> packages() const {
    std::error_code ec;
    if (!fs::is_directory(root_, ec)) throw ScanError("scan root is not a directory: " + root_.string());
    std::vector<std::pair<std::string, fs::path>> out;
    for (const auto& entry : fs::directory_iterator(root_)) {
      if (entry.is_directory()) out.emplace_back(entry.path().filename().string(), entry.path());
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Regular files under a package directory, filtered by extension and
  // sorted by path so each file is visited once in a fixed order.
  std::vector<fs::path> files(const fs::path& package_dir) const {
    std::vector<fs::path> out;
    std::error_code ec;
    fs::recursive_directory_iterator it(package_dir, fs::directory_options::skip_permission_denied, ec);
    for (; !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
      if (!it->is_regular_file(ec)) continue;
      if (accepts(it->path())) out.push_back(it->path());
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool accepts(const fs::path& p) const {
    if (extensions_.empty()) return true;
    const auto ext = to_lower(p.extension().string());
    return std::find(extensions_.begin(), extensions_.end(), ext) != extensions_.end();
  }

private:
  fs::path root_;
  std::vector<std::string> extensions_;
};

namespace detail {

// Lookup tables from every textual rendering of a catalog property to its
// index in the catalog.
struct PropertyIndex {
  std::unordered_map<std::string, std::size_t> symbolic;
  std::unordered_map<std::uint32_t, std::size_t> numeric;

  explicit PropertyIndex(const OemProfile& catalog) {
    for (std::size_t i = 0; i < catalog.properties.size(); ++i) {
      const auto& id = catalog.properties[i].id;
      if (!id.symbolic.empty()) symbolic.emplace(id.symbolic, i);
      if (id.numeric) numeric.emplace(*id.numeric, i);
    }
  }

  const std::size_t* lookup(std::string_view token) const {
    if (token.size() > 2 && token[0] == '0' && (token[1] == 'x' || token[1] == 'X')) {
      if (!std::all_of(token.begin() + 2, token.end(), is_hex_digit)) return nullptr;
      auto v = parse_numeric_id(token);
      if (!v) return nullptr;
      auto it = numeric.find(*v);
      return it == numeric.end() ? nullptr : &it->second;
    }
    if (std::all_of(token.begin(), token.end(), is_digit)) {
      auto v = parse_numeric_id(token);
      if (!v) return nullptr;
      auto it = numeric.find(*v);
      return it == numeric.end() ? nullptr : &it->second;
    }
    auto it = symbolic.find(std::string(token));
    return it == symbolic.end() ? nullptr : &it->second;
  }
};

// Counts identifier tokens ([A-Za-z0-9_]+ runs) that name a catalog property.
inline void count_property_tokens(std::string_view text, const PropertyIndex& index,
                                  std::vector<std::uint64_t>& counts) {
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_ident_char(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && is_ident_char(text[j])) ++j;
    if (const auto* idx = index.lookup(text.substr(i, j - i))) ++counts[*idx];
    i = j;
  }
}

inline bool is_permission_char(char c) { return is_ident_char(c) || c == '.'; }

inline bool contains_permission(std::string_view text, std::string_view perm) {
  if (perm.empty()) return false;
  for (auto pos = text.find(perm); pos != std::string_view::npos; pos = text.find(perm, pos + 1)) {
    const bool left_ok = pos == 0 || !is_permission_char(text[pos - 1]);
    const auto end = pos + perm.size();
    const bool right_ok = end == text.size() || !is_permission_char(text[end]);
    if (left_ok && right_ok) return true;
  }
  return false;
}

struct PackageScan {
  PackageProperties properties;
  std::set<std::string> permissions;
  std::vector<ScanWarning> warnings;
};

inline PackageScan scan_package(const SourceTree& tree, const fs::path& dir, const OemProfile* catalog,
                                const PropertyIndex* index, const std::set<std::string>* permissions) {
  PackageScan out;
  std::vector<std::uint64_t> counts(catalog ? catalog->properties.size() : 0, 0);
  for (const auto& file : tree.files(dir)) {
    auto content = try_read_file(file);
    if (!content) {
      out.warnings.push_back({file.string(), "unreadable file skipped"});
      continue;
    }
    if (index) count_property_tokens(*content, *index, counts);
    if (permissions) {
      for (const auto& perm : *permissions) {
        if (!out.permissions.count(perm) && contains_permission(*content, perm)) out.permissions.insert(perm);
      }
    }
  }
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    const auto& rec = catalog->properties[i];
    out.properties.emplace(rec.key(), PropertyHit{rec.description, counts[i]});
  }
  return out;
}

}  // namespace detail

struct StaticScanResult {
  PropertyOccurrenceMap properties;
  PermissionUsageMap permissions;
  ScanLog log;
};

// Single pass over the tree that fills both the property and permission maps.
inline StaticScanResult scan_static(const SourceTree& tree, const OemProfile& catalog,
                                    std::size_t max_workers = 0) {
  if (catalog.properties.empty()) throw ScanError("property catalog is empty");
  const auto packages = tree.packages();
  const detail::PropertyIndex index(catalog);
  auto scans = parallel_map<detail::PackageScan>(
      packages.size(),
      [&](std::size_t i) { return detail::scan_package(tree, packages[i].second, &catalog, &index, &catalog.permissions); },
      max_workers);
  StaticScanResult result;
  for (std::size_t i = 0; i < packages.size(); ++i) {
    auto& scan = scans[i];
    result.properties[packages[i].first] = std::move(scan.properties);
    result.permissions[packages[i].first] = std::move(scan.permissions);
    for (auto& w : scan.warnings) result.log.warnings.push_back(std::move(w));
  }
  return result;
}

inline PropertyOccurrenceMap scan_property_occurrences(const SourceTree& tree, const OemProfile& catalog,
                                                       ScanLog* log = nullptr) {
  if (catalog.properties.empty()) throw ScanError("property catalog is empty");
  const auto packages = tree.packages();
  const detail::PropertyIndex index(catalog);
  PropertyOccurrenceMap out;
  for (const auto& [name, dir] : packages) {
    auto scan = detail::scan_package(tree, dir, &catalog, &index, nullptr);
    out[name] = std::move(scan.properties);
    if (log) log->warnings.insert(log->warnings.end(), scan.warnings.begin(), scan.warnings.end());
  }
  return out;
}

inline PermissionUsageMap scan_permission_usage(const SourceTree& tree, const std::set<std::string>& permissions,
                                                ScanLog* log = nullptr) {
  PermissionUsageMap out;
  for (const auto& [name, dir] : tree.packages()) {
    auto scan = detail::scan_package(tree, dir, nullptr, nullptr, &permissions);
    out[name] = std::move(scan.permissions);
    if (log) log->warnings.insert(log->warnings.end(), scan.warnings.begin(), scan.warnings.end());
  }
  return out;
}

inline std::size_t unique_property_count(const PropertyOccurrenceMap& map, const std::string& package) {
  auto it = map.find(package);
  if (it == map.end()) throw KeyError("unknown package: " + package);
  return static_cast<std::size_t>(std::count_if(it->second.begin(), it->second.end(),
                                                [](const auto& kv) { return kv.second.occurrences >= 1; }));
}

struct CategorySummary {
  CategoryCounts distinct{};                      // distinct properties per category
  std::array<std::uint64_t, 7> occurrences{};     // summed occurrences per category
};

// Distinct properties across all packages, bucketed by the category their
// catalog record carries. Keys missing from the catalog fall back to the
// lexicon, then to Uncategorized.
inline CategorySummary summarize_by_category(const PropertyOccurrenceMap& map, const OemProfile& catalog,
                                             const CategoryLexicon& lexicon) {
  std::map<std::string, PropertyCategory> distinct;
  CategorySummary s;
  for (const auto& [pkg, props] : map) {
    for (const auto& [key, hit] : props) {
      auto it = distinct.find(key);
      if (it == distinct.end()) {
        PropertyCategory cat = PropertyCategory::Uncategorized;
        if (const auto* rec = catalog.find_key(key)) {
          cat = rec->category;
        } else {
          try {
            cat = lexicon.categorize(normalize_name(key));
          } catch (const NormalizationError&) {
          }
        }
        it = distinct.emplace(key, cat).first;
      }
      s.occurrences[static_cast<std::size_t>(it->second)] += hit.occurrences;
    }
  }
  for (const auto& [key, cat] : distinct) ++s.distinct[static_cast<std::size_t>(cat)];
  return s;
}

inline json properties_to_json(const PropertyOccurrenceMap& map) {
  json j = json::object();
  for (const auto& [pkg, props] : map) {
    json p = json::object();
    for (const auto& [key, hit] : props) p[key] = {{"description", hit.description}, {"occurrences", hit.occurrences}};
    j[pkg] = std::move(p);
  }
  return j;
}

inline PropertyOccurrenceMap properties_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("properties.json must be an object");
  PropertyOccurrenceMap map;
  for (const auto& [pkg, props] : j.items()) {
    auto& out = map[pkg];
    for (const auto& [key, hit] : props.items()) {
      out[key] = PropertyHit{hit.at("description").get<std::string>(), hit.at("occurrences").get<std::uint64_t>()};
    }
  }
  return map;
}

inline json permissions_to_json(const PermissionUsageMap& map) {
  json j = json::object();
  for (const auto& [pkg, perms] : map) j[pkg] = std::vector<std::string>(perms.begin(), perms.end());
  return j;
}

inline PermissionUsageMap permissions_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("permissions.json must be an object");
  PermissionUsageMap map;
  for (const auto& [pkg, perms] : j.items()) {
    auto& out = map[pkg];
    for (const auto& p : perms) out.insert(p.get<std::string>());
  }
  return map;
}

// Record descriptor shared by the static and dynamic summaries so the
// consistency phase can rebuild VhalPropertyRecords without the catalog.
inline json record_to_json(const VhalPropertyRecord& rec) {
  json j = {{"description", rec.description}, {"category", std::string(1, category_letter(rec.category))}};
  if (!rec.id.symbolic.empty()) j["name"] = rec.id.symbolic;
  if (rec.id.numeric) j["id"] = hex_id(*rec.id.numeric);
  return j;
}

inline VhalPropertyRecord record_from_json(const std::string& key, const json& j, const std::string& oem) {
  VhalPropertyRecord rec;
  rec.oem = oem;
  if (j.contains("name")) rec.id.symbolic = j.at("name").get<std::string>();
  if (j.contains("id")) rec.id.numeric = parse_numeric_id(j.at("id").get<std::string>());
  if (rec.id.symbolic.empty() && !rec.id.numeric) rec.id = PropertyId::from_key(key);
  rec.description = j.value("description", std::string());
  auto cat = parse_category(j.value("category", std::string("U")));
  rec.category = cat.value_or(PropertyCategory::Uncategorized);
  return rec;
}

// Side-car written next to properties.json / permissions.json.
inline json static_summary_json(const StaticScanResult& result, const OemProfile& catalog,
                                const CategoryLexicon& lexicon) {
  const auto observed = summarize_by_category(result.properties, catalog, lexicon);
  const auto catalog_counts = category_counts(catalog);
  json unique = json::object();
  for (const auto& [pkg, props] : result.properties) unique[pkg] = unique_property_count(result.properties, pkg);
  json records = json::object();
  for (const auto& [pkg, props] : result.properties) {
    for (const auto& [key, hit] : props) {
      if (records.contains(key)) continue;
      if (const auto* rec = catalog.find_key(key)) records[key] = record_to_json(*rec);
    }
  }
  json warnings = json::array();
  for (const auto& w : result.log.warnings) warnings.push_back({{"path", w.path}, {"message", w.message}});
  std::set<std::string> used_perms;
  for (const auto& [pkg, perms] : result.permissions) used_perms.insert(perms.begin(), perms.end());
  return {
      {"oem", catalog.label},
      {"catalog_category_counts", category_counts_json(catalog_counts)},
      {"total_property_count", catalog.properties.size()},
      {"total_permission_count", catalog.permissions.size()},
      {"observed_category_counts", category_counts_json(observed.distinct)},
      {"observed_property_count", total(observed.distinct)},
      {"used_permission_count", used_perms.size()},
      {"unique_properties", unique},
      {"records", records},
      {"warnings", warnings},
  };
}

}  // namespace vhal_audit
