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

// Joins collected-property evidence against policy flows and renders the
// final report bundle.

#pragma once

#include <algorithm>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vhal_audit/core_model.hpp"
#include "vhal_audit/errors.hpp"
#include "vhal_audit/extractor.hpp"
#include "vhal_audit/io.hpp"
#include "vhal_audit/similarity.hpp"
#include "vhal_audit/static_analyzer.hpp"

namespace vhal_audit {

struct DataTypeEntry {
  std::string name;
  std::vector<std::vector<std::string>> keywords;  // token sequences, e.g. {SEAT, BELT}
  std::vector<PropertyCategory> categories;
  std::vector<std::string> policy_terms;
  bool policy_only = false;
};

// Words that carry no meaning when comparing data-type names.
inline const std::set<std::string, std::less<>>& disclosure_stopwords() {
  static const std::set<std::string, std::less<>> words = {
      "a",    "an",      "and",     "or",       "the",  "of",     "for",  "to",       "in",      "on",
      "with", "your",    "our",     "their",    "data", "information", "info", "vehicle", "vehicles", "car",
      "cars", "details", "status",  "settings", "setting", "personal", "other", "such", "as", "including",
      "any",  "all",     "related", "certain",  "about", "from"};
  return words;
}

// Lowercase content tokens of a free-text data-type phrase.
inline std::set<std::string> content_tokens(std::string_view phrase) {
  std::set<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty() && !disclosure_stopwords().count(cur)) out.insert(cur);
    cur.clear();
  };
  for (char c : phrase) {
    if (std::isalnum(static_cast<unsigned char>(c)) != 0) {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

class DataTypeTaxonomy {
public:
  DataTypeTaxonomy() = default;
  explicit DataTypeTaxonomy(std::vector<DataTypeEntry> entries) : entries_(std::move(entries)) {
    for (const auto& e : entries_) {
      auto toks = content_tokens(e.name);
      for (const auto& t : e.policy_terms) {
        auto more = content_tokens(t);
        toks.insert(more.begin(), more.end());
      }
      tokens_.push_back(std::move(toks));
    }
  }

  static DataTypeTaxonomy from_json(const json& j) {
    if (!j.is_array()) throw ConfigError("taxonomy must be a JSON array");
    std::vector<DataTypeEntry> entries;
    std::set<std::string> names;
    for (const auto& item : j) {
      DataTypeEntry e;
      try {
        e.name = to_lower(trim(item.at("name").get<std::string>()));
        for (const auto& k : item.value("keywords", json::array())) {
          auto toks = split_tokens(normalize_name(k.get<std::string>()));
          if (!toks.empty()) e.keywords.push_back(std::move(toks));
        }
        for (const auto& c : item.value("categories", json::array())) {
          const auto cat = parse_category(c.get<std::string>());
          if (!cat || *cat == PropertyCategory::Uncategorized)
            throw ConfigError("taxonomy entry '" + e.name + "' has an unknown category " + c.dump());
          e.categories.push_back(*cat);
        }
        for (const auto& t : item.value("policy_terms", json::array())) e.policy_terms.push_back(to_lower(t.get<std::string>()));
        e.policy_only = item.value("policy_only", false);
      } catch (const json::exception& ex) {
        throw ConfigError(std::string("taxonomy: ") + ex.what());
      } catch (const NormalizationError& ex) {
        throw ConfigError(std::string("taxonomy keyword: ") + ex.what());
      }
      if (e.name.empty()) throw ConfigError("taxonomy entry with an empty name");
      if (!names.insert(e.name).second) throw ConfigError("duplicate taxonomy entry '" + e.name + "'");
      if (e.categories.empty() && !e.policy_only)
        throw ConfigError("taxonomy entry '" + e.name + "' maps to no property category and is not policy_only");
      entries.push_back(std::move(e));
    }
    return DataTypeTaxonomy(std::move(entries));
  }

  static DataTypeTaxonomy load(const fs::path& p) { return from_json(read_json_file(p)); }
  static DataTypeTaxonomy builtin();

  const std::vector<DataTypeEntry>& entries() const { return entries_; }
  const std::set<std::string>& tokens(std::size_t i) const { return tokens_[i]; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].name == name) return i;
    }
    return std::nullopt;
  }

private:
  std::vector<DataTypeEntry> entries_;
  std::vector<std::set<std::string>> tokens_;
};

// Shipped as data/taxonomy.json too; a unit test keeps both identical.
inline constexpr std::string_view kDefaultTaxonomyJson = R"([
  {"name": "user preferences", "categories": ["A"],
   "keywords": ["USER", "NOTIFICATION", "DISPLAY_UNITS", "LANGUAGE"],
   "policy_terms": ["preferences", "user preferences", "profile"]},
  {"name": "driver safety data", "categories": ["B"],
   "keywords": ["SEAT_BELT", "AIRBAG", "LANE", "COLLISION", "BLIND_SPOT"],
   "policy_terms": ["safety", "seat belt", "airbag", "driver assistance", "driving assistance", "crash", "collision", "lane departure"]},
  {"name": "energy and charging", "categories": ["C"],
   "keywords": ["BATTERY", "CHARGE", "FUEL", "EV"],
   "policy_terms": ["battery", "charging", "fuel", "energy", "electricity"]},
  {"name": "lighting", "categories": ["D"],
   "keywords": ["LIGHT", "LIGHTS", "HEADLIGHTS", "FOG"],
   "policy_terms": ["lighting", "lights", "headlight", "headlights"]},
  {"name": "vehicle diagnostics", "categories": ["E"],
   "keywords": ["TPMS", "ENGINE", "ODOMETER", "TIRE_PRESSURE", "PERF_VEHICLE_SPEED", "VIN"],
   "policy_terms": ["diagnostic", "diagnostics", "odometer", "mileage", "tire pressure", "health", "performance", "speed", "vin", "identification"]},
  {"name": "climate and comfort", "categories": ["F"],
   "keywords": ["HVAC", "FAN", "TEMPERATURE", "DEFROSTER", "SEAT_HEATING"],
   "policy_terms": ["climate", "hvac", "temperature", "comfort", "heating", "air conditioning"]},
  {"name": "location data", "policy_only": true,
   "policy_terms": ["location", "geolocation", "gps"]}
]
)";

inline DataTypeTaxonomy DataTypeTaxonomy::builtin() { return from_json(json::parse(kDefaultTaxonomyJson)); }

namespace detail {

inline bool contains_sequence(const std::vector<std::string>& hay, const std::vector<std::string>& needle) {
  if (needle.empty() || needle.size() > hay.size()) return false;
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

inline std::vector<std::string> name_tokens(const VhalPropertyRecord& rec) {
  try {
    return split_tokens(normalize_name(rec.match_name()));
  } catch (const NormalizationError&) {
    return {};
  }
}

}  // namespace detail

// Entry indices hit by keyword or by the property's category, in taxonomy order.
inline std::vector<std::size_t> map_property_to_entries(const VhalPropertyRecord& rec, const DataTypeTaxonomy& tax) {
  const auto tokens = detail::name_tokens(rec);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < tax.entries().size(); ++i) {
    const auto& e = tax.entries()[i];
    const bool by_cat = std::find(e.categories.begin(), e.categories.end(), rec.category) != e.categories.end();
    const bool by_kw = std::any_of(e.keywords.begin(), e.keywords.end(),
                                   [&](const auto& k) { return detail::contains_sequence(tokens, k); });
    if (by_cat || by_kw) out.push_back(i);
  }
  return out;
}

inline std::vector<std::string> map_property_to_datatypes(const VhalPropertyRecord& rec, const DataTypeTaxonomy& tax) {
  std::vector<std::string> out;
  for (auto i : map_property_to_entries(rec, tax)) out.push_back(tax.entries()[i].name);
  return out;
}

enum class DisclosureStatus { Disclosed, Omitted };

inline std::string_view status_name(DisclosureStatus s) { return s == DisclosureStatus::Disclosed ? "Disclosed" : "Omitted"; }

enum class SubjectKind { Property, DataCategory, PropertyCategory };

struct DisclosureVerdict {
  SubjectKind kind = SubjectKind::Property;
  std::string subject;
  DisclosureStatus status = DisclosureStatus::Omitted;
  std::vector<std::string> data_types;        // mapped entries (properties) / members (categories)
  std::vector<std::size_t> supporting_flows;  // indices into the flow list
};

// Flow indices whose data types share a content token with taxonomy entry i.
inline std::vector<std::size_t> supporting_flows(std::size_t entry, const DataTypeTaxonomy& tax,
                                                 const std::vector<PolicyDataFlow>& flows) {
  std::vector<std::size_t> out;
  const auto& want = tax.tokens(entry);
  for (std::size_t f = 0; f < flows.size(); ++f) {
    if (!is_disclosure_verb(flows[f].action_verb)) continue;
    const bool hit = std::any_of(flows[f].data_types.begin(), flows[f].data_types.end(), [&](const std::string& dt) {
      const auto have = content_tokens(dt);
      return std::any_of(have.begin(), have.end(), [&](const std::string& t) { return want.count(t) > 0; });
    });
    if (hit) out.push_back(f);
  }
  return out;
}

// Verdicts in a fixed order: properties (by key), then taxonomy data
// categories that have at least one collected property (taxonomy order), then
// property categories A..F with at least one collected property.
inline std::vector<DisclosureVerdict> disclosure_check(const std::map<std::string, VhalPropertyRecord>& collected,
                                                       const std::vector<PolicyDataFlow>& flows,
                                                       const DataTypeTaxonomy& tax) {
  std::vector<DisclosureVerdict> out;
  if (collected.empty()) return out;
  std::vector<std::vector<std::size_t>> support(tax.entries().size());
  for (std::size_t i = 0; i < tax.entries().size(); ++i) support[i] = supporting_flows(i, tax, flows);

  std::vector<std::vector<std::string>> entry_members(tax.entries().size());
  std::vector<bool> entry_disclosed(tax.entries().size(), false);
  std::array<int, 7> cat_state{};  // 0 none collected, 1 collected, 2 disclosed
  std::array<std::vector<std::string>, 7> cat_members;

  for (const auto& [key, rec] : collected) {
    DisclosureVerdict v;
    v.kind = SubjectKind::Property;
    v.subject = key;
    std::set<std::size_t> sup;
    const auto entries = map_property_to_entries(rec, tax);
    for (auto i : entries) {
      v.data_types.push_back(tax.entries()[i].name);
      sup.insert(support[i].begin(), support[i].end());
    }
    v.supporting_flows.assign(sup.begin(), sup.end());
    v.status = sup.empty() ? DisclosureStatus::Omitted : DisclosureStatus::Disclosed;
    const bool disclosed = v.status == DisclosureStatus::Disclosed;
    for (auto i : entries) {
      entry_members[i].push_back(key);
      entry_disclosed[i] = entry_disclosed[i] || disclosed;
    }
    const auto c = static_cast<std::size_t>(rec.category);
    cat_members[c].push_back(key);
    cat_state[c] = std::max(cat_state[c], disclosed ? 2 : 1);
    out.push_back(std::move(v));
  }
  for (std::size_t i = 0; i < tax.entries().size(); ++i) {
    if (entry_members[i].empty()) continue;
    DisclosureVerdict v;
    v.kind = SubjectKind::DataCategory;
    v.subject = tax.entries()[i].name;
    v.status = entry_disclosed[i] ? DisclosureStatus::Disclosed : DisclosureStatus::Omitted;
    v.data_types = entry_members[i];
    if (entry_disclosed[i]) v.supporting_flows = support[i];
    out.push_back(std::move(v));
  }
  for (auto c : kAllCategories) {
    const auto ci = static_cast<std::size_t>(c);
    if (c == PropertyCategory::Uncategorized || cat_state[ci] == 0) continue;
    DisclosureVerdict v;
    v.kind = SubjectKind::PropertyCategory;
    v.subject = std::string(category_name(c));
    v.status = cat_state[ci] == 2 ? DisclosureStatus::Disclosed : DisclosureStatus::Omitted;
    v.data_types = cat_members[ci];
    out.push_back(std::move(v));
  }
  return out;
}

struct Rate {
  std::size_t k = 0;
  std::size_t n = 0;

  // Percent in hundredths, rounded half up: 735/845 -> 8698.
  std::uint64_t basis_points() const { return n == 0 ? 0 : (20000ull * k + n) / (2ull * n); }
  friend bool operator==(const Rate&, const Rate&) = default;
};

inline std::string format_rate(const Rate& r) {
  if (r.n == 0) return "n/a";
  const auto bp = r.basis_points();
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%zu/%zu (%llu.%02llu%%)", r.k, r.n, static_cast<unsigned long long>(bp / 100),
                static_cast<unsigned long long>(bp % 100));
  return buf;
}

inline std::string format_rate(std::size_t k, std::size_t n) { return format_rate(Rate{k, n}); }

// Inverse of format_rate. The printed percent must agree with k/n.
inline Rate parse_rate(std::string_view s) {
  s = trim(s);
  if (s == "n/a") return {};
  unsigned long long k = 0, n = 0, whole = 0, frac = 0;
  int used = 0;
  const std::string str(s);
  if (std::sscanf(str.c_str(), "%llu/%llu (%llu.%2llu%%)%n", &k, &n, &whole, &frac, &used) != 4 ||
      static_cast<std::size_t>(used) != str.size() || n == 0 || k > n)
    throw FormatError("not a rate string: " + str);
  Rate r{static_cast<std::size_t>(k), static_cast<std::size_t>(n)};
  if (r.basis_points() != whole * 100 + frac) throw FormatError("rate percent disagrees with k/n: " + str);
  return r;
}

struct ConsistencySummary {
  Rate categories;
  Rate properties;
  Rate property_categories;
  std::vector<std::string> purposes;
  std::vector<std::string> omitted_properties;
  std::vector<std::string> omitted_categories;
  std::vector<std::string> omitted_property_categories;
  std::vector<std::string> unmapped_properties;
};

inline ConsistencySummary consistency_rates(const std::vector<DisclosureVerdict>& verdicts,
                                            const std::vector<PolicyDataFlow>& flows) {
  ConsistencySummary s;
  for (const auto& v : verdicts) {
    const bool ok = v.status == DisclosureStatus::Disclosed;
    switch (v.kind) {
      case SubjectKind::Property:
        ++s.properties.n;
        s.properties.k += ok ? 1 : 0;
        if (!ok) s.omitted_properties.push_back(v.subject);
        if (v.data_types.empty()) s.unmapped_properties.push_back(v.subject);
        break;
      case SubjectKind::DataCategory:
        ++s.categories.n;
        s.categories.k += ok ? 1 : 0;
        if (!ok) s.omitted_categories.push_back(v.subject);
        break;
      case SubjectKind::PropertyCategory:
        ++s.property_categories.n;
        s.property_categories.k += ok ? 1 : 0;
        if (!ok) s.omitted_property_categories.push_back(v.subject);
        break;
    }
  }
  s.purposes = distinct_purposes(flows);
  return s;
}

inline std::string_view subject_kind_name(SubjectKind k) {
  switch (k) {
    case SubjectKind::Property: return "property";
    case SubjectKind::DataCategory: return "data_category";
    default: return "property_category";
  }
}

inline json verdicts_to_json(const std::vector<DisclosureVerdict>& verdicts, SubjectKind kind) {
  json arr = json::array();
  for (const auto& v : verdicts) {
    if (v.kind != kind) continue;
    arr.push_back({{"subject", v.subject},
                   {"status", status_name(v.status)},
                   {kind == SubjectKind::Property ? "data_types" : "members", v.data_types},
                   {"supporting_flows", v.supporting_flows}});
  }
  return arr;
}

inline json consistency_json(const std::vector<DisclosureVerdict>& verdicts, const ConsistencySummary& s) {
  return {
      {"categories_disclosed", format_rate(s.categories)},
      {"properties_disclosed", format_rate(s.properties)},
      {"property_categories_disclosed", format_rate(s.property_categories)},
      {"purposes", s.purposes.size()},
      {"purpose_list", s.purposes},
      {"omitted_properties", s.omitted_properties},
      {"omitted_categories", s.omitted_categories},
      {"omitted_property_categories", s.omitted_property_categories},
      {"unmapped_properties", s.unmapped_properties},
      {"property_verdicts", verdicts_to_json(verdicts, SubjectKind::Property)},
      {"category_verdicts", verdicts_to_json(verdicts, SubjectKind::DataCategory)},
      {"property_category_verdicts", verdicts_to_json(verdicts, SubjectKind::PropertyCategory)},
  };
}

// Everything the report needs; absent phases stay nullopt.
struct ReportInputs {
  std::string oem;
  std::optional<json> static_summary;
  std::optional<json> dynamic_summary;
  std::optional<json> network;
  std::optional<std::vector<PolicyDataFlow>> flows;
  std::optional<std::vector<SimilarityRow>> similarity;
  std::vector<std::string> warnings;
};

struct ReportBundle {
  json report;
  std::string markdown;
  std::map<std::string, std::string> csv;  // file name -> contents
};

namespace detail {

inline std::string resolve_oem(const ReportInputs& in) {
  std::string oem = in.oem;
  for (const auto* part : {&in.static_summary, &in.dynamic_summary}) {
    if (!*part || !(*part)->contains("oem")) continue;
    const auto label = (*part)->at("oem").get<std::string>();
    if (label.empty()) continue;
    if (!oem.empty() && oem != label) throw MergeError("conflicting OEM labels: '" + oem + "' vs '" + label + "'");
    oem = label;
  }
  return oem;
}

// Records of every property seen by the static or dynamic phase.
inline std::map<std::string, VhalPropertyRecord> collected_records(const ReportInputs& in, const std::string& oem) {
  std::map<std::string, VhalPropertyRecord> out;
  for (const auto* part : {&in.static_summary, &in.dynamic_summary}) {
    if (!*part || !(*part)->contains("records")) continue;
    for (const auto& [key, r] : (*part)->at("records").items()) {
      if (!out.count(key)) out.emplace(key, record_from_json(key, r, oem));
    }
  }
  return out;
}

inline std::string md_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

inline std::string category_table(const std::string& oem, const json& counts, const char* title) {
  std::string md = std::string("### ") + title + "\n\n| OEM | A | B | C | D | E | F | U | Total |\n|---|---|---|---|---|---|---|---|---|\n";
  md += "| " + md_escape(oem) + " |";
  std::uint64_t sum = 0;
  for (auto c : kAllCategories) {
    const auto v = counts.value(std::string(1, category_letter(c)), std::uint64_t{0});
    sum += v;
    md += " " + std::to_string(v) + " |";
  }
  md += " " + std::to_string(sum) + " |\n\n";
  return md;
}

inline std::string category_csv(const std::string& oem, const json& counts) {
  std::string out = "oem,A,B,C,D,E,F,U,total\n" + csv_field(oem);
  std::uint64_t sum = 0;
  for (auto c : kAllCategories) {
    const auto v = counts.value(std::string(1, category_letter(c)), std::uint64_t{0});
    sum += v;
    out += "," + std::to_string(v);
  }
  return out + "," + std::to_string(sum) + "\n";
}

}  // namespace detail

inline ReportBundle render_report(const ReportInputs& in, const DataTypeTaxonomy& tax) {
  if (!in.static_summary && !in.dynamic_summary && !in.network && !in.flows && !in.similarity)
    throw UsageError("no analysis outputs to report on");
  const std::string oem = detail::resolve_oem(in);
  const json not_run = "not run";
  ReportBundle b;
  json warnings = json::array();
  for (const auto& w : in.warnings) warnings.push_back(w);

  b.report["oem"] = oem;
  b.report["static"] = in.static_summary ? *in.static_summary : not_run;
  b.report["dynamic"] = in.dynamic_summary ? *in.dynamic_summary : not_run;
  b.report["network"] = in.network ? *in.network : not_run;
  if (in.similarity) b.report["similarity"] = similarity_rows_json(*in.similarity);
  if (in.flows) {
    const auto purposes = distinct_purposes(*in.flows);
    b.report["policy"] = {{"flow_count", in.flows->size()}, {"purposes", purposes.size()}, {"purpose_list", purposes}};
  } else {
    b.report["policy"] = not_run;
  }

  std::optional<ConsistencySummary> summary;
  const auto collected = detail::collected_records(in, oem);
  if (in.flows && (in.static_summary || in.dynamic_summary)) {
    const auto verdicts = disclosure_check(collected, *in.flows, tax);
    summary = consistency_rates(verdicts, *in.flows);
    b.report["consistency"] = consistency_json(verdicts, *summary);
  } else {
    b.report["consistency"] = not_run;
    if (in.flows) warnings.push_back("consistency: no static or dynamic evidence to check against the policy");
  }
  b.report["warnings"] = warnings;

  // Markdown mirror of the JSON.
  std::string md = "# Privacy audit report: " + (oem.empty() ? std::string("(unlabelled)") : oem) + "\n\n";
  md += "## Static analysis\n\n";
  if (in.static_summary) {
    const auto& s = *in.static_summary;
    md += detail::category_table(oem, s.value("catalog_category_counts", json::object()), "Catalog properties per category");
    md += detail::category_table(oem, s.value("observed_category_counts", json::object()), "Properties referenced by apps");
    b.csv["category_counts.csv"] = detail::category_csv(oem, s.value("catalog_category_counts", json::object()));
    md += "Permissions in catalog: " + std::to_string(s.value("total_permission_count", 0)) +
          ", used by apps: " + std::to_string(s.value("used_permission_count", 0)) + "\n\n";
    std::vector<std::pair<std::string, std::uint64_t>> uniq;
    const auto unique = s.value("unique_properties", json::object());
    for (const auto& [pkg, n] : unique.items()) uniq.emplace_back(pkg, n.get<std::uint64_t>());
    std::stable_sort(uniq.begin(), uniq.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    md += "### Unique properties per package\n\n| Package | Unique properties |\n|---|---|\n";
    std::string csv = "package,unique_properties\n";
    for (const auto& [pkg, n] : uniq) {
      md += "| " + detail::md_escape(pkg) + " | " + std::to_string(n) + " |\n";
      csv += csv_field(pkg) + "," + std::to_string(n) + "\n";
    }
    b.csv["unique_properties.csv"] = csv;
    md += "\n";
  } else {
    md += "not run\n\n";
  }

  md += "## Dynamic analysis\n\n";
  if (in.dynamic_summary) {
    const auto& d = *in.dynamic_summary;
    md += detail::category_table(oem, d.value("category_occurrences", json::object()), "Property accesses per category");
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", d.value("window_s", 0.0));
    md += "Events: " + std::to_string(d.value("event_count", 0)) + " over " + buf + " s\n\n";
  } else {
    md += "not run\n\n";
  }

  if (in.similarity) {
    md += "## Cross-OEM similarity\n\n| Set 1 | Set 2 | Similar | Different (set 1) | Different (set 2) |\n|---|---|---|---|---|\n";
    for (const auto& r : *in.similarity) {
      md += "| " + detail::md_escape(r.set1) + " | " + detail::md_escape(r.set2) + " | " + std::to_string(r.similar_count) +
            " | " + std::to_string(r.diff_set1) + " | " + std::to_string(r.diff_set2) + " |\n";
    }
    md += "\n";
    b.csv["similarity.csv"] = similarity_csv(*in.similarity);
  }

  md += "## Network analysis\n\n";
  if (in.network) {
    const auto& n = *in.network;
    md += "Packets: " + std::to_string(n.value("packet_count", 0)) + ", payload bytes: " +
          std::to_string(n.value("captured_payload_bytes", 0)) + "\n\n| Package | Payload bytes |\n|---|---|\n";
    const auto per_app = n.value("per_app_payload", json::array());
    for (const auto& row : per_app)
      md += "| " + detail::md_escape(row.at("package").get<std::string>()) + " | " + std::to_string(row.at("bytes").get<std::uint64_t>()) + " |\n";
    md += "\n### Destinations\n\n| Organization | Bytes |\n|---|---|\n";
    const auto destinations = n.value("destinations", json::object());
    for (const auto& [org, bytes] : destinations.items())
      md += "| " + detail::md_escape(org) + " | " + std::to_string(bytes.get<std::uint64_t>()) + " |\n";
    const auto findings = n.value("findings", json::array());
    md += "\n### Request findings (" + std::to_string(findings.size()) + ")\n\n";
    for (const auto& f : findings)
      md += "- `" + f.at("detector").get<std::string>() + "` " + f.at("host").get<std::string>() + ": `" +
            f.at("excerpt").get<std::string>() + "`\n";
    md += "\n";
  } else {
    md += "not run\n\n";
  }

  md += "## Privacy policy\n\n";
  if (in.flows) {
    md += "Flows extracted: " + std::to_string(in.flows->size()) + "\n\n";
  } else {
    md += "not run\n\n";
  }

  md += "## Consistency\n\n";
  if (summary) {
    md += "| OEM | Catg. Disclosed | Prop. Disclosed | Purposes |\n|---|---|---|---|\n";
    md += "| " + detail::md_escape(oem) + " | " + format_rate(summary->categories) + " | " + format_rate(summary->properties) +
          " | " + std::to_string(summary->purposes.size()) + " |\n\n";
    b.csv["consistency.csv"] = "oem,categories_disclosed,properties_disclosed,purposes\n" + csv_field(oem) + "," +
                               csv_field(format_rate(summary->categories)) + "," +
                               csv_field(format_rate(summary->properties)) + "," +
                               std::to_string(summary->purposes.size()) + "\n";
    md += "Property categories disclosed: " + format_rate(summary->property_categories) + "\n\n";
    auto list = [&](const char* title, const std::vector<std::string>& items) {
      md += std::string("### ") + title + " (" + std::to_string(items.size()) + ")\n\n";
      for (const auto& i : items) md += "- " + i + "\n";
      md += "\n";
    };
    list("Omitted property categories", summary->omitted_property_categories);
    list("Omitted data categories", summary->omitted_categories);
    list("Omitted properties", summary->omitted_properties);
  } else {
    md += "not run\n\n";
  }
  if (!warnings.empty()) {
    md += "## Warnings\n\n";
    for (const auto& w : warnings) md += "- " + (w.is_string() ? w.get<std::string>() : w.dump()) + "\n";
  }
  b.markdown = std::move(md);
  return b;
}

inline void write_report(const fs::path& dir, const ReportBundle& b) {
  write_json_file(dir / "report.json", b.report);
  write_file(dir / "report.md", b.markdown);
  for (const auto& [name, body] : b.csv) write_file(dir / name, body);
}

}  // namespace vhal_audit
