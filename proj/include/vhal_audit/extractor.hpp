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

// Data-flow extraction from policy sentences. A flow is one statement of
// who does what to which data, for what purpose, with which exclusions.
// Extraction runs per sentence, with the owning chunk's section trail
// available as context.

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "vhal_audit/errors.hpp"
#include "vhal_audit/io.hpp"
#include "vhal_audit/parallel.hpp"
#include "vhal_audit/policy.hpp"

namespace vhal_audit {

struct PolicyDataFlow {
  std::string action_verb;
  std::string purpose_category;
  std::string specific_purpose;
  std::string entity_type;
  std::vector<std::string> data_types;
  std::vector<std::string> data_sources;
  bool third_party = false;
  std::optional<std::string> third_party_name;
  std::optional<std::string> exclusion;
  std::size_t sentence_index = 0;
  std::string sentence_text;
  std::vector<std::string> section;

  friend bool operator==(const PolicyDataFlow&, const PolicyDataFlow&) = default;
};

inline constexpr std::array<std::string_view, 9> kDisclosureVerbs = {
    "collect", "use", "share", "sell", "disclose", "process", "store", "retain", "transfer"};

inline bool is_disclosure_verb(std::string_view v) {
  return std::find(kDisclosureVerbs.begin(), kDisclosureVerbs.end(), to_lower(v)) != kDisclosureVerbs.end();
}

inline json flow_to_json(const PolicyDataFlow& f) {
  return {
      {"action_verb", f.action_verb},
      {"purpose_category", f.purpose_category},
      {"specific_purpose", f.specific_purpose},
      {"entity_type", f.entity_type},
      {"data_types", f.data_types},
      {"data_sources", f.data_sources},
      {"third_party", f.third_party},
      {"third_party_name", f.third_party_name ? json(*f.third_party_name) : json(nullptr)},
      {"exclusion", f.exclusion ? json(*f.exclusion) : json(nullptr)},
      {"source_sentence", {{"index", f.sentence_index}, {"text", f.sentence_text}}},
      {"section", f.section},
  };
}

inline json flows_to_json(const std::vector<PolicyDataFlow>& flows) {
  json j = json::array();
  for (const auto& f : flows) j.push_back(flow_to_json(f));
  return j;
}

namespace detail {

inline std::string require_string(const json& j, const char* key, bool required) {
  if (!j.contains(key) || j.at(key).is_null()) {
    if (required) throw SchemaError(std::string("flow is missing '") + key + "'");
    return {};
  }
  if (!j.at(key).is_string()) throw SchemaError(std::string("flow field '") + key + "' must be a string");
  return j.at(key).get<std::string>();
}

inline std::optional<std::string> optional_string(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  if (!j.at(key).is_string()) throw SchemaError(std::string("flow field '") + key + "' must be a string or null");
  return j.at(key).get<std::string>();
}

inline std::vector<std::string> string_list(const json& j, const char* key, bool lower) {
  std::vector<std::string> out;
  if (!j.contains(key) || j.at(key).is_null()) return out;
  if (!j.at(key).is_array()) throw SchemaError(std::string("flow field '") + key + "' must be an array");
  for (const auto& v : j.at(key)) {
    if (!v.is_string()) throw SchemaError(std::string("flow field '") + key + "' must hold strings");
    auto s = std::string(trim(v.get<std::string>()));
    if (lower) s = to_lower(s);
    if (!s.empty()) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace detail

// Validates one flow object produced by an extractor. `sentence` must index
// into the request's sentence list; the flow is bound to that sentence.
inline PolicyDataFlow flow_from_extractor_json(const json& j, const Chunk& chunk) {
  if (!j.is_object()) throw SchemaError("flow must be a JSON object");
  PolicyDataFlow f;
  f.action_verb = to_lower(trim(detail::require_string(j, "action_verb", true)));
  if (f.action_verb.empty()) throw SchemaError("flow has an empty action_verb");
  f.purpose_category = detail::require_string(j, "purpose_category", false);
  f.specific_purpose = detail::require_string(j, "specific_purpose", false);
  f.entity_type = detail::require_string(j, "entity_type", false);
  f.data_types = detail::string_list(j, "data_types", true);
  f.data_sources = detail::string_list(j, "data_sources", true);
  if (j.contains("third_party") && !j.at("third_party").is_null()) {
    if (!j.at("third_party").is_boolean()) throw SchemaError("flow field 'third_party' must be a boolean");
    f.third_party = j.at("third_party").get<bool>();
  }
  f.third_party_name = detail::optional_string(j, "third_party_name");
  f.exclusion = detail::optional_string(j, "exclusion");
  if (!j.contains("sentence") || !j.at("sentence").is_number_integer() || j.at("sentence").get<std::int64_t>() < 0)
    throw SchemaError("flow must carry a non-negative integer 'sentence'");
  const auto idx = j.at("sentence").get<std::size_t>();
  if (idx >= chunk.sentences.size()) throw SchemaError("flow 'sentence' is out of range for the chunk");
  f.sentence_index = chunk.sentences[idx].index;
  f.sentence_text = chunk.sentences[idx].text;
  f.section = chunk.section;
  return f;
}

// Reads flows.json back (as written by flows_to_json).
inline std::vector<PolicyDataFlow> flows_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("flows.json must be an array");
  std::vector<PolicyDataFlow> out;
  for (const auto& item : j) {
    Chunk one;
    json copy = item;
    try {
      one.section = item.value("section", std::vector<std::string>{});
      const auto& src = item.at("source_sentence");
      one.sentences.push_back({src.at("index").get<std::size_t>(), 0, src.at("text").get<std::string>()});
      copy["sentence"] = 0u;
    } catch (const json::exception& e) {
      throw FormatError(std::string("flows.json: ") + e.what());
    }
    out.push_back(flow_from_extractor_json(copy, one));
  }
  return out;
}

class Extractor {
public:
  virtual ~Extractor() = default;
  virtual std::vector<PolicyDataFlow> extract(const Chunk& chunk) const = 0;
};

// Vocabulary for the rule-based extractor.
struct PolicyLexicon {
  std::map<std::string, std::string> verbs;  // inflected form -> base verb
  std::vector<std::string> data_types;        // lowercase phrases
  std::vector<std::pair<std::string, std::vector<std::string>>> purposes;  // category -> keyword prefixes
  std::vector<std::string> third_party_terms;
  std::vector<std::string> source_terms;

  static PolicyLexicon from_json(const json& j) {
    PolicyLexicon lex;
    try {
      for (const auto& [base, forms] : j.at("verbs").items()) {
        lex.verbs[to_lower(base)] = to_lower(base);
        for (const auto& f : forms) lex.verbs[to_lower(f.get<std::string>())] = to_lower(base);
      }
      for (const auto& d : j.at("data_types")) lex.data_types.push_back(to_lower(d.get<std::string>()));
      for (const auto& p : j.at("purposes")) {
        std::vector<std::string> kws;
        for (const auto& k : p.at("keywords")) kws.push_back(to_lower(k.get<std::string>()));
        lex.purposes.emplace_back(p.at("category").get<std::string>(), std::move(kws));
      }
      for (const auto& t : j.at("third_party_terms")) lex.third_party_terms.push_back(to_lower(t.get<std::string>()));
      for (const auto& t : j.at("source_terms")) lex.source_terms.push_back(to_lower(t.get<std::string>()));
    } catch (const json::exception& e) {
      throw ConfigError(std::string("policy lexicon: ") + e.what());
    }
    // longest phrase first so "vehicle speed" beats "speed"
    std::stable_sort(lex.data_types.begin(), lex.data_types.end(),
                     [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
    return lex;
  }

  static PolicyLexicon load(const fs::path& p) { return from_json(read_json_file(p)); }
  static PolicyLexicon builtin();
};

// Shipped as data/policy_lexicon.json too; a unit test keeps both identical.
inline constexpr std::string_view kDefaultPolicyLexiconJson = R"({
  "verbs": {
    "collect": ["collects", "collected", "collecting", "gather", "gathers", "gathered", "obtain", "obtains", "obtained", "receive", "receives", "received"],
    "use": ["uses", "used", "using"],
    "share": ["shares", "shared", "sharing"],
    "sell": ["sells", "sold", "selling"],
    "disclose": ["discloses", "disclosed", "disclosing"],
    "process": ["processes", "processed", "processing"],
    "store": ["stores", "stored", "storing"],
    "retain": ["retains", "retained", "retaining", "keep", "keeps", "kept"],
    "transfer": ["transfers", "transferred", "transferring", "transmit", "transmits", "transmitted"]
  },
  "data_types": [
    "personal information", "personal data", "contact information", "email address", "phone number",
    "name", "address", "identifiers", "device identifiers", "ip address", "device information",
    "account information", "payment information", "financial information", "commercial information",
    "location", "location data", "geolocation", "geolocation data", "precise location", "gps location",
    "vehicle information", "vehicle data", "vehicle identification number", "vin",
    "vehicle speed", "speed", "driving behavior", "driving data", "driving history", "trip details", "trip data",
    "vehicle performance data", "vehicle health", "diagnostic data", "diagnostics", "odometer", "mileage",
    "tire pressure", "fuel level", "fuel consumption", "battery status", "battery level", "charging data",
    "electricity consumption", "energy consumption",
    "driver safety data", "safety data", "seat belt", "seat belt status", "airbag", "lane departure",
    "driver assistance data", "driving assistance data", "crash data", "collision data",
    "climate settings", "climate control", "hvac settings", "temperature settings", "seat settings", "comfort settings",
    "lighting settings", "lighting preferences", "headlight status",
    "user preferences", "preferences", "settings", "notification settings",
    "voice recordings", "voice commands", "voice data", "voice biometric data", "biometric data",
    "camera images", "images", "video", "audio", "audio and video information", "sensor data", "camera data",
    "media", "multimedia data", "listening history", "usage data", "app usage", "browsing history",
    "cookies", "inferences"
  ],
  "purposes": [
    {"category": "advertising", "keywords": ["advertis", "ads", "targeted", "lookalike"]},
    {"category": "marketing", "keywords": ["marketing", "promot", "offers", "leads"]},
    {"category": "insurance", "keywords": ["insur"]},
    {"category": "financing", "keywords": ["financ", "loan", "lease", "credit"]},
    {"category": "analytics", "keywords": ["analy", "statistic", "measure", "metrics"]},
    {"category": "research and development", "keywords": ["research", "develop"]},
    {"category": "improve service", "keywords": ["improv", "enhanc", "optimi"]},
    {"category": "personalization", "keywords": ["personaliz", "personalis", "customiz", "tailor"]},
    {"category": "product recommendations", "keywords": ["recommend"]},
    {"category": "roadside assistance", "keywords": ["roadside", "towing", "stolen"]},
    {"category": "safety", "keywords": ["safety", "safe", "emergency", "crash"]},
    {"category": "fraud prevention", "keywords": ["fraud"]},
    {"category": "security", "keywords": ["secur", "protect"]},
    {"category": "law enforcement", "keywords": ["enforcement", "police", "subpoena"]},
    {"category": "legal compliance", "keywords": ["comply", "complian", "legal", "regulat", "law"]},
    {"category": "navigation", "keywords": ["navigat", "route", "routing", "traffic", "map"]},
    {"category": "location based services", "keywords": ["location-based", "location based", "geo-fenc", "geofenc"]},
    {"category": "vehicle maintenance", "keywords": ["maintenance", "maintain", "repair", "servicing"]},
    {"category": "diagnostics", "keywords": ["diagnos", "troubleshoot"]},
    {"category": "customer support", "keywords": ["support", "assist", "help", "inquir"]},
    {"category": "communications", "keywords": ["communicat", "contact", "notify", "notif", "newsletter"]},
    {"category": "payment processing", "keywords": ["payment", "pay", "billing", "bill", "purchase"]},
    {"category": "account management", "keywords": ["account", "registration", "register", "authenticat"]},
    {"category": "product development", "keywords": ["design", "engineer"]},
    {"category": "provide service", "keywords": ["provide", "deliver", "operate", "perform", "fulfil", "enable", "offer"]}
  ],
  "third_party_terms": [
    "third party", "third parties", "third-party", "3rd party", "3rd parties", "partners", "affiliates",
    "service providers", "providers", "advertisers", "insurers", "insurance companies", "vendors", "dealers",
    "law enforcement", "financial organizations", "data brokers", "sponsors"
  ],
  "source_terms": [
    "device", "phone", "mobile", "vehicle", "car", "sensor", "sensors", "camera", "cameras", "app", "application",
    "website", "third part", "partner", "dealer", "you", "cookies", "services", "public sources"
  ]
}
)";

inline PolicyLexicon PolicyLexicon::builtin() { return from_json(json::parse(kDefaultPolicyLexiconJson)); }

namespace detail {

struct Word {
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string lower;
};

inline std::vector<Word> words_of(std::string_view s) {
  std::vector<Word> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    if (std::isalnum(c) == 0 && s[i] != '-' && s[i] != '\'') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) != 0 || s[j] == '-' || s[j] == '\'')) ++j;
    out.push_back({i, j, to_lower(s.substr(i, j - i))});
    i = j;
  }
  return out;
}

// Finds `phrase` (lowercase) in `lower` at word boundaries, starting at pos.
inline std::size_t find_phrase(std::string_view lower, std::string_view phrase, std::size_t pos = 0) {
  for (auto at = lower.find(phrase, pos); at != std::string_view::npos; at = lower.find(phrase, at + 1)) {
    const bool left = at == 0 || std::isalnum(static_cast<unsigned char>(lower[at - 1])) == 0;
    const auto end = at + phrase.size();
    const bool right = end >= lower.size() || std::isalnum(static_cast<unsigned char>(lower[end])) == 0;
    if (left && right) return at;
  }
  return std::string_view::npos;
}

inline std::string clean_clause(std::string_view s) {
  auto t = trim(s);
  while (!t.empty() && (t.back() == '.' || t.back() == ',' || t.back() == ';' || t.back() == ':' || t.back() == '!'))
    t = trim(t.substr(0, t.size() - 1));
  return std::string(t);
}

// End of a clause that starts at `from`: the next comma, semicolon, sentence
// punctuation, or one of the stop words.
inline std::size_t clause_end(std::string_view lower, std::size_t from,
                              std::initializer_list<std::string_view> stops) {
  std::size_t end = lower.size();
  for (char p : {',', ';', '.', '!', '?', '(' }) {
    // a period inside a token ("u.s.") is not a clause end
    for (auto at = lower.find(p, from); at != std::string_view::npos; at = lower.find(p, at + 1)) {
      if (p == '.' && at + 1 < lower.size() && lower[at + 1] != ' ') continue;
      end = std::min(end, at);
      break;
    }
  }
  for (auto stop : stops) {
    const auto at = find_phrase(lower, stop, from);
    if (at != std::string_view::npos) end = std::min(end, at);
  }
  return end;
}

inline bool is_function_word(std::string_view w) {
  static const std::set<std::string, std::less<>> words = {
      "the", "a", "an", "our", "your", "their", "its", "his", "her", "us", "you", "them", "third", "other",
      "any", "all", "such", "these", "those", "this", "that", "which", "whom", "whether", "be", "3rd", "law",
      "government", "authorities", "companies", "partners", "providers", "service", "affiliates", "vendors",
      "insurance", "advertisers", "dealers", "financial", "some", "certain", "one", "another", "each"};
  return words.count(w) > 0;
}

struct Span {
  std::size_t begin = std::string_view::npos;
  std::size_t end = std::string_view::npos;
  bool empty() const { return begin == std::string_view::npos; }
  bool covers(std::size_t pos) const { return !empty() && pos >= begin && pos < end; }
};

}  // namespace detail

// Deterministic extractor: a sentence yields one flow per distinct action
// verb, provided it also mentions at least one lexicon data type.
class RuleBasedExtractor : public Extractor {
public:
  RuleBasedExtractor() : lex_(PolicyLexicon::builtin()) {}
  explicit RuleBasedExtractor(PolicyLexicon lex) : lex_(std::move(lex)) {}

  std::vector<PolicyDataFlow> extract(const Chunk& chunk) const override {
    std::vector<PolicyDataFlow> out;
    for (const auto& s : chunk.sentences) {
      auto flows = extract_sentence(s.text);
      for (auto& f : flows) {
        f.sentence_index = s.index;
        f.sentence_text = s.text;
        f.section = chunk.section;
        out.push_back(std::move(f));
      }
    }
    return out;
  }

  std::vector<PolicyDataFlow> extract_sentence(std::string_view sentence) const {
    using namespace detail;
    const std::string lower = to_lower(sentence);
    const auto words = words_of(sentence);

    std::vector<std::pair<std::size_t, std::string>> verb_hits;  // (position, base verb)
    for (const auto& w : words) {
      auto it = lex_.verbs.find(w.lower);
      if (it != lex_.verbs.end()) verb_hits.emplace_back(w.begin, it->second);
    }
    if (verb_hits.empty()) return {};
    std::size_t first_verb_end = verb_hits.front().first;
    while (first_verb_end < lower.size() && !std::isspace(static_cast<unsigned char>(lower[first_verb_end]))) ++first_verb_end;

    const Span exclusion_span = find_exclusion(lower);
    std::optional<std::string> exclusion;
    if (!exclusion_span.empty()) {
      std::string_view ex = std::string_view(sentence).substr(exclusion_span.begin, exclusion_span.end - exclusion_span.begin);
      if (to_lower(ex.substr(0, 7)) == "except ") ex.remove_prefix(7);
      auto cleaned = clean_clause(ex);
      if (!cleaned.empty()) exclusion = std::move(cleaned);
    }
    const std::size_t limit = exclusion_span.empty() ? lower.size() : exclusion_span.begin;

    const Span purpose_span = find_purpose(lower, first_verb_end, limit);
    std::string specific_purpose;
    if (!purpose_span.empty())
      specific_purpose = clean_clause(std::string_view(sentence).substr(purpose_span.begin, purpose_span.end - purpose_span.begin));

    // "to process billing" is a purpose, not a second flow.
    std::vector<std::string> verbs;
    for (const auto& [pos, base] : verb_hits) {
      if (pos >= limit || purpose_span.covers(pos)) continue;
      if (std::find(verbs.begin(), verbs.end(), base) == verbs.end()) verbs.push_back(base);
    }
    if (verbs.empty()) return {};

    auto [third_party, party_name, party_span] = find_third_party(sentence, lower, limit);

    std::vector<std::string> sources;
    Span source_span;
    for (auto at = find_phrase(lower, "from", 0); at != std::string::npos && at < limit; at = find_phrase(lower, "from", at + 1)) {
      const auto begin = at + 5;
      const auto end = std::min(clause_end(lower, begin, {"to", "for", "with", "and", "except", "unless"}), limit);
      if (begin >= end) continue;
      const auto phrase = clean_clause(std::string_view(lower).substr(begin, end - begin));
      const bool known = std::any_of(lex_.source_terms.begin(), lex_.source_terms.end(),
                                     [&](const std::string& t) { return find_phrase(phrase, t) != std::string::npos; });
      if (known && std::find(sources.begin(), sources.end(), phrase) == sources.end()) {
        sources.push_back(phrase);
        if (source_span.empty()) source_span = {at, end};
      }
    }

    std::vector<std::string> data_types;
    std::vector<Span> taken;
    for (const auto& phrase : lex_.data_types) {
      for (auto at = find_phrase(lower, phrase); at != std::string::npos; at = find_phrase(lower, phrase, at + 1)) {
        if (at >= limit || purpose_span.covers(at) || party_span.covers(at)) continue;
        const Span here{at, at + phrase.size()};
        const bool overlaps = std::any_of(taken.begin(), taken.end(), [&](const Span& t) {
          return here.begin < t.end && t.begin < here.end;
        });
        if (overlaps) continue;
        taken.push_back(here);
      }
    }
    std::sort(taken.begin(), taken.end(), [](const Span& a, const Span& b) { return a.begin < b.begin; });
    for (const auto& t : taken) {
      auto dt = lower.substr(t.begin, t.end - t.begin);
      if (std::find(data_types.begin(), data_types.end(), dt) == data_types.end()) data_types.push_back(std::move(dt));
    }
    if (data_types.empty()) return {};

    const std::string category = specific_purpose.empty() ? std::string() : purpose_category(specific_purpose);
    std::vector<PolicyDataFlow> out;
    for (const auto& v : verbs) {
      PolicyDataFlow f;
      f.action_verb = v;
      f.purpose_category = category;
      f.specific_purpose = specific_purpose;
      f.entity_type = third_party ? "third party" : "first party";
      f.data_types = data_types;
      f.data_sources = sources;
      f.third_party = third_party;
      f.third_party_name = party_name;
      f.exclusion = exclusion;
      out.push_back(std::move(f));
    }
    return out;
  }

  std::string purpose_category(std::string_view specific_purpose) const {
    const auto words = detail::words_of(specific_purpose);
    const auto lower = to_lower(specific_purpose);
    for (const auto& [category, keywords] : lex_.purposes) {
      for (const auto& k : keywords) {
        if (k.find(' ') != std::string::npos || k.find('-') != std::string::npos) {
          if (lower.find(k) != std::string::npos) return category;
          continue;
        }
        for (const auto& w : words) {
          if (w.lower.rfind(k, 0) == 0) return category;
        }
      }
    }
    return "other";
  }

  const PolicyLexicon& lexicon() const { return lex_; }

private:
  static detail::Span find_exclusion(std::string_view lower) {
    detail::Span best;
    for (std::string_view trigger : {"except", "unless", "other than", "excluding", "without your consent", "without consent"}) {
      const auto at = detail::find_phrase(lower, trigger);
      if (at != std::string_view::npos && (best.empty() || at < best.begin)) best = {at, lower.size()};
    }
    return best;
  }

  // "in order to X", "for the purpose(s) of X", "to X", or "for X"
  // where X names a known purpose.
  detail::Span find_purpose(std::string_view lower, std::size_t from, std::size_t limit) const {
    using namespace detail;
    if (from == std::string::npos) from = 0;
    const std::initializer_list<std::string_view> stops = {"except", "unless", "with", "and to", "and for"};
    for (std::string_view lead : {"in order to", "for the purposes of", "for the purpose of"}) {
      const auto at = find_phrase(lower, lead, from);
      if (at != std::string::npos && at < limit) {
        const auto begin = at + lead.size() + 1;
        return {begin, std::min(clause_end(lower, begin, stops), limit)};
      }
    }
    for (auto at = find_phrase(lower, "to", from); at != std::string::npos && at < limit; at = find_phrase(lower, "to", at + 1)) {
      const auto rest = words_of(lower.substr(at + 2));
      if (rest.empty() || is_function_word(rest.front().lower)) continue;
      const auto begin = at + 3;
      return {begin, std::min(clause_end(lower, begin, stops), limit)};
    }
    for (auto at = find_phrase(lower, "for", from); at != std::string::npos && at < limit; at = find_phrase(lower, "for", at + 1)) {
      const auto begin = at + 4;
      const auto end = std::min(clause_end(lower, begin, stops), limit);
      if (begin >= end) continue;
      if (purpose_category(lower.substr(begin, end - begin)) != "other") return {begin, end};
    }
    return {};
  }

  std::tuple<bool, std::optional<std::string>, detail::Span> find_third_party(std::string_view sentence, std::string_view lower,
                                                                               std::size_t limit) const {
    using namespace detail;
    bool mentioned = false;
    for (const auto& t : lex_.third_party_terms) {
      const auto at = find_phrase(lower, t);
      if (at != std::string::npos && at < limit) {
        mentioned = true;
        break;
      }
    }
    if (!mentioned) return {false, std::nullopt, {}};
    for (std::string_view lead : {"with", "to"}) {
      for (auto at = find_phrase(lower, lead); at != std::string::npos && at < limit; at = find_phrase(lower, lead, at + 1)) {
        const auto begin = at + lead.size() + 1;
        const auto end = std::min(clause_end(lower, begin, {"except", "unless", "to", "for", "in order"}), limit);
        if (begin >= end) continue;
        const auto phrase = lower.substr(begin, end - begin);
        const bool party = std::any_of(lex_.third_party_terms.begin(), lex_.third_party_terms.end(),
                                       [&](const std::string& t) { return find_phrase(phrase, t) != std::string::npos; });
        if (!party) continue;
        return {true, clean_clause(sentence.substr(begin, end - begin)), Span{at, end}};
      }
    }
    return {true, std::nullopt, {}};
  }

  PolicyLexicon lex_;
};

// Runs the extractor over every chunk (in parallel, bounded by max_workers)
// and concatenates results in document order.
inline std::vector<PolicyDataFlow> extract_flows(const std::vector<Chunk>& chunks, const Extractor& extractor,
                                                 std::size_t max_workers = 1) {
  auto per_chunk = parallel_map<std::vector<PolicyDataFlow>>(
      chunks.size(), [&](std::size_t i) { return extractor.extract(chunks[i]); }, max_workers);
  std::vector<PolicyDataFlow> out;
  for (auto& flows : per_chunk) {
    for (auto& f : flows) {
      if (f.action_verb.empty()) throw SchemaError("extractor produced a flow without action_verb");
      out.push_back(std::move(f));
    }
  }
  return out;
}

inline std::vector<PolicyDataFlow> extract_flows(const Chunk& chunk, const Extractor& extractor) {
  return extract_flows(std::vector<Chunk>{chunk}, extractor, 1);
}

// Case-insensitive distinct purpose categories, sorted; empty ones skipped.
inline std::vector<std::string> distinct_purposes(const std::vector<PolicyDataFlow>& flows) {
  std::set<std::string> s;
  for (const auto& f : flows) {
    auto p = to_lower(trim(f.purpose_category));
    if (!p.empty()) s.insert(std::move(p));
  }
  return {s.begin(), s.end()};
}

}  // namespace vhal_audit
