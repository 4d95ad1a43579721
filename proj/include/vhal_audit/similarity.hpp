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
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vhal_audit/core_model.hpp"

namespace vhal_audit {

// Sorted, deduplicated name tokens.
class TokenSet {
public:
  TokenSet() = default;

  explicit TokenSet(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
    std::sort(tokens_.begin(), tokens_.end());
    tokens_.erase(std::unique(tokens_.begin(), tokens_.end()), tokens_.end());
    tokens_.erase(std::remove(tokens_.begin(), tokens_.end(), std::string()), tokens_.end());
  }

  static TokenSet from_name(std::string_view name) { return TokenSet(split_tokens(normalize_name(name))); }

  const std::vector<std::string>& tokens() const { return tokens_; }
  std::size_t size() const { return tokens_.size(); }
  bool empty() const { return tokens_.empty(); }

private:
  std::vector<std::string> tokens_;
};

// |a ∩ b| / |a ∪ b| kept as integers so callers can compare exactly.
struct JaccardRatio {
  std::size_t intersection = 0;
  std::size_t uni = 0;

  double value() const { return static_cast<double>(intersection) / static_cast<double>(uni); }
};

inline JaccardRatio jaccard_ratio(const TokenSet& a, const TokenSet& b) {
  if (a.empty() || b.empty()) throw DomainError("jaccard of an empty token set");
  std::size_t inter = 0;
  auto ia = a.tokens().begin();
  auto ib = b.tokens().begin();
  while (ia != a.tokens().end() && ib != b.tokens().end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++inter;
      ++ia;
      ++ib;
    }
  }
  return {inter, a.size() + b.size() - inter};
}

inline double jaccard(const TokenSet& a, const TokenSet& b) { return jaccard_ratio(a, b).value(); }

struct SimilarPair {
  std::string property_a;
  std::string property_b;
  double score = 0.0;

  friend bool operator==(const SimilarPair&, const SimilarPair&) = default;
};

inline void sort_pairs(std::vector<SimilarPair>& pairs) {
  std::sort(pairs.begin(), pairs.end(), [](const SimilarPair& x, const SimilarPair& y) {
    if (x.score != y.score) return x.score > y.score;
    if (x.property_a != y.property_a) return x.property_a < y.property_a;
    return x.property_b < y.property_b;
  });
}

// Every cross pair (a from names_a, b from names_b) whose token Jaccard score
// is >= threshold. Since threshold > 0, a qualifying pair must share at least
// one token, so candidates come from an inverted token index over names_b.
inline std::vector<SimilarPair> similar_pairs(const std::vector<std::string>& names_a,
                                              const std::vector<std::string>& names_b, double threshold = 0.2) {
  if (!(threshold > 0.0 && threshold <= 1.0)) throw DomainError("threshold must be in (0, 1]");
  std::vector<TokenSet> sets_b;
  sets_b.reserve(names_b.size());
  std::unordered_map<std::string, std::vector<std::size_t>> postings;
  for (std::size_t j = 0; j < names_b.size(); ++j) {
    sets_b.push_back(TokenSet::from_name(names_b[j]));
    for (const auto& t : sets_b.back().tokens()) postings[t].push_back(j);
  }
  std::vector<SimilarPair> out;
  std::vector<std::uint32_t> stamp(names_b.size(), 0);
  std::uint32_t round = 0;
  for (const auto& name_a : names_a) {
    ++round;
    const auto set_a = TokenSet::from_name(name_a);
    for (const auto& t : set_a.tokens()) {
      auto it = postings.find(t);
      if (it == postings.end()) continue;
      for (auto j : it->second) {
        if (stamp[j] == round) continue;
        stamp[j] = round;
        const double score = jaccard(set_a, sets_b[j]);
        if (score >= threshold) out.push_back({name_a, names_b[j], score});
      }
    }
  }
  sort_pairs(out);
  return out;
}

inline std::vector<std::string> property_names(const OemProfile& profile) {
  std::vector<std::string> names;
  names.reserve(profile.properties.size());
  for (const auto& p : profile.properties) {
    auto n = p.match_name();
    if (!n.empty()) names.push_back(std::move(n));
  }
  return names;
}

inline std::vector<SimilarPair> similar_pairs(const OemProfile& a, const OemProfile& b, double threshold = 0.2) {
  if (a.properties.empty() || b.properties.empty()) throw DomainError("similarity needs non-empty catalogs");
  return similar_pairs(property_names(a), property_names(b), threshold);
}

// Properties of one set left over after removing the similar ones, floored at 0.
inline std::size_t different_props(std::size_t total, std::size_t similar) {
  return total > similar ? total - similar : 0;
}

struct SimilarityRow {
  std::string set1;
  std::string set2;
  std::size_t similar_count = 0;
  std::size_t diff_set1 = 0;
  std::size_t diff_set2 = 0;

  friend bool operator==(const SimilarityRow&, const SimilarityRow&) = default;
};

inline SimilarityRow make_similarity_row(std::string set1, std::size_t total1, std::string set2,
                                         std::size_t total2, std::size_t similar) {
  return {std::move(set1), std::move(set2), similar, different_props(total1, similar), different_props(total2, similar)};
}

// One row per unordered profile pair, in input order (i < j).
inline std::vector<SimilarityRow> similarity_table(const std::vector<OemProfile>& profiles, double threshold = 0.2) {
  if (profiles.size() < 2) throw DomainError("similarity table needs at least two profiles");
  std::vector<SimilarityRow> rows;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    for (std::size_t j = i + 1; j < profiles.size(); ++j) {
      const auto pairs = similar_pairs(profiles[i], profiles[j], threshold);
      rows.push_back(make_similarity_row(profiles[i].label, profiles[i].properties.size(), profiles[j].label,
                                         profiles[j].properties.size(), pairs.size()));
    }
  }
  return rows;
}

inline std::string similarity_csv(const std::vector<SimilarityRow>& rows) {
  std::string out = "set1,set2,similar_count,diff_set1,diff_set2\n";
  for (const auto& r : rows) {
    out += csv_field(r.set1) + "," + csv_field(r.set2) + "," + std::to_string(r.similar_count) + "," +
           std::to_string(r.diff_set1) + "," + std::to_string(r.diff_set2) + "\n";
  }
  return out;
}

inline json similarity_rows_json(const std::vector<SimilarityRow>& rows) {
  json j = json::array();
  for (const auto& r : rows) {
    j.push_back({{"set1", r.set1},
                 {"set2", r.set2},
                 {"similar_count", r.similar_count},
                 {"diff_set1", r.diff_set1},
                 {"diff_set2", r.diff_set2}});
  }
  return j;
}

}  // namespace vhal_audit
