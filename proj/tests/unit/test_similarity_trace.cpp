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

#include <gtest/gtest.h>

#include <random>

#include "support/harness.hpp"
#include "support/oracles.hpp"
#include "vhal_audit/similarity.hpp"
#include "vhal_audit/trace_analyzer.hpp"

namespace va = vhal_audit;
using Names = std::vector<std::string>;
using harness::fixture;

namespace {

std::vector<std::string> random_names(std::mt19937& rng, std::size_t n) {
  static const std::vector<std::string> vocab = {"HVAC", "FAN", "SPEED", "SEAT", "BELT", "LEVEL", "EV",
                                                 "BATTERY", "FOG", "LIGHT", "TIRE", "PRESSURE", "USER", "MODE"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    const auto len = 1 + rng() % 4;
    std::string s;
    for (std::size_t t = 0; t < len; ++t) s += (t ? "_" : "") + vocab[rng() % vocab.size()];
    out.push_back(s);
  }
  return out;
}

}  // namespace

// ---- Jaccard ------------------------------------------------------------------

TEST(Jaccard, ReferenceExamples) {
  const auto a = va::TokenSet::from_name("HVAC_FAN_SPEED");
  const auto b = va::TokenSet::from_name("HVAC_FAN_DIRECTION");
  const auto r = va::jaccard_ratio(a, b);
  EXPECT_EQ(r.intersection, 2u);
  EXPECT_EQ(r.uni, 4u);
  EXPECT_DOUBLE_EQ(va::jaccard(a, a), 1.0);
  EXPECT_DOUBLE_EQ(va::jaccard(a, va::TokenSet::from_name("TIRE_PRESSURE")), 0.0);
}

TEST(Jaccard, EmptySetIsDomainError) {
  EXPECT_THROW(va::jaccard(va::TokenSet(), va::TokenSet::from_name("A")), va::DomainError);
}

TEST(Jaccard, DuplicateTokensCollapse) {
  EXPECT_EQ(va::TokenSet::from_name("FAN_FAN_speed").size(), 2u);
}

TEST(Jaccard, AgreesWithOracleSymmetricAndBounded) {
  std::mt19937 rng(7);
  const auto a = random_names(rng, 200);
  const auto b = random_names(rng, 200);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto ta = va::TokenSet::from_name(a[i]);
    const auto tb = va::TokenSet::from_name(b[i]);
    const auto r = va::jaccard_ratio(ta, tb);
    const auto [oi, ou] = oracle::jaccard(a[i], b[i]);
    EXPECT_EQ(r.intersection, oi);
    EXPECT_EQ(r.uni, ou);
    EXPECT_EQ(va::jaccard(ta, tb), va::jaccard(tb, ta));
    EXPECT_GE(va::jaccard(ta, tb), 0.0);
    EXPECT_LE(va::jaccard(ta, tb), 1.0);
  }
}

TEST(Jaccard, AddingSharedTokenNeverDecreasesScore) {
  std::mt19937 rng(11);
  const auto a = random_names(rng, 100);
  const auto b = random_names(rng, 100);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double before = va::jaccard(va::TokenSet::from_name(a[i]), va::TokenSet::from_name(b[i]));
    const double after = va::jaccard(va::TokenSet::from_name(a[i] + "_ZZSHARED"),
                                     va::TokenSet::from_name(b[i] + "_ZZSHARED"));
    EXPECT_GE(after, before);
  }
}

TEST(SimilarPairs, ThresholdValidated) {
  EXPECT_THROW(va::similar_pairs(Names{"A"}, Names{"A"}, 0.0), va::DomainError);
  EXPECT_THROW(va::similar_pairs(Names{"A"}, Names{"A"}, 1.5), va::DomainError);
  EXPECT_NO_THROW(va::similar_pairs(Names{"A"}, Names{"A"}, 1.0));
}

TEST(SimilarPairs, ThresholdIsInclusive) {
  // 1 shared out of 5 -> exactly 0.2
  const auto p = va::similar_pairs(Names{"A_B_C"}, Names{"A_D_E"}, 0.2);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_DOUBLE_EQ(p[0].score, 0.2);
}

TEST(SimilarPairs, OrderedByScoreThenNames) {
  const auto p = va::similar_pairs({"HVAC_FAN", "HVAC_FAN_SPEED"}, {"HVAC_FAN", "FAN"}, 0.2);
  ASSERT_GE(p.size(), 2u);
  for (std::size_t i = 1; i < p.size(); ++i) EXPECT_GE(p[i - 1].score, p[i].score);
  EXPECT_EQ(p[0].property_a, "HVAC_FAN");
  EXPECT_EQ(p[0].property_b, "HVAC_FAN");
}

TEST(SimilarPairs, EmptyProfileRejected) {
  va::OemProfile a, b;
  a.properties.push_back({va::PropertyId::from_key("A"), "a", va::PropertyCategory::Uncategorized, "x"});
  EXPECT_THROW(va::similar_pairs(a, b), va::DomainError);
}

TEST(SimilarPairs, CountMatchesExhaustiveOracleAndIsPermutationInvariant) {
  std::mt19937 rng(3);
  for (int round = 0; round < 30; ++round) {
    auto a = random_names(rng, 1 + rng() % 50);
    auto b = random_names(rng, 1 + rng() % 50);
    const auto n = va::similar_pairs(a, b, 0.2).size();
    EXPECT_EQ(n, oracle::similar_pair_count(a, b, 0.2));
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    EXPECT_EQ(va::similar_pairs(a, b, 0.2).size(), n);
  }
}

TEST(SimilarityTable, DifferentPropsFloorsAtZero) {
  EXPECT_EQ(va::different_props(10, 3), 7u);
  EXPECT_EQ(va::different_props(3, 10), 0u);
  const auto r = va::make_similarity_row("A", 10, "B", 4, 6);
  EXPECT_EQ(r.diff_set1, 4u);
  EXPECT_EQ(r.diff_set2, 0u);
}

TEST(SimilarityTable, NeedsTwoProfilesAndRendersCsv) {
  EXPECT_THROW(va::similarity_table({}), va::DomainError);
  const auto lex = va::CategoryLexicon::builtin();
  const auto a = va::parse_catalog(va::json::parse(R"({"HVAC_FAN_SPEED": "x", "TIRE_PRESSURE": "y"})"), "A", lex);
  const auto b = va::parse_catalog(va::json::parse(R"({"HVAC_FAN_DIRECTION": "x"})"), "B", lex);
  const auto rows = va::similarity_table({a, b});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].similar_count, 1u);
  EXPECT_EQ(va::similarity_csv(rows), "set1,set2,similar_count,diff_set1,diff_set2\nA,B,1,1,0\n");
}

// ---- trace classification -------------------------------------------------------

TEST(ClassifyLine, EachPattern) {
  using K = va::TraceKind;
  EXPECT_EQ(va::classify_line("CarPropertyValue.getPropertyId() <= 0x11400400"),
            (va::ClassifiedLine{K::GetPropertyIdReturn, 0x11400400}));
  EXPECT_EQ(va::classify_line("ICarProperty$Stub$Proxy.getProperty(289408000, 0)"),
            (va::ClassifiedLine{K::StubProxyGetProperty, 289408000}));
  EXPECT_EQ(va::classify_line("x CarPropertyManagerEx.getProperty('0x10')"),
            (va::ClassifiedLine{K::ManagerExGetProperty, 0x10}));
  EXPECT_EQ(va::classify_line("this.prop = \"42\";"), (va::ClassifiedLine{K::PropAssignment, 42}));
  EXPECT_EQ(va::classify_line("registerListener: propId is not in config list: 0x2A"),
            (va::ClassifiedLine{K::RegisterListenerNotInConfig, 42}));
}

TEST(ClassifyLine, NearMissesRejected) {
  for (const char* line : {"CarPropertyValue.getPropertyId() => 0x10", "CarPropertyValue.getPropertyId() <= 0x",
                           "CarPropertyValue.getPropertyId() <= 4294967296", "this.prop == 0x10",
                           "ICarProperty$Stub$Proxy.getProperty(0x10", "registerListener: propId is in config list: 1",
                           "CarPropertyValue.getPropertyId() <= 0x123456789", "this.prop = '0x10\""}) {
    EXPECT_FALSE(va::classify_line(line)) << line;
  }
}

TEST(ClassifyLine, LaterAnchorOccurrenceStillMatches) {
  EXPECT_EQ(va::classify_line("this.prop = X; that.prop = 7")->property, 7u);
}

TEST(ClassifyLine, AgreesWithRegexOracleOnCorpus) {
  const auto lines = oracle::lines_of(oracle::slurp(fixture("traces/classifier_corpus.txt")));
  const auto labels = va::read_json_file(fixture("traces/classifier_labels.json"));
  ASSERT_EQ(lines.size(), 200u);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto got = va::classify_line(lines[i]);
    const auto want = oracle::classify(lines[i]);
    ASSERT_EQ(got.has_value(), want.has_value()) << lines[i];
    const int kind = labels[i].at("kind").get<int>();
    EXPECT_EQ(got.has_value(), kind != 0) << lines[i];
    if (got) {
      EXPECT_EQ(static_cast<int>(got->kind), want->kind) << lines[i];
      EXPECT_EQ(got->property, want->id) << lines[i];
      EXPECT_EQ(static_cast<int>(got->kind), kind) << lines[i];
      EXPECT_EQ(got->property, labels[i].at("id").get<std::uint32_t>()) << lines[i];
    }
  }
}

TEST(ClassifyLine, AgreesWithRegexOracleOnRandomLines) {
  std::mt19937 rng(99);
  const std::vector<std::string> pieces = {
      "CarPropertyValue.getPropertyId()", "ICarProperty$Stub$Proxy.getProperty(", "CarPropertyManagerEx.getProperty(",
      ".prop", "registerListener: propId is not in config list:", " ", "\t", "<=", "=", "(", ")", ",", "'", "\"",
      "0x", "0X", "1A", "ff", "9", "42", "4294967295", "4294967296", "123456789", "_", "g", ";", "x"};
  for (int n = 0; n < 3000; ++n) {
    std::string line;
    const auto len = 2 + rng() % 8;
    for (std::size_t i = 0; i < len; ++i) line += pieces[rng() % pieces.size()];
    const auto got = va::classify_line(line);
    const auto want = oracle::classify(line);
    ASSERT_EQ(got.has_value(), want.has_value()) << line;
    if (got) {
      EXPECT_EQ(static_cast<int>(got->kind), want->kind) << line;
      EXPECT_EQ(got->property, want->id) << line;
    }
  }
}

// ---- trace windows ----------------------------------------------------------------

TEST(ParseTrace, TimestampsWindowAndWarnings) {
  const std::string text =
      "  100 ms  this.prop = 1\n"
      "noise\n"
      "  12x ms  this.prop = 2\n"
      "this.prop = 3\n"
      "  400000 ms  this.prop = 4\n";
  const auto w = va::parse_trace_text(text, "com.a");
  ASSERT_EQ(w.events.size(), 3u);
  EXPECT_EQ(w.events[0].timestamp_ms, 2);  // synthesized from line index 2
  EXPECT_EQ(w.events[0].property, 2u);
  EXPECT_EQ(w.events[1].timestamp_ms, 3);
  EXPECT_EQ(w.events[2].timestamp_ms, 100);
  ASSERT_EQ(w.warnings.size(), 2u);
  EXPECT_NE(w.warnings[0].find("malformed timestamp"), std::string::npos);
  EXPECT_NE(w.warnings[1].find("outside"), std::string::npos);
}

TEST(ParseTrace, MissingFileIsParseError) {
  EXPECT_THROW(va::parse_trace("/nonexistent/trace.txt", "p"), va::ParseError);
}

TEST(Histogram, RawCountsUnknownIdsAndBuckets) {
  const auto lex = va::CategoryLexicon::builtin();
  const auto cat = va::parse_catalog(va::json::parse(R"({"HVAC_FAN_SPEED": {"id": "0x10", "description": "fan"}})"), "T", lex);
  const auto w = va::parse_trace_text("  0 ms  this.prop = 0x10\n  5000 ms  this.prop = 0x10\n  15000 ms  this.prop = 0x99\n",
                                      "com.a");
  const auto h = va::occurrence_histogram(w, cat, 10000);
  EXPECT_EQ(h.per_property.at("HVAC_FAN_SPEED"), 2u);
  EXPECT_EQ(h.per_property.at("0x99"), 1u);
  EXPECT_EQ(h.per_category[static_cast<std::size_t>(va::PropertyCategory::ClimateAndComfort)], 2u);
  EXPECT_EQ(h.per_category[static_cast<std::size_t>(va::PropertyCategory::Uncategorized)], 1u);
  EXPECT_EQ(h.buckets.size(), 30u);
  EXPECT_EQ(h.buckets[0].at("HVAC_FAN_SPEED"), 2u);
  EXPECT_EQ(h.buckets[1].at("0x99"), 1u);
  EXPECT_EQ(va::timeline_csv(h), "bucket_start_s,property,count\n0,HVAC_FAN_SPEED,2\n10,0x99,1\n");
}

TEST(Histogram, OemBTraceCategoryTotals) {
  const auto cat = va::load_catalog(fixture("catalogs/oem_b.json"), "oem_b", va::CategoryLexicon::builtin());
  const auto w = va::parse_trace(fixture("traces/oem_b_mix.txt"), "oem_b.apps");
  const auto h = va::occurrence_histogram(w, cat);
  const std::array<std::uint64_t, 6> expected = {62, 20, 9, 45, 74, 44};
  for (std::size_t i = 0; i < 6; ++i) EXPECT_EQ(h.per_category[i], expected[i]) << i;
  EXPECT_EQ(h.per_category[6], 0u);
}

TEST(Frequency, ReferenceExamples) {
  EXPECT_EQ(va::format_hz(va::access_frequency(6000, 300.0)), "20.00");
  EXPECT_EQ(va::format_hz(va::access_frequency(1500, 300.0)), "5.00");
  EXPECT_EQ(va::format_hz(va::access_frequency(1, 300.0)), "0.00");
  EXPECT_THROW(va::access_frequency(10, 0.0), va::DomainError);
  va::TraceWindow zero;
  zero.duration_ms = 0;
  EXPECT_THROW(va::access_frequency(zero, 1), va::DomainError);
}

TEST(Frequency, FromWindowEvents) {
  va::TraceWindow w;
  for (int i = 0; i < 6000; ++i) w.events.push_back({i * 50, "p", va::TraceKind::PropAssignment, 0x10});
  for (int i = 0; i < 1500; ++i) w.events.push_back({i * 200, "p", va::TraceKind::PropAssignment, 0x20});
  EXPECT_EQ(va::format_hz(va::access_frequency(w, 0x10)), "20.00");
  EXPECT_EQ(va::format_hz(va::access_frequency(w, 0x20)), "5.00");
}

TEST(MergeWindows, CombinesAndSorts) {
  auto a = va::parse_trace_text("  10 ms  this.prop = 1\n", "a");
  auto b = va::parse_trace_text("  5 ms  this.prop = 2\n", "b");
  const auto m = va::merge_windows({a, b});
  ASSERT_EQ(m.events.size(), 2u);
  EXPECT_EQ(m.events[0].package, "b");
}
