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

#include <fstream>
#include <random>

#include "support/harness.hpp"
#include "support/oracles.hpp"
#include "vhal_audit/consistency.hpp"
#include "vhal_audit/pipeline.hpp"

namespace va = vhal_audit;
using harness::fixture;
using harness::q;
using harness::run_auditor;
using harness::scratch;

namespace {

va::VhalPropertyRecord rec(const std::string& name, va::PropertyCategory cat) {
  va::VhalPropertyRecord r;
  r.id.symbolic = name;
  r.category = cat;
  r.oem = "X";
  return r;
}

va::PolicyDataFlow flow(const std::string& verb, std::vector<std::string> types) {
  va::PolicyDataFlow f;
  f.action_verb = verb;
  f.data_types = std::move(types);
  return f;
}

std::map<std::string, va::VhalPropertyRecord> collected(std::initializer_list<va::VhalPropertyRecord> recs) {
  std::map<std::string, va::VhalPropertyRecord> m;
  for (const auto& r : recs) m.emplace(r.key(), r);
  return m;
}

const va::DisclosureVerdict* find(const std::vector<va::DisclosureVerdict>& vs, va::SubjectKind k, const std::string& s) {
  for (const auto& v : vs)
    if (v.kind == k && v.subject == s) return &v;
  return nullptr;
}

void write(const va::fs::path& p, const std::string& text) {
  va::fs::create_directories(p.parent_path());
  std::ofstream(p) << text;
}

}  // namespace

// ---- taxonomy ------------------------------------------------------------------

TEST(Taxonomy, FileMatchesBuiltin) {
  EXPECT_EQ(va::read_json_file(harness::data("taxonomy.json")), va::json::parse(va::kDefaultTaxonomyJson));
}

TEST(Taxonomy, BadConfigsRejected) {
  for (const char* bad : {R"({})", R"([{"categories": ["A"]}])", R"([{"name": "x"}])",
                          R"([{"name": "x", "categories": ["Q"]}])", R"([{"name": "x", "categories": ["U"]}])",
                          R"([{"name": "x", "categories": ["A"]}, {"name": " X ", "categories": ["B"]}])",
                          R"([{"name": "x", "categories": ["A"], "keywords": ["!!"]}])"}) {
    EXPECT_THROW(va::DataTypeTaxonomy::from_json(va::json::parse(bad)), va::ConfigError) << bad;
  }
  EXPECT_NO_THROW(va::DataTypeTaxonomy::from_json(va::json::parse(R"([{"name": "loc", "policy_only": true}])")));
}

TEST(Taxonomy, MappingByCategoryAndKeyword) {
  const auto tax = va::DataTypeTaxonomy::builtin();
  EXPECT_EQ(va::map_property_to_datatypes(rec("HVAC_FAN_SPEED", va::PropertyCategory::ClimateAndComfort), tax),
            (std::vector<std::string>{"climate and comfort"}));
  // Keyword hit across categories.
  EXPECT_EQ(va::map_property_to_datatypes(rec("EV_BATTERY_TEMPERATURE", va::PropertyCategory::EnergyAndMaintenance), tax),
            (std::vector<std::string>{"energy and charging", "climate and comfort"}));
  // Token sequences must be contiguous.
  EXPECT_EQ(va::map_property_to_datatypes(rec("SEAT_LUMBAR_BELT", va::PropertyCategory::Uncategorized), tax),
            (std::vector<std::string>{}));
  EXPECT_EQ(va::map_property_to_datatypes(rec("DRIVER_SEAT_BELT_BUCKLED", va::PropertyCategory::Uncategorized), tax),
            (std::vector<std::string>{"driver safety data"}));
}

// ---- disclosure ----------------------------------------------------------------

TEST(Disclosure, VerdictsAndOrdering) {
  const auto tax = va::DataTypeTaxonomy::builtin();
  const auto props = collected({rec("HVAC_FAN_SPEED", va::PropertyCategory::ClimateAndComfort),
                                rec("DRIVER_SEAT_BELT_BUCKLED", va::PropertyCategory::DrivingAssistanceAndModeSecurity),
                                rec("TPMS_PRESSURE", va::PropertyCategory::DiagnosticAndMonitoring)});
  const std::vector<va::PolicyDataFlow> flows = {flow("collect", {"seat belt status"}), flow("notify", {"tire pressure"}),
                                                 flow("share", {"mileage and performance"})};
  const auto v = va::disclosure_check(props, flows, tax);
  ASSERT_EQ(v.size(), 9u);
  EXPECT_EQ(v[0].subject, "DRIVER_SEAT_BELT_BUCKLED");
  EXPECT_EQ(v[0].status, va::DisclosureStatus::Disclosed);
  EXPECT_EQ(v[0].supporting_flows, (std::vector<std::size_t>{0}));
  EXPECT_EQ(v[1].subject, "HVAC_FAN_SPEED");
  EXPECT_EQ(v[1].status, va::DisclosureStatus::Omitted);
  // "notify" is not a disclosure verb; flow 2 discloses diagnostics.
  EXPECT_EQ(v[2].supporting_flows, (std::vector<std::size_t>{2}));
  EXPECT_EQ(v[3].kind, va::SubjectKind::DataCategory);
  EXPECT_EQ(v[3].subject, "driver safety data");
  EXPECT_EQ(v[6].kind, va::SubjectKind::PropertyCategory);
  EXPECT_EQ(v[6].subject, "DrivingAssistanceAndModeSecurity");
  const auto* climate = find(v, va::SubjectKind::PropertyCategory, "ClimateAndComfort");
  ASSERT_NE(climate, nullptr);
  EXPECT_EQ(climate->status, va::DisclosureStatus::Omitted);

  const auto s = va::consistency_rates(v, flows);
  EXPECT_EQ(va::format_rate(s.properties), "2/3 (66.67%)");
  EXPECT_EQ(va::format_rate(s.categories), "2/3 (66.67%)");
  EXPECT_EQ(s.omitted_property_categories, (std::vector<std::string>{"ClimateAndComfort"}));
}

TEST(Disclosure, NothingCollectedMeansNoVerdicts) {
  EXPECT_TRUE(va::disclosure_check({}, {flow("collect", {"gps"})}, va::DataTypeTaxonomy::builtin()).empty());
}

TEST(Disclosure, StopwordsNeverDisclose) {
  const auto tax = va::DataTypeTaxonomy::builtin();
  const auto props = collected({rec("HVAC_FAN_SPEED", va::PropertyCategory::ClimateAndComfort)});
  const auto v = va::disclosure_check(props, {flow("collect", {"your vehicle data and other information"})}, tax);
  EXPECT_EQ(v[0].status, va::DisclosureStatus::Omitted);
}

TEST(Disclosure, AddingFlowsIsMonotone) {
  const auto tax = va::DataTypeTaxonomy::builtin();
  const std::vector<std::string> pool = {"location",  "battery level", "hvac settings", "tire pressure", "seat belt",
                                         "headlights", "profile",      "nothing",       "fog",           "climate"};
  const auto props = collected({rec("HVAC_FAN_SPEED", va::PropertyCategory::ClimateAndComfort),
                                rec("FOG_LIGHTS_STATE", va::PropertyCategory::Lighting),
                                rec("EV_BATTERY_LEVEL", va::PropertyCategory::EnergyAndMaintenance),
                                rec("USER_PROFILE_ID", va::PropertyCategory::UserPreferencesAndNotifications)});
  std::mt19937 rng(7);
  for (int round = 0; round < 50; ++round) {
    std::vector<va::PolicyDataFlow> flows;
    auto before = va::disclosure_check(props, flows, tax);
    for (int i = 0; i < 5; ++i) {
      flows.push_back(flow("use", {pool[rng() % pool.size()]}));
      const auto after = va::disclosure_check(props, flows, tax);
      for (const auto& b : before) {
        if (b.status != va::DisclosureStatus::Disclosed) continue;
        const auto* a = find(after, b.kind, b.subject);
        ASSERT_NE(a, nullptr);
        EXPECT_EQ(a->status, va::DisclosureStatus::Disclosed) << b.subject;
      }
      before = after;
    }
  }
}

// ---- rates ---------------------------------------------------------------------

TEST(Rates, ReferenceStringsAgreeWithOracle) {
  const std::vector<std::pair<std::size_t, std::size_t>> cases = {{15, 16}, {735, 845}, {13, 15}, {41, 67}, {4, 7}, {8, 33}};
  const std::vector<std::string> expect = {"15/16 (93.75%)", "735/845 (86.98%)", "13/15 (86.67%)",
                                           "41/67 (61.19%)", "4/7 (57.14%)",     "8/33 (24.24%)"};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    EXPECT_EQ(va::format_rate(cases[i].first, cases[i].second), expect[i]);
    EXPECT_EQ(oracle::rate(cases[i].first, cases[i].second), expect[i]);
  }
  EXPECT_EQ(va::format_rate(0, 0), "n/a");
  EXPECT_EQ(va::format_rate(1, 8), "1/8 (12.50%)");
  EXPECT_EQ(va::format_rate(1, 200000), "1/200000 (0.00%)");
}

TEST(Rates, RandomAgreementAndRoundTrip) {
  std::mt19937 rng(11);
  for (int i = 0; i < 5000; ++i) {
    const std::size_t n = 1 + rng() % 100000, k = rng() % (n + 1);
    const auto s = va::format_rate(k, n);
    ASSERT_EQ(s, oracle::rate(k, n));
    EXPECT_EQ(va::parse_rate(s), (va::Rate{k, n}));
  }
  EXPECT_EQ(va::parse_rate("n/a"), va::Rate{});
}

TEST(Rates, MalformedRejected) {
  for (const char* bad : {"15/16", "15/16 (93.7%)x", "15/16 (90.00%)", "17/16 (106.25%)", "1/0 (0.00%)", "a/b (c%)", ""})
    EXPECT_THROW(va::parse_rate(bad), va::FormatError) << bad;
}

// ---- report --------------------------------------------------------------------

TEST(Report, NeedsInputsAndConsistentOem) {
  const auto tax = va::DataTypeTaxonomy::builtin();
  EXPECT_THROW(va::render_report({}, tax), va::UsageError);
  va::ReportInputs in;
  in.static_summary = va::json{{"oem", "A"}};
  in.dynamic_summary = va::json{{"oem", "B"}};
  EXPECT_THROW(va::render_report(in, tax), va::MergeError);
}

TEST(Report, PolicyWithoutEvidenceWarns) {
  va::ReportInputs in;
  in.flows = std::vector<va::PolicyDataFlow>{flow("collect", {"gps"})};
  const auto b = va::render_report(in, va::DataTypeTaxonomy::builtin());
  EXPECT_EQ(b.report.at("consistency"), "not run");
  EXPECT_EQ(b.report.at("static"), "not run");
  EXPECT_EQ(b.report.at("warnings").size(), 1u);
  EXPECT_NE(b.markdown.find("# Privacy audit report"), std::string::npos);
}

// ---- CLI -----------------------------------------------------------------------

TEST(Cli, HelpVersionAndUsageErrors) {
  auto r = run_auditor("--help");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.output.find("full-run"), std::string::npos);
  r = run_auditor("--version");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.output.find(std::string(va::kVersion)), std::string::npos);
  EXPECT_EQ(run_auditor("").code, 1);
  EXPECT_EQ(run_auditor("frobnicate").code, 1);
  EXPECT_EQ(run_auditor("full-run --config /nonexistent/config.json").code, 1);
  EXPECT_EQ(run_auditor("full-run").code, 1);
  EXPECT_EQ(run_auditor("scan-static --root " + q(fixture("static_tree"))).code, 1);
}

TEST(Cli, ConfigErrorsNameTheField) {
  const auto dir = scratch("cli_cfg");
  write(dir / "apps/com.x/a.java", "x");
  write(dir / "c.json", R"({"static": {"root": "apps", "catalog": "missing.json"}, "out": "o"})");
  auto r = run_auditor("full-run --config " + q(dir / "c.json"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.output.find("config field 'static.catalog'"), std::string::npos) << r.output;
  write(dir / "bad.json", "{not json");
  EXPECT_EQ(run_auditor("full-run --config " + q(dir / "bad.json")).code, 1);
  write(dir / "none.json", R"({"out": "o"})");
  r = run_auditor("full-run --config " + q(dir / "none.json"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.output.find("no phase"), std::string::npos);
}

TEST(Cli, AnalysisErrorsExitTwo) {
  const auto dir = scratch("cli_err");
  write(dir / "cat.json", R"({"HVAC_FAN": "x", "hvac-fan": "y"})");
  write(dir / "apps/com.x/a.java", "x");
  auto r = run_auditor("scan-static --root " + q(dir / "apps") + " --catalog " + q(dir / "cat.json") + " --out " + q(dir / "o"));
  EXPECT_EQ(r.code, 2) << r.output;
  write(dir / "empty.txt", "   ");
  r = run_auditor("parse-policy --in " + q(dir / "empty.txt") + " --kind text --out " + q(dir / "p"));
  EXPECT_EQ(r.code, 2) << r.output;
}

TEST(Cli, SubcommandsComposeIntoAReport) {
  const auto dir = scratch("cli_chain");
  const auto e2e = fixture("e2e");
  auto ok = [](const harness::CliResult& r) {
    EXPECT_EQ(r.code, 0) << r.output;
  };
  ok(run_auditor("--quiet scan-static --root " + q(e2e / "apps") + " --catalog " + q(e2e / "catalog.json") + " --permissions " +
                 q(e2e / "permissions.txt") + " --oem OEM-X --out " + q(dir / "static")));
  ok(run_auditor("--quiet analyze-trace --trace " + q(e2e / "trace_climate.txt") + " --package com.example.climate --catalog " +
                 q(e2e / "catalog.json") + " --oem OEM-X --window 300 --out " + q(dir / "dynamic")));
  ok(run_auditor("--quiet analyze-net --pcap " + q(e2e / "capture.pcap") + " --flows " + q(e2e / "flows.jsonl") + " --ps " +
                 q(e2e / "ps.txt") + " --netstat " + q(e2e / "netstat.txt") + " --out " + q(dir / "network")));
  ok(run_auditor("--quiet parse-policy --in " + q(e2e / "policy.html") + " --kind html --out " + q(dir / "policy")));
  ok(run_auditor("--quiet check-consistency --static " + q(dir / "static") + " --dynamic " + q(dir / "dynamic") + " --network " +
                 q(dir / "network") + " --flows " + q(dir / "policy/flows.json") + " --out " + q(dir / "report")));
  const auto report = va::read_json_file(dir / "report/report.json");
  EXPECT_EQ(report.at("oem"), "OEM-X");
  bool climate_omitted = false;
  for (const auto& v : report.at("consistency").at("property_category_verdicts"))
    if (v.at("subject") == "ClimateAndComfort") climate_omitted = v.at("status") == "Omitted";
  EXPECT_TRUE(climate_omitted);
  EXPECT_TRUE(va::fs::exists(dir / "report/report.md"));
}

TEST(Cli, SimilarityWritesCsv) {
  const auto dir = scratch("cli_sim");
  const auto r = run_auditor("--quiet similarity --catalog-a " + q(fixture("catalogs/oem_a.json")) + " --catalog-b " +
                             q(fixture("catalogs/oem_c.json")) + " --label-a A --label-b C --out " + q(dir / "table.csv"));
  ASSERT_EQ(r.code, 0) << r.output;
  const auto csv = oracle::slurp((dir / "table.csv").string());
  EXPECT_EQ(csv.rfind("set1,set2,similar_count,diff_set1,diff_set2\nA,C,", 0), 0u) << csv;
}

TEST(Cli, JsonLogsAreJsonLines) {
  const auto dir = scratch("cli_logs");
  const auto r = run_auditor("--json-logs parse-policy --in " + q(fixture("policy/policy_100.txt")) + " --kind text --out " +
                             q(dir / "p"));
  ASSERT_EQ(r.code, 0);
  for (const auto& line : oracle::lines_of(r.output)) {
    if (line.empty()) continue;
    EXPECT_TRUE(va::json::accept(line)) << line;
  }
}
