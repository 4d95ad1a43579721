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

// auditor: command-line entry point. Exit status 0 = success, 1 = usage
// error, 2 = analysis error.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "vhal_audit/pipeline.hpp"

namespace va = vhal_audit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAnalysis = 2;

std::optional<va::fs::path> opt(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return va::fs::path(s);
}

va::CategoryLexicon lexicon_from(const std::string& path) {
  return path.empty() ? va::CategoryLexicon::builtin() : va::CategoryLexicon::load(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vhal-audit: privacy audit of vehicle-property access in automotive apps"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(va::kVersion));

  std::string out;
  std::string config;
  bool quiet = false;
  bool json_logs = false;
  app.add_option("--out", out, "Output directory (a file for 'similarity')");
  app.add_option("--config", config, "Run configuration (JSON) for full-run")->check(CLI::ExistingFile);
  app.add_flag("--quiet", quiet, "Only print errors");
  app.add_flag("--json-logs", json_logs, "Log as JSON lines on stderr");

  // scan-static
  auto* scan = app.add_subcommand("scan-static", "Count property references and permission usage in decompiled apps");
  scan->fallthrough();
  std::string scan_root, scan_catalog, scan_perms, scan_lexicon, scan_oem;
  std::size_t scan_workers = 0;
  scan->add_option("--root", scan_root, "Directory with one subdirectory per package")->required()->check(CLI::ExistingDirectory);
  scan->add_option("--catalog", scan_catalog, "Property catalog (JSON)")->required()->check(CLI::ExistingFile);
  scan->add_option("--permissions", scan_perms, "Permission catalog")->check(CLI::ExistingFile);
  scan->add_option("--lexicon", scan_lexicon, "Category lexicon (JSON)")->check(CLI::ExistingFile);
  scan->add_option("--oem", scan_oem, "OEM label");
  scan->add_option("--workers", scan_workers, "Worker threads (0 = hardware)");

  // similarity
  auto* sim = app.add_subcommand("similarity", "Cross-OEM property-name similarity table");
  sim->fallthrough();
  std::string sim_a, sim_b, sim_label_a = "set1", sim_label_b = "set2", sim_lexicon;
  double sim_threshold = 0.2;
  sim->add_option("--catalog-a", sim_a, "First catalog")->required()->check(CLI::ExistingFile);
  sim->add_option("--catalog-b", sim_b, "Second catalog")->required()->check(CLI::ExistingFile);
  sim->add_option("--label-a", sim_label_a, "Label of the first catalog");
  sim->add_option("--label-b", sim_label_b, "Label of the second catalog");
  sim->add_option("--threshold", sim_threshold, "Jaccard threshold in (0, 1]");
  sim->add_option("--lexicon", sim_lexicon, "Category lexicon (JSON)")->check(CLI::ExistingFile);

  // analyze-trace
  auto* trace = app.add_subcommand("analyze-trace", "Classify property accesses in instrumentation traces");
  trace->fallthrough();
  std::vector<std::string> trace_files, trace_packages;
  std::string trace_catalog, trace_lexicon, trace_oem;
  double trace_window = 300.0, trace_bucket = 10.0;
  trace->add_option("--trace", trace_files, "Trace log (repeatable)")->required()->check(CLI::ExistingFile);
  trace->add_option("--package", trace_packages, "Package per trace (one name applies to all)")->required();
  trace->add_option("--catalog", trace_catalog, "Property catalog (JSON)")->required()->check(CLI::ExistingFile);
  trace->add_option("--lexicon", trace_lexicon, "Category lexicon (JSON)")->check(CLI::ExistingFile);
  trace->add_option("--oem", trace_oem, "OEM label");
  trace->add_option("--window", trace_window, "Observation window in seconds");
  trace->add_option("--bucket", trace_bucket, "Timeline bucket in seconds (0 disables)");

  // analyze-net
  auto* net = app.add_subcommand("analyze-net", "Attribute captured traffic to apps and inspect decrypted requests");
  net->fallthrough();
  std::vector<std::string> net_pcaps;
  std::string net_flows, net_ps, net_netstat, net_dest, net_detectors;
  double net_window = 0.0;
  net->add_option("--pcap", net_pcaps, "Capture file(s)")->check(CLI::ExistingFile);
  net->add_option("--flows", net_flows, "Decrypted flow export (JSON lines)")->check(CLI::ExistingFile);
  net->add_option("--ps", net_ps, "Process snapshots")->check(CLI::ExistingFile);
  net->add_option("--netstat", net_netstat, "Socket snapshots")->check(CLI::ExistingFile);
  net->add_option("--dest-map", net_dest, "CIDR to organization map (JSON)")->check(CLI::ExistingFile);
  net->add_option("--detectors", net_detectors, "Request detectors (JSON)")->check(CLI::ExistingFile);
  net->add_option("--window", net_window, "Accounting window in seconds (0 = all)");

  // parse-policy
  auto* pol = app.add_subcommand("parse-policy", "Segment a privacy policy and extract data flows");
  pol->fallthrough();
  std::vector<std::string> pol_in;
  std::string pol_kind = "html", pol_extractor = "rule", pol_endpoint, pol_lexicon;
  bool pol_fallback = false;
  std::size_t pol_in_flight = 4, pol_chunk = 20;
  pol->add_option("--in", pol_in, "Policy document(s)")->required()->check(CLI::ExistingFile);
  pol->add_option("--kind", pol_kind, "html | text");
  pol->add_option("--extractor", pol_extractor, "rule | remote");
  pol->add_option("--endpoint", pol_endpoint, "Remote extractor URL");
  pol->add_flag("--fallback", pol_fallback, "Fall back to rule-based extraction when the remote fails");
  pol->add_option("--max-in-flight", pol_in_flight, "Concurrent remote requests");
  pol->add_option("--chunk-sentences", pol_chunk, "Maximum sentences per chunk");
  pol->add_option("--lexicon", pol_lexicon, "Policy lexicon (JSON)")->check(CLI::ExistingFile);

  // check-consistency
  auto* cc = app.add_subcommand("check-consistency", "Join evidence against policy flows and write the report");
  cc->fallthrough();
  std::string cc_static, cc_dynamic, cc_network, cc_flows, cc_taxonomy, cc_similarity, cc_oem;
  cc->add_option("--static", cc_static, "scan-static output directory")->check(CLI::ExistingDirectory);
  cc->add_option("--dynamic", cc_dynamic, "analyze-trace output directory")->check(CLI::ExistingDirectory);
  cc->add_option("--network", cc_network, "analyze-net output directory")->check(CLI::ExistingDirectory);
  cc->add_option("--flows", cc_flows, "flows.json from parse-policy")->check(CLI::ExistingFile);
  cc->add_option("--taxonomy", cc_taxonomy, "Data-type taxonomy (JSON)")->check(CLI::ExistingFile);
  cc->add_option("--similarity", cc_similarity, "table.csv from similarity")->check(CLI::ExistingFile);
  cc->add_option("--oem", cc_oem, "OEM label");

  // full-run
  auto* full = app.add_subcommand("full-run", "Run every configured phase (needs --config)");
  full->fallthrough();
  std::string full_oem;
  full->add_option("--oem", full_oem, "OEM label (overrides the config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  const va::Logger log(quiet, json_logs);
  auto need_out = [&] {
    if (out.empty()) throw va::UsageError("--out is required");
    return va::fs::path(out);
  };

  try {
    if (*scan) {
      va::StaticPhase p{scan_root, scan_catalog, opt(scan_perms), scan_workers};
      va::run_static_phase(p, scan_oem, lexicon_from(scan_lexicon), need_out(), log);
    } else if (*sim) {
      va::SimilarityPhase p{{{sim_label_a, sim_a}, {sim_label_b, sim_b}}, sim_threshold};
      va::run_similarity_phase(p, lexicon_from(sim_lexicon), need_out(), log);
    } else if (*trace) {
      if (trace_packages.size() != 1 && trace_packages.size() != trace_files.size())
        throw va::UsageError("give one --package, or one per --trace");
      va::DynamicPhase p;
      for (std::size_t i = 0; i < trace_files.size(); ++i)
        p.traces.push_back({trace_files[i], trace_packages.size() == 1 ? trace_packages[0] : trace_packages[i]});
      p.catalog = trace_catalog;
      p.window_seconds = trace_window;
      p.bucket_seconds = trace_bucket;
      va::run_dynamic_phase(p, trace_oem, lexicon_from(trace_lexicon), need_out(), log);
    } else if (*net) {
      if (net_pcaps.empty() && net_flows.empty()) throw va::UsageError("give --pcap and/or --flows");
      va::NetworkPhase p;
      for (const auto& f : net_pcaps) p.pcaps.emplace_back(f);
      p.flows = opt(net_flows);
      p.ps = opt(net_ps);
      p.netstat = opt(net_netstat);
      p.destinations = opt(net_dest);
      p.detectors = opt(net_detectors);
      p.window_seconds = net_window;
      va::run_network_phase(p, need_out(), log);
    } else if (*pol) {
      va::PolicyPhase p;
      const auto kind = va::parse_document_kind(pol_kind);
      for (const auto& f : pol_in) p.documents.push_back({f, kind});
      p.extractor = pol_extractor;
      p.remote.endpoint = pol_endpoint;
      p.remote.max_in_flight = pol_in_flight;
      p.fallback = pol_fallback;
      p.lexicon = opt(pol_lexicon);
      p.chunk_sentences = pol_chunk;
      if (p.extractor == "remote" && p.remote.endpoint.empty()) throw va::UsageError("--endpoint is required with --extractor remote");
      va::run_policy_phase(p, need_out(), log);
    } else if (*cc) {
      va::ConsistencyPhase p{opt(cc_static), opt(cc_dynamic), opt(cc_network), opt(cc_flows),
                             opt(cc_similarity), opt(cc_taxonomy), cc_oem};
      va::run_consistency_phase(p, need_out(), log);
    } else if (*full) {
      if (config.empty()) throw va::UsageError("full-run needs --config");
      auto cfg = va::load_run_config(config);
      if (!out.empty()) cfg.out = out;
      if (!full_oem.empty()) cfg.oem = full_oem;
      va::run(cfg, log);
    }
  } catch (const va::UsageError& e) {
    log.error(e.what());
    return kExitUsage;
  } catch (const va::AuditError& e) {
    log.error(e.what());
    return kExitAnalysis;
  } catch (const std::exception& e) {
    log.error(e.what());
    return kExitAnalysis;
  }
  return kExitOk;
}
