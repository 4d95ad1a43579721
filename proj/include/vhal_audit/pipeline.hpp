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

// Phase runners shared by the standalone subcommands and the configured
// full run, so both write the same bytes.

#pragma once

#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vhal_audit/consistency.hpp"
#include "vhal_audit/core_model.hpp"
#include "vhal_audit/errors.hpp"
#include "vhal_audit/extractor.hpp"
#include "vhal_audit/io.hpp"
#include "vhal_audit/netflow.hpp"
#include "vhal_audit/pcap.hpp"
#include "vhal_audit/policy.hpp"
#include "vhal_audit/remote_extractor.hpp"
#include "vhal_audit/similarity.hpp"
#include "vhal_audit/static_analyzer.hpp"
#include "vhal_audit/trace_analyzer.hpp"

namespace vhal_audit {

inline constexpr std::string_view kVersion = "0.1.0";

class Logger {
public:
  Logger(bool quiet = false, bool json_lines = false, std::ostream* sink = &std::cerr)
      : quiet_(quiet), json_(json_lines), sink_(sink) {}

  void info(std::string_view msg) const { emit("info", msg); }
  void warn(std::string_view msg) const { emit("warn", msg); }
  void error(std::string_view msg) const {
    // errors are printed even when quiet
    if (json_) {
      *sink_ << json{{"level", "error"}, {"msg", msg}}.dump() << "\n";
    } else {
      *sink_ << "error: " << msg << "\n";
    }
  }

private:
  void emit(std::string_view level, std::string_view msg) const {
    if (quiet_) return;
    if (json_) {
      *sink_ << json{{"level", level}, {"msg", msg}}.dump() << "\n";
    } else {
      *sink_ << "[" << level << "] " << msg << "\n";
    }
  }

  bool quiet_;
  bool json_;
  std::ostream* sink_;
};

// ---- static ---------------------------------------------------------------

struct StaticPhase {
  fs::path root;
  fs::path catalog;
  std::optional<fs::path> permissions;
  std::size_t workers = 0;
};

inline json run_static_phase(const StaticPhase& p, const std::string& oem, const CategoryLexicon& lexicon,
                             const fs::path& out, const Logger& log) {
  auto catalog = load_catalog(p.catalog, oem, lexicon);
  if (p.permissions) catalog.permissions = load_permission_catalog(*p.permissions);
  const SourceTree tree(p.root);
  const auto result = scan_static(tree, catalog, p.workers);
  const auto summary = static_summary_json(result, catalog, lexicon);
  write_json_file(out / "properties.json", properties_to_json(result.properties));
  write_json_file(out / "permissions.json", permissions_to_json(result.permissions));
  write_json_file(out / "summary.json", summary);
  for (const auto& w : result.log.warnings) log.warn(w.path + ": " + w.message);
  log.info("static: " + std::to_string(result.properties.size()) + " package(s), " +
           std::to_string(summary.at("observed_property_count").get<std::size_t>()) + " distinct properties");
  return summary;
}

// ---- dynamic --------------------------------------------------------------

struct TraceInput {
  fs::path file;
  std::string package;
};

struct DynamicPhase {
  std::vector<TraceInput> traces;
  fs::path catalog;
  double window_seconds = 300.0;
  double bucket_seconds = 10.0;
};

inline json run_dynamic_phase(const DynamicPhase& p, const std::string& oem, const CategoryLexicon& lexicon,
                              const fs::path& out, const Logger& log) {
  if (p.window_seconds <= 0) throw UsageError("dynamic window must be positive");
  const auto catalog = load_catalog(p.catalog, oem, lexicon);
  TraceOptions opts;
  opts.window_ms = static_cast<std::int64_t>(p.window_seconds * 1000.0);
  std::vector<TraceWindow> windows;
  for (const auto& t : p.traces) {
    auto w = parse_trace(t.file, t.package, opts);
    for (auto& msg : w.warnings) msg = t.package + ": " + msg;
    windows.push_back(std::move(w));
  }
  auto merged = merge_windows(windows);
  merged.duration_ms = opts.window_ms;
  const auto hist = occurrence_histogram(merged, catalog, static_cast<std::int64_t>(p.bucket_seconds * 1000.0));
  const auto summary = dynamic_summary_json(hist, merged, oem);
  write_json_file(out / "dynamic.json", dynamic_json(hist, merged));
  write_file(out / "timeline.csv", timeline_csv(hist));
  write_json_file(out / "summary.json", summary);
  for (const auto& w : merged.warnings) log.warn(w);
  log.info("dynamic: " + std::to_string(hist.total()) + " accesses");
  return summary;
}

// ---- network --------------------------------------------------------------

struct NetworkPhase {
  std::vector<fs::path> pcaps;
  std::optional<fs::path> flows;
  std::optional<fs::path> ps;
  std::optional<fs::path> netstat;
  std::optional<fs::path> destinations;
  std::optional<fs::path> detectors;
  double window_seconds = 0.0;
};

inline json run_network_phase(const NetworkPhase& p, const fs::path& out, const Logger& log) {
  NetworkInputs in;
  for (const auto& f : p.pcaps) in.captures.emplace_back(f.filename().string(), parse_pcap(f));
  if (p.flows) {
    auto parsed = parse_flows_jsonl(read_file(*p.flows));
    in.flows = std::move(parsed.flows);
    in.warnings.insert(in.warnings.end(), parsed.warnings.begin(), parsed.warnings.end());
  }
  if (p.ps) in.procs = parse_ps(read_file(*p.ps), &in.warnings);
  if (p.netstat) in.sockets = parse_netstat(read_file(*p.netstat), &in.warnings);
  if (p.destinations) in.destinations = DestinationMap::load(*p.destinations);
  in.detectors = p.detectors ? detectors_from_json(read_json_file(*p.detectors)) : default_detectors();
  in.window_seconds = p.window_seconds;
  const auto analysis = analyze_network(in);
  const auto j = network_json(analysis);
  write_json_file(out / "network.json", j);
  write_file(out / "payload_per_app.csv", payload_csv(analysis));
  for (const auto& w : analysis.warnings) log.warn(w);
  log.info("network: " + std::to_string(analysis.packet_count) + " packet(s), " + std::to_string(in.flows.size()) +
           " flow(s), " + std::to_string(analysis.findings.size()) + " finding(s)");
  return j;
}

// ---- policy ---------------------------------------------------------------

struct PolicyInput {
  fs::path file;
  DocumentKind kind = DocumentKind::Html;
};

struct PolicyPhase {
  std::vector<PolicyInput> documents;
  std::string extractor = "rule";  // rule | remote
  RemoteOptions remote;
  bool fallback = false;
  std::optional<fs::path> lexicon;
  std::size_t chunk_sentences = 20;
};

inline std::vector<PolicyDataFlow> run_policy_phase(const PolicyPhase& p, const fs::path& out, const Logger& log) {
  const RuleBasedExtractor rules(p.lexicon ? PolicyLexicon::load(*p.lexicon) : PolicyLexicon::builtin());
  std::vector<PolicyDataFlow> flows;
  std::size_t sentence_base = 0;
  for (const auto& d : p.documents) {
    const auto doc = parse_document(d.file, d.kind);
    for (const auto& w : doc.warnings) log.warn(d.file.filename().string() + ": " + w);
    auto seg = chunk(doc, {p.chunk_sentences});
    std::vector<PolicyDataFlow> got;
    if (p.extractor == "remote") {
      const RemoteExtractor remote(p.remote);
      if (p.fallback) {
        const FallbackExtractor fb(remote, rules);
        got = extract_flows(seg.chunks, fb, p.remote.max_in_flight);
        for (const auto& w : fb.warnings()) log.warn(w);
      } else {
        got = extract_flows(seg.chunks, remote, p.remote.max_in_flight);
      }
    } else if (p.extractor == "rule") {
      got = extract_flows(seg.chunks, rules, 0);
    } else {
      throw UsageError("unknown extractor '" + p.extractor + "' (expected rule or remote)");
    }
    // sentence indices run across all documents of one policy
    for (auto& f : got) f.sentence_index += sentence_base;
    sentence_base += seg.sentences.size();
    flows.insert(flows.end(), std::make_move_iterator(got.begin()), std::make_move_iterator(got.end()));
  }
  write_json_file(out / "flows.json", flows_to_json(flows));
  log.info("policy: " + std::to_string(flows.size()) + " flow(s), " + std::to_string(distinct_purposes(flows).size()) +
           " purpose(s)");
  return flows;
}

// ---- similarity -----------------------------------------------------------

struct CatalogRef {
  std::string label;
  fs::path file;
};

struct SimilarityPhase {
  std::vector<CatalogRef> catalogs;
  double threshold = 0.2;
};

inline std::vector<SimilarityRow> run_similarity_phase(const SimilarityPhase& p, const CategoryLexicon& lexicon,
                                                       const fs::path& out_csv, const Logger& log) {
  std::vector<OemProfile> profiles;
  for (const auto& c : p.catalogs) profiles.push_back(load_catalog(c.file, c.label, lexicon));
  const auto rows = similarity_table(profiles, p.threshold);
  write_file(out_csv, similarity_csv(rows));
  log.info("similarity: " + std::to_string(rows.size()) + " pair(s)");
  return rows;
}

inline std::vector<SimilarityRow> similarity_rows_from_csv(std::string_view text) {
  std::vector<SimilarityRow> rows;
  const auto lines = split_lines(text);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto l = trim(lines[i]);
    if (l.empty()) continue;
    std::vector<std::string> cells;
    std::string cur;
    bool quoted = false;
    for (std::size_t k = 0; k < l.size(); ++k) {
      const char c = l[k];
      if (quoted) {
        if (c == '"' && k + 1 < l.size() && l[k + 1] == '"') {
          cur += '"';
          ++k;
        } else if (c == '"') {
          quoted = false;
        } else {
          cur += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        cells.push_back(std::move(cur));
        cur.clear();
      } else {
        cur += c;
      }
    }
    cells.push_back(std::move(cur));
    if (cells.size() != 5) throw FormatError("similarity table line " + std::to_string(i + 1) + " needs 5 columns");
    try {
      rows.push_back({cells[0], cells[1], std::stoul(cells[2]), std::stoul(cells[3]), std::stoul(cells[4])});
    } catch (const std::logic_error&) {
      throw FormatError("similarity table line " + std::to_string(i + 1) + " has a non-numeric count");
    }
  }
  return rows;
}

// ---- consistency ----------------------------------------------------------

struct ConsistencyPhase {
  std::optional<fs::path> static_dir;
  std::optional<fs::path> dynamic_dir;
  std::optional<fs::path> network_dir;
  std::optional<fs::path> flows;
  std::optional<fs::path> similarity;  // table.csv from the similarity phase
  std::optional<fs::path> taxonomy;
  std::string oem;
};

inline json run_consistency_phase(const ConsistencyPhase& p, const fs::path& out, const Logger& log) {
  ReportInputs in;
  in.oem = p.oem;
  if (p.static_dir) in.static_summary = read_json_file(*p.static_dir / "summary.json");
  if (p.dynamic_dir) in.dynamic_summary = read_json_file(*p.dynamic_dir / "summary.json");
  if (p.network_dir) in.network = read_json_file(*p.network_dir / "network.json");
  if (p.flows) in.flows = flows_from_json(read_json_file(*p.flows));
  if (p.similarity) in.similarity = similarity_rows_from_csv(read_file(*p.similarity));
  const auto tax = p.taxonomy ? DataTypeTaxonomy::load(*p.taxonomy) : DataTypeTaxonomy::builtin();
  const auto bundle = render_report(in, tax);
  write_report(out, bundle);
  if (bundle.report.at("consistency").is_object()) {
    const auto& c = bundle.report.at("consistency");
    log.info("consistency: categories " + c.at("categories_disclosed").get<std::string>() + ", properties " +
             c.at("properties_disclosed").get<std::string>());
  }
  return bundle.report;
}

// ---- configured run -------------------------------------------------------

struct RunConfig {
  std::string oem;
  fs::path out;
  std::optional<fs::path> lexicon;
  std::optional<fs::path> taxonomy;
  std::optional<StaticPhase> static_phase;
  std::optional<DynamicPhase> dynamic_phase;
  std::optional<NetworkPhase> network_phase;
  std::optional<PolicyPhase> policy_phase;
  std::optional<SimilarityPhase> similarity_phase;
  std::vector<fs::path> inputs;  // every referenced input file, for digests

  bool any_phase() const {
    return static_phase || dynamic_phase || network_phase || policy_phase || similarity_phase;
  }
};

namespace detail {

class ConfigReader {
public:
  ConfigReader(const json& root, fs::path base) : root_(root), base_(std::move(base)) {}

  const json* find(const json& obj, const std::string& key) const {
    return obj.contains(key) && !obj.at(key).is_null() ? &obj.at(key) : nullptr;
  }

  std::string str(const json& v, const std::string& field) const {
    if (!v.is_string()) throw UsageError("config field '" + field + "' must be a string");
    return v.get<std::string>();
  }

  double number(const json& v, const std::string& field) const {
    if (!v.is_number()) throw UsageError("config field '" + field + "' must be a number");
    return v.get<double>();
  }

  // Relative paths resolve against the config file's directory.
  fs::path path(const json& v, const std::string& field, bool must_exist, bool dir, RunConfig& cfg) const {
    fs::path p = str(v, field);
    if (p.is_relative()) p = base_ / p;
    p = p.lexically_normal();
    if (must_exist) {
      std::error_code ec;
      const bool ok = dir ? fs::is_directory(p, ec) : fs::is_regular_file(p, ec);
      if (!ok) throw UsageError("config field '" + field + "': " + (dir ? "directory" : "file") + " not found: " + p.string());
      if (!dir) cfg.inputs.push_back(p);
    }
    return p;
  }

  std::optional<fs::path> opt_path(const json& obj, const std::string& key, const std::string& field, RunConfig& cfg) const {
    const auto* v = find(obj, key);
    if (!v) return std::nullopt;
    return path(*v, field, true, false, cfg);
  }

  const json& root() const { return root_; }

private:
  const json& root_;
  fs::path base_;
};

}  // namespace detail

inline RunConfig parse_run_config(const json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  RunConfig cfg;
  const detail::ConfigReader r(j, base_dir);
  if (const auto* v = r.find(j, "oem")) cfg.oem = r.str(*v, "oem");
  if (const auto* v = r.find(j, "out")) cfg.out = r.path(*v, "out", false, false, cfg);
  cfg.lexicon = r.opt_path(j, "lexicon", "lexicon", cfg);
  cfg.taxonomy = r.opt_path(j, "taxonomy", "taxonomy", cfg);

  if (const auto* s = r.find(j, "static")) {
    StaticPhase p;
    if (!r.find(*s, "root") || !r.find(*s, "catalog")) throw UsageError("config field 'static' needs 'root' and 'catalog'");
    p.root = r.path(s->at("root"), "static.root", true, true, cfg);
    p.catalog = r.path(s->at("catalog"), "static.catalog", true, false, cfg);
    p.permissions = r.opt_path(*s, "permissions", "static.permissions", cfg);
    if (const auto* w = r.find(*s, "workers")) p.workers = static_cast<std::size_t>(r.number(*w, "static.workers"));
    cfg.static_phase = std::move(p);
  }

  if (const auto* d = r.find(j, "dynamic")) {
    DynamicPhase p;
    const auto* traces = r.find(*d, "traces");
    if (!traces || !traces->is_array() || traces->empty()) throw UsageError("config field 'dynamic.traces' must be a non-empty array");
    for (std::size_t i = 0; i < traces->size(); ++i) {
      const auto& t = traces->at(i);
      const auto field = "dynamic.traces[" + std::to_string(i) + "]";
      if (!t.is_object() || !r.find(t, "file") || !r.find(t, "package"))
        throw UsageError("config field '" + field + "' needs 'file' and 'package'");
      p.traces.push_back({r.path(t.at("file"), field + ".file", true, false, cfg), r.str(t.at("package"), field + ".package")});
    }
    if (const auto* c = r.find(*d, "catalog")) {
      p.catalog = r.path(*c, "dynamic.catalog", true, false, cfg);
    } else if (cfg.static_phase) {
      p.catalog = cfg.static_phase->catalog;
    } else {
      throw UsageError("config field 'dynamic.catalog' is required when there is no static phase");
    }
    if (const auto* w = r.find(*d, "window_s")) p.window_seconds = r.number(*w, "dynamic.window_s");
    if (const auto* b = r.find(*d, "bucket_s")) p.bucket_seconds = r.number(*b, "dynamic.bucket_s");
    if (p.window_seconds <= 0) throw UsageError("config field 'dynamic.window_s' must be positive");
    if (p.bucket_seconds < 0) throw UsageError("config field 'dynamic.bucket_s' must not be negative");
    cfg.dynamic_phase = std::move(p);
  }

  if (const auto* n = r.find(j, "network")) {
    NetworkPhase p;
    if (const auto* pcaps = r.find(*n, "pcaps")) {
      if (!pcaps->is_array()) throw UsageError("config field 'network.pcaps' must be an array");
      for (std::size_t i = 0; i < pcaps->size(); ++i)
        p.pcaps.push_back(r.path(pcaps->at(i), "network.pcaps[" + std::to_string(i) + "]", true, false, cfg));
    }
    p.flows = r.opt_path(*n, "flows", "network.flows", cfg);
    p.ps = r.opt_path(*n, "ps", "network.ps", cfg);
    p.netstat = r.opt_path(*n, "netstat", "network.netstat", cfg);
    p.destinations = r.opt_path(*n, "destinations", "network.destinations", cfg);
    p.detectors = r.opt_path(*n, "detectors", "network.detectors", cfg);
    if (const auto* w = r.find(*n, "window_s")) p.window_seconds = r.number(*w, "network.window_s");
    if (p.pcaps.empty() && !p.flows) throw UsageError("config field 'network' needs 'pcaps' or 'flows'");
    cfg.network_phase = std::move(p);
  }

  if (const auto* pol = r.find(j, "policy")) {
    PolicyPhase p;
    const auto* docs = r.find(*pol, "documents");
    if (!docs || !docs->is_array() || docs->empty()) throw UsageError("config field 'policy.documents' must be a non-empty array");
    for (std::size_t i = 0; i < docs->size(); ++i) {
      const auto& d = docs->at(i);
      const auto field = "policy.documents[" + std::to_string(i) + "]";
      if (!d.is_object() || !r.find(d, "file")) throw UsageError("config field '" + field + "' needs 'file'");
      PolicyInput in;
      in.file = r.path(d.at("file"), field + ".file", true, false, cfg);
      in.kind = parse_document_kind(d.contains("kind") ? r.str(d.at("kind"), field + ".kind") : "html");
      p.documents.push_back(std::move(in));
    }
    if (const auto* e = r.find(*pol, "extractor")) p.extractor = r.str(*e, "policy.extractor");
    if (p.extractor != "rule" && p.extractor != "remote")
      throw UsageError("config field 'policy.extractor' must be 'rule' or 'remote'");
    if (const auto* e = r.find(*pol, "endpoint")) p.remote.endpoint = r.str(*e, "policy.endpoint");
    if (p.extractor == "remote" && p.remote.endpoint.empty())
      throw UsageError("config field 'policy.endpoint' is required for the remote extractor");
    if (const auto* a = r.find(*pol, "authorization_env")) {
      const auto name = r.str(*a, "policy.authorization_env");
      if (const char* v = std::getenv(name.c_str())) p.remote.authorization = v;
    }
    if (const auto* f = r.find(*pol, "fallback")) p.fallback = f->is_boolean() && f->get<bool>();
    if (const auto* m = r.find(*pol, "max_in_flight")) p.remote.max_in_flight = static_cast<std::size_t>(r.number(*m, "policy.max_in_flight"));
    if (const auto* t = r.find(*pol, "retries")) p.remote.retries = static_cast<int>(r.number(*t, "policy.retries"));
    if (const auto* c = r.find(*pol, "chunk_sentences")) p.chunk_sentences = static_cast<std::size_t>(r.number(*c, "policy.chunk_sentences"));
    p.lexicon = r.opt_path(*pol, "lexicon", "policy.lexicon", cfg);
    cfg.policy_phase = std::move(p);
  }

  if (const auto* s = r.find(j, "similarity")) {
    SimilarityPhase p;
    const auto* cats = r.find(*s, "catalogs");
    if (!cats || !cats->is_array() || cats->size() < 2) throw UsageError("config field 'similarity.catalogs' needs at least two entries");
    for (std::size_t i = 0; i < cats->size(); ++i) {
      const auto& c = cats->at(i);
      const auto field = "similarity.catalogs[" + std::to_string(i) + "]";
      if (!c.is_object() || !r.find(c, "file") || !r.find(c, "label"))
        throw UsageError("config field '" + field + "' needs 'label' and 'file'");
      p.catalogs.push_back({r.str(c.at("label"), field + ".label"), r.path(c.at("file"), field + ".file", true, false, cfg)});
    }
    if (const auto* t = r.find(*s, "threshold")) p.threshold = r.number(*t, "similarity.threshold");
    cfg.similarity_phase = std::move(p);
  }

  if (!cfg.any_phase()) throw UsageError("config enables no phase (static, dynamic, network, policy, similarity)");
  return cfg;
}

inline RunConfig load_run_config(const fs::path& file) {
  const auto text = try_read_file(file);
  if (!text) throw UsageError("cannot read config: " + file.string());
  json j;
  try {
    j = json::parse(*text);
  } catch (const json::exception& e) {
    throw UsageError("config is not valid JSON: " + std::string(e.what()));
  }
  return parse_run_config(j, file.parent_path());
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// Timestamps and digests go to run_meta.json so report.json stays stable.
inline json run_metadata(const RunConfig& cfg, double wall_seconds) {
  json digests = json::object();
  for (const auto& p : cfg.inputs) {
    if (auto data = try_read_file(p)) digests[p.string()] = "fnv1a64:" + hex64(fnv1a64(*data));
  }
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return {{"tool", "vhal-audit"}, {"version", kVersion}, {"finished_at", stamp}, {"wall_seconds", wall_seconds}, {"inputs", digests}};
}

// static -> dynamic -> network -> policy -> consistency.
inline json run(const RunConfig& cfg, const Logger& log) {
  const auto started = std::chrono::steady_clock::now();
  if (cfg.out.empty()) throw UsageError("no output directory (config 'out' or --out)");
  const auto lexicon = cfg.lexicon ? CategoryLexicon::load(*cfg.lexicon) : CategoryLexicon::builtin();
  ConsistencyPhase report;
  report.oem = cfg.oem;
  report.taxonomy = cfg.taxonomy;
  if (cfg.static_phase) {
    run_static_phase(*cfg.static_phase, cfg.oem, lexicon, cfg.out / "static", log);
    report.static_dir = cfg.out / "static";
  }
  if (cfg.dynamic_phase) {
    run_dynamic_phase(*cfg.dynamic_phase, cfg.oem, lexicon, cfg.out / "dynamic", log);
    report.dynamic_dir = cfg.out / "dynamic";
  }
  if (cfg.network_phase) {
    run_network_phase(*cfg.network_phase, cfg.out / "network", log);
    report.network_dir = cfg.out / "network";
  }
  if (cfg.policy_phase) {
    run_policy_phase(*cfg.policy_phase, cfg.out / "policy", log);
    report.flows = cfg.out / "policy" / "flows.json";
  }
  if (cfg.similarity_phase) {
    run_similarity_phase(*cfg.similarity_phase, lexicon, cfg.out / "similarity" / "table.csv", log);
    report.similarity = cfg.out / "similarity" / "table.csv";
  }
  auto result = run_consistency_phase(report, cfg.out, log);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  write_json_file(cfg.out / "run_meta.json", run_metadata(cfg, wall));
  return result;
}

}  // namespace vhal_audit
