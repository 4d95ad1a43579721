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
#include <iterator>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "vhal_audit/io.hpp"
#include "vhal_audit/pcap.hpp"

namespace vhal_audit {

inline constexpr std::string_view kUnknownPackage = "unknown";

struct Endpoint {
  IpAddress ip;
  std::uint16_t port = 0;

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
  friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

// "1.2.3.4:80", "[2001:db8::1]:443", or netstat's "::ffff:10.0.2.16:40000".
// IPv4-mapped IPv6 addresses are folded to plain IPv4.
inline std::optional<Endpoint> parse_endpoint(std::string_view text) {
  auto t = trim(text);
  std::string_view host;
  std::string_view port;
  if (!t.empty() && t.front() == '[') {
    const auto close = t.find(']');
    if (close == std::string_view::npos || close + 1 >= t.size() || t[close + 1] != ':') return std::nullopt;
    host = t.substr(1, close - 1);
    port = t.substr(close + 2);
  } else {
    const auto colon = t.rfind(':');
    if (colon == std::string_view::npos) return std::nullopt;
    host = t.substr(0, colon);
    port = t.substr(colon + 1);
  }
  if (host.rfind("::ffff:", 0) == 0 && host.find('.') != std::string_view::npos) host.remove_prefix(7);
  auto ip = IpAddress::parse(host);
  if (!ip || port.empty() || !std::all_of(port.begin(), port.end(), is_digit) || port.size() > 5) return std::nullopt;
  const auto p = std::stoul(std::string(port));
  if (p > 65535) return std::nullopt;
  return Endpoint{*ip, static_cast<std::uint16_t>(p)};
}

inline std::string endpoint_string(const Endpoint& e) {
  return e.ip.is_v6() ? "[" + e.ip.to_string() + "]:" + std::to_string(e.port)
                      : e.ip.to_string() + ":" + std::to_string(e.port);
}

struct HttpsFlowRecord {
  double ts = 0.0;
  std::string host;
  std::string method;
  std::string url;
  int status = 0;
  std::vector<std::pair<std::string, std::string>> request_headers;
  std::vector<std::pair<std::string, std::string>> response_headers;
  std::uint64_t request_size = 0;
  std::uint64_t response_size = 0;
  std::optional<std::string> body_excerpt;
  // Connection endpoints when the proxy export carries them.
  std::optional<Endpoint> client;
  std::optional<Endpoint> server;
};

namespace detail {

inline std::vector<std::pair<std::string, std::string>> parse_headers(const json& j) {
  std::vector<std::pair<std::string, std::string>> out;
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) out.emplace_back(k, v.is_string() ? v.get<std::string>() : v.dump());
  } else if (j.is_array()) {
    for (const auto& kv : j) {
      if (!kv.is_array() || kv.size() != 2) throw FormatError("header entries must be [name, value] pairs");
      out.emplace_back(kv[0].get<std::string>(), kv[1].get<std::string>());
    }
  } else if (!j.is_null()) {
    throw FormatError("headers must be an object or a list of pairs");
  }
  return out;
}

}  // namespace detail

inline HttpsFlowRecord flow_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("flow record must be a JSON object");
  HttpsFlowRecord f;
  try {
    f.ts = j.value("ts", 0.0);
    f.host = j.value("host", std::string());
    f.method = to_upper(j.value("method", std::string()));
    f.url = j.value("url", std::string());
    f.status = j.value("status", 0);
    if (j.contains("req_headers")) f.request_headers = detail::parse_headers(j.at("req_headers"));
    if (j.contains("resp_headers")) f.response_headers = detail::parse_headers(j.at("resp_headers"));
    const auto rq = j.value("req_size", std::int64_t{0});
    const auto rs = j.value("resp_size", std::int64_t{0});
    if (rq < 0 || rs < 0) throw FormatError("flow sizes must be non-negative");
    f.request_size = static_cast<std::uint64_t>(rq);
    f.response_size = static_cast<std::uint64_t>(rs);
    if (j.contains("body_excerpt") && j.at("body_excerpt").is_string()) f.body_excerpt = j.at("body_excerpt").get<std::string>();
    if (j.contains("client")) f.client = parse_endpoint(j.at("client").get<std::string>());
    if (j.contains("server")) f.server = parse_endpoint(j.at("server").get<std::string>());
  } catch (const json::exception& e) {
    throw FormatError(std::string("flow record: ") + e.what());
  }
  return f;
}

struct FlowParseResult {
  std::vector<HttpsFlowRecord> flows;
  std::vector<std::string> warnings;
};

// flows.jsonl: one JSON object per line; bad lines are reported and skipped.
inline FlowParseResult parse_flows_jsonl(std::string_view text) {
  FlowParseResult out;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto l = trim(lines[i]);
    if (l.empty()) continue;
    try {
      out.flows.push_back(flow_from_json(json::parse(l)));
    } catch (const std::exception& e) {
      out.warnings.push_back("flows line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return out;
}

struct ProcessSnapshot {
  double ts = 0.0;
  std::map<std::uint32_t, std::string> entries;  // pid -> package
};

struct SocketKey {
  TransportProto proto = TransportProto::OTHER;
  Endpoint local;
  Endpoint remote;

  friend bool operator==(const SocketKey&, const SocketKey&) = default;
  friend auto operator<=>(const SocketKey&, const SocketKey&) = default;
};

struct SocketSnapshot {
  double ts = 0.0;
  std::map<SocketKey, std::uint32_t> entries;  // socket -> pid
};

// ps.txt: "<ts> <pid> <package>" per line, grouped into snapshots by ts.
// A pid listed twice at one ts keeps the lexicographically smallest package.
inline std::vector<ProcessSnapshot> parse_ps(std::string_view text, std::vector<std::string>* warnings = nullptr) {
  std::map<double, ProcessSnapshot> by_ts;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto l = trim(lines[i]);
    if (l.empty() || l.front() == '#') continue;
    std::istringstream in{std::string(l)};
    double ts = 0;
    std::uint64_t pid = 0;
    std::string pkg;
    if (!(in >> ts >> pid >> pkg) || pid > 0xFFFFFFFFu) {
      if (warnings) warnings->push_back("ps line " + std::to_string(i + 1) + " unparseable");
      continue;
    }
    auto& snap = by_ts[ts];
    snap.ts = ts;
    auto [it, inserted] = snap.entries.emplace(static_cast<std::uint32_t>(pid), pkg);
    if (!inserted && pkg < it->second) it->second = pkg;
  }
  std::vector<ProcessSnapshot> out;
  for (auto& [ts, snap] : by_ts) out.push_back(std::move(snap));
  return out;
}

// netstat.txt: "<ts> <proto> <local> <remote> <pid>" per line.
inline std::vector<SocketSnapshot> parse_netstat(std::string_view text, std::vector<std::string>* warnings = nullptr) {
  std::map<double, SocketSnapshot> by_ts;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto l = trim(lines[i]);
    if (l.empty() || l.front() == '#') continue;
    std::istringstream in{std::string(l)};
    double ts = 0;
    std::string proto, local, remote;
    std::uint64_t pid = 0;
    std::optional<Endpoint> le, re;
    if (!(in >> ts >> proto >> local >> remote >> pid) || !(le = parse_endpoint(local)) ||
        !(re = parse_endpoint(remote)) || pid > 0xFFFFFFFFu) {
      if (warnings) warnings->push_back("netstat line " + std::to_string(i + 1) + " unparseable");
      continue;
    }
    auto& snap = by_ts[ts];
    snap.ts = ts;
    SocketKey key{parse_proto(proto), *le, *re};
    auto [it, inserted] = snap.entries.emplace(key, static_cast<std::uint32_t>(pid));
    if (!inserted) it->second = std::min(it->second, static_cast<std::uint32_t>(pid));
  }
  std::vector<SocketSnapshot> out;
  for (auto& [ts, snap] : by_ts) out.push_back(std::move(snap));
  return out;
}

// One unit of traffic to attribute: a decoded packet or a decrypted flow.
struct TrafficItem {
  double ts = 0.0;
  TransportProto proto = TransportProto::TCP;
  std::optional<Endpoint> src;
  std::optional<Endpoint> dst;
  std::uint64_t bytes = 0;
};

inline TrafficItem to_traffic(const PacketRecord& p) {
  return {p.ts(), p.proto, Endpoint{p.src_ip, p.src_port}, Endpoint{p.dst_ip, p.dst_port}, p.payload_len};
}

inline TrafficItem to_traffic(const HttpsFlowRecord& f) {
  return {f.ts, TransportProto::TCP, f.client, f.server, f.request_size + f.response_size};
}

struct Attribution {
  std::string package;
  std::optional<std::uint32_t> pid;
  std::optional<Endpoint> remote;  // the non-device side, when known
};

namespace detail {

// Picks from ts-sorted (ts, value) candidates: the latest at or before t,
// otherwise the one nearest to t (earlier wins a tie). Equal timestamps keep
// the first entry, which callers sort to the smallest value.
template <typename V>
const V* pick_nearest(const std::vector<std::pair<double, V>>& cands, double t) {
  if (cands.empty()) return nullptr;
  auto it = std::upper_bound(cands.begin(), cands.end(), t,
                             [](double x, const std::pair<double, V>& c) { return x < c.first; });
  if (it != cands.begin()) {
    auto prev = std::prev(it);
    const double ts = prev->first;
    while (prev != cands.begin() && std::prev(prev)->first == ts) --prev;
    return &prev->second;
  }
  return &cands.front().second;
}

}  // namespace detail

class Correlator {
public:
  Correlator(const std::vector<SocketSnapshot>& sockets, const std::vector<ProcessSnapshot>& procs) {
    for (const auto& snap : sockets) {
      for (const auto& [key, pid] : snap.entries) sockets_[key].emplace_back(snap.ts, pid);
    }
    for (const auto& snap : procs) {
      for (const auto& [pid, pkg] : snap.entries) procs_[pid].emplace_back(snap.ts, pkg);
    }
    for (auto& [k, v] : sockets_) std::sort(v.begin(), v.end());
    for (auto& [k, v] : procs_) std::sort(v.begin(), v.end());
  }

  Attribution attribute(const TrafficItem& item) const {
    Attribution a{std::string(kUnknownPackage), std::nullopt, std::nullopt};
    if (!item.src || !item.dst) return a;
    const std::uint32_t* pid = nullptr;
    // outbound: src is the device-local side; inbound: dst is.
    if (auto it = sockets_.find(SocketKey{item.proto, *item.src, *item.dst}); it != sockets_.end()) {
      pid = detail::pick_nearest(it->second, item.ts);
      a.remote = item.dst;
    } else if (auto it2 = sockets_.find(SocketKey{item.proto, *item.dst, *item.src}); it2 != sockets_.end()) {
      pid = detail::pick_nearest(it2->second, item.ts);
      a.remote = item.src;
    }
    if (!pid) return a;
    a.pid = *pid;
    if (auto it = procs_.find(*pid); it != procs_.end()) {
      if (const auto* pkg = detail::pick_nearest(it->second, item.ts)) a.package = *pkg;
    }
    return a;
  }

private:
  std::map<SocketKey, std::vector<std::pair<double, std::uint32_t>>> sockets_;
  std::map<std::uint32_t, std::vector<std::pair<double, std::string>>> procs_;
};

inline std::vector<Attribution> correlate(const std::vector<TrafficItem>& items,
                                          const std::vector<SocketSnapshot>& sockets,
                                          const std::vector<ProcessSnapshot>& procs) {
  const Correlator c(sockets, procs);
  std::vector<Attribution> out;
  out.reserve(items.size());
  for (const auto& item : items) out.push_back(c.attribute(item));
  return out;
}

struct PayloadSummary {
  std::map<std::string, std::uint64_t> totals;
  // package -> bytes per series bucket, bucket 0 starting at series_start
  std::map<std::string, std::vector<std::uint64_t>> series;
  double series_start = 0.0;
  double bucket_seconds = 60.0;

  // Totals ordered by bytes descending, then package name.
  std::vector<std::pair<std::string, std::uint64_t>> ranked() const {
    std::vector<std::pair<std::string, std::uint64_t>> v(totals.begin(), totals.end());
    std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    return v;
  }

  std::uint64_t grand_total() const {
    std::uint64_t s = 0;
    for (const auto& [k, v] : totals) s += v;
    return s;
  }
};

// When window_seconds > 0 only items in [start, start + window] count, with
// start the earliest item timestamp.
inline PayloadSummary per_app_payload(const std::vector<TrafficItem>& items, const std::vector<Attribution>& attributions,
                                      double window_seconds = 0.0, double bucket_seconds = 60.0) {
  if (items.size() != attributions.size()) throw DomainError("items and attributions differ in length");
  PayloadSummary s;
  s.bucket_seconds = bucket_seconds;
  if (items.empty()) return s;
  double start = items.front().ts;
  for (const auto& i : items) start = std::min(start, i.ts);
  s.series_start = start;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const double offset = items[i].ts - start;
    if (window_seconds > 0.0 && offset > window_seconds) continue;
    const auto& pkg = attributions[i].package;
    s.totals[pkg] += items[i].bytes;
    auto& series = s.series[pkg];
    const auto bucket = static_cast<std::size_t>(std::floor(offset / bucket_seconds));
    if (series.size() <= bucket) series.resize(bucket + 1, 0);
    series[bucket] += items[i].bytes;
  }
  return s;
}

struct Cidr {
  IpAddress network;
  std::size_t prefix = 0;
  std::string org;

  bool contains(const IpAddress& ip) const {
    if (ip.is_v6() != network.is_v6()) return false;
    const auto& a = ip.bytes();
    const auto& b = network.bytes();
    std::size_t bits = prefix;
    for (std::size_t i = 0; bits > 0; ++i) {
      const std::size_t take = std::min<std::size_t>(8, bits);
      const auto mask = static_cast<std::uint8_t>(0xFF << (8 - take));
      if ((a[i] & mask) != (b[i] & mask)) return false;
      bits -= take;
    }
    return true;
  }
};

inline Cidr parse_cidr(std::string_view text, std::string org) {
  const auto t = trim(text);
  const auto slash = t.find('/');
  auto ip = IpAddress::parse(t.substr(0, slash));
  if (!ip) throw ConfigError("malformed CIDR: " + std::string(text));
  std::size_t prefix = ip->bit_width();
  if (slash != std::string_view::npos) {
    const auto p = t.substr(slash + 1);
    if (p.empty() || p.size() > 3 || !std::all_of(p.begin(), p.end(), is_digit)) throw ConfigError("malformed CIDR: " + std::string(text));
    prefix = std::stoul(std::string(p));
    if (prefix > ip->bit_width()) throw ConfigError("CIDR prefix too long: " + std::string(text));
  }
  return {*ip, prefix, std::move(org)};
}

class DestinationMap {
public:
  DestinationMap() = default;
  explicit DestinationMap(std::vector<Cidr> entries) : entries_(std::move(entries)) {}

  static DestinationMap from_json(const json& j) {
    if (!j.is_array()) throw ConfigError("destination map must be a JSON array");
    std::vector<Cidr> entries;
    for (const auto& e : j) {
      if (!e.is_object() || !e.contains("cidr") || !e.contains("org")) throw ConfigError("destination entries need 'cidr' and 'org'");
      entries.push_back(parse_cidr(e.at("cidr").get<std::string>(), e.at("org").get<std::string>()));
    }
    return DestinationMap(std::move(entries));
  }

  static DestinationMap load(const fs::path& p) { return from_json(read_json_file(p)); }

  // Longest matching prefix; the first listed entry wins among equal lengths.
  std::string classify(const IpAddress& ip) const {
    const Cidr* best = nullptr;
    for (const auto& e : entries_) {
      if (e.contains(ip) && (!best || e.prefix > best->prefix)) best = &e;
    }
    return best ? best->org : "unclassified";
  }

  const std::vector<Cidr>& entries() const { return entries_; }

private:
  std::vector<Cidr> entries_;
};

inline std::string classify_destination(const IpAddress& ip, const DestinationMap& map) { return map.classify(ip); }

struct Detector {
  std::string id;
  std::string pattern;
  bool icase = false;
  std::regex re;
};

inline Detector make_detector(std::string id, std::string pattern, bool icase) {
  try {
    auto flags = std::regex::ECMAScript | std::regex::optimize;
    if (icase) flags |= std::regex::icase;
    std::regex re(pattern, flags);
    return {std::move(id), std::move(pattern), icase, std::move(re)};
  } catch (const std::regex_error& e) {
    throw ConfigError("invalid detector pattern for '" + id + "': " + e.what());
  }
}

inline std::vector<Detector> detectors_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("detector file must be a JSON array");
  std::vector<Detector> out;
  for (const auto& d : j) {
    if (!d.is_object() || !d.contains("id") || !d.contains("pattern")) throw ConfigError("detectors need 'id' and 'pattern'");
    out.push_back(make_detector(d.at("id").get<std::string>(), d.at("pattern").get<std::string>(), d.value("icase", false)));
  }
  return out;
}

inline constexpr std::string_view kDefaultDetectorsJson = R"json([
  {"id": "vehicle-model", "icase": true,
   "pattern": "(?:^|[?&;\\s])(?:car_?model|vehicle_?model|car_?make|vehicle_?make|model|make)=([^&\\s#]+)"},
  {"id": "vin", "icase": false,
   "pattern": "\\b[A-HJ-NPR-Z0-9]{17}\\b"},
  {"id": "media-content", "icase": true,
   "pattern": "(?:^|[?&;\\s])(?:media_?url|content_?url|content_?id|media_?id|stream_?url|track_?id|link)=([^&\\s#]+)"}
]
)json";

inline std::vector<Detector> default_detectors() { return detectors_from_json(json::parse(kDefaultDetectorsJson)); }

struct Finding {
  std::size_t flow_index = 0;
  std::string host;
  std::string url;
  std::string detector;
  std::string excerpt;

  friend bool operator==(const Finding&, const Finding&) = default;
};

// Text a detector sees: request line, request headers, then the body excerpt.
inline std::string inspection_text(const HttpsFlowRecord& f) {
  std::string s = f.method + " " + f.url + "\n";
  for (const auto& [k, v] : f.request_headers) s += k + ": " + v + "\n";
  if (f.body_excerpt) s += *f.body_excerpt;
  return s;
}

inline std::vector<Finding> inspect_requests(const std::vector<HttpsFlowRecord>& flows, const std::vector<Detector>& detectors) {
  std::vector<Finding> out;
  for (std::size_t i = 0; i < flows.size(); ++i) {
    const auto text = inspection_text(flows[i]);
    for (const auto& d : detectors) {
      std::set<std::string> seen;
      for (auto it = std::sregex_iterator(text.begin(), text.end(), d.re); it != std::sregex_iterator(); ++it) {
        const std::string whole = (*it)[0].str();
        std::string excerpt(trim(whole));
        if (!excerpt.empty() && (excerpt.front() == '?' || excerpt.front() == '&' || excerpt.front() == ';'))
          excerpt.erase(0, 1);
        if (excerpt.size() > 200) excerpt.resize(200);
        if (excerpt.empty() || !seen.insert(excerpt).second) continue;
        out.push_back({i, flows[i].host, flows[i].url, d.id, excerpt});
      }
    }
  }
  return out;
}

// Protobuf bodies are not decoded; they are only flagged, by content type or
// by a high share of control bytes in the excerpt.
inline bool protobuf_suspected(const HttpsFlowRecord& f) {
  auto header_hit = [](const auto& headers) {
    for (const auto& [k, v] : headers) {
      if (to_lower(k) != "content-type") continue;
      const auto lv = to_lower(v);
      if (lv.find("protobuf") != std::string::npos || lv.find("grpc") != std::string::npos) return true;
    }
    return false;
  };
  if (header_hit(f.request_headers) || header_hit(f.response_headers)) return true;
  if (!f.body_excerpt || f.body_excerpt->empty()) return false;
  std::size_t control = 0;
  for (unsigned char c : *f.body_excerpt) {
    if ((c < 0x20 && c != '\t' && c != '\n' && c != '\r') || c == 0x7F) ++control;
  }
  return control * 10 >= f.body_excerpt->size();
}

struct NetworkInputs {
  std::vector<std::pair<std::string, PcapParseResult>> captures;  // (name, parsed)
  std::vector<HttpsFlowRecord> flows;
  std::vector<ProcessSnapshot> procs;
  std::vector<SocketSnapshot> sockets;
  DestinationMap destinations;
  std::vector<Detector> detectors;
  double window_seconds = 0.0;
  double bucket_seconds = 60.0;
  std::vector<std::string> warnings;
};

struct NetworkAnalysis {
  PayloadSummary packet_payload;  // transport payload from captures
  PayloadSummary https_payload;   // request + response sizes from decrypted flows
  std::uint64_t packet_count = 0;
  std::uint64_t captured_payload_bytes = 0;
  std::size_t skipped_non_ip = 0;
  std::map<std::string, std::uint64_t> destinations;  // org -> bytes
  std::map<std::string, std::map<std::string, std::uint64_t>> app_destinations;
  std::vector<Finding> findings;
  std::vector<std::size_t> protobuf_flows;
  std::vector<std::string> warnings;
};

namespace detail {

// The far side of a packet: attribution knows it; otherwise the side that is
// not a private address.
inline std::optional<IpAddress> remote_of(const TrafficItem& item, const Attribution& a) {
  if (a.remote) return a.remote->ip;
  if (item.dst && !item.dst->ip.is_private()) return item.dst->ip;
  if (item.src && !item.src->ip.is_private()) return item.src->ip;
  if (item.dst) return item.dst->ip;
  return std::nullopt;
}

}  // namespace detail

inline NetworkAnalysis analyze_network(const NetworkInputs& in) {
  NetworkAnalysis out;
  out.warnings = in.warnings;
  const Correlator correlator(in.sockets, in.procs);

  std::vector<TrafficItem> packets;
  std::vector<Attribution> packet_attr;
  for (const auto& [name, cap] : in.captures) {
    out.skipped_non_ip += cap.skipped_non_ip;
    for (const auto& w : cap.warnings) out.warnings.push_back(name + ": " + w);
    for (const auto& p : cap.packets) {
      packets.push_back(to_traffic(p));
      packet_attr.push_back(correlator.attribute(packets.back()));
      out.captured_payload_bytes += p.payload_len;
    }
  }
  out.packet_count = packets.size();
  out.packet_payload = per_app_payload(packets, packet_attr, in.window_seconds, in.bucket_seconds);

  std::vector<TrafficItem> flows;
  std::vector<Attribution> flow_attr;
  for (const auto& f : in.flows) {
    flows.push_back(to_traffic(f));
    flow_attr.push_back(correlator.attribute(flows.back()));
  }
  out.https_payload = per_app_payload(flows, flow_attr, in.window_seconds, in.bucket_seconds);

  for (std::size_t i = 0; i < packets.size(); ++i) {
    const auto remote = detail::remote_of(packets[i], packet_attr[i]);
    const auto org = remote ? in.destinations.classify(*remote) : std::string("unclassified");
    out.destinations[org] += packets[i].bytes;
    out.app_destinations[packet_attr[i].package][org] += packets[i].bytes;
  }
  out.findings = inspect_requests(in.flows, in.detectors);
  for (std::size_t i = 0; i < in.flows.size(); ++i) {
    if (protobuf_suspected(in.flows[i])) out.protobuf_flows.push_back(i);
  }
  return out;
}

inline json network_json(const NetworkAnalysis& a) {
  auto ranked = [](const PayloadSummary& s) {
    json arr = json::array();
    for (const auto& [pkg, bytes] : s.ranked()) arr.push_back({{"package", pkg}, {"bytes", bytes}});
    return arr;
  };
  json findings = json::array();
  for (const auto& f : a.findings)
    findings.push_back({{"flow", f.flow_index}, {"host", f.host}, {"url", f.url}, {"detector", f.detector}, {"excerpt", f.excerpt}});
  return {
      {"packet_count", a.packet_count},
      {"skipped_non_ip", a.skipped_non_ip},
      {"captured_payload_bytes", a.captured_payload_bytes},
      {"per_app_payload", ranked(a.packet_payload)},
      {"per_app_https_payload", ranked(a.https_payload)},
      {"destinations", a.destinations},
      {"app_destinations", a.app_destinations},
      {"findings", findings},
      {"protobuf_suspected_flows", a.protobuf_flows},
      {"warnings", a.warnings},
  };
}

// package,pcap_bytes,https_bytes ordered like the packet ranking, then any
// package only seen in decrypted flows.
inline std::string payload_csv(const NetworkAnalysis& a) {
  std::string out = "package,pcap_bytes,https_bytes\n";
  std::set<std::string> done;
  auto row = [&](const std::string& pkg) {
    if (!done.insert(pkg).second) return;
    auto get = [&](const PayloadSummary& s) {
      auto it = s.totals.find(pkg);
      return it == s.totals.end() ? std::uint64_t{0} : it->second;
    };
    out += csv_field(pkg) + "," + std::to_string(get(a.packet_payload)) + "," + std::to_string(get(a.https_payload)) + "\n";
  };
  for (const auto& [pkg, b] : a.packet_payload.ranked()) row(pkg);
  for (const auto& [pkg, b] : a.https_payload.ranked()) row(pkg);
  return out;
}

}  // namespace vhal_audit
