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

// HTTP extractor. Wire contract:
//   POST <endpoint>  {"section": [...], "sentences": ["...", ...]}
//   200              {"flows": [{..., "sentence": <index into sentences>}]}
// Anything else is an error. Requests are idempotent, so transport failures
// and 5xx answers are retried.

#pragma once

#include <chrono>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>

#include "vhal_audit/errors.hpp"
#include "vhal_audit/extractor.hpp"
#include "vhal_audit/io.hpp"

namespace vhal_audit {

struct RemoteOptions {
  std::string endpoint;               // http://host:port/path
  std::string authorization;          // sent verbatim as the Authorization header when set
  int timeout_seconds = 30;
  int retries = 2;                    // extra attempts after the first
  int backoff_ms = 200;
  std::size_t max_in_flight = 4;
};

struct ParsedEndpoint {
  std::string base;  // scheme://host[:port]
  std::string path;
};

inline ParsedEndpoint parse_endpoint_url(std::string_view url) {
  const auto scheme = url.find("://");
  if (scheme == std::string_view::npos || url.substr(0, scheme) != "http")
    throw ConfigError("remote endpoint must be an http:// URL: " + std::string(url));
  const auto slash = url.find('/', scheme + 3);
  if (slash == scheme + 3) throw ConfigError("remote endpoint has no host: " + std::string(url));
  if (slash == std::string_view::npos) return {std::string(url), "/"};
  return {std::string(url.substr(0, slash)), std::string(url.substr(slash))};
}

inline json remote_request_json(const Chunk& chunk) {
  json sentences = json::array();
  for (const auto& s : chunk.sentences) sentences.push_back(s.text);
  return {{"section", chunk.section}, {"sentences", sentences}};
}

// Validates a response body against the wire contract.
inline std::vector<PolicyDataFlow> parse_remote_response(std::string_view body, const Chunk& chunk) {
  json j;
  try {
    j = json::parse(body);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("extractor response is not JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("flows") || !j.at("flows").is_array())
    throw SchemaError("extractor response must be an object with a 'flows' array");
  std::vector<PolicyDataFlow> out;
  for (const auto& f : j.at("flows")) out.push_back(flow_from_extractor_json(f, chunk));
  return out;
}

class RemoteExtractor : public Extractor {
public:
  explicit RemoteExtractor(RemoteOptions opts) : opts_(std::move(opts)), url_(parse_endpoint_url(opts_.endpoint)) {}

  std::vector<PolicyDataFlow> extract(const Chunk& chunk) const override {
    if (chunk.sentences.empty()) return {};
    const auto body = remote_request_json(chunk).dump();
    std::string last_error;
    for (int attempt = 0; attempt <= opts_.retries; ++attempt) {
      if (attempt > 0) std::this_thread::sleep_for(std::chrono::milliseconds(opts_.backoff_ms * attempt));
      httplib::Client cli(url_.base);
      cli.set_connection_timeout(opts_.timeout_seconds, 0);
      cli.set_read_timeout(opts_.timeout_seconds, 0);
      httplib::Headers headers;
      if (!opts_.authorization.empty()) headers.emplace("Authorization", opts_.authorization);
      auto res = cli.Post(url_.path, headers, body, "application/json");
      if (!res) {
        last_error = "unreachable (" + httplib::to_string(res.error()) + ")";
        continue;
      }
      if (res->status >= 500) {
        last_error = "HTTP " + std::to_string(res->status);
        continue;
      }
      if (res->status != 200) throw RemoteExtractorError(opts_.endpoint + ": HTTP " + std::to_string(res->status));
      return parse_remote_response(res->body, chunk);
    }
    throw RemoteExtractorError(opts_.endpoint + ": " + last_error);
  }

  const RemoteOptions& options() const { return opts_; }

private:
  RemoteOptions opts_;
  ParsedEndpoint url_;
};

// Remote first; a chunk whose remote call fails goes to the fallback and the
// failure is kept as a warning. Schema violations are not masked.
class FallbackExtractor : public Extractor {
public:
  FallbackExtractor(const Extractor& primary, const Extractor& fallback) : primary_(primary), fallback_(fallback) {}

  std::vector<PolicyDataFlow> extract(const Chunk& chunk) const override {
    try {
      return primary_.extract(chunk);
    } catch (const RemoteExtractorError& e) {
      {
        std::lock_guard lock(mu_);
        warnings_.push_back(std::string("remote extractor failed, used rule-based fallback: ") + e.what());
      }
      return fallback_.extract(chunk);
    }
  }

  std::vector<std::string> warnings() const {
    std::lock_guard lock(mu_);
    return warnings_;
  }

private:
  const Extractor& primary_;
  const Extractor& fallback_;
  mutable std::mutex mu_;
  mutable std::vector<std::string> warnings_;
};

}  // namespace vhal_audit
