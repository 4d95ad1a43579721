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

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

namespace harness {

namespace fs = std::filesystem;

inline fs::path fixture(const std::string& rel) { return fs::path(VHAL_AUDIT_FIXTURES) / rel; }
inline fs::path data(const std::string& rel) { return fs::path(VHAL_AUDIT_DATA) / rel; }

// Fresh, empty directory under the build tree.
inline fs::path scratch(const std::string& name) {
  const auto p = fs::path(VHAL_AUDIT_SCRATCH) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

struct CliResult {
  int code = -1;
  std::string output;  // stdout + stderr
};

// Runs the auditor binary with a shell-quoted argument string.
inline CliResult run_auditor(const std::string& args) {
  const std::string cmd = "'" + std::string(VHAL_AUDIT_AUDITOR) + "' " + args + " 2>&1";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

}  // namespace harness
