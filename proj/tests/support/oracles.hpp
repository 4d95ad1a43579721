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

// Reference implementations for tests. Deliberately naive and written without
// calling into the library: regexes for the trace grammar, std::set algebra
// for Jaccard, a double loop for pair counting.

#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <optional>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    if (!l.empty() && l.back() == '\r') l.pop_back();
    out.push_back(l);
  }
  return out;
}

// ---- trace grammar --------------------------------------------------------

struct TraceHit {
  int kind;
  std::uint32_t id;
  bool operator==(const TraceHit&) const = default;
};

namespace detail {

inline const std::string kId = R"((?:0[xX][0-9A-Fa-f]{1,8}|[0-9]{1,10}))";
inline const std::string kQuoted = "(?:'(" + kId + ")'|\"(" + kId + ")\"|(" + kId + "))";
inline const std::string kBoundary = "(?![A-Za-z0-9_])";
inline const std::string kArgEnd = "[ \\t]*[,)]";

inline const std::vector<std::regex>& patterns() {
  static const std::vector<std::regex> p = {
      std::regex(R"(CarPropertyValue\.getPropertyId\(\)[ \t]*<=[ \t]*)" + kQuoted + kBoundary),
      std::regex(R"(ICarProperty\$Stub\$Proxy\.getProperty\([ \t]*)" + kQuoted + kArgEnd),
      std::regex(R"(CarPropertyManagerEx\.getProperty\([ \t]*)" + kQuoted + kArgEnd),
      std::regex(R"(\.prop[ \t]*=[ \t]*)" + kQuoted + kBoundary),
      std::regex(R"(registerListener: propId is not in config list:[ \t]*)" + kQuoted + kBoundary),
  };
  return p;
}

inline std::optional<std::uint32_t> value_of(const std::string& text) {
  const bool hex = text.size() > 2 && (text[1] == 'x' || text[1] == 'X');
  const unsigned long long v = std::strtoull(text.c_str() + (hex ? 2 : 0), nullptr, hex ? 16 : 10);
  if (v > 0xFFFFFFFFull) return std::nullopt;
  return static_cast<std::uint32_t>(v);
}

}  // namespace detail

inline std::optional<TraceHit> classify(const std::string& line) {
  const auto& pats = detail::patterns();
  for (std::size_t k = 0; k < pats.size(); ++k) {
    for (auto it = std::sregex_iterator(line.begin(), line.end(), pats[k]); it != std::sregex_iterator(); ++it) {
      const auto& m = *it;
      std::string id;
      for (int g = 1; g <= 3; ++g) {
        if (m[g].matched) id = m[g].str();
      }
      if (auto v = detail::value_of(id)) return TraceHit{static_cast<int>(k + 1), *v};
    }
  }
  return std::nullopt;
}

// ---- name similarity ------------------------------------------------------

inline std::set<std::string> tokens(const std::string& name) {
  std::set<std::string> out;
  static const std::regex word("[A-Za-z0-9]+");
  for (auto it = std::sregex_iterator(name.begin(), name.end(), word); it != std::sregex_iterator(); ++it) {
    std::string t = it->str();
    for (auto& c : t) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    out.insert(t);
  }
  return out;
}

// (|A ∩ B|, |A ∪ B|)
inline std::pair<std::size_t, std::size_t> jaccard(const std::string& a, const std::string& b) {
  const auto ta = tokens(a);
  const auto tb = tokens(b);
  std::vector<std::string> i, u;
  std::set_intersection(ta.begin(), ta.end(), tb.begin(), tb.end(), std::back_inserter(i));
  std::set_union(ta.begin(), ta.end(), tb.begin(), tb.end(), std::back_inserter(u));
  return {i.size(), u.size()};
}

inline std::size_t similar_pair_count(const std::vector<std::string>& a, const std::vector<std::string>& b,
                                      double threshold) {
  std::size_t n = 0;
  for (const auto& x : a) {
    for (const auto& y : b) {
      const auto [i, u] = jaccard(x, y);
      if (static_cast<double>(i) / static_cast<double>(u) >= threshold) ++n;
    }
  }
  return n;
}

// ---- rates ----------------------------------------------------------------

// "k/n (P.PP%)" with the percentage rounded half away from zero via decimal
// long division, independent of the library's integer formula.
inline std::string rate(std::size_t k, std::size_t n) {
  std::string digits;
  unsigned long long rem = k * 100ull;
  const unsigned long long whole = rem / n;
  rem %= n;
  for (int d = 0; d < 3; ++d) {
    rem *= 10;
    digits += static_cast<char>('0' + rem / n);
    rem %= n;
  }
  unsigned long long hundredths = whole * 100 + static_cast<unsigned long long>(std::stoi(digits.substr(0, 2)));
  if (digits[2] >= '5') ++hundredths;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%zu/%zu (%llu.%02llu%%)", k, n, hundredths / 100, hundredths % 100);
  return buf;
}

}  // namespace oracle
