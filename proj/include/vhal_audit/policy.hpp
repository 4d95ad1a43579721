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

// Privacy policy documents: HTML / plain-text parsing into heading and body
// blocks, sentence segmentation, and section-aware chunking.

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vhal_audit/errors.hpp"
#include "vhal_audit/io.hpp"

namespace vhal_audit {

struct PolicyBlock {
  int level = 0;  // 0 = body text, 1..6 = heading
  std::string text;

  friend bool operator==(const PolicyBlock&, const PolicyBlock&) = default;
};

struct PolicyDocument {
  std::string source_id;
  std::string provenance;
  std::vector<PolicyBlock> blocks;
  std::vector<std::string> warnings;
};

enum class DocumentKind { Html, Text };

inline DocumentKind parse_document_kind(std::string_view s) {
  const auto l = to_lower(s);
  if (l == "html" || l == "htm") return DocumentKind::Html;
  if (l == "text" || l == "txt" || l == "pdf-text") return DocumentKind::Text;
  throw UsageError("unknown document kind: " + std::string(s));
}

inline std::string normalize_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool space = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    // U+00A0 no-break space arrives as C2 A0
    const bool nbsp = c == 0xC2 && i + 1 < s.size() && static_cast<unsigned char>(s[i + 1]) == 0xA0;
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v' || nbsp) {
      space = true;
      if (nbsp) ++i;
      continue;
    }
    if (space && !out.empty()) out += ' ';
    space = false;
    out += static_cast<char>(c);
  }
  return out;
}

namespace detail {

inline void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x110000) {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

inline std::string decode_entities(std::string_view s) {
  static constexpr std::array<std::pair<std::string_view, std::string_view>, 12> named = {{
      {"amp", "&"}, {"lt", "<"}, {"gt", ">"}, {"quot", "\""}, {"apos", "'"}, {"nbsp", " "},
      {"rsquo", "\xE2\x80\x99"}, {"lsquo", "\xE2\x80\x98"}, {"rdquo", "\xE2\x80\x9D"},
      {"ldquo", "\xE2\x80\x9C"}, {"mdash", "\xE2\x80\x94"}, {"ndash", "\xE2\x80\x93"},
  }};
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '&') {
      out += s[i];
      continue;
    }
    const auto semi = s.find(';', i);
    if (semi == std::string_view::npos || semi - i > 10) {
      out += '&';
      continue;
    }
    const auto name = s.substr(i + 1, semi - i - 1);
    bool done = false;
    if (!name.empty() && name[0] == '#') {
      std::uint32_t cp = 0;
      const bool hex = name.size() > 1 && (name[1] == 'x' || name[1] == 'X');
      const auto digits = name.substr(hex ? 2 : 1);
      if (!digits.empty()) {
        auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cp, hex ? 16 : 10);
        if (ec == std::errc() && p == digits.data() + digits.size()) {
          append_utf8(out, cp == 0xA0 ? 0x20 : cp);
          done = true;
        }
      }
    } else {
      for (const auto& [n, v] : named) {
        if (n == name) {
          out += v;
          done = true;
          break;
        }
      }
    }
    if (done) {
      i = semi;
    } else {
      out += '&';
    }
  }
  return out;
}

inline bool is_block_tag(std::string_view t) {
  static constexpr std::array<std::string_view, 30> tags = {
      "p",     "div",     "li",      "ul",     "ol",      "br",  "tr",   "td",     "th",   "table",
      "section", "article", "header", "footer", "main",   "blockquote", "pre", "dd", "dt", "dl",
      "form",  "hr",      "aside",   "figure", "figcaption", "address", "body", "html", "caption", "tbody"};
  return std::find(tags.begin(), tags.end(), t) != tags.end();
}

inline bool is_skipped_tag(std::string_view t) {
  static constexpr std::array<std::string_view, 8> tags = {"script", "style", "nav", "noscript",
                                                           "template", "svg", "title", "iframe"};
  return std::find(tags.begin(), tags.end(), t) != tags.end();
}

inline int heading_level(std::string_view t) {
  if (t.size() == 2 && t[0] == 'h' && t[1] >= '1' && t[1] <= '6') return t[1] - '0';
  return 0;
}

}  // namespace detail

// Best-effort HTML to heading/body blocks. Unterminated markup is reported
// in warnings and the text seen so far is kept.
inline PolicyDocument parse_html(std::string_view html, std::string source_id = {}) {
  PolicyDocument doc;
  doc.source_id = std::move(source_id);
  std::string pending;
  int heading = 0;

  auto flush = [&](int level) {
    auto text = normalize_whitespace(detail::decode_entities(pending));
    pending.clear();
    if (!text.empty()) doc.blocks.push_back({level, std::move(text)});
  };

  std::size_t i = 0;
  while (i < html.size()) {
    if (html[i] != '<') {
      const auto next = html.find('<', i);
      const auto end = next == std::string_view::npos ? html.size() : next;
      pending.append(html.substr(i, end - i));
      i = end;
      continue;
    }
    if (html.substr(i, 4) == "<!--") {
      const auto end = html.find("-->", i + 4);
      if (end == std::string_view::npos) {
        doc.warnings.push_back("unterminated comment");
        break;
      }
      i = end + 3;
      continue;
    }
    const auto close = html.find('>', i);
    if (close == std::string_view::npos) {
      doc.warnings.push_back("unterminated tag at offset " + std::to_string(i));
      break;
    }
    std::size_t j = i + 1;
    const bool closing = j < html.size() && html[j] == '/';
    if (closing) ++j;
    const std::size_t name_start = j;
    while (j < close && (std::isalnum(static_cast<unsigned char>(html[j])) != 0)) ++j;
    const auto name = to_lower(html.substr(name_start, j - name_start));
    if (name.empty()) {
      if (html[name_start] == '!' || html[name_start] == '?') {
        i = close + 1;  // <!DOCTYPE ...>, <?xml ...?>
      } else {
        pending += '<';  // stray '<' in text
        i = i + 1;
      }
      continue;
    }
    i = close + 1;
    if (!closing && detail::is_skipped_tag(name)) {
      const bool self_closing = html[close - 1] == '/';
      if (self_closing) continue;
      const auto lower_rest = to_lower(html.substr(i));
      const auto end = lower_rest.find("</" + name);
      if (end == std::string::npos) {
        doc.warnings.push_back("unterminated <" + name + ">");
        i = html.size();
        break;
      }
      const auto end_close = html.find('>', i + end);
      i = end_close == std::string_view::npos ? html.size() : end_close + 1;
      continue;
    }
    if (const int level = detail::heading_level(name); level > 0) {
      flush(heading);
      heading = closing ? 0 : level;
      continue;
    }
    if (detail::is_block_tag(name)) flush(heading);
  }
  if (heading != 0) doc.warnings.push_back("unterminated heading");
  flush(heading);
  if (doc.blocks.empty()) throw EmptyDocument("document has no text: " + doc.source_id);
  return doc;
}

inline PolicyDocument parse_text(std::string_view text, std::string source_id = {}) {
  PolicyDocument doc;
  doc.source_id = std::move(source_id);
  auto body = normalize_whitespace(text);
  if (body.empty()) throw EmptyDocument("document has no text: " + doc.source_id);
  doc.blocks.push_back({0, std::move(body)});
  return doc;
}

inline PolicyDocument parse_document(const fs::path& file, DocumentKind kind) {
  auto data = try_read_file(file);
  if (!data) throw ParseError("cannot read policy document: " + file.string());
  auto doc = kind == DocumentKind::Html ? parse_html(*data, file.filename().string())
                                        : parse_text(*data, file.filename().string());
  doc.provenance = file.string();
  return doc;
}

namespace detail {

inline bool guarded_abbreviation(std::string_view word) {
  static constexpr std::array<std::string_view, 44> abbrevs = {
      "e.g.", "i.e.", "u.s.", "u.k.", "e.u.", "inc.", "ltd.", "co.",   "corp.", "llc.",  "mr.",
      "mrs.", "ms.",  "dr.",  "st.",  "etc.", "vs.",  "no.",  "jan.",  "feb.",  "mar.",  "apr.",
      "jun.", "jul.", "aug.", "sep.", "sept.", "oct.", "nov.", "dec.", "approx.", "dept.", "fig.",
      "a.m.", "p.m.", "u.s.a.", "est.", "cf.", "viz.", "al.", "jr.", "sr.", "govt.", "art."};
  const auto l = to_lower(word);
  if (std::find(abbrevs.begin(), abbrevs.end(), l) != abbrevs.end()) return true;
  // single initials like "J."
  return word.size() == 2 && std::isupper(static_cast<unsigned char>(word[0])) != 0;
}

inline bool is_closer(char c) { return c == ')' || c == '"' || c == '\'' || c == ']'; }

}  // namespace detail

// Splits on . ! ? followed by whitespace (or end of text) and a sentence-like
// start. Abbreviations in the guard list, single initials and decimals never
// end a sentence.
inline std::vector<std::string> segment_sentences(std::string_view text) {
  std::vector<std::string> out;
  const auto norm = normalize_whitespace(text);
  std::string_view s = norm;
  std::size_t start = 0;
  auto emit = [&](std::size_t end) {
    auto piece = trim(s.substr(start, end - start));
    if (!piece.empty()) out.emplace_back(piece);
    start = end;
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c != '.' && c != '!' && c != '?') continue;
    std::size_t end = i + 1;
    while (end < s.size() && (s[end] == '.' || s[end] == '!' || s[end] == '?')) ++end;  // "?!", "..."
    while (end < s.size() && detail::is_closer(s[end])) ++end;
    if (end < s.size() && s[end] != ' ') continue;
    if (end < s.size()) {
      const char next = s[end + 1 < s.size() ? end + 1 : end];
      const bool starts_sentence = std::isupper(static_cast<unsigned char>(next)) != 0 || is_digit(next) ||
                                   next == '"' || next == '(' || next == '\'' || (static_cast<unsigned char>(next) >= 0x80);
      if (!starts_sentence) continue;
    }
    if (c == '.') {
      const auto word_start = s.rfind(' ', i);
      auto word = s.substr(word_start == std::string_view::npos ? 0 : word_start + 1,
                           i + 1 - (word_start == std::string_view::npos ? 0 : word_start + 1));
      while (!word.empty() && (word.front() == '(' || word.front() == '"')) word.remove_prefix(1);
      if (detail::guarded_abbreviation(word) && end < s.size()) continue;
    }
    emit(end);
    i = end - 1;
  }
  emit(s.size());
  return out;
}

struct Sentence {
  std::size_t index = 0;  // position in document order
  std::size_t block = 0;  // index of the owning block
  std::string text;

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct Chunk {
  std::vector<std::string> section;  // heading trail, outermost first
  std::vector<Sentence> sentences;

  friend bool operator==(const Chunk&, const Chunk&) = default;
};

struct SegmentedDocument {
  std::vector<Sentence> sentences;  // body sentences only
  std::vector<Chunk> chunks;
};

struct ChunkOptions {
  std::size_t max_sentences = 20;
};

// One chunk per run of body blocks under the same heading trail. A chunk that
// would exceed the limit is closed at the preceding block boundary; a single
// block longer than the limit is cut into limit-sized pieces.
inline SegmentedDocument chunk(const PolicyDocument& doc, const ChunkOptions& opts = {}) {
  if (opts.max_sentences == 0) throw DomainError("chunk limit must be positive");
  SegmentedDocument out;
  std::vector<std::pair<int, std::string>> trail;
  Chunk current;
  auto section_now = [&] {
    std::vector<std::string> s;
    for (const auto& [lvl, text] : trail) s.push_back(text);
    return s;
  };
  auto close_chunk = [&] {
    if (!current.sentences.empty()) out.chunks.push_back(std::move(current));
    current = Chunk{section_now(), {}};
  };
  current.section = section_now();
  for (std::size_t b = 0; b < doc.blocks.size(); ++b) {
    const auto& block = doc.blocks[b];
    if (block.level > 0) {
      close_chunk();
      while (!trail.empty() && trail.back().first >= block.level) trail.pop_back();
      trail.emplace_back(block.level, block.text);
      current.section = section_now();
      continue;
    }
    std::vector<Sentence> sentences;
    for (auto& text : segment_sentences(block.text)) sentences.push_back({out.sentences.size() + sentences.size(), b, std::move(text)});
    out.sentences.insert(out.sentences.end(), sentences.begin(), sentences.end());
    if (!current.sentences.empty() && current.sentences.size() + sentences.size() > opts.max_sentences) close_chunk();
    for (auto& s : sentences) {
      if (current.sentences.size() == opts.max_sentences) close_chunk();
      current.sentences.push_back(std::move(s));
    }
  }
  close_chunk();
  return out;
}

}  // namespace vhal_audit
