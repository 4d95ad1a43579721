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

// Classic libpcap reader with Ethernet -> IPv4/IPv6 -> TCP/UDP dissection.
// Only what attribution and payload accounting need is decoded.

#pragma once

#include <arpa/inet.h>

#include <array>
#include <cstdint>
#include <cstring>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vhal_audit/errors.hpp"
#include "vhal_audit/io.hpp"

namespace vhal_audit {

class IpAddress {
public:
  IpAddress() = default;

  static IpAddress v4(std::span<const std::uint8_t, 4> b) {
    IpAddress a;
    a.v6_ = false;
    std::memcpy(a.bytes_.data(), b.data(), 4);
    return a;
  }

  static IpAddress v6(std::span<const std::uint8_t, 16> b) {
    IpAddress a;
    a.v6_ = true;
    std::memcpy(a.bytes_.data(), b.data(), 16);
    return a;
  }

  static std::optional<IpAddress> parse(std::string_view text) {
    const std::string s(trim(text));
    IpAddress a;
    if (inet_pton(AF_INET, s.c_str(), a.bytes_.data()) == 1) {
      a.v6_ = false;
      return a;
    }
    if (inet_pton(AF_INET6, s.c_str(), a.bytes_.data()) == 1) {
      a.v6_ = true;
      return a;
    }
    return std::nullopt;
  }

  bool is_v6() const { return v6_; }
  std::size_t bit_width() const { return v6_ ? 128 : 32; }
  const std::array<std::uint8_t, 16>& bytes() const { return bytes_; }

  std::string to_string() const {
    char buf[INET6_ADDRSTRLEN] = {};
    inet_ntop(v6_ ? AF_INET6 : AF_INET, bytes_.data(), buf, sizeof(buf));
    return buf;
  }

  // RFC 1918, loopback, link-local and IPv6 ULA/link-local ranges.
  bool is_private() const {
    const auto& b = bytes_;
    if (!v6_) {
      return b[0] == 10 || b[0] == 127 || (b[0] == 172 && (b[1] & 0xF0) == 16) || (b[0] == 192 && b[1] == 168) ||
             (b[0] == 169 && b[1] == 254);
    }
    static constexpr std::array<std::uint8_t, 16> loopback = {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1};
    return (b[0] & 0xFE) == 0xFC || (b[0] == 0xFE && (b[1] & 0xC0) == 0x80) || b == loopback;
  }

  friend bool operator==(const IpAddress&, const IpAddress&) = default;
  friend auto operator<=>(const IpAddress&, const IpAddress&) = default;

private:
  bool v6_ = false;
  std::array<std::uint8_t, 16> bytes_{};
};

enum class TransportProto : std::uint8_t { TCP, UDP, OTHER };

inline std::string_view proto_name(TransportProto p) {
  switch (p) {
    case TransportProto::TCP: return "TCP";
    case TransportProto::UDP: return "UDP";
    default: return "OTHER";
  }
}

inline TransportProto parse_proto(std::string_view s) {
  const auto u = to_upper(trim(s));
  if (u.rfind("TCP", 0) == 0) return TransportProto::TCP;  // netstat prints tcp6 too
  if (u.rfind("UDP", 0) == 0) return TransportProto::UDP;
  return TransportProto::OTHER;
}

struct PacketRecord {
  std::uint32_t ts_sec = 0;
  std::uint32_t ts_usec = 0;
  IpAddress src_ip;
  IpAddress dst_ip;
  std::uint16_t src_port = 0;
  std::uint16_t dst_port = 0;
  TransportProto proto = TransportProto::OTHER;
  std::uint64_t payload_len = 0;  // transport payload; headers excluded

  double ts() const { return static_cast<double>(ts_sec) + static_cast<double>(ts_usec) / 1e6; }
};

struct PcapParseResult {
  std::vector<PacketRecord> packets;
  std::size_t skipped_non_ip = 0;
  std::vector<std::string> warnings;
};

namespace detail {

class ByteReader {
public:
  ByteReader(std::span<const std::uint8_t> data, bool swap) : data_(data), swap_(swap) {}

  bool has(std::size_t n) const { return pos_ + n <= data_.size(); }
  std::size_t pos() const { return pos_; }
  void skip(std::size_t n) { pos_ += n; }
  std::span<const std::uint8_t> take(std::size_t n) {
    auto s = data_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

  std::uint32_t u32() {
    std::uint32_t v = 0;
    std::memcpy(&v, data_.data() + pos_, 4);
    pos_ += 4;
    return swap_ ? __builtin_bswap32(v) : v;
  }
  std::uint16_t u16() {
    std::uint16_t v = 0;
    std::memcpy(&v, data_.data() + pos_, 2);
    pos_ += 2;
    return swap_ ? __builtin_bswap16(v) : v;
  }

private:
  std::span<const std::uint8_t> data_;
  bool swap_;
  std::size_t pos_ = 0;
};

inline std::uint16_t be16(std::span<const std::uint8_t> b, std::size_t off) {
  return static_cast<std::uint16_t>((b[off] << 8) | b[off + 1]);
}

// Fills transport fields from an IP payload. Returns false when the
// transport header is truncated.
inline bool dissect_transport(std::uint8_t proto, std::span<const std::uint8_t> l4, std::uint64_t l4_len,
                              PacketRecord& rec) {
  if (proto == 6) {
    if (l4.size() < 20) return false;
    rec.proto = TransportProto::TCP;
    rec.src_port = be16(l4, 0);
    rec.dst_port = be16(l4, 2);
    const std::uint64_t header = static_cast<std::uint64_t>(l4[12] >> 4) * 4;
    rec.payload_len = l4_len > header ? l4_len - header : 0;
    return true;
  }
  if (proto == 17) {
    if (l4.size() < 8) return false;
    rec.proto = TransportProto::UDP;
    rec.src_port = be16(l4, 0);
    rec.dst_port = be16(l4, 2);
    rec.payload_len = l4_len > 8 ? l4_len - 8 : 0;
    return true;
  }
  rec.proto = TransportProto::OTHER;
  rec.payload_len = l4_len;
  return true;
}

enum class FrameResult { Ok, NotIp, Truncated };

inline FrameResult dissect_ethernet(std::span<const std::uint8_t> frame, PacketRecord& rec) {
  if (frame.size() < 14) return FrameResult::Truncated;
  std::size_t off = 12;
  std::uint16_t ethertype = be16(frame, off);
  off += 2;
  while (ethertype == 0x8100 || ethertype == 0x88A8) {  // VLAN tags
    if (frame.size() < off + 4) return FrameResult::Truncated;
    ethertype = be16(frame, off + 2);
    off += 4;
  }
  auto ip = frame.subspan(off);
  if (ethertype == 0x0800) {
    if (ip.size() < 20) return FrameResult::Truncated;
    if ((ip[0] >> 4) != 4) return FrameResult::NotIp;
    const std::size_t ihl = static_cast<std::size_t>(ip[0] & 0x0F) * 4;
    const std::uint16_t total_len = be16(ip, 2);
    if (ihl < 20 || ip.size() < ihl || total_len < ihl) return FrameResult::Truncated;
    rec.src_ip = IpAddress::v4(ip.subspan<12, 4>());
    rec.dst_ip = IpAddress::v4(ip.subspan<16, 4>());
    const std::uint16_t frag_offset = be16(ip, 6) & 0x1FFF;
    const std::uint64_t l4_len = total_len - ihl;
    if (frag_offset != 0) {
      rec.proto = TransportProto::OTHER;
      rec.payload_len = l4_len;
      return FrameResult::Ok;
    }
    return dissect_transport(ip[9], ip.subspan(ihl), l4_len, rec) ? FrameResult::Ok : FrameResult::Truncated;
  }
  if (ethertype == 0x86DD) {
    if (ip.size() < 40) return FrameResult::Truncated;
    rec.src_ip = IpAddress::v6(ip.subspan<8, 16>());
    rec.dst_ip = IpAddress::v6(ip.subspan<24, 16>());
    std::uint64_t remaining = be16(ip, 4);
    std::uint8_t next = ip[6];
    std::size_t pos = 40;
    // hop-by-hop, routing, fragment, destination options
    while (next == 0 || next == 43 || next == 44 || next == 60) {
      if (ip.size() < pos + 8) return FrameResult::Truncated;
      const std::size_t len = next == 44 ? 8 : (static_cast<std::size_t>(ip[pos + 1]) + 1) * 8;
      next = ip[pos];
      pos += len;
      if (remaining < len) return FrameResult::Truncated;
      remaining -= len;
    }
    if (ip.size() < pos) return FrameResult::Truncated;
    return dissect_transport(next, ip.subspan(pos), remaining, rec) ? FrameResult::Ok : FrameResult::Truncated;
  }
  return FrameResult::NotIp;
}

}  // namespace detail

// Records come back in capture order. A record whose header or body runs past
// the end of the file stops parsing; everything before it is returned.
inline PcapParseResult parse_pcap_bytes(std::span<const std::uint8_t> data) {
  if (data.size() < 24) throw FormatError("pcap shorter than its global header");
  std::uint32_t magic = 0;
  std::memcpy(&magic, data.data(), 4);
  bool swap = false;
  bool nanos = false;
  switch (magic) {
    case 0xa1b2c3d4: break;
    case 0xd4c3b2a1: swap = true; break;
    case 0xa1b23c4d: nanos = true; break;
    case 0x4d3cb2a1: swap = true; nanos = true; break;
    default: throw FormatError("not a libpcap capture (bad magic)");
  }
  detail::ByteReader r(data, swap);
  r.skip(20);
  const std::uint32_t linktype = r.u32();
  if (linktype != 1) throw FormatError("unsupported link type " + std::to_string(linktype) + " (Ethernet only)");

  PcapParseResult result;
  std::size_t index = 0;
  while (r.has(1)) {
    if (!r.has(16)) {
      result.warnings.push_back("truncated record header at offset " + std::to_string(r.pos()));
      break;
    }
    PacketRecord rec;
    rec.ts_sec = r.u32();
    const std::uint32_t frac = r.u32();
    rec.ts_usec = nanos ? frac / 1000 : frac;
    const std::uint32_t incl_len = r.u32();
    r.u32();  // original length
    if (!r.has(incl_len)) {
      result.warnings.push_back("truncated packet " + std::to_string(index) + " at offset " + std::to_string(r.pos()));
      break;
    }
    const auto frame = r.take(incl_len);
    switch (detail::dissect_ethernet(frame, rec)) {
      case detail::FrameResult::Ok:
        result.packets.push_back(rec);
        break;
      case detail::FrameResult::NotIp:
        ++result.skipped_non_ip;
        break;
      case detail::FrameResult::Truncated:
        result.warnings.push_back("packet " + std::to_string(index) + " has truncated headers, skipped");
        break;
    }
    ++index;
  }
  return result;
}

inline PcapParseResult parse_pcap(const fs::path& file) {
  const std::string data = read_file(file);
  return parse_pcap_bytes({reinterpret_cast<const std::uint8_t*>(data.data()), data.size()});
}

}  // namespace vhal_audit
