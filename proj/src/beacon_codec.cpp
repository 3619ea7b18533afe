#include "vanet/beacon_codec.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstdio>

namespace vanet::codec {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

std::uint16_t get_u16(std::span<const std::uint8_t> buf, std::size_t at) {
  return static_cast<std::uint16_t>((buf[at] << 8) | buf[at + 1]);
}

std::uint32_t get_u32(std::span<const std::uint8_t> buf, std::size_t at) {
  return (std::uint32_t{buf[at]} << 24) | (std::uint32_t{buf[at + 1]} << 16) |
         (std::uint32_t{buf[at + 2]} << 8) | std::uint32_t{buf[at + 3]};
}

bool valid_version(std::uint8_t v) { return v == kVersionSharedParams || v == kVersionParamTriple; }

bool valid_type(std::uint8_t t) {
  return t == static_cast<std::uint8_t>(PacketType::Beacon) ||
         t == static_cast<std::uint8_t>(PacketType::Ack);
}

// Version 1 carries one canonical magnitude; version 2 a well-formed triple.
bool valid_payload(std::uint8_t version, std::span<const std::uint8_t> pv) {
  if (version == kVersionSharedParams) return is_canonical_magnitude(pv);
  try {
    decode_param_triple(pv);
    return true;
  } catch (const CodecError&) {
    return false;
  }
}

}  // namespace

bool operator==(const Position& a, const Position& b) {
  return std::bit_cast<std::uint32_t>(a.x) == std::bit_cast<std::uint32_t>(b.x) &&
         std::bit_cast<std::uint32_t>(a.y) == std::bit_cast<std::uint32_t>(b.y);
}

const char* to_string(CodecErrc code) {
  switch (code) {
    case CodecErrc::TruncatedHeader: return "truncated-header";
    case CodecErrc::LengthMismatch: return "length-mismatch";
    case CodecErrc::UnsupportedVersion: return "unsupported-version";
    case CodecErrc::UnknownType: return "unknown-type";
    case CodecErrc::TruncatedPayload: return "truncated-payload";
    case CodecErrc::NonCanonicalValue: return "non-canonical-value";
    case CodecErrc::InvalidPosition: return "invalid-position";
    case CodecErrc::InvalidLength: return "invalid-length";
  }
  return "unknown";
}

bool is_canonical_magnitude(std::span<const std::uint8_t> bytes) {
  if (bytes.empty()) return false;
  return bytes[0] != 0 || bytes.size() == 1;
}

BeaconPacket make_packet(std::uint32_t id, PacketType type, Position pos,
                         std::vector<std::uint8_t> public_value, std::uint8_t version) {
  if (public_value.size() > kMaxPublicValueSize) {
    throw CodecError(CodecErrc::InvalidLength, "public value too long for a 16-bit packet_len");
  }
  BeaconPacket pkt;
  pkt.identifiant = id;
  pkt.version = version;
  pkt.ptype = type;
  pkt.packet_len = static_cast<std::uint16_t>(kHeaderSize + public_value.size());
  pkt.src_pos = pos;
  pkt.public_value = std::move(public_value);
  return pkt;
}

std::vector<std::uint8_t> encode_packet(const BeaconPacket& pkt) {
  if (!std::isfinite(pkt.src_pos.x) || !std::isfinite(pkt.src_pos.y)) {
    throw CodecError(CodecErrc::InvalidPosition, "encode: position must be finite");
  }
  if (!valid_version(pkt.version)) {
    throw CodecError(CodecErrc::UnsupportedVersion, "encode: unsupported version");
  }
  if (!valid_type(static_cast<std::uint8_t>(pkt.ptype))) {
    throw CodecError(CodecErrc::UnknownType, "encode: unknown packet type");
  }
  if (pkt.public_value.size() > kMaxPublicValueSize ||
      pkt.packet_len != kHeaderSize + pkt.public_value.size()) {
    throw CodecError(CodecErrc::InvalidLength, "encode: packet_len does not match payload");
  }
  if (!valid_payload(pkt.version, pkt.public_value)) {
    throw CodecError(CodecErrc::NonCanonicalValue, "encode: public value is not canonical");
  }

  std::vector<std::uint8_t> out;
  out.reserve(pkt.packet_len);
  put_u32(out, pkt.identifiant);
  out.push_back(pkt.version);
  out.push_back(static_cast<std::uint8_t>(pkt.ptype));
  put_u16(out, pkt.packet_len);
  put_u32(out, std::bit_cast<std::uint32_t>(pkt.src_pos.x));
  put_u32(out, std::bit_cast<std::uint32_t>(pkt.src_pos.y));
  put_u16(out, static_cast<std::uint16_t>(pkt.public_value.size()));
  out.insert(out.end(), pkt.public_value.begin(), pkt.public_value.end());
  return out;
}

BeaconPacket decode_packet(std::span<const std::uint8_t> buf) {
  if (buf.size() < kHeaderSize) {
    throw CodecError(CodecErrc::TruncatedHeader, "decode: buffer shorter than the header");
  }
  BeaconPacket pkt;
  pkt.identifiant = get_u32(buf, 0);
  pkt.version = buf[4];
  const std::uint8_t type = buf[5];
  pkt.packet_len = get_u16(buf, 6);
  if (pkt.packet_len != buf.size()) {
    throw CodecError(CodecErrc::LengthMismatch, "decode: packet_len differs from buffer size");
  }
  if (!valid_version(pkt.version)) {
    throw CodecError(CodecErrc::UnsupportedVersion, "decode: unsupported version");
  }
  if (!valid_type(type)) {
    throw CodecError(CodecErrc::UnknownType, "decode: unknown packet type");
  }
  pkt.ptype = static_cast<PacketType>(type);
  pkt.src_pos.x = std::bit_cast<float>(get_u32(buf, 8));
  pkt.src_pos.y = std::bit_cast<float>(get_u32(buf, 12));
  if (!std::isfinite(pkt.src_pos.x) || !std::isfinite(pkt.src_pos.y)) {
    throw CodecError(CodecErrc::InvalidPosition, "decode: non-finite position");
  }
  const std::uint16_t pv_len = get_u16(buf, 16);
  if (pv_len != buf.size() - kHeaderSize) {
    throw CodecError(CodecErrc::TruncatedPayload, "decode: pv_len disagrees with payload size");
  }
  const auto pv = buf.subspan(kHeaderSize);
  if (!valid_payload(pkt.version, pv)) {
    throw CodecError(CodecErrc::NonCanonicalValue, "decode: public value is not canonical");
  }
  pkt.public_value.assign(pv.begin(), pv.end());
  return pkt;
}

std::vector<std::uint8_t> encode_param_triple(const ParamTriple& triple) {
  std::vector<std::uint8_t> out;
  for (const MpUint* v : {&triple.p, &triple.w, &triple.public_value}) {
    const auto bytes = v->to_bytes();
    if (bytes.size() > 0xFFFF) {
      throw CodecError(CodecErrc::InvalidLength, "param triple: magnitude too long");
    }
    put_u16(out, static_cast<std::uint16_t>(bytes.size()));
    out.insert(out.end(), bytes.begin(), bytes.end());
  }
  if (out.size() > kMaxPublicValueSize) {
    throw CodecError(CodecErrc::InvalidLength, "param triple: payload too long");
  }
  return out;
}

ParamTriple decode_param_triple(std::span<const std::uint8_t> payload) {
  std::size_t at = 0;
  auto field = [&]() {
    if (payload.size() - at < 2) {
      throw CodecError(CodecErrc::TruncatedPayload, "param triple: truncated length prefix");
    }
    const std::size_t len = get_u16(payload, at);
    at += 2;
    if (payload.size() - at < len) {
      throw CodecError(CodecErrc::TruncatedPayload, "param triple: truncated magnitude");
    }
    const auto bytes = payload.subspan(at, len);
    at += len;
    if (!is_canonical_magnitude(bytes)) {
      throw CodecError(CodecErrc::NonCanonicalValue, "param triple: non-canonical magnitude");
    }
    return MpUint::from_bytes(bytes);
  };
  ParamTriple t;
  t.p = field();
  t.w = field();
  t.public_value = field();
  if (at != payload.size()) {
    throw CodecError(CodecErrc::TruncatedPayload, "param triple: trailing octets");
  }
  return t;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  std::string out;
  out.reserve(bytes.size() * 3);
  char buf[3];
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    if (i != 0) out += ' ';
    std::snprintf(buf, sizeof(buf), "%02X", bytes[i]);
    out += buf;
  }
  return out;
}

std::vector<std::uint8_t> from_hex(const std::string& text) {
  std::vector<std::uint8_t> out;
  std::size_t i = 0;
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i])) != 0) {
      ++i;
      continue;
    }
    if (i + 1 >= text.size()) throw std::invalid_argument("odd number of hex digits");
    const int hi = nibble(text[i]);
    const int lo = nibble(text[i + 1]);
    if (hi < 0 || lo < 0) throw std::invalid_argument("invalid hex digit");
    if (i + 2 < text.size() && std::isspace(static_cast<unsigned char>(text[i + 2])) == 0) {
      throw std::invalid_argument("octets must be separated by whitespace");
    }
    out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    i += 2;
  }
  return out;
}

}  // namespace vanet::codec
