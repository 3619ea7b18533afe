#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vanet/mp_uint.hpp"

namespace vanet::codec {

/// Wire layout (big-endian):
///
///   identifiant(4) version(1) type(1) packet_len(2) x(4) y(4) pv_len(2) public_value(pv_len)
///
/// packet_len counts every octet of the packet, header included.
inline constexpr std::size_t kHeaderSize = 18;
inline constexpr std::size_t kMaxPublicValueSize = 0xFFFF - kHeaderSize;

/// version 1: public_value is the bare DH public value under shared parameters.
/// version 2: public_value is a (p, w, public) triple of length-prefixed magnitudes.
inline constexpr std::uint8_t kVersionSharedParams = 1;
inline constexpr std::uint8_t kVersionParamTriple = 2;

enum class PacketType : std::uint8_t { Beacon = 1, Ack = 2 };

struct Position {
  float x = 0.0F;
  float y = 0.0F;

  /// Bitwise comparison so that round-trips are exact.
  friend bool operator==(const Position& a, const Position& b);
};

struct BeaconPacket {
  std::uint32_t identifiant = 0;
  std::uint8_t version = kVersionSharedParams;
  PacketType ptype = PacketType::Beacon;
  std::uint16_t packet_len = kHeaderSize;
  Position src_pos;
  std::vector<std::uint8_t> public_value;

  friend bool operator==(const BeaconPacket&, const BeaconPacket&) = default;
};

enum class CodecErrc {
  TruncatedHeader,
  LengthMismatch,
  UnsupportedVersion,
  UnknownType,
  TruncatedPayload,
  NonCanonicalValue,
  InvalidPosition,
  InvalidLength,
};

const char* to_string(CodecErrc code);

class CodecError : public std::runtime_error {
 public:
  CodecError(CodecErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  CodecErrc code() const noexcept { return code_; }

 private:
  CodecErrc code_;
};

/// Builds a packet with packet_len filled in from the payload size.
BeaconPacket make_packet(std::uint32_t id, PacketType type, Position pos,
                         std::vector<std::uint8_t> public_value,
                         std::uint8_t version = kVersionSharedParams);

std::vector<std::uint8_t> encode_packet(const BeaconPacket& pkt);

/// Total over arbitrary input: either returns the unique packet whose
/// encoding is `buf` or throws CodecError. Never reads outside `buf`.
BeaconPacket decode_packet(std::span<const std::uint8_t> buf);

struct ParamTriple {
  MpUint p;
  MpUint w;
  MpUint public_value;

  friend bool operator==(const ParamTriple&, const ParamTriple&) = default;
};

/// Version-2 payload: three (len(2) || magnitude) fields, each magnitude canonical.
std::vector<std::uint8_t> encode_param_triple(const ParamTriple& triple);
ParamTriple decode_param_triple(std::span<const std::uint8_t> payload);

/// True when `bytes` is the minimal big-endian form of some integer
/// (one zero octet for 0, otherwise no leading zero octet).
bool is_canonical_magnitude(std::span<const std::uint8_t> bytes);

std::string to_hex(std::span<const std::uint8_t> bytes);
/// Parses space-separated hex octets. Throws std::invalid_argument.
std::vector<std::uint8_t> from_hex(const std::string& text);

}  // namespace vanet::codec
