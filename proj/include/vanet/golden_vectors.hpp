#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vanet/beacon_codec.hpp"

namespace vanet::codec {

struct GoldenVector {
  std::string description;
  BeaconPacket packet;
};

/// Reference packets shipped in tests/fixtures/golden_vectors.hex.
std::vector<GoldenVector> golden_vectors();

/// `# description` comment then one hex line per vector.
void write_vector_file(std::ostream& out, const std::vector<GoldenVector>& vectors);

struct VectorCheck {
  std::size_t packets = 0;
  std::optional<std::size_t> bad_line;  // 1-based
  std::string message;

  bool ok() const { return !bad_line.has_value(); }
};

/// Every non-blank, non-comment line must decode and re-encode to itself.
VectorCheck check_vector_file(std::istream& in);

}  // namespace vanet::codec
