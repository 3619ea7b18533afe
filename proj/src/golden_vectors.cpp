#include "vanet/golden_vectors.hpp"

#include <string>

namespace vanet::codec {

std::vector<GoldenVector> golden_vectors() {
  std::vector<GoldenVector> v;
  v.push_back({"beacon id=1 v1 pos=(0,0) public=8",
               make_packet(1, PacketType::Beacon, {0.0F, 0.0F}, {0x08})});
  v.push_back({"beacon id=1 v1 pos=(1.5,-2) public=8",
               make_packet(1, PacketType::Beacon, {1.5F, -2.0F}, {0x08})});
  v.push_back({"ack id=2 v1 pos=(200,0) public=19",
               make_packet(2, PacketType::Ack, {200.0F, 0.0F}, {0x13})});
  v.push_back({"beacon id=3 v1 pos=(0,0) public=0",
               make_packet(3, PacketType::Beacon, {0.0F, 0.0F}, {0x00})});
  v.push_back({"beacon id=1 v2 pos=(0,0) p=23 w=5 public=8",
               make_packet(1, PacketType::Beacon, {0.0F, 0.0F},
                           encode_param_triple({MpUint(23), MpUint(5), MpUint(8)}),
                           kVersionParamTriple)});
  v.push_back({"beacon id=4294967295 v1 pos=(1000,750.25) public=0x0100",
               make_packet(0xFFFFFFFFU, PacketType::Beacon, {1000.0F, 750.25F}, {0x01, 0x00})});
  return v;
}

void write_vector_file(std::ostream& out, const std::vector<GoldenVector>& vectors) {
  for (const auto& g : vectors) {
    out << "# " << g.description << '\n' << to_hex(encode_packet(g.packet)) << '\n';
  }
}

VectorCheck check_vector_file(std::istream& in) {
  VectorCheck result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      const auto bytes = from_hex(line);
      const auto pkt = decode_packet(bytes);
      if (encode_packet(pkt) != bytes) {
        result.bad_line = line_no;
        result.message = "re-encoding differs";
        return result;
      }
      ++result.packets;
    } catch (const CodecError& e) {
      result.bad_line = line_no;
      result.message = std::string(to_string(e.code())) + ": " + e.what();
      return result;
    } catch (const std::invalid_argument& e) {
      result.bad_line = line_no;
      result.message = e.what();
      return result;
    }
  }
  return result;
}

}  // namespace vanet::codec
