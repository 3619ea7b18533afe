#include "vanet/trace.hpp"

#include <cstdio>
#include <sstream>

namespace vanet {

std::string format_seconds(SimTime t) {
  const std::int64_t ns = t.count();
  const bool negative = ns < 0;
  const std::uint64_t mag = negative ? static_cast<std::uint64_t>(-ns) : static_cast<std::uint64_t>(ns);
  // Round half up to whole microseconds.
  const std::uint64_t micros = (mag + 500) / 1000;
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%s%llu.%06llu", negative ? "-" : "",
                static_cast<unsigned long long>(micros / 1000000),
                static_cast<unsigned long long>(micros % 1000000));
  return buf;
}

}  // namespace vanet

namespace vanet::sim {

const char* to_string(TraceEvent ev) {
  switch (ev) {
    case TraceEvent::BeaconTx: return "beacon_tx";
    case TraceEvent::BeaconRx: return "beacon_rx";
    case TraceEvent::AckTx: return "ack_tx";
    case TraceEvent::AckRx: return "ack_rx";
    case TraceEvent::KeyEstablished: return "key_established";
    case TraceEvent::NeighborExpired: return "neighbor_expired";
    case TraceEvent::RouteHop: return "route_hop";
    case TraceEvent::RouteLocalMax: return "route_local_max";
  }
  return "unknown";
}

std::string to_json_line(const TraceRecord& record) {
  char pos[96];
  std::snprintf(pos, sizeof(pos), "[%.3f,%.3f]", record.x, record.y);
  std::string line = "{\"t\":";
  line += format_seconds(record.t);
  line += ",\"ev\":\"";
  line += to_string(record.ev);
  line += "\",\"node\":";
  line += std::to_string(record.node);
  line += ",\"peer\":";
  line += record.peer ? std::to_string(*record.peer) : "null";
  line += ",\"pos\":";
  line += pos;
  line += ",\"extra\":";
  line += record.extra.dump();
  line += "}";
  return line;
}

void Trace::write_jsonl(std::ostream& out) const {
  for (const auto& r : records_) out << to_json_line(r) << '\n';
}

std::string Trace::to_jsonl() const {
  std::ostringstream out;
  write_jsonl(out);
  return out.str();
}

}  // namespace vanet::sim
