#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vanet/sim_time.hpp"

namespace vanet::sim {

enum class TraceEvent {
  BeaconTx,
  BeaconRx,
  AckTx,
  AckRx,
  KeyEstablished,
  NeighborExpired,
  RouteHop,
  RouteLocalMax,
};

const char* to_string(TraceEvent ev);

struct TraceRecord {
  SimTime t{0};
  TraceEvent ev = TraceEvent::BeaconTx;
  std::uint32_t node = 0;
  std::optional<std::uint32_t> peer;
  double x = 0.0;
  double y = 0.0;
  /// Integers and strings only, so the rendering stays byte-stable.
  nlohmann::json extra = nlohmann::json::object();
};

/// One JSON object per line:
///   {"t":1.000000,"ev":"beacon_tx","node":1,"peer":null,"pos":[0.000,0.000],"extra":{...}}
std::string to_json_line(const TraceRecord& record);

class Trace {
 public:
  void append(TraceRecord record) { records_.push_back(std::move(record)); }
  const std::vector<TraceRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }

  void write_jsonl(std::ostream& out) const;
  std::string to_jsonl() const;

 private:
  std::vector<TraceRecord> records_;
};

}  // namespace vanet::sim
