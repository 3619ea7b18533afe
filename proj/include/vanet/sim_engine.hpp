#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "vanet/mobility.hpp"
#include "vanet/node_protocol.hpp"
#include "vanet/random_source.hpp"
#include "vanet/sim_time.hpp"
#include "vanet/trace.hpp"

namespace vanet::sim {

using protocol::NodeId;

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Simulated-time cost of the DH computations. Zero disables injection.
struct CryptoCost {
  double param_generation = 0.0;  // params + own public value, per-node mode only
  double initiator_secret = 0.0;  // applied when an ACK is processed
  double responder_secret = 0.0;  // applied when a BEACON is processed

  /// Timings measured on the original reference host: 3509800629 ns,
  /// 49069788 ns and 36127233 ns.
  static CryptoCost reference_host();
};

struct HaltSpec {
  NodeId node = 0;
  double at = 0.0;
};

struct RouteProbeSpec {
  double at = 0.0;
  NodeId src = 0;
  Vec2 dest;
};

struct SimConfig {
  std::uint32_t n_vehicles = 2;
  Area area;
  double radio_range = 250.0;
  SpeedRange speed_range;
  MobilityModel mobility = MobilityModel::ConstantVelocity;
  double duration = 10.0;
  double loss_rate = 0.0;
  double prop_delay = 0.001;
  std::uint64_t seed = 1;
  protocol::NodeConfig node_config;
  std::size_t dh_bits = 64;
  protocol::ParamsMode dh_mode = protocol::ParamsMode::Global;
  CryptoCost crypto_cost;
  double mobility_tick = 0.1;
  /// Explicit initial positions; empty means uniform over the area.
  std::vector<Vec2> positions;
  std::vector<HaltSpec> halts;
  std::vector<RouteProbeSpec> route_probes;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

/// Event kinds in same-instant processing order.
enum class EventKind : std::uint8_t {
  MobilityTick,
  NodeHalt,
  PacketDelivery,
  BeaconTimer,
  Sample,
  RouteProbe,
  End,
};

struct PacketInFlight {
  std::vector<std::uint8_t> bytes;
  NodeId sender = 0;
  SimTime tx_at{0};
  /// When the initiating beacon timer fired; carried on ACKs too.
  SimTime exchange_start{0};
};

struct SimEvent {
  SimTime at{0};
  EventKind kind = EventKind::End;
  NodeId node = 0;
  std::uint64_t seq = 0;
  std::shared_ptr<const PacketInFlight> payload;
  std::size_t probe_index = 0;
};

/// Strict weak order over (at, kind, node, seq); seq is unique so the order is total.
struct EventLater {
  bool operator()(const SimEvent& a, const SimEvent& b) const;
};

struct TableSample {
  SimTime t{0};
  double precision = 1.0;
  double recall = 1.0;
  std::size_t key_mismatches = 0;
};

struct Metrics {
  std::uint64_t beacons_sent = 0;
  std::uint64_t acks_sent = 0;
  std::uint64_t handshakes_completed = 0;
  std::optional<double> mean_handshake_latency;
  std::optional<double> p95_handshake_latency;
  double precision = 1.0;  // mean over samples
  double recall = 1.0;
  double precision_min = 1.0;
  double recall_min = 1.0;
  std::uint64_t key_mismatches = 0;
  std::uint64_t expiries = 0;
  std::uint64_t bytes_on_air = 0;
  std::uint64_t deliveries = 0;
  std::uint64_t drops = 0;

  nlohmann::json to_json() const;
};

/// Counts, latencies and air-time from the trace; precision/recall from samples.
Metrics compute_metrics(const Trace& trace, const std::vector<TableSample>& samples);

enum class RouteOutcome { Arrived, LocalMax, LoopGuard };

const char* to_string(RouteOutcome outcome);

struct RouteResult {
  std::vector<NodeId> hops;  // starts with the source
  RouteOutcome outcome = RouteOutcome::Arrived;
  NodeId last = 0;
};

/// Deterministic discrete-event simulator of beaconing vehicles.
class Simulator {
 public:
  explicit Simulator(SimConfig config);

  /// Processes every event with at <= t.
  void run_until(SimTime t);
  /// Processes events through the configured duration.
  void run();
  SimTime now() const { return now_; }
  bool finished() const { return finished_; }

  /// Greedy walk over the nodes' current tables; logs route_hop /
  /// route_local_max into the trace at the current time.
  RouteResult route_probe(NodeId src, Vec2 dest);

  /// Halts a node from the current instant: it stops moving and sending,
  /// and packets reaching it are dropped.
  void halt_now(NodeId node);

  const SimConfig& config() const { return config_; }
  std::size_t size() const { return nodes_.size(); }
  const protocol::Node& node(NodeId id) const;
  const Vehicle& vehicle(NodeId id) const;
  bool active(NodeId id) const;
  std::vector<Vec2> positions() const;

  const Trace& trace() const { return trace_; }
  const std::vector<TableSample>& samples() const { return samples_; }
  Metrics metrics() const { return compute_metrics(trace_, samples_); }

 private:
  std::size_t index(NodeId id) const;
  void schedule(SimTime at, EventKind kind, NodeId node,
                std::shared_ptr<const PacketInFlight> payload = nullptr,
                std::size_t probe_index = 0);
  void dispatch(const SimEvent& ev);
  void on_mobility_tick();
  void on_beacon_timer(NodeId id);
  void on_delivery(const SimEvent& ev);
  void on_sample();
  void transmit(NodeId sender, const protocol::BeaconPacket& pkt,
                std::optional<NodeId> addressee, SimTime exchange_start, SimTime timer_at);
  void log(TraceEvent ev, NodeId node, std::optional<NodeId> peer,
           nlohmann::json extra = nlohmann::json::object());
  void log_key_change(NodeId id, NodeId peer, const protocol::NeighborEntry* before,
                      const char* role, SimTime exchange_start);

  SimConfig config_;
  SimTime now_{0};
  SimTime end_{0};
  bool finished_ = false;
  std::uint64_t seq_ = 0;
  std::priority_queue<SimEvent, std::vector<SimEvent>, EventLater> queue_;
  std::vector<protocol::Node> nodes_;
  std::vector<Vehicle> vehicles_;
  std::vector<bool> active_;
  std::vector<std::optional<SimTime>> pending_timer_;
  RandomSource mobility_rng_;
  RandomSource radio_rng_;
  Trace trace_;
  std::vector<TableSample> samples_;
};

/// Runs `config` to completion.
std::pair<Trace, Metrics> run(const SimConfig& config);

}  // namespace vanet::sim
