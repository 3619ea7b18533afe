#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "vanet/beacon_codec.hpp"
#include "vanet/crypto_dh.hpp"
#include "vanet/random_source.hpp"
#include "vanet/sim_time.hpp"

namespace vanet::protocol {

using NodeId = std::uint32_t;
using codec::BeaconPacket;
using codec::Position;

enum class HandshakeState { None, Pending, Established };

const char* to_string(HandshakeState state);

struct NeighborEntry {
  NodeId node_id = 0;
  Position position;
  SimTime last_seen{0};
  HandshakeState state = HandshakeState::None;
  std::optional<dh::SymmetricKey> key;
  std::optional<MpUint> peer_public;

  friend bool operator==(const NeighborEntry&, const NeighborEntry&) = default;
};

struct NodeConfig {
  double beacon_interval = 1.0;  // seconds
  double expiry_multiplier = 4.5;
  bool adaptive = false;
  std::uint32_t target_degree = 8;
  double adapt_gain = 0.5;
  double interval_min = 0.25;
  double interval_max = 4.0;
  /// Restrict greedy forwarding to neighbors holding a derived key.
  bool keyed_only_routing = false;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Whose DH parameters a pair uses.
///   Global: one network-wide (p, w); packets carry the bare public value.
///   PerNode: each node owns (p, w); packets carry the (p, w, public) triple
///            and a pair keys itself under the lower node id's parameters.
enum class ParamsMode { Global, PerNode };

struct BeaconTick {
  std::vector<BeaconPacket> packets;
  std::vector<NodeId> expired;
};

/// Per-vehicle protocol state machine: beaconing, neighbor table with
/// expiry, the beacon/ack key exchange and greedy next-hop selection.
///
/// Single owner; every operation runs to completion in simulated zero time.
class Node {
 public:
  Node(NodeId id, Position own_position, NodeConfig config, ParamsMode mode,
       std::uint64_t seed);

  NodeId id() const { return id_; }
  ParamsMode mode() const { return mode_; }
  const NodeConfig& config() const { return config_; }
  Position own_position() const { return own_position_; }
  void set_position(Position pos) { own_position_ = pos; }

  /// Own parameters and key pair. Global mode installs the network-wide
  /// set; per-node mode generates them on demand.
  bool has_own_keys() const { return own_params_.has_value(); }
  void install_params(const dh::DhParams& params);
  void install_keys(const dh::DhParams& params, const dh::DhKeyPair& keypair);
  void generate_own_keys(std::size_t bits);
  const dh::DhParams& own_params() const;
  const dh::DhKeyPair& own_keypair() const;

  SimTime next_beacon_at() const { return next_beacon_at_; }
  void set_next_beacon_at(SimTime t) { next_beacon_at_ = t; }

  const std::map<NodeId, NeighborEntry>& neighbors() const { return neighbors_; }
  const NeighborEntry* neighbor(NodeId peer) const;

  /// Expires stale entries, emits one BEACON and schedules the next one.
  BeaconTick on_timer_beacon(SimTime now);

  /// Records the sender, derives the pair key and answers with an ACK
  /// addressed to the sender. No ACK when the carried value is unusable.
  std::optional<BeaconPacket> on_receive_beacon(const BeaconPacket& pkt, SimTime now);

  /// Completes the initiator side of the exchange. Never answers.
  void on_receive_ack(const BeaconPacket& pkt, SimTime now);

  std::vector<NodeId> expire_neighbors(SimTime now);

  /// Seconds until the next beacon.
  double effective_beacon_interval() const;

  /// Neighbor strictly closer to `dest` than this node; ties to smallest id.
  std::optional<NodeId> greedy_next_hop(Position dest) const;

 private:
  struct Exchange {
    dh::DhParams params;
    MpUint peer_public;
  };

  std::optional<Exchange> exchange_from(const BeaconPacket& pkt) const;
  const dh::DhKeyPair& keypair_for(NodeId peer, const dh::DhParams& params);
  NeighborEntry& refresh(const BeaconPacket& pkt, SimTime now);

  NodeId id_;
  Position own_position_;
  NodeConfig config_;
  ParamsMode mode_;
  RandomSource rng_;
  std::optional<dh::DhParams> own_params_;
  std::optional<dh::DhKeyPair> own_keypair_;
  // Responder-side key pairs under a peer's parameters (per-node mode).
  std::map<NodeId, std::pair<dh::DhParams, dh::DhKeyPair>> foreign_keypairs_;
  std::map<NodeId, NeighborEntry> neighbors_;
  SimTime next_beacon_at_{0};
};

/// Interval rule shared by Node and tests: B * (1 + gain * (degree - target) / target)
/// clamped to [interval_min, interval_max] when adaptive, else B.
double beacon_interval_for_degree(const NodeConfig& config, std::size_t degree);

}  // namespace vanet::protocol
