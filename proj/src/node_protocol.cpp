#include "vanet/node_protocol.hpp"

#include <algorithm>
#include <stdexcept>

namespace vanet::protocol {

namespace {

double squared_distance(Position a, Position b) {
  const double dx = static_cast<double>(a.x) - static_cast<double>(b.x);
  const double dy = static_cast<double>(a.y) - static_cast<double>(b.y);
  return dx * dx + dy * dy;
}

// Version 1 keys are static per pair, so either direction's exchange is
// authoritative. Version 2 exchanges run under the initiator's parameters;
// only the lower id's exchange may key the pair or the two sides could
// hold keys from different exchanges.
bool adopts_key(std::uint8_t version, NodeId initiator, NodeId responder) {
  return version == codec::kVersionSharedParams || initiator < responder;
}

std::vector<std::uint8_t> payload_for(std::uint8_t version, const dh::DhParams& params,
                                      const MpUint& public_value) {
  if (version == codec::kVersionSharedParams) return public_value.to_bytes();
  return codec::encode_param_triple({params.p, params.w, public_value});
}

std::uint8_t version_for(ParamsMode mode) {
  return mode == ParamsMode::Global ? codec::kVersionSharedParams : codec::kVersionParamTriple;
}

}  // namespace

const char* to_string(HandshakeState state) {
  switch (state) {
    case HandshakeState::None: return "none";
    case HandshakeState::Pending: return "pending";
    case HandshakeState::Established: return "established";
  }
  return "unknown";
}

void NodeConfig::validate() const {
  if (!(beacon_interval > 0.0)) throw std::invalid_argument("beacon_interval must be > 0");
  if (!(expiry_multiplier > 1.0)) throw std::invalid_argument("expiry_multiplier must be > 1");
  if (!(interval_min > 0.0)) throw std::invalid_argument("interval_min must be > 0");
  if (!(interval_min <= beacon_interval)) {
    throw std::invalid_argument("interval_min must not exceed beacon_interval");
  }
  if (!(beacon_interval <= interval_max)) {
    throw std::invalid_argument("interval_max must not be below beacon_interval");
  }
  if (adaptive && target_degree == 0) throw std::invalid_argument("target_degree must be >= 1");
  if (!(adapt_gain >= 0.0)) throw std::invalid_argument("adapt_gain must be >= 0");
}

double beacon_interval_for_degree(const NodeConfig& config, std::size_t degree) {
  if (!config.adaptive) return config.beacon_interval;
  const double target = static_cast<double>(config.target_degree);
  const double scaled = config.beacon_interval *
                        (1.0 + config.adapt_gain * (static_cast<double>(degree) - target) / target);
  return std::clamp(scaled, config.interval_min, config.interval_max);
}

Node::Node(NodeId id, Position own_position, NodeConfig config, ParamsMode mode,
           std::uint64_t seed)
    : id_(id), own_position_(own_position), config_(config), mode_(mode), rng_(seed) {
  config_.validate();
}

void Node::install_params(const dh::DhParams& params) {
  own_params_ = params;
  own_keypair_ = dh::generate_keypair(params, rng_);
}

void Node::install_keys(const dh::DhParams& params, const dh::DhKeyPair& keypair) {
  own_params_ = params;
  own_keypair_ = keypair;
}

void Node::generate_own_keys(std::size_t bits) {
  install_params(dh::generate_dh_params(bits, rng_));
}

const dh::DhParams& Node::own_params() const {
  if (!own_params_) throw std::logic_error("node has no DH parameters yet");
  return *own_params_;
}

const dh::DhKeyPair& Node::own_keypair() const {
  if (!own_keypair_) throw std::logic_error("node has no DH key pair yet");
  return *own_keypair_;
}

const NeighborEntry* Node::neighbor(NodeId peer) const {
  auto it = neighbors_.find(peer);
  return it == neighbors_.end() ? nullptr : &it->second;
}

double Node::effective_beacon_interval() const {
  return beacon_interval_for_degree(config_, neighbors_.size());
}

BeaconTick Node::on_timer_beacon(SimTime now) {
  BeaconTick tick;
  tick.expired = expire_neighbors(now);

  const std::uint8_t version = version_for(mode_);
  for (auto& [peer, entry] : neighbors_) {
    if (entry.state == HandshakeState::None && adopts_key(version, id_, peer)) {
      entry.state = HandshakeState::Pending;
    }
  }

  tick.packets.push_back(codec::make_packet(id_, codec::PacketType::Beacon, own_position_,
                                            payload_for(version, own_params(), own_keypair().public_value),
                                            version));
  next_beacon_at_ = now + from_seconds(effective_beacon_interval());
  return tick;
}

std::optional<Node::Exchange> Node::exchange_from(const BeaconPacket& pkt) const {
  try {
    if (pkt.version == codec::kVersionSharedParams) {
      if (mode_ != ParamsMode::Global || !own_params_) return std::nullopt;
      return Exchange{*own_params_, MpUint::from_bytes(pkt.public_value)};
    }
    auto triple = codec::decode_param_triple(pkt.public_value);
    return Exchange{dh::DhParams{std::move(triple.p), std::move(triple.w)},
                    std::move(triple.public_value)};
  } catch (const codec::CodecError&) {
    return std::nullopt;
  }
}

const dh::DhKeyPair& Node::keypair_for(NodeId peer, const dh::DhParams& params) {
  if (own_params_ && *own_params_ == params) return *own_keypair_;
  auto it = foreign_keypairs_.find(peer);
  if (it == foreign_keypairs_.end() || it->second.first != params) {
    auto kp = dh::generate_keypair(params, rng_);
    it = foreign_keypairs_.insert_or_assign(peer, std::make_pair(params, std::move(kp))).first;
  }
  return it->second.second;
}

NeighborEntry& Node::refresh(const BeaconPacket& pkt, SimTime now) {
  NeighborEntry& entry = neighbors_[pkt.identifiant];
  entry.node_id = pkt.identifiant;
  entry.position = pkt.src_pos;
  entry.last_seen = now;
  return entry;
}

namespace {

void drop_key(NeighborEntry& entry) {
  entry.state = HandshakeState::None;
  entry.key.reset();
}

}  // namespace

std::optional<BeaconPacket> Node::on_receive_beacon(const BeaconPacket& pkt, SimTime now) {
  if (pkt.ptype != codec::PacketType::Beacon || pkt.identifiant == id_) return std::nullopt;
  NeighborEntry& entry = refresh(pkt, now);

  auto exchange = exchange_from(pkt);
  if (!exchange || !dh::is_acceptable_peer_value(exchange->params, exchange->peer_public) ||
      exchange->params.w < MpUint(2) || exchange->params.w >= exchange->params.p) {
    drop_key(entry);
    return std::nullopt;
  }

  const dh::DhKeyPair& kp = keypair_for(pkt.identifiant, exchange->params);
  if (adopts_key(pkt.version, pkt.identifiant, id_)) {
    const auto secret =
        dh::compute_shared_secret(exchange->params, kp.private_exponent, exchange->peer_public);
    entry.key = dh::derive_symmetric_key(secret);
    entry.peer_public = exchange->peer_public;
    entry.state = HandshakeState::Established;
  }

  return codec::make_packet(id_, codec::PacketType::Ack, own_position_,
                            payload_for(pkt.version, exchange->params, kp.public_value), pkt.version);
}

void Node::on_receive_ack(const BeaconPacket& pkt, SimTime now) {
  if (pkt.ptype != codec::PacketType::Ack || pkt.identifiant == id_) return;
  NeighborEntry& entry = refresh(pkt, now);

  auto exchange = exchange_from(pkt);
  // An ACK answers our own beacon, so it must be under our parameters.
  if (!exchange || !own_params_ || exchange->params != *own_params_ ||
      !dh::is_acceptable_peer_value(exchange->params, exchange->peer_public)) {
    drop_key(entry);
    return;
  }
  if (!adopts_key(pkt.version, id_, pkt.identifiant)) return;

  const auto secret = dh::compute_shared_secret(*own_params_, own_keypair_->private_exponent,
                                                exchange->peer_public);
  entry.key = dh::derive_symmetric_key(secret);
  entry.peer_public = exchange->peer_public;
  entry.state = HandshakeState::Established;
}

std::vector<NodeId> Node::expire_neighbors(SimTime now) {
  const SimTime timeout = from_seconds(config_.expiry_multiplier * effective_beacon_interval());
  std::vector<NodeId> expired;
  for (auto it = neighbors_.begin(); it != neighbors_.end();) {
    if (now - it->second.last_seen > timeout) {
      expired.push_back(it->first);
      it = neighbors_.erase(it);
    } else {
      ++it;
    }
  }
  return expired;
}

std::optional<NodeId> Node::greedy_next_hop(Position dest) const {
  const double own = squared_distance(own_position_, dest);
  std::optional<NodeId> best;
  double best_d2 = own;
  for (const auto& [peer, entry] : neighbors_) {
    if (config_.keyed_only_routing && entry.state != HandshakeState::Established) continue;
    const double d2 = squared_distance(entry.position, dest);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = peer;
    }
  }
  return best;
}

}  // namespace vanet::protocol
