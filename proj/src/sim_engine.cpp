#include "vanet/sim_engine.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "vanet/radio.hpp"

namespace vanet::sim {

namespace {

constexpr std::uint64_t kPlacementStream = 1;
constexpr std::uint64_t kMobilityStream = 2;
constexpr std::uint64_t kRadioStream = 3;
constexpr std::uint64_t kParamsStream = 4;
constexpr std::uint64_t kNodeStreamBase = 1000;

codec::Position to_wire(Vec2 v) {
  return {static_cast<float>(v.x), static_cast<float>(v.y)};
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace

CryptoCost CryptoCost::reference_host() {
  return CryptoCost{3.509800629, 0.049069788, 0.036127233};
}

void SimConfig::validate() const {
  require(n_vehicles >= 1, "sim.n_vehicles must be >= 1");
  require(area.width > 0.0 && std::isfinite(area.width), "sim.area_width must be > 0");
  require(area.height > 0.0 && std::isfinite(area.height), "sim.area_height must be > 0");
  require(radio_range > 0.0 && std::isfinite(radio_range), "sim.radio_range must be > 0");
  require(speed_range.min >= 0.0 && speed_range.min <= speed_range.max &&
              std::isfinite(speed_range.max),
          "sim.speed_min/sim.speed_max must satisfy 0 <= min <= max");
  require(duration > 0.0 && std::isfinite(duration), "sim.duration must be > 0");
  require(loss_rate >= 0.0 && loss_rate <= 1.0, "sim.loss_rate must lie in [0, 1]");
  require(prop_delay >= 0.0 && std::isfinite(prop_delay), "sim.prop_delay must be >= 0");
  require(dh_bits >= dh::kMinParamBits && dh_bits <= dh::kMaxParamBits,
          "sim.dh_bits must lie in [16, 2048]");
  require(crypto_cost.param_generation >= 0.0 && crypto_cost.initiator_secret >= 0.0 &&
              crypto_cost.responder_secret >= 0.0,
          "sim.cost_* must be >= 0");
  require(mobility_tick > 0.0, "sim.mobility_tick must be > 0");
  require(positions.empty() || positions.size() == n_vehicles,
          "sim.positions must list exactly n_vehicles positions");
  for (const auto& p : positions) {
    require(p.x >= 0.0 && p.x <= area.width && p.y >= 0.0 && p.y <= area.height,
            "sim.positions must lie inside the area");
  }
  for (const auto& h : halts) {
    require(h.node >= 1 && h.node <= n_vehicles && h.at >= 0.0, "sim.halt names an unknown node");
  }
  for (const auto& r : route_probes) {
    require(r.src >= 1 && r.src <= n_vehicles && r.at >= 0.0,
            "sim.route_probe names an unknown node");
  }
  try {
    node_config.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("node.") + e.what());
  }
}

bool EventLater::operator()(const SimEvent& a, const SimEvent& b) const {
  if (a.at != b.at) return a.at > b.at;
  if (a.kind != b.kind) return a.kind > b.kind;
  if (a.node != b.node) return a.node > b.node;
  return a.seq > b.seq;
}

const char* to_string(RouteOutcome outcome) {
  switch (outcome) {
    case RouteOutcome::Arrived: return "arrived";
    case RouteOutcome::LocalMax: return "local_max";
    case RouteOutcome::LoopGuard: return "loop_guard";
  }
  return "unknown";
}

Simulator::Simulator(SimConfig config)
    : config_(std::move(config)),
      mobility_rng_(RandomSource::mix(config_.seed, kMobilityStream)),
      radio_rng_(RandomSource::mix(config_.seed, kRadioStream)) {
  config_.validate();
  end_ = from_seconds(config_.duration);

  RandomSource placement(RandomSource::mix(config_.seed, kPlacementStream));
  const std::size_t n = config_.n_vehicles;
  std::optional<dh::DhParams> shared;
  if (config_.dh_mode == protocol::ParamsMode::Global) {
    RandomSource params_rng(RandomSource::mix(config_.seed, kParamsStream));
    shared = dh::generate_dh_params(config_.dh_bits, params_rng);
  }

  nodes_.reserve(n);
  vehicles_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 start = config_.positions.empty()
                           ? Vec2{placement.uniform(0.0, config_.area.width),
                                  placement.uniform(0.0, config_.area.height)}
                           : config_.positions[i];
    vehicles_.push_back(spawn_vehicle(start, config_.area, config_.mobility, config_.speed_range,
                                      mobility_rng_));
    const auto id = static_cast<NodeId>(i + 1);
    nodes_.emplace_back(id, to_wire(start), config_.node_config, config_.dh_mode,
                        RandomSource::mix(config_.seed, kNodeStreamBase + id));
    if (shared) nodes_.back().install_params(*shared);
  }
  active_.assign(n, true);
  pending_timer_.assign(n, std::nullopt);

  // First beacon at a random phase within one base interval.
  for (std::size_t i = 0; i < n; ++i) {
    const SimTime phase = from_seconds(placement.uniform(0.0, config_.node_config.beacon_interval));
    nodes_[i].set_next_beacon_at(phase);
    schedule(phase, EventKind::BeaconTimer, static_cast<NodeId>(i + 1));
  }
  if (config_.speed_range.max > 0.0) {
    schedule(from_seconds(config_.mobility_tick), EventKind::MobilityTick, 0);
  }
  schedule(from_seconds(1.0), EventKind::Sample, 0);
  for (const auto& h : config_.halts) schedule(from_seconds(h.at), EventKind::NodeHalt, h.node);
  for (std::size_t k = 0; k < config_.route_probes.size(); ++k) {
    schedule(from_seconds(config_.route_probes[k].at), EventKind::RouteProbe,
             config_.route_probes[k].src, nullptr, k);
  }
  schedule(end_, EventKind::End, 0);
}

std::size_t Simulator::index(NodeId id) const {
  if (id == 0 || id > nodes_.size()) throw std::out_of_range("unknown node id " + std::to_string(id));
  return id - 1;
}

const protocol::Node& Simulator::node(NodeId id) const { return nodes_[index(id)]; }
const Vehicle& Simulator::vehicle(NodeId id) const { return vehicles_[index(id)]; }
bool Simulator::active(NodeId id) const { return active_[index(id)]; }

std::vector<Vec2> Simulator::positions() const {
  std::vector<Vec2> out;
  out.reserve(vehicles_.size());
  for (const auto& v : vehicles_) out.push_back(v.position);
  return out;
}

void Simulator::schedule(SimTime at, EventKind kind, NodeId node,
                         std::shared_ptr<const PacketInFlight> payload, std::size_t probe_index) {
  if (at > end_) return;
  SimEvent ev;
  ev.at = at;
  ev.kind = kind;
  ev.node = node;
  ev.seq = seq_++;
  ev.payload = std::move(payload);
  ev.probe_index = probe_index;
  queue_.push(std::move(ev));
}

void Simulator::run_until(SimTime t) {
  while (!finished_ && !queue_.empty() && queue_.top().at <= t) {
    SimEvent ev = queue_.top();
    queue_.pop();
    now_ = ev.at;
    dispatch(ev);
  }
  if (!finished_) now_ = std::max(now_, std::min(t, end_));
}

void Simulator::run() { run_until(end_); }

void Simulator::dispatch(const SimEvent& ev) {
  switch (ev.kind) {
    case EventKind::MobilityTick:
      on_mobility_tick();
      break;
    case EventKind::NodeHalt:
      halt_now(ev.node);
      break;
    case EventKind::PacketDelivery:
      on_delivery(ev);
      break;
    case EventKind::BeaconTimer:
      if (active_[index(ev.node)]) on_beacon_timer(ev.node);
      break;
    case EventKind::Sample:
      on_sample();
      schedule(now_ + from_seconds(1.0), EventKind::Sample, 0);
      break;
    case EventKind::RouteProbe: {
      const auto& spec = config_.route_probes[ev.probe_index];
      route_probe(spec.src, spec.dest);
      break;
    }
    case EventKind::End:
      finished_ = true;
      break;
  }
}

void Simulator::halt_now(NodeId id) { active_[index(id)] = false; }

void Simulator::on_mobility_tick() {
  for (std::size_t i = 0; i < vehicles_.size(); ++i) {
    if (!active_[i]) continue;
    mobility_update(vehicles_[i], config_.mobility_tick, config_.area, config_.mobility,
                    config_.speed_range, mobility_rng_);
    nodes_[i].set_position(to_wire(vehicles_[i].position));
  }
  schedule(now_ + from_seconds(config_.mobility_tick), EventKind::MobilityTick, 0);
}

void Simulator::on_beacon_timer(NodeId id) {
  const std::size_t i = index(id);
  protocol::Node& node = nodes_[i];
  if (!node.has_own_keys()) {
    node.generate_own_keys(config_.dh_bits);
    const SimTime cost = from_seconds(config_.crypto_cost.param_generation);
    if (cost > SimTime{0}) {
      pending_timer_[i] = now_;
      schedule(now_ + cost, EventKind::BeaconTimer, id);
      return;
    }
  }
  const SimTime timer_at = pending_timer_[i].value_or(now_);
  pending_timer_[i].reset();

  protocol::BeaconTick tick = node.on_timer_beacon(now_);
  for (NodeId gone : tick.expired) log(TraceEvent::NeighborExpired, id, gone);
  for (const auto& pkt : tick.packets) transmit(id, pkt, std::nullopt, timer_at, timer_at);
  schedule(node.next_beacon_at(), EventKind::BeaconTimer, id);
}

void Simulator::transmit(NodeId sender, const protocol::BeaconPacket& pkt,
                         std::optional<NodeId> addressee, SimTime exchange_start,
                         SimTime timer_at) {
  auto flight = std::make_shared<PacketInFlight>();
  flight->bytes = codec::encode_packet(pkt);
  flight->sender = sender;
  flight->tx_at = now_;
  flight->exchange_start = exchange_start;

  std::optional<std::size_t> to;
  if (addressee) to = index(*addressee);
  const auto deliveries = deliver_in_range(positions(), active_, index(sender), to,
                                           config_.radio_range, config_.loss_rate, radio_rng_);

  const bool is_beacon = pkt.ptype == codec::PacketType::Beacon;
  const SimTime processing = from_seconds(is_beacon ? config_.crypto_cost.responder_secret
                                                    : config_.crypto_cost.initiator_secret);
  std::uint64_t delivered = 0;
  for (const auto& d : deliveries) {
    if (!d.delivered) continue;
    ++delivered;
    schedule(now_ + from_seconds(config_.prop_delay) + processing, EventKind::PacketDelivery,
             static_cast<NodeId>(d.recipient + 1), flight);
  }

  nlohmann::json extra = {{"len", flight->bytes.size()},
                          {"delivered", delivered},
                          {"dropped", deliveries.size() - delivered}};
  if (is_beacon) {
    extra["timer_ns"] = timer_at.count();
    log(TraceEvent::BeaconTx, sender, std::nullopt, std::move(extra));
  } else {
    log(TraceEvent::AckTx, sender, addressee, std::move(extra));
  }
}

void Simulator::on_delivery(const SimEvent& ev) {
  const std::size_t i = index(ev.node);
  if (!active_[i]) return;
  const PacketInFlight& flight = *ev.payload;
  const protocol::BeaconPacket pkt = codec::decode_packet(flight.bytes);
  protocol::Node& node = nodes_[i];

  std::optional<protocol::NeighborEntry> before;
  if (const auto* e = node.neighbor(flight.sender)) before = *e;
  const nlohmann::json extra = {{"len", flight.bytes.size()}, {"tx_ns", flight.tx_at.count()}};

  if (pkt.ptype == codec::PacketType::Beacon) {
    log(TraceEvent::BeaconRx, ev.node, flight.sender, extra);
    auto ack = node.on_receive_beacon(pkt, now_);
    log_key_change(ev.node, flight.sender, before ? &*before : nullptr, "responder",
                   flight.exchange_start);
    if (ack) transmit(ev.node, *ack, flight.sender, flight.exchange_start, now_);
  } else {
    log(TraceEvent::AckRx, ev.node, flight.sender, extra);
    node.on_receive_ack(pkt, now_);
    log_key_change(ev.node, flight.sender, before ? &*before : nullptr, "initiator",
                   flight.exchange_start);
  }
}

void Simulator::log_key_change(NodeId id, NodeId peer, const protocol::NeighborEntry* before,
                               const char* role, SimTime exchange_start) {
  const auto* after = nodes_[index(id)].neighbor(peer);
  if (after == nullptr || after->state != protocol::HandshakeState::Established) return;
  if (before != nullptr && before->state == protocol::HandshakeState::Established &&
      before->key == after->key) {
    return;
  }
  log(TraceEvent::KeyEstablished, id, peer,
      {{"role", role}, {"start_ns", exchange_start.count()}, {"key", after->key->to_hex()}});
}

void Simulator::on_sample() {
  std::vector<std::size_t> live;
  std::vector<Vec2> live_pos;
  for (std::size_t i = 0; i < vehicles_.size(); ++i) {
    if (!active_[i]) continue;
    live.push_back(i);
    live_pos.push_back(vehicles_[i].position);
  }
  const auto truth = ground_truth_neighbors(live_pos, config_.radio_range);

  std::uint64_t hits = 0;
  std::uint64_t listed = 0;
  std::uint64_t expected = 0;
  for (std::size_t k = 0; k < live.size(); ++k) {
    std::set<NodeId> truth_ids;
    for (std::size_t j : truth[k]) truth_ids.insert(static_cast<NodeId>(live[j] + 1));
    const auto& table = nodes_[live[k]].neighbors();
    listed += table.size();
    expected += truth_ids.size();
    for (const auto& [peer, entry] : table) hits += truth_ids.count(peer);
  }

  std::size_t mismatches = 0;
  for (std::size_t a = 0; a < nodes_.size(); ++a) {
    for (const auto& [peer, entry] : nodes_[a].neighbors()) {
      if (peer <= a + 1 || !entry.key) continue;
      const auto* back = nodes_[index(peer)].neighbor(static_cast<NodeId>(a + 1));
      if (back != nullptr && back->key && *back->key != *entry.key) ++mismatches;
    }
  }

  TableSample s;
  s.t = now_;
  s.precision = listed == 0 ? 1.0 : static_cast<double>(hits) / static_cast<double>(listed);
  s.recall = expected == 0 ? 1.0 : static_cast<double>(hits) / static_cast<double>(expected);
  s.key_mismatches = mismatches;
  samples_.push_back(s);
}

RouteResult Simulator::route_probe(NodeId src, Vec2 dest) {
  RouteResult result;
  NodeId nearest = 0;
  double best = 0.0;
  for (std::size_t i = 0; i < vehicles_.size(); ++i) {
    if (!active_[i]) continue;
    const double d = distance(vehicles_[i].position, dest);
    if (nearest == 0 || d < best) {
      nearest = static_cast<NodeId>(i + 1);
      best = d;
    }
  }

  const codec::Position target = to_wire(dest);
  NodeId current = src;
  result.hops.push_back(current);
  for (std::size_t step = 0;; ++step) {
    if (current == nearest) {
      result.outcome = RouteOutcome::Arrived;
      break;
    }
    if (step >= config_.n_vehicles) {
      result.outcome = RouteOutcome::LoopGuard;
      break;
    }
    const auto next = nodes_[index(current)].greedy_next_hop(target);
    if (!next) {
      result.outcome = RouteOutcome::LocalMax;
      log(TraceEvent::RouteLocalMax, current, std::nullopt,
          {{"src", src}, {"hops", result.hops.size() - 1}});
      break;
    }
    log(TraceEvent::RouteHop, current, *next, {{"src", src}, {"hop", result.hops.size()}});
    current = *next;
    result.hops.push_back(current);
  }
  result.last = current;
  return result;
}

void Simulator::log(TraceEvent ev, NodeId node, std::optional<NodeId> peer, nlohmann::json extra) {
  TraceRecord r;
  r.t = now_;
  r.ev = ev;
  r.node = node;
  r.peer = peer;
  const Vec2 p = vehicles_[index(node)].position;
  r.x = p.x;
  r.y = p.y;
  r.extra = std::move(extra);
  trace_.append(std::move(r));
}

Metrics compute_metrics(const Trace& trace, const std::vector<TableSample>& samples) {
  Metrics m;
  std::vector<double> latencies;
  for (const auto& r : trace.records()) {
    switch (r.ev) {
      case TraceEvent::BeaconTx:
      case TraceEvent::AckTx:
        (r.ev == TraceEvent::BeaconTx ? m.beacons_sent : m.acks_sent) += 1;
        m.bytes_on_air += r.extra.at("len").get<std::uint64_t>();
        m.deliveries += r.extra.at("delivered").get<std::uint64_t>();
        m.drops += r.extra.at("dropped").get<std::uint64_t>();
        break;
      case TraceEvent::KeyEstablished:
        ++m.handshakes_completed;
        if (r.extra.at("role") == "initiator") {
          const SimTime start{r.extra.at("start_ns").get<std::int64_t>()};
          latencies.push_back(to_seconds(r.t - start));
        }
        break;
      case TraceEvent::NeighborExpired:
        ++m.expiries;
        break;
      default:
        break;
    }
  }
  if (!latencies.empty()) {
    std::sort(latencies.begin(), latencies.end());
    double sum = 0.0;
    for (double l : latencies) sum += l;
    m.mean_handshake_latency = sum / static_cast<double>(latencies.size());
    const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(latencies.size())));
    m.p95_handshake_latency = latencies[rank - 1];
  }
  if (!samples.empty()) {
    double p = 0.0;
    double r = 0.0;
    for (const auto& s : samples) {
      p += s.precision;
      r += s.recall;
      m.precision_min = std::min(m.precision_min, s.precision);
      m.recall_min = std::min(m.recall_min, s.recall);
      m.key_mismatches += s.key_mismatches;
    }
    m.precision = p / static_cast<double>(samples.size());
    m.recall = r / static_cast<double>(samples.size());
  }
  return m;
}

nlohmann::json Metrics::to_json() const {
  nlohmann::json j = {{"beacons_sent", beacons_sent},
                      {"acks_sent", acks_sent},
                      {"handshakes_completed", handshakes_completed},
                      {"precision", precision},
                      {"recall", recall},
                      {"precision_min", precision_min},
                      {"recall_min", recall_min},
                      {"key_mismatches", key_mismatches},
                      {"expiries", expiries},
                      {"bytes_on_air", bytes_on_air},
                      {"deliveries", deliveries},
                      {"drops", drops}};
  j["mean_handshake_latency"] = mean_handshake_latency ? nlohmann::json(*mean_handshake_latency)
                                                       : nlohmann::json(nullptr);
  j["p95_handshake_latency"] = p95_handshake_latency ? nlohmann::json(*p95_handshake_latency)
                                                     : nlohmann::json(nullptr);
  return j;
}

std::pair<Trace, Metrics> run(const SimConfig& config) {
  Simulator sim(config);
  sim.run();
  Metrics m = sim.metrics();
  return {sim.trace(), m};
}

}  // namespace vanet::sim
