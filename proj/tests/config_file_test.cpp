#include <doctest.h>

#include "vanet/bench.hpp"
#include "vanet/config_file.hpp"

using namespace vanet;
using vanet::cli::ConfigFileError;
using vanet::cli::parse_config_string;

TEST_CASE("parse_config defaults and overrides") {
  const sim::SimConfig def = parse_config_string("# only a comment\n\n");
  CHECK(def.n_vehicles == 2);
  CHECK(def.radio_range == 250.0);

  const sim::SimConfig cfg = parse_config_string(R"(
sim.n_vehicles = 3
sim.radio_range = 300   # trailing comment
sim.loss_rate = 0.25
sim.seed = 99
sim.dh_bits = 128
sim.dh_mode = per_node
sim.mobility = random_waypoint
sim.crypto_costs = reference_host
sim.positions = 0 0; 200 0; 400 10.5
sim.halt = 2 5.5
sim.route_probe = 3 1 400 0; 4 3 0 0
node.beacon_interval = 0.5
node.adaptive = true
node.keyed_only_routing = true
)");
  CHECK(cfg.n_vehicles == 3);
  CHECK(cfg.radio_range == 300.0);
  CHECK(cfg.loss_rate == 0.25);
  CHECK(cfg.seed == 99);
  CHECK(cfg.dh_bits == 128);
  CHECK(cfg.dh_mode == protocol::ParamsMode::PerNode);
  CHECK(cfg.mobility == sim::MobilityModel::RandomWaypoint);
  CHECK(cfg.crypto_cost.param_generation == doctest::Approx(3.509800629));
  REQUIRE(cfg.positions.size() == 3);
  CHECK(cfg.positions[2] == sim::Vec2{400.0, 10.5});
  REQUIRE(cfg.halts.size() == 1);
  CHECK(cfg.halts[0].node == 2);
  CHECK(cfg.halts[0].at == 5.5);
  REQUIRE(cfg.route_probes.size() == 2);
  CHECK(cfg.route_probes[1].src == 3);
  CHECK(cfg.node_config.beacon_interval == 0.5);
  CHECK(cfg.node_config.adaptive);
  CHECK(cfg.node_config.keyed_only_routing);
}

TEST_CASE("parse_config errors name the key") {
  const auto key_of = [](const std::string& text) {
    try {
      parse_config_string(text);
    } catch (const ConfigFileError& e) {
      return e.key();
    }
    return std::string("<none>");
  };
  CHECK(key_of("sim.bogus = 1\n") == "sim.bogus");
  CHECK(key_of("sim.loss_rate = lots\n") == "sim.loss_rate");
  CHECK(key_of("sim.seed = 1\nsim.seed = 2\n") == "sim.seed");
  CHECK(key_of("sim.dh_mode = sometimes\n") == "sim.dh_mode");
  CHECK(key_of("sim.positions = 1 2 3\n") == "sim.positions");
  CHECK(key_of("node.adaptive = maybe\n") == "node.adaptive");
  CHECK(key_of("no equals sign\n") != "<none>");
  CHECK(key_of("sim.loss_rate = 2\n") != "<none>");
  CHECK(key_of("sim.n_vehicles = 4\n") == "<none>");
}

TEST_CASE("bench argument checks") {
  CHECK_THROWS_AS(bench::run_bench(8, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(bench::run_bench(64, 0, 1), std::invalid_argument);
  const bench::BenchResult r = bench::run_bench(32, 3, 1);
  CHECK(r.bits == 32);
  CHECK(r.trials == 3);
  CHECK(r.handshake_estimate_ns() ==
        r.param_generation_ns + r.initiator_secret_ns + r.responder_secret_ns);
}
