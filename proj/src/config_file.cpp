#include "vanet/config_file.hpp"

#include <charconv>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace vanet::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, sep)) {
    part = trim(part);
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigFileError(key, "config key '" + key + "': '" + v + "' is not a number");
  }
  return out;
}

std::uint64_t to_uint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigFileError(key, "config key '" + key + "': '" + v +
                                   "' is not a non-negative integer");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigFileError(key, "config key '" + key + "': '" + v + "' is not a boolean");
}

[[noreturn]] void bad_value(const std::string& key, const std::string& v, const char* expected) {
  throw ConfigFileError(key, "config key '" + key + "': '" + v + "' (expected " + expected + ")");
}

using Setter = std::function<void(sim::SimConfig&, const std::string& key, const std::string& v)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"sim.n_vehicles",
       [](auto& c, auto& k, auto& v) { c.n_vehicles = static_cast<std::uint32_t>(to_uint(k, v)); }},
      {"sim.area_width", [](auto& c, auto& k, auto& v) { c.area.width = to_double(k, v); }},
      {"sim.area_height", [](auto& c, auto& k, auto& v) { c.area.height = to_double(k, v); }},
      {"sim.radio_range", [](auto& c, auto& k, auto& v) { c.radio_range = to_double(k, v); }},
      {"sim.speed_min", [](auto& c, auto& k, auto& v) { c.speed_range.min = to_double(k, v); }},
      {"sim.speed_max", [](auto& c, auto& k, auto& v) { c.speed_range.max = to_double(k, v); }},
      {"sim.mobility",
       [](auto& c, auto& k, auto& v) {
         if (v == "constant_velocity") {
           c.mobility = sim::MobilityModel::ConstantVelocity;
         } else if (v == "random_waypoint") {
           c.mobility = sim::MobilityModel::RandomWaypoint;
         } else {
           bad_value(k, v, "constant_velocity or random_waypoint");
         }
       }},
      {"sim.duration", [](auto& c, auto& k, auto& v) { c.duration = to_double(k, v); }},
      {"sim.loss_rate", [](auto& c, auto& k, auto& v) { c.loss_rate = to_double(k, v); }},
      {"sim.prop_delay", [](auto& c, auto& k, auto& v) { c.prop_delay = to_double(k, v); }},
      {"sim.seed", [](auto& c, auto& k, auto& v) { c.seed = to_uint(k, v); }},
      {"sim.dh_bits", [](auto& c, auto& k, auto& v) { c.dh_bits = to_uint(k, v); }},
      {"sim.dh_mode",
       [](auto& c, auto& k, auto& v) {
         if (v == "global") {
           c.dh_mode = protocol::ParamsMode::Global;
         } else if (v == "per_node") {
           c.dh_mode = protocol::ParamsMode::PerNode;
         } else {
           bad_value(k, v, "global or per_node");
         }
       }},
      {"sim.crypto_costs",
       [](auto& c, auto& k, auto& v) {
         if (v == "none") {
           c.crypto_cost = sim::CryptoCost{};
         } else if (v == "reference_host") {
           c.crypto_cost = sim::CryptoCost::reference_host();
         } else {
           bad_value(k, v, "none or reference_host");
         }
       }},
      {"sim.cost_param_generation",
       [](auto& c, auto& k, auto& v) { c.crypto_cost.param_generation = to_double(k, v); }},
      {"sim.cost_initiator_secret",
       [](auto& c, auto& k, auto& v) { c.crypto_cost.initiator_secret = to_double(k, v); }},
      {"sim.cost_responder_secret",
       [](auto& c, auto& k, auto& v) { c.crypto_cost.responder_secret = to_double(k, v); }},
      {"sim.mobility_tick", [](auto& c, auto& k, auto& v) { c.mobility_tick = to_double(k, v); }},
      {"sim.positions",
       [](auto& c, auto& k, auto& v) {
         c.positions.clear();
         for (const auto& item : split(v, ';')) {
           const auto xy = words(item);
           if (xy.size() != 2) bad_value(k, item, "'x y' pairs separated by ';'");
           c.positions.push_back({to_double(k, xy[0]), to_double(k, xy[1])});
         }
       }},
      {"sim.halt",
       [](auto& c, auto& k, auto& v) {
         c.halts.clear();
         for (const auto& item : split(v, ';')) {
           const auto f = words(item);
           if (f.size() != 2) bad_value(k, item, "'node time' pairs separated by ';'");
           c.halts.push_back({static_cast<protocol::NodeId>(to_uint(k, f[0])), to_double(k, f[1])});
         }
       }},
      {"sim.route_probe",
       [](auto& c, auto& k, auto& v) {
         c.route_probes.clear();
         for (const auto& item : split(v, ';')) {
           const auto f = words(item);
           if (f.size() != 4) bad_value(k, item, "'time src x y' groups separated by ';'");
           c.route_probes.push_back({to_double(k, f[0]),
                                     static_cast<protocol::NodeId>(to_uint(k, f[1])),
                                     {to_double(k, f[2]), to_double(k, f[3])}});
         }
       }},
      {"node.beacon_interval",
       [](auto& c, auto& k, auto& v) { c.node_config.beacon_interval = to_double(k, v); }},
      {"node.expiry_multiplier",
       [](auto& c, auto& k, auto& v) { c.node_config.expiry_multiplier = to_double(k, v); }},
      {"node.adaptive", [](auto& c, auto& k, auto& v) { c.node_config.adaptive = to_bool(k, v); }},
      {"node.target_degree",
       [](auto& c, auto& k, auto& v) {
         c.node_config.target_degree = static_cast<std::uint32_t>(to_uint(k, v));
       }},
      {"node.adapt_gain",
       [](auto& c, auto& k, auto& v) { c.node_config.adapt_gain = to_double(k, v); }},
      {"node.interval_min",
       [](auto& c, auto& k, auto& v) { c.node_config.interval_min = to_double(k, v); }},
      {"node.interval_max",
       [](auto& c, auto& k, auto& v) { c.node_config.interval_max = to_double(k, v); }},
      {"node.keyed_only_routing",
       [](auto& c, auto& k, auto& v) { c.node_config.keyed_only_routing = to_bool(k, v); }},
  };
  return table;
}

// Maps a validation message back to the config key it names.
std::string key_in_message(const std::string& message) {
  for (const auto& [key, setter] : setters()) {
    if (message.find(key) != std::string::npos) return key;
  }
  for (const char* alias : {"sim.cost_", "sim.halt", "sim.route_probe", "sim.speed_"}) {
    if (message.find(alias) != std::string::npos) return alias;
  }
  return "sim";
}

}  // namespace

sim::SimConfig parse_config(std::istream& in) {
  sim::SimConfig config;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigFileError(line, "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) {
      throw ConfigFileError(key, "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    if (!seen.insert(key).second) {
      throw ConfigFileError(key, "line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
    it->second(config, key, value);
  }
  try {
    config.validate();
  } catch (const sim::ConfigError& e) {
    throw ConfigFileError(key_in_message(e.what()), e.what());
  }
  return config;
}

sim::SimConfig parse_config_string(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

}  // namespace vanet::cli
