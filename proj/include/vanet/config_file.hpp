#pragma once

#include <istream>
#include <stdexcept>
#include <string>

#include "vanet/sim_engine.hpp"

namespace vanet::cli {

/// Bad or unknown key; `key()` names it for the user.
class ConfigFileError : public std::runtime_error {
 public:
  ConfigFileError(std::string key, const std::string& what)
      : std::runtime_error(what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Parses `key = value` lines (`#` starts a comment) on top of the defaults.
/// Keys are dotted SimConfig / NodeConfig field names, e.g. `sim.loss_rate`,
/// `node.beacon_interval`. Unknown keys are an error.
sim::SimConfig parse_config(std::istream& in);
sim::SimConfig parse_config_string(const std::string& text);

}  // namespace vanet::cli
