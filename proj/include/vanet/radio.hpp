#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "vanet/mobility.hpp"
#include "vanet/random_source.hpp"

namespace vanet::sim {

struct Delivery {
  std::size_t recipient;  // index into the position list
  bool delivered;

  friend bool operator==(const Delivery&, const Delivery&) = default;
};

/// Unit-disk delivery from `sender`. Broadcast (no addressee) reaches every
/// other index within `radio_range` (closed disk); unicast reaches only the
/// addressee, and only when in range. Each candidate, in index order,
/// consumes one draw from `rng` and is dropped when it falls below loss_rate.
/// Entries of `active` that are false are never candidates.
std::vector<Delivery> deliver_in_range(std::span<const Vec2> positions,
                                       const std::vector<bool>& active, std::size_t sender,
                                       std::optional<std::size_t> addressee,
                                       double radio_range, double loss_rate, RandomSource& rng);

/// Brute-force O(n^2) adjacency: i~j iff i != j and distance <= range.
std::vector<std::vector<std::size_t>> ground_truth_neighbors(std::span<const Vec2> positions,
                                                             double radio_range);

}  // namespace vanet::sim
