#include "vanet/radio.hpp"

namespace vanet::sim {

std::vector<Delivery> deliver_in_range(std::span<const Vec2> positions,
                                       const std::vector<bool>& active, std::size_t sender,
                                       std::optional<std::size_t> addressee,
                                       double radio_range, double loss_rate, RandomSource& rng) {
  std::vector<Delivery> out;
  auto consider = [&](std::size_t i) {
    if (i == sender || i >= positions.size()) return;
    if (i < active.size() && !active[i]) return;
    if (distance(positions[sender], positions[i]) > radio_range) return;
    const bool dropped = rng.uniform01() < loss_rate;
    out.push_back({i, !dropped});
  };
  if (addressee) {
    consider(*addressee);
  } else {
    for (std::size_t i = 0; i < positions.size(); ++i) consider(i);
  }
  return out;
}

std::vector<std::vector<std::size_t>> ground_truth_neighbors(std::span<const Vec2> positions,
                                                             double radio_range) {
  std::vector<std::vector<std::size_t>> adjacency(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = 0; j < positions.size(); ++j) {
      if (i != j && distance(positions[i], positions[j]) <= radio_range) {
        adjacency[i].push_back(j);
      }
    }
  }
  return adjacency;
}

}  // namespace vanet::sim
