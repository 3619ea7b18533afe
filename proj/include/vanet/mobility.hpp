#pragma once

#include "vanet/random_source.hpp"

namespace vanet::sim {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

double distance(Vec2 a, Vec2 b);

enum class MobilityModel { ConstantVelocity, RandomWaypoint };

struct Area {
  double width = 1000.0;
  double height = 1000.0;
};

struct SpeedRange {
  double min = 0.0;
  double max = 0.0;
};

struct Vehicle {
  Vec2 position;
  Vec2 velocity;
  Vec2 waypoint;  // random waypoint only
  double speed = 0.0;
};

/// Advances one vehicle by dt seconds.
///
/// Constant velocity reflects elastically off the area borders: a
/// coordinate that overshoots a wall by d ends up d inside it and the
/// matching velocity component flips sign (995 + 10 against a wall at
/// 1000 lands at 2*1000 - 1005 = 995).
///
/// Random waypoint walks straight toward the waypoint; on arrival it
/// draws a new waypoint and speed from `rng`.
void mobility_update(Vehicle& vehicle, double dt, const Area& area, MobilityModel model,
                     const SpeedRange& speeds, RandomSource& rng);

/// Initial kinematic state: uniform heading (no trig), speed uniform in range.
Vehicle spawn_vehicle(Vec2 position, const Area& area, MobilityModel model,
                      const SpeedRange& speeds, RandomSource& rng);

}  // namespace vanet::sim
