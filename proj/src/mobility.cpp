#include "vanet/mobility.hpp"

#include <cmath>

namespace vanet::sim {

namespace {

void reflect(double& coord, double& velocity, double extent) {
  while (coord < 0.0 || coord > extent) {
    if (coord < 0.0) {
      coord = -coord;
    } else {
      coord = 2.0 * extent - coord;
    }
    velocity = -velocity;
  }
}

Vec2 random_heading(RandomSource& rng) {
  for (;;) {
    const double u = rng.uniform(-1.0, 1.0);
    const double v = rng.uniform(-1.0, 1.0);
    const double r2 = u * u + v * v;
    if (r2 > 1.0 || r2 < 1e-12) continue;
    const double r = std::sqrt(r2);
    return {u / r, v / r};
  }
}

void head_for_waypoint(Vehicle& vehicle) {
  const double dx = vehicle.waypoint.x - vehicle.position.x;
  const double dy = vehicle.waypoint.y - vehicle.position.y;
  const double d = std::sqrt(dx * dx + dy * dy);
  if (d == 0.0) {
    vehicle.velocity = {};
    return;
  }
  vehicle.velocity = {dx / d * vehicle.speed, dy / d * vehicle.speed};
}

void draw_waypoint(Vehicle& vehicle, const Area& area, const SpeedRange& speeds,
                   RandomSource& rng) {
  vehicle.waypoint = {rng.uniform(0.0, area.width), rng.uniform(0.0, area.height)};
  vehicle.speed = rng.uniform(speeds.min, speeds.max);
  head_for_waypoint(vehicle);
}

}  // namespace

double distance(Vec2 a, Vec2 b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

Vehicle spawn_vehicle(Vec2 position, const Area& area, MobilityModel model,
                      const SpeedRange& speeds, RandomSource& rng) {
  Vehicle v;
  v.position = position;
  if (model == MobilityModel::RandomWaypoint) {
    draw_waypoint(v, area, speeds, rng);
    return v;
  }
  const Vec2 heading = random_heading(rng);
  v.speed = rng.uniform(speeds.min, speeds.max);
  v.velocity = {heading.x * v.speed, heading.y * v.speed};
  v.waypoint = position;
  return v;
}

void mobility_update(Vehicle& vehicle, double dt, const Area& area, MobilityModel model,
                     const SpeedRange& speeds, RandomSource& rng) {
  if (model == MobilityModel::ConstantVelocity) {
    vehicle.position.x += vehicle.velocity.x * dt;
    vehicle.position.y += vehicle.velocity.y * dt;
    reflect(vehicle.position.x, vehicle.velocity.x, area.width);
    reflect(vehicle.position.y, vehicle.velocity.y, area.height);
    return;
  }

  const double step = vehicle.speed * dt;
  if (step <= 0.0) return;
  if (distance(vehicle.position, vehicle.waypoint) <= step) {
    vehicle.position = vehicle.waypoint;
    draw_waypoint(vehicle, area, speeds, rng);
    return;
  }
  vehicle.position.x += vehicle.velocity.x * dt;
  vehicle.position.y += vehicle.velocity.y * dt;
}

}  // namespace vanet::sim
