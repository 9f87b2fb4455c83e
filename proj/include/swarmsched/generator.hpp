#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "swarmsched/model.hpp"

namespace swarmsched {

// Random instance protocol. Defaults:
// 200 x 200 area centred on the origin, execution times in [0, 100],
// robot starts on a radius-15 arc, mu at 10% of travel time, sigma a
// uniform [0.05, 0.5] fraction of mu, epsilon 0.95.
struct GeneratorConfig {
  int l = 2;
  int m = 8;
  int n = 4;
  double area_side = 200.0;
  double exec_min = 0.0;
  double exec_max = 100.0;
  double start_radius = 15.0;
  double mu_fraction = 0.10;
  double sigma_fraction_min = 0.05;
  double sigma_fraction_max = 0.50;
  double epsilon = 0.95;
  std::uint64_t seed = 0;
  // Place starts at 2*i*pi/n instead of i*pi/n.
  bool full_circle = false;
  int max_tries = 10'000;
};

// (r sin(i pi / n), r cos(i pi / n)); 2 i pi / n with full_circle.
Eigen::Vector2d robot_start(int robot, int robots, double radius, bool full_circle = false);

// Deterministic under config.seed. Robot skill sets are resampled until
// every skill is offered by some robot; throws GenerationError after
// max_tries attempts.
Instance generate_instance(const GeneratorConfig& config);

}  // namespace swarmsched
