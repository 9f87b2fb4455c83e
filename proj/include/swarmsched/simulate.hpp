#pragma once

#include <cstdint>
#include <vector>

#include "swarmsched/model.hpp"

namespace swarmsched {

// Outcome counts for one traversed leg (robot moving from task to task).
struct LegOutcome {
  int robot = 0;
  int from = 0;
  int to = 0;
  double planned_arrival = 0.0;
  // Leg finished within travel + buffer of its actual departure.
  std::uint64_t on_time = 0;
  // Arrived no later than the planned arrival time (lateness propagates).
  std::uint64_t on_schedule = 0;
};

struct SimulationStats {
  std::uint64_t trials = 0;
  std::vector<LegOutcome> legs;
  double planned_makespan = 0.0;
  double realized_mean = 0.0;
  double realized_stdev = 0.0;
  double realized_min = 0.0;
  double realized_max = 0.0;
  double realized_p50 = 0.0;
  double realized_p95 = 0.0;
  // Fraction of trials whose realized makespan met the planned one.
  double makespan_on_time = 0.0;

  double on_time_fraction(std::size_t leg) const {
    return static_cast<double>(legs[leg].on_time) / static_cast<double>(trials);
  }
  double on_schedule_fraction(std::size_t leg) const {
    return static_cast<double>(legs[leg].on_schedule) / static_cast<double>(trials);
  }
  double min_on_time_fraction() const;
};

// Replays a feasible schedule `trials` times with one Gaussian delay per
// traversed leg. Tasks start when their last robot actually arrives.
SimulationStats simulate_execution(const Instance& instance, const Schedule& schedule,
                                   std::uint64_t trials, std::uint64_t seed,
                                   BufferMode mode = BufferMode::Corrected);

}  // namespace swarmsched
