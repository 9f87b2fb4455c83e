#include "swarmsched/simulate.hpp"

#include <algorithm>
#include <cmath>

#include "swarmsched/errors.hpp"
#include "swarmsched/validator.hpp"

namespace swarmsched {

double SimulationStats::min_on_time_fraction() const {
  double lowest = 1.0;
  for (std::size_t p = 0; p < legs.size(); ++p) lowest = std::min(lowest, on_time_fraction(p));
  return lowest;
}

SimulationStats simulate_execution(const Instance& instance, const Schedule& schedule,
                                   std::uint64_t trials, std::uint64_t seed, BufferMode mode) {
  if (trials == 0) throw DomainError("simulate_execution: trials must be positive");
  const int m = instance.tasks(), n = instance.robots(), end = m + 1;
  const Timing plan = propagate_times(instance, schedule, mode);
  const std::vector<int> order = precedence_order(instance, schedule);
  const LegCosts costs(instance, mode);

  // Legs grouped by destination in replay order: real tasks, then the end.
  struct Leg {
    int robot, from, to;
    double travel, buffer;
    DelayParams delay;
  };
  std::vector<std::vector<std::size_t>> into(end + 1);
  std::vector<Leg> legs;
  Eigen::MatrixXi previous = Eigen::MatrixXi::Constant(n, end + 1, -1);
  for (int i = 0; i < n; ++i) {
    int j = 0;
    auto add = [&](int k) {
      into[k].push_back(legs.size());
      legs.push_back({i, j, k, instance.travel(i, j, k), costs.buffer(i, j, k),
                      instance.delay(i, j, k)});
      j = k;
    };
    for (int k : schedule.routes[i]) add(k);
    add(end);
  }

  SimulationStats stats;
  stats.trials = trials;
  stats.planned_makespan = plan.makespan;
  for (const Leg& leg : legs)
    stats.legs.push_back({leg.robot, leg.from, leg.to, plan.arrivals(leg.robot, leg.to), 0, 0});

  Rng rng(seed);
  std::vector<double> realized(trials);
  Eigen::VectorXd start = Eigen::VectorXd::Zero(end + 1);
  std::vector<int> replay = order;
  replay.push_back(end);

  for (std::uint64_t t = 0; t < trials; ++t) {
    for (int k : replay) {
      double latest = 0.0;
      bool first = true;
      for (std::size_t p : into[k]) {
        const Leg& leg = legs[p];
        const double delay = sample_delay(leg.delay, rng);
        const double arrival =
            start(leg.from) + instance.exec_time(leg.from) + leg.travel + delay;
        if (delay <= leg.buffer + kTimeTolerance) ++stats.legs[p].on_time;
        if (arrival <= stats.legs[p].planned_arrival + kTimeTolerance) ++stats.legs[p].on_schedule;
        latest = first ? arrival : std::max(latest, arrival);
        first = false;
      }
      start(k) = latest;
    }
    realized[t] = start(end);
  }

  const Eigen::Map<const Eigen::VectorXd> samples(realized.data(),
                                                  static_cast<Eigen::Index>(realized.size()));
  stats.realized_mean = samples.mean();
  stats.realized_stdev =
      trials > 1 ? std::sqrt((samples.array() - stats.realized_mean).square().sum() /
                             static_cast<double>(trials - 1))
                 : 0.0;
  stats.makespan_on_time =
      static_cast<double>((samples.array() <= plan.makespan + kTimeTolerance).count()) /
      static_cast<double>(trials);
  std::sort(realized.begin(), realized.end());
  auto quantile = [&](double q) {
    const auto idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(trials))) - 1;
    return realized[std::min<std::size_t>(idx, trials - 1)];
  };
  stats.realized_min = realized.front();
  stats.realized_max = realized.back();
  stats.realized_p50 = quantile(0.5);
  stats.realized_p95 = quantile(0.95);
  return stats;
}

}  // namespace swarmsched
