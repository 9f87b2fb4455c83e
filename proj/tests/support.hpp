#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "swarmsched/model.hpp"

namespace testing {

using namespace swarmsched;

SkillSet bits(int width, std::initializer_list<int> on);

// Hand-built instances. Every table starts at zero; buffers are set
// directly through mu (sigma stays 0, so buffer == mu in any mode).
struct Builder {
  InstanceData data;

  Builder(int l, int n, int m);
  Builder& robot(int i, std::initializer_list<int> skills);
  Builder& task(int k, std::initializer_list<int> skills, double exec);
  // Symmetric task-to-task leg, k1, k2 in 1..m.
  Builder& between(int k1, int k2, double travel, double buffer = 0.0);
  Builder& directed(int k1, int k2, double travel, double buffer = 0.0);
  Builder& from_start(int i, int k, double travel, double buffer = 0.0);
  Builder& to_end(int i, int k, double travel, double buffer = 0.0);
  Builder& start_to_end(int i, double travel, double buffer = 0.0);
  Instance build() const { return Instance(data); }
};

// Two robots A (0), B (1); task 1 needs s0, task 2 needs s0+s1.
// Routes A:[1,2], B:[2] give y_A1 = 6, y_A2 = 21, y_B2 = 10,
// start_2 = 21 and makespan 31.
Instance two_robot_example();

// --- oracles, written without the library's search or timing code ---

// Bisection on erfc for the standard normal quantile.
double bisect_quantile(double p);

// True iff every robot's arcs are exactly one simple 0 -> m+1 path,
// found by enumerating all simple paths over the set arcs.
bool path_decomposition_oracle(const AssignmentTensor& x);

struct Replay {
  Eigen::MatrixXd arrivals;  // n x (m+2)
  Eigen::VectorXd starts;    // m+2
  double makespan = 0.0;
};
// Event-driven execution: a task fires once every robot routed through
// it has arrived. nullopt when robots wait on each other forever.
std::optional<Replay> event_replay(const Instance& instance, const Schedule& schedule,
                                   BufferMode mode = BufferMode::Corrected);

// Held-Karp over the given tasks for one robot, including the end leg.
double held_karp(const Instance& instance, int robot, const std::vector<int>& tasks,
                 BufferMode mode = BufferMode::Corrected);

// Every robot subset covering task k where each member holds a required
// skill nobody else in the subset holds. Sorted by size then lexically.
std::vector<std::vector<int>> exhaustive_coalitions(const Instance& instance, int task);

// Random routes: each task goes to a random nonempty subset of robots,
// routes are shuffled.
Schedule random_schedule(int robots, int tasks, std::uint64_t seed);

}  // namespace testing
