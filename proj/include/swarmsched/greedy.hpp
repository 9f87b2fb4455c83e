#pragma once

#include <vector>

#include "swarmsched/model.hpp"

namespace swarmsched {

// Mutable state of the greedy solver.
class GreedyState {
 public:
  explicit GreedyState(const Instance& instance);

  const SkillSet& remaining(int task) const { return remaining_[task - 1]; }
  bool committed(int task) const { return committed_[task - 1]; }
  int location(int robot) const { return location_[robot]; }
  double task_start(int task) const { return task_starts_(task); }
  const Schedule& schedule() const noexcept { return schedule_; }
  int committed_count() const noexcept { return committed_count_; }

  // Marks the robot's skills as provided at task.
  void offer(int robot, int task, const Instance& instance);
  // Appends task to the robot's route with the given arrival.
  void attend(int robot, int task, double arrival);
  // Fixes the start time of a task whose requirements are met.
  void commit(int task, double start);

  Timing finish(const Instance& instance, const LegCosts& costs) const;

 private:
  std::vector<SkillSet> remaining_;
  std::vector<bool> committed_;
  std::vector<int> location_;
  Eigen::VectorXd task_starts_;
  Eigen::MatrixXd arrivals_;
  Schedule schedule_;
  int committed_count_ = 0;
};

// Number of still-unoffered skills of task the robot would bring.
int contribution(const Instance& instance, int robot, int task, const GreedyState& state);

// Start of the robot's current task plus its execution, travel and buffer.
double estimated_arrival(const Instance& instance, const LegCosts& costs, int robot,
                         int task, const GreedyState& state);

struct GreedyResult {
  Schedule schedule;
  Timing timing;
  int iterations = 0;  // outer iterations, one per committed task
};

// Repeatedly picks the robot-task pair with the largest contribution
// (earliest arrival on ties), completes that task's coalition the same
// way and commits its start. Robots left with no required skill of their
// own are dropped from the coalition before the commit.
GreedyResult solve_greedy(const Instance& instance,
                          BufferMode mode = BufferMode::Corrected);

}  // namespace swarmsched
