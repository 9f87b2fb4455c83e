#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "swarmsched/model.hpp"

namespace swarmsched {

// One violated constraint. Indices are -1 when they do not apply.
// constraint is a short label. Route shape: "start_once", "end_once",
// "enters_start", "leaves_end", "entered_twice", "left_twice", "flow",
// "self_loop", "loop". Skills: "no_shared_skill", "uncovered",
// "superfluous". Also "form" for unreadable schedules and "deadlock".
struct Violation {
  std::string constraint;
  int robot = -1;
  int task = -1;
  int skill = -1;
  std::string message;
};

struct CheckResult {
  std::string name;
  std::vector<Violation> violations;

  bool passed() const noexcept { return violations.empty(); }
};

// Outcome of the loop walk for the first failing robot (or valid).
struct LoopCheck {
  bool valid = true;
  int robot = -1;
  int count = 0;    // arcs walked from task 0
  int visited = 0;  // arcs set for that robot
};

// Walks each robot's arcs from task 0 and compares the number of steps
// to m+1 with the number of arcs set. The walk gives up (invalid) on a
// node with zero or several outgoing arcs, or after m+2 steps.
LoopCheck detect_loops(const AssignmentTensor& x);

// Degree and flow constraints on every robot's arcs, then detect_loops.
CheckResult check_route_structure(const AssignmentTensor& x);

// z(k-1, s): attending robots at real task k that offer skill s.
using SkillCountMatrix = Eigen::MatrixXi;
// zb(k-1, s) = 1 iff z(k-1, s) > r(k-1, s).
using ExcessMatrix = Eigen::MatrixXi;

// m x n 0/1 matrix: entry (k-1, i) is 1 iff robot i attends task k.
Eigen::MatrixXi attendance(const Instance& instance, const Schedule& schedule);

struct CoverageCheck {
  CheckResult result;
  SkillCountMatrix z;
};
// Each attending robot shares a skill with the task; every requirement
// is met by the coalition.
CoverageCheck check_skill_coverage(const Instance& instance, const Schedule& schedule);

struct SuperfluousCheck {
  CheckResult result;
  ExcessMatrix zb;
};
// Each attending robot keeps at least one required skill not in excess.
SuperfluousCheck check_no_superfluous(const Instance& instance, const Schedule& schedule,
                                      const SkillCountMatrix& z);
SuperfluousCheck check_no_superfluous(const Instance& instance, const Schedule& schedule);

// Visited real tasks in an order where every route predecessor comes
// first (smallest index among ready tasks). Throws DeadlockError naming a
// cycle of mutually waiting tasks.
std::vector<int> precedence_order(const Instance& instance, const Schedule& schedule);

// Arrival times, task starts and makespan for a structurally valid
// schedule. Tasks are resolved in precedence order; every robot's leg to
// m+1 enters the makespan. Throws DeadlockError on cyclic precedence.
Timing propagate_times(const Instance& instance, const Schedule& schedule,
                       BufferMode mode = BufferMode::Corrected);

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool feasible = false;
  std::optional<Timing> timing;
  std::optional<SkillCountMatrix> z;
  std::optional<ExcessMatrix> zb;

  const CheckResult* find(const std::string& name) const;
  std::size_t violation_count() const;
};

// Runs every check and reports all violations. Never throws for bad
// schedules.
ValidationReport validate(const Instance& instance, const Schedule& schedule,
                          BufferMode mode = BufferMode::Corrected);

}  // namespace swarmsched
