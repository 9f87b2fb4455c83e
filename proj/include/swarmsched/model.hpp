#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "swarmsched/stochastic.hpp"

namespace swarmsched {

// Absolute tolerance for every comparison between times.
inline constexpr double kTimeTolerance = 1e-9;

// Fixed-width bit vector over skill indices 0..width-1. Houses one row of
// the robot skill matrix Q or the task requirement matrix R.
class SkillSet {
 public:
  SkillSet() = default;
  explicit SkillSet(std::size_t width);

  // From a 0/1 row; any nonzero entry sets the bit.
  static SkillSet from_row(std::span<const int> row);

  std::size_t width() const noexcept { return width_; }
  bool test(std::size_t s) const;
  void set(std::size_t s, bool value = true);
  void reset() noexcept;

  std::size_t count() const noexcept;
  bool any() const noexcept;
  bool none() const noexcept { return !any(); }

  // |this & other| without materialising the intersection.
  std::size_t overlap(const SkillSet& other) const noexcept;
  bool is_subset_of(const SkillSet& other) const noexcept;

  SkillSet& operator&=(const SkillSet& other);
  SkillSet& operator|=(const SkillSet& other);
  // Clears every bit set in other.
  SkillSet& subtract(const SkillSet& other);

  std::vector<int> to_row() const;
  std::vector<int> indices() const;

  friend SkillSet operator&(SkillSet a, const SkillSet& b) { return a &= b; }
  friend SkillSet operator|(SkillSet a, const SkillSet& b) { return a |= b; }
  friend bool operator==(const SkillSet&, const SkillSet&) = default;

 private:
  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

// Per-leg table laid out like the travel data: one shared task-to-task
// matrix plus per-robot start and end legs. Real tasks are 1-based at the
// accessor; storage is 0-based.
struct LegTable {
  Eigen::MatrixXd task_to_task;  // m x m
  Eigen::MatrixXd start_legs;    // n x m
  Eigen::MatrixXd end_legs;      // n x m
  Eigen::VectorXd start_to_end;  // n

  static LegTable zeros(int n, int m);

  // Value for robot i moving from task j to task k, j,k in 0..m+1.
  // Self-transitions, legs into 0 and legs out of m+1 return 0.
  double operator()(int i, int j, int k) const;

  int tasks() const { return static_cast<int>(task_to_task.rows()); }
  int robots() const { return static_cast<int>(start_legs.rows()); }

  friend bool operator==(const LegTable& a, const LegTable& b);
};

struct Positions {
  Eigen::Matrix2Xd tasks;   // 2 x m
  Eigen::Matrix2Xd starts;  // 2 x n
  Eigen::Vector2d end = Eigen::Vector2d::Zero();

  friend bool operator==(const Positions& a, const Positions& b) {
    return a.tasks == b.tasks && a.starts == b.starts && a.end == b.end;
  }
};

// Raw problem data, checked when wrapped in an Instance.
struct InstanceData {
  int l = 0;
  int m = 0;
  int n = 0;
  std::vector<SkillSet> robot_skills;       // n rows of Q
  std::vector<SkillSet> task_requirements;  // m rows of R, task k at k-1
  Eigen::VectorXd exec_times;               // m
  LegTable travel;
  LegTable mu;
  LegTable sigma;
  double epsilon = 0.95;
  std::optional<Positions> positions;
};

// Immutable problem statement. Construction enforces:
//  - every robot offers between 1 and floor(l/2) skills,
//  - the robot pool covers every required skill,
//  - every task requires at least one skill,
//  - times, mu and sigma are finite and nonnegative, epsilon in (0, 1).
class Instance {
 public:
  explicit Instance(InstanceData data);

  int skills() const noexcept { return data_.l; }
  int tasks() const noexcept { return data_.m; }
  int robots() const noexcept { return data_.n; }
  int end_task() const noexcept { return data_.m + 1; }

  const SkillSet& robot_skills(int i) const { return data_.robot_skills[i]; }
  // k in 1..m
  const SkillSet& requirement(int k) const {
    return data_.task_requirements[k - 1];
  }
  // Zero for the virtual tasks 0 and m+1.
  double exec_time(int k) const;
  double travel(int i, int j, int k) const { return data_.travel(i, j, k); }
  DelayParams delay(int i, int j, int k) const {
    return {data_.mu(i, j, k), data_.sigma(i, j, k)};
  }
  double epsilon() const noexcept { return data_.epsilon; }

  // Q (n x l) and R (m x l) as dense 0/1 matrices.
  Eigen::MatrixXi q_matrix() const;
  Eigen::MatrixXi r_matrix() const;

  const InstanceData& data() const noexcept { return data_; }

 private:
  InstanceData data_;
};

// Travel plus stochastic buffer per leg for one buffer mode.
class LegCosts {
 public:
  LegCosts(const Instance& instance, BufferMode mode);

  double buffer(int i, int j, int k) const;
  double leg(int i, int j, int k) const {
    return instance_->travel(i, j, k) + buffer(i, j, k);
  }
  BufferMode mode() const noexcept { return mode_; }
  double quantile() const noexcept { return z_; }

 private:
  const Instance* instance_;
  BufferMode mode_;
  double z_;
};

// Per-robot ordered routes over real tasks 1..m. The virtual start 0 and
// end m+1 are implicit.
struct Schedule {
  std::vector<std::vector<int>> routes;

  static Schedule empty(int robots) {
    return Schedule{std::vector<std::vector<int>>(robots)};
  }
  friend bool operator==(const Schedule&, const Schedule&) = default;
};

using ArcMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

// Binary tensor x[i][j][k] = 1 iff robot i attends k right after j.
class AssignmentTensor {
 public:
  AssignmentTensor(int robots, int tasks);

  int robots() const noexcept { return static_cast<int>(arcs_.size()); }
  int tasks() const noexcept { return m_; }
  int end_task() const noexcept { return m_ + 1; }

  std::uint8_t operator()(int i, int j, int k) const { return arcs_[i](j, k); }
  std::uint8_t& operator()(int i, int j, int k) { return arcs_[i](j, k); }
  const ArcMatrix& robot(int i) const { return arcs_[i]; }
  ArcMatrix& robot(int i) { return arcs_[i]; }

  friend bool operator==(const AssignmentTensor& a, const AssignmentTensor& b) {
    return a.m_ == b.m_ && a.arcs_ == b.arcs_;
  }

 private:
  int m_;
  std::vector<ArcMatrix> arcs_;
};

// Arrival matrix Y, task start times Y^max and makespan.
struct Timing {
  Eigen::MatrixXd arrivals;  // n x (m+2), 0 where not visited
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> visited;  // n x (m+2)
  Eigen::VectorXd task_starts;  // m+2
  double makespan = 0.0;
};

// Throws MalformedSchedule on wrong route count, out-of-range or repeated
// tasks.
AssignmentTensor schedule_to_tensor(const Schedule& schedule,
                                    const Instance& instance);
AssignmentTensor schedule_to_tensor(const Schedule& schedule, int tasks);

// Inverse of schedule_to_tensor. Throws NotAPath naming the first robot
// whose arcs are not exactly one simple 0 -> m+1 path.
Schedule tensor_to_schedule(const AssignmentTensor& x);

// Robots whose route contains task k.
std::set<int> coalition_of(const Schedule& schedule, int task);

}  // namespace swarmsched
