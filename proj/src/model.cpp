#include "swarmsched/model.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "swarmsched/errors.hpp"

namespace swarmsched {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t width) {
  return (width + kWordBits - 1) / kWordBits;
}

bool finite_nonnegative(const Eigen::MatrixXd& values) {
  return values.allFinite() && (values.size() == 0 || values.minCoeff() >= 0.0);
}

void check_leg_table(const LegTable& table, int n, int m, const char* name) {
  auto fail = [&](const std::string& what) {
    throw InstanceError(std::string(name) + ": " + what);
  };
  if (table.task_to_task.rows() != m || table.task_to_task.cols() != m)
    fail("task_to_task must be m x m");
  if (table.start_legs.rows() != n || table.start_legs.cols() != m)
    fail("start_legs must be n x m");
  if (table.end_legs.rows() != n || table.end_legs.cols() != m)
    fail("end_legs must be n x m");
  if (table.start_to_end.size() != n) fail("start_to_end must have n entries");
  if (!finite_nonnegative(table.task_to_task) ||
      !finite_nonnegative(table.start_legs) ||
      !finite_nonnegative(table.end_legs) ||
      !finite_nonnegative(table.start_to_end))
    fail("entries must be finite and nonnegative");
}

}  // namespace

// SkillSet

SkillSet::SkillSet(std::size_t width) : width_(width), words_(word_count(width), 0) {}

SkillSet SkillSet::from_row(std::span<const int> row) {
  SkillSet out(row.size());
  for (std::size_t s = 0; s < row.size(); ++s)
    if (row[s] != 0) out.set(s);
  return out;
}

bool SkillSet::test(std::size_t s) const {
  if (s >= width_) return false;
  return (words_[s / kWordBits] >> (s % kWordBits)) & 1u;
}

void SkillSet::set(std::size_t s, bool value) {
  if (s >= width_) throw std::out_of_range("skill index beyond set width");
  const std::uint64_t mask = std::uint64_t{1} << (s % kWordBits);
  if (value)
    words_[s / kWordBits] |= mask;
  else
    words_[s / kWordBits] &= ~mask;
}

void SkillSet::reset() noexcept {
  for (auto& w : words_) w = 0;
}

std::size_t SkillSet::count() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) total += std::popcount(w);
  return total;
}

bool SkillSet::any() const noexcept {
  for (auto w : words_)
    if (w != 0) return true;
  return false;
}

std::size_t SkillSet::overlap(const SkillSet& other) const noexcept {
  std::size_t total = 0;
  const std::size_t words = std::min(words_.size(), other.words_.size());
  for (std::size_t w = 0; w < words; ++w)
    total += std::popcount(words_[w] & other.words_[w]);
  return total;
}

bool SkillSet::is_subset_of(const SkillSet& other) const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    const std::uint64_t theirs = w < other.words_.size() ? other.words_[w] : 0;
    if (words_[w] & ~theirs) return false;
  }
  return true;
}

SkillSet& SkillSet::operator&=(const SkillSet& other) {
  for (std::size_t w = 0; w < words_.size(); ++w)
    words_[w] &= w < other.words_.size() ? other.words_[w] : 0;
  return *this;
}

SkillSet& SkillSet::operator|=(const SkillSet& other) {
  if (other.width_ > width_) {
    width_ = other.width_;
    words_.resize(word_count(width_), 0);
  }
  for (std::size_t w = 0; w < other.words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

SkillSet& SkillSet::subtract(const SkillSet& other) {
  const std::size_t words = std::min(words_.size(), other.words_.size());
  for (std::size_t w = 0; w < words; ++w) words_[w] &= ~other.words_[w];
  return *this;
}

std::vector<int> SkillSet::to_row() const {
  std::vector<int> row(width_, 0);
  for (std::size_t s = 0; s < width_; ++s) row[s] = test(s) ? 1 : 0;
  return row;
}

std::vector<int> SkillSet::indices() const {
  std::vector<int> out;
  for (std::size_t s = 0; s < width_; ++s)
    if (test(s)) out.push_back(static_cast<int>(s));
  return out;
}

// LegTable

LegTable LegTable::zeros(int n, int m) {
  return LegTable{Eigen::MatrixXd::Zero(m, m), Eigen::MatrixXd::Zero(n, m),
                  Eigen::MatrixXd::Zero(n, m), Eigen::VectorXd::Zero(n)};
}

double LegTable::operator()(int i, int j, int k) const {
  const int m = tasks();
  if (j == k || k == 0 || j == m + 1) return 0.0;
  if (j == 0) return k == m + 1 ? start_to_end(i) : start_legs(i, k - 1);
  if (k == m + 1) return end_legs(i, j - 1);
  return task_to_task(j - 1, k - 1);
}

bool operator==(const LegTable& a, const LegTable& b) {
  return a.task_to_task == b.task_to_task && a.start_legs == b.start_legs &&
         a.end_legs == b.end_legs && a.start_to_end == b.start_to_end;
}

// Instance

Instance::Instance(InstanceData data) : data_(std::move(data)) {
  const int l = data_.l, m = data_.m, n = data_.n;
  if (l < 1 || m < 0 || n < 1)
    throw InstanceError("need l >= 1, m >= 0, n >= 1");
  if (static_cast<int>(data_.robot_skills.size()) != n)
    throw InstanceError("Q must have n rows");
  if (static_cast<int>(data_.task_requirements.size()) != m)
    throw InstanceError("R must have m rows");

  const std::size_t max_skills = static_cast<std::size_t>(l / 2);
  SkillSet pool(l);
  for (int i = 0; i < n; ++i) {
    const SkillSet& q = data_.robot_skills[i];
    if (q.width() != static_cast<std::size_t>(l))
      throw InstanceError("robot " + std::to_string(i) + ": skill row width differs from l");
    const std::size_t c = q.count();
    if (c < 1 || c > max_skills)
      throw InstanceError("robot " + std::to_string(i) + " offers " + std::to_string(c) +
                          " skills; allowed range is [1, " + std::to_string(max_skills) + "]");
    pool |= q;
  }
  for (int k = 1; k <= m; ++k) {
    const SkillSet& r = data_.task_requirements[k - 1];
    if (r.width() != static_cast<std::size_t>(l))
      throw InstanceError("task " + std::to_string(k) + ": requirement row width differs from l");
    if (r.none()) throw InstanceError("task " + std::to_string(k) + " requires no skill");
    if (!r.is_subset_of(pool))
      throw InstanceError("task " + std::to_string(k) +
                          " requires a skill no robot offers");
  }

  if (data_.exec_times.size() != m) throw InstanceError("exec_times must have m entries");
  if (!finite_nonnegative(data_.exec_times))
    throw InstanceError("exec_times must be finite and nonnegative");
  check_leg_table(data_.travel, n, m, "travel");
  check_leg_table(data_.mu, n, m, "mu");
  check_leg_table(data_.sigma, n, m, "sigma");
  if (!(data_.epsilon > 0.0 && data_.epsilon < 1.0))
    throw InstanceError("epsilon must lie strictly inside (0, 1)");
  if (data_.positions) {
    if (data_.positions->tasks.cols() != m || data_.positions->starts.cols() != n)
      throw InstanceError("positions must list m tasks and n starts");
  }
}

double Instance::exec_time(int k) const {
  if (k <= 0 || k > data_.m) return 0.0;
  return data_.exec_times(k - 1);
}

Eigen::MatrixXi Instance::q_matrix() const {
  Eigen::MatrixXi q = Eigen::MatrixXi::Zero(data_.n, data_.l);
  for (int i = 0; i < data_.n; ++i)
    for (int s : data_.robot_skills[i].indices()) q(i, s) = 1;
  return q;
}

Eigen::MatrixXi Instance::r_matrix() const {
  Eigen::MatrixXi r = Eigen::MatrixXi::Zero(data_.m, data_.l);
  for (int k = 0; k < data_.m; ++k)
    for (int s : data_.task_requirements[k].indices()) r(k, s) = 1;
  return r;
}

// LegCosts

LegCosts::LegCosts(const Instance& instance, BufferMode mode)
    : instance_(&instance), mode_(mode), z_(normal_quantile(instance.epsilon())) {}

double LegCosts::buffer(int i, int j, int k) const {
  if (j == k || k == 0 || j == instance_->end_task()) return 0.0;
  return buffer_from_quantile(instance_->delay(i, j, k), z_, mode_);
}

// AssignmentTensor

AssignmentTensor::AssignmentTensor(int robots, int tasks)
    : m_(tasks), arcs_(robots, ArcMatrix::Zero(tasks + 2, tasks + 2)) {}

AssignmentTensor schedule_to_tensor(const Schedule& schedule, int tasks) {
  const int n = static_cast<int>(schedule.routes.size());
  AssignmentTensor x(n, tasks);
  for (int i = 0; i < n; ++i) {
    std::vector<bool> seen(tasks + 2, false);
    int prev = 0;
    for (int k : schedule.routes[i]) {
      if (k < 1 || k > tasks)
        throw MalformedSchedule("robot " + std::to_string(i) + ": task index " +
                                std::to_string(k) + " outside 1.." + std::to_string(tasks));
      if (seen[k])
        throw MalformedSchedule("robot " + std::to_string(i) + " visits task " +
                                std::to_string(k) + " twice");
      seen[k] = true;
      x(i, prev, k) = 1;
      prev = k;
    }
    x(i, prev, tasks + 1) = 1;
  }
  return x;
}

AssignmentTensor schedule_to_tensor(const Schedule& schedule, const Instance& instance) {
  if (static_cast<int>(schedule.routes.size()) != instance.robots())
    throw MalformedSchedule("schedule has " + std::to_string(schedule.routes.size()) +
                            " routes for " + std::to_string(instance.robots()) + " robots");
  return schedule_to_tensor(schedule, instance.tasks());
}

Schedule tensor_to_schedule(const AssignmentTensor& x) {
  const int end = x.end_task();
  Schedule out = Schedule::empty(x.robots());
  for (int i = 0; i < x.robots(); ++i) {
    const ArcMatrix& arcs = x.robot(i);
    std::vector<bool> seen(end + 1, false);
    int node = 0;
    long walked = 0;
    seen[0] = true;
    while (node != end) {
      int next = -1;
      for (int k = 0; k <= end; ++k) {
        if (!arcs(node, k)) continue;
        if (next != -1) throw NotAPath(i, "task " + std::to_string(node) + " has several successors");
        next = k;
      }
      if (next == -1) throw NotAPath(i, "path from task 0 stops at task " + std::to_string(node));
      if (seen[next]) throw NotAPath(i, "path from task 0 revisits task " + std::to_string(next));
      seen[next] = true;
      ++walked;
      if (next != end) out.routes[i].push_back(next);
      node = next;
    }
    const long total = arcs.cast<long>().sum();
    if (total != walked)
      throw NotAPath(i, std::to_string(total - walked) + " arcs lie off the 0 -> m+1 path");
  }
  return out;
}

std::set<int> coalition_of(const Schedule& schedule, int task) {
  std::set<int> out;
  for (std::size_t i = 0; i < schedule.routes.size(); ++i)
    for (int k : schedule.routes[i])
      if (k == task) out.insert(static_cast<int>(i));
  return out;
}

}  // namespace swarmsched
