#include "swarmsched/greedy.hpp"

#include <algorithm>
#include <limits>

#include "swarmsched/errors.hpp"

namespace swarmsched {

GreedyState::GreedyState(const Instance& instance)
    : committed_(instance.tasks(), false),
      location_(instance.robots(), 0),
      task_starts_(Eigen::VectorXd::Zero(instance.tasks() + 2)),
      arrivals_(Eigen::MatrixXd::Zero(instance.robots(), instance.tasks() + 2)),
      schedule_(Schedule::empty(instance.robots())) {
  remaining_.reserve(instance.tasks());
  for (int k = 1; k <= instance.tasks(); ++k) remaining_.push_back(instance.requirement(k));
}

void GreedyState::offer(int robot, int task, const Instance& instance) {
  remaining_[task - 1].subtract(instance.robot_skills(robot));
}

void GreedyState::attend(int robot, int task, double arrival) {
  schedule_.routes[robot].push_back(task);
  arrivals_(robot, task) = arrival;
  location_[robot] = task;
}

void GreedyState::commit(int task, double start) {
  task_starts_(task) = start;
  committed_[task - 1] = true;
  ++committed_count_;
}

Timing GreedyState::finish(const Instance& instance, const LegCosts& costs) const {
  const int n = instance.robots(), end = instance.end_task();
  Timing timing;
  timing.arrivals = arrivals_;
  timing.task_starts = task_starts_;
  timing.visited = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, end + 1, false);
  double makespan = 0.0;
  for (int i = 0; i < n; ++i) {
    timing.visited(i, 0) = true;
    for (int k : schedule_.routes[i]) timing.visited(i, k) = true;
    const int j = location_[i];
    const double y = task_starts_(j) + instance.exec_time(j) + costs.leg(i, j, end);
    timing.arrivals(i, end) = y;
    timing.visited(i, end) = true;
    makespan = i == 0 ? y : std::max(makespan, y);
  }
  timing.task_starts(end) = makespan;
  timing.makespan = makespan;
  return timing;
}

int contribution(const Instance& instance, int robot, int task, const GreedyState& state) {
  return static_cast<int>(instance.robot_skills(robot).overlap(state.remaining(task)));
}

double estimated_arrival(const Instance& instance, const LegCosts& costs, int robot, int task,
                         const GreedyState& state) {
  const int j = state.location(robot);
  return state.task_start(j) + instance.exec_time(j) + costs.leg(robot, j, task);
}

namespace {

struct Member {
  int robot;
  double arrival;
};

// Drops members whose required skills are all offered by someone else,
// latest arrival first.
void drop_superfluous(const Instance& instance, int task, std::vector<Member>& coalition) {
  const SkillSet& required = instance.requirement(task);
  for (;;) {
    std::vector<int> providers(instance.skills(), 0);
    for (const Member& member : coalition)
      for (int s : (instance.robot_skills(member.robot) & required).indices()) ++providers[s];

    std::vector<std::size_t> order(coalition.size());
    for (std::size_t p = 0; p < order.size(); ++p) order[p] = p;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (coalition[a].arrival != coalition[b].arrival)
        return coalition[a].arrival > coalition[b].arrival;
      return coalition[a].robot > coalition[b].robot;
    });

    bool dropped = false;
    for (std::size_t p : order) {
      const auto mine = (instance.robot_skills(coalition[p].robot) & required).indices();
      const bool redundant =
          std::all_of(mine.begin(), mine.end(), [&](int s) { return providers[s] >= 2; });
      if (redundant) {
        coalition.erase(coalition.begin() + static_cast<std::ptrdiff_t>(p));
        dropped = true;
        break;
      }
    }
    if (!dropped) return;
  }
}

}  // namespace

GreedyResult solve_greedy(const Instance& instance, BufferMode mode) {
  const int m = instance.tasks(), n = instance.robots();
  const LegCosts costs(instance, mode);
  GreedyState state(instance);

  // Contributions to untouched tasks never change, so rank them once.
  Eigen::MatrixXi initial(n, m);
  for (int i = 0; i < n; ++i)
    for (int k = 1; k <= m; ++k) initial(i, k - 1) = contribution(instance, i, k, state);

  GreedyResult result;
  while (state.committed_count() < m) {
    int best = 0;
    for (int k = 1; k <= m; ++k) {
      if (state.committed(k)) continue;
      for (int i = 0; i < n; ++i) best = std::max(best, initial(i, k - 1));
    }
    if (best == 0) throw InfeasibleError("no robot can contribute to any open task");

    // Earliest arrival among the best pairs; lowest robot, then task.
    int chosen_robot = -1, chosen_task = -1;
    double chosen_arrival = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      for (int k = 1; k <= m; ++k) {
        if (state.committed(k) || initial(i, k - 1) != best) continue;
        const double y = estimated_arrival(instance, costs, i, k, state);
        if (y < chosen_arrival) {
          chosen_arrival = y;
          chosen_robot = i;
          chosen_task = k;
        }
      }
    }

    const int task = chosen_task;
    std::vector<Member> coalition{{chosen_robot, chosen_arrival}};
    std::vector<bool> joined(n, false);
    joined[chosen_robot] = true;
    state.offer(chosen_robot, task, instance);

    while (state.remaining(task).any()) {
      int top = 0, pick = -1;
      double pick_arrival = std::numeric_limits<double>::infinity();
      for (int i = 0; i < n; ++i) {
        if (joined[i]) continue;
        const int c = contribution(instance, i, task, state);
        if (c == 0 || c < top) continue;
        const double y = estimated_arrival(instance, costs, i, task, state);
        if (c > top || y < pick_arrival) {
          top = c;
          pick = i;
          pick_arrival = y;
        }
      }
      if (pick < 0)
        throw InfeasibleError("task " + std::to_string(task) +
                              " has requirements no free robot offers");
      joined[pick] = true;
      coalition.push_back({pick, pick_arrival});
      state.offer(pick, task, instance);
    }

    drop_superfluous(instance, task, coalition);
    double start = coalition.front().arrival;
    for (const Member& member : coalition) {
      state.attend(member.robot, task, member.arrival);
      start = std::max(start, member.arrival);
    }
    state.commit(task, start);
    ++result.iterations;
  }

  result.timing = state.finish(instance, costs);
  result.schedule = state.schedule();
  return result;
}

}  // namespace swarmsched
