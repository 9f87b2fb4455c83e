#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

namespace testing {

SkillSet bits(int width, std::initializer_list<int> on) {
  SkillSet s(static_cast<std::size_t>(width));
  for (int b : on) s.set(static_cast<std::size_t>(b));
  return s;
}

Builder::Builder(int l, int n, int m) {
  data.l = l;
  data.n = n;
  data.m = m;
  data.robot_skills.assign(n, SkillSet(l));
  data.task_requirements.assign(m, SkillSet(l));
  data.exec_times = Eigen::VectorXd::Zero(m);
  data.travel = LegTable::zeros(n, m);
  data.mu = LegTable::zeros(n, m);
  data.sigma = LegTable::zeros(n, m);
}

Builder& Builder::robot(int i, std::initializer_list<int> skills) {
  data.robot_skills[i] = bits(data.l, skills);
  return *this;
}

Builder& Builder::task(int k, std::initializer_list<int> skills, double exec) {
  data.task_requirements[k - 1] = bits(data.l, skills);
  data.exec_times(k - 1) = exec;
  return *this;
}

Builder& Builder::between(int k1, int k2, double travel, double buffer) {
  directed(k1, k2, travel, buffer);
  return directed(k2, k1, travel, buffer);
}

Builder& Builder::directed(int k1, int k2, double travel, double buffer) {
  data.travel.task_to_task(k1 - 1, k2 - 1) = travel;
  data.mu.task_to_task(k1 - 1, k2 - 1) = buffer;
  return *this;
}

Builder& Builder::from_start(int i, int k, double travel, double buffer) {
  data.travel.start_legs(i, k - 1) = travel;
  data.mu.start_legs(i, k - 1) = buffer;
  return *this;
}

Builder& Builder::to_end(int i, int k, double travel, double buffer) {
  data.travel.end_legs(i, k - 1) = travel;
  data.mu.end_legs(i, k - 1) = buffer;
  return *this;
}

Builder& Builder::start_to_end(int i, double travel, double buffer) {
  data.travel.start_to_end(i) = travel;
  data.mu.start_to_end(i) = buffer;
  return *this;
}

Instance two_robot_example() {
  return Builder(2, 2, 2)
      .robot(0, {0})
      .robot(1, {1})
      .task(1, {0}, 10.0)
      .task(2, {0, 1}, 3.0)
      .from_start(0, 1, 5.0, 1.0)
      .between(1, 2, 4.0, 1.0)
      .from_start(1, 2, 8.0, 2.0)
      .from_start(1, 1, 8.0, 2.0)
      .from_start(0, 2, 9.0, 1.0)
      .to_end(0, 2, 2.0, 0.5)
      .to_end(1, 2, 6.0, 1.0)
      .to_end(0, 1, 7.0, 0.5)
      .to_end(1, 1, 7.0, 0.5)
      .build();
}

double bisect_quantile(double p) {
  // Bisect on the smaller tail so p near 1 keeps its precision.
  if (p > 0.5) return -bisect_quantile(1.0 - p);
  double lo = -40.0, hi = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double cdf = 0.5 * std::erfc(-mid / std::sqrt(2.0));
    (cdf < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

bool path_decomposition_oracle(const AssignmentTensor& x) {
  const int end = x.end_task();
  for (int i = 0; i < x.robots(); ++i) {
    int arcs = 0;
    for (int j = 0; j <= end; ++j)
      for (int k = 0; k <= end; ++k) arcs += x(i, j, k) ? 1 : 0;

    bool found = false;
    std::vector<bool> on_path(end + 1, false);
    std::function<void(int, int)> walk = [&](int node, int length) {
      if (found) return;
      if (node == end) {
        found = length == arcs;
        return;
      }
      on_path[node] = true;
      for (int k = 0; k <= end; ++k)
        if (x(i, node, k) && !on_path[k]) walk(k, length + 1);
      on_path[node] = false;
    };
    walk(0, 0);
    if (!found) return false;
  }
  return true;
}

std::optional<Replay> event_replay(const Instance& instance, const Schedule& schedule,
                                   BufferMode mode) {
  const int n = instance.robots(), m = instance.tasks(), end = m + 1;
  const double z = normal_quantile(instance.epsilon());
  auto leg = [&](int i, int j, int k) {
    const DelayParams d = instance.delay(i, j, k);
    const double spread = mode == BufferMode::Corrected ? d.sigma : d.sigma * d.sigma;
    return instance.travel(i, j, k) + d.mu + spread * z;
  };

  Replay out;
  out.arrivals = Eigen::MatrixXd::Zero(n, end + 1);
  out.starts = Eigen::VectorXd::Zero(end + 1);
  std::vector<std::size_t> pos(n, 0);  // next route index each robot heads to
  std::vector<int> at(n, 0);
  std::vector<double> free_at(n, 0.0);  // when the robot left its last task
  std::vector<bool> arrived(n, false);

  auto waiting_for = [&](int k) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i)
      if (std::find(schedule.routes[i].begin(), schedule.routes[i].end(), k) !=
          schedule.routes[i].end())
        members.push_back(i);
    return members;
  };

  int done = 0;
  while (done < m) {
    bool progress = false;
    // Move robots to their next task.
    for (int i = 0; i < n; ++i) {
      if (arrived[i] || pos[i] >= schedule.routes[i].size()) continue;
      const int k = schedule.routes[i][pos[i]];
      out.arrivals(i, k) = free_at[i] + leg(i, at[i], k);
      arrived[i] = true;
    }
    for (int k = 1; k <= m; ++k) {
      const auto members = waiting_for(k);
      if (members.empty()) continue;
      const bool all_here = std::all_of(members.begin(), members.end(), [&](int i) {
        return arrived[i] && pos[i] < schedule.routes[i].size() && schedule.routes[i][pos[i]] == k;
      });
      if (!all_here) continue;
      double start = -std::numeric_limits<double>::infinity();
      for (int i : members) start = std::max(start, out.arrivals(i, k));
      out.starts(k) = start;
      for (int i : members) {
        free_at[i] = start + instance.exec_time(k);
        at[i] = k;
        ++pos[i];
        arrived[i] = false;
      }
      ++done;
      progress = true;
    }
    if (!progress) {
      // Tasks nobody attends never fire; anything else is a deadlock.
      int unattended = 0;
      for (int k = 1; k <= m; ++k) unattended += waiting_for(k).empty() ? 1 : 0;
      if (done + unattended == m) break;
      return std::nullopt;
    }
  }

  double makespan = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    out.arrivals(i, end) = free_at[i] + leg(i, at[i], end);
    makespan = std::max(makespan, out.arrivals(i, end));
  }
  out.makespan = makespan;
  out.starts(end) = makespan;
  return out;
}

double held_karp(const Instance& instance, int robot, const std::vector<int>& tasks,
                 BufferMode mode) {
  const LegCosts costs(instance, mode);
  const int t = static_cast<int>(tasks.size());
  const int end = instance.end_task();
  if (t == 0) return costs.leg(robot, 0, end);
  const double inf = std::numeric_limits<double>::infinity();
  // best[S][j]: finish time of task j after visiting exactly S.
  std::vector<std::vector<double>> best(1u << t, std::vector<double>(t, inf));
  for (int j = 0; j < t; ++j)
    best[1u << j][j] = costs.leg(robot, 0, tasks[j]) + instance.exec_time(tasks[j]);
  for (unsigned s = 1; s < (1u << t); ++s)
    for (int j = 0; j < t; ++j) {
      if (!(s & (1u << j)) || best[s][j] == inf) continue;
      for (int k = 0; k < t; ++k) {
        if (s & (1u << k)) continue;
        const double v = best[s][j] + costs.leg(robot, tasks[j], tasks[k]) +
                         instance.exec_time(tasks[k]);
        best[s | (1u << k)][k] = std::min(best[s | (1u << k)][k], v);
      }
    }
  double out = inf;
  for (int j = 0; j < t; ++j)
    out = std::min(out, best[(1u << t) - 1][j] + costs.leg(robot, tasks[j], end));
  return out;
}

std::vector<std::vector<int>> exhaustive_coalitions(const Instance& instance, int task) {
  const int n = instance.robots();
  const SkillSet& need = instance.requirement(task);
  std::vector<std::vector<int>> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> members;
    SkillSet covered(need.width());
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) {
        members.push_back(i);
        covered |= instance.robot_skills(i);
      }
    if (!need.is_subset_of(covered)) continue;
    bool every_needed = true;
    for (int i : members) {
      bool unique = false;
      for (int s : need.indices()) {
        if (!instance.robot_skills(i).test(s)) continue;
        int holders = 0;
        for (int o : members) holders += instance.robot_skills(o).test(s) ? 1 : 0;
        unique = unique || holders == 1;
      }
      every_needed = every_needed && unique;
    }
    if (every_needed) out.push_back(members);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

Schedule random_schedule(int robots, int tasks, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Schedule s = Schedule::empty(robots);
  std::bernoulli_distribution coin(0.4);
  for (int k = 1; k <= tasks; ++k)
    for (int i = 0; i < robots; ++i)
      if (coin(rng)) s.routes[i].push_back(k);
  for (auto& route : s.routes) std::shuffle(route.begin(), route.end(), rng);
  return s;
}

}  // namespace testing
