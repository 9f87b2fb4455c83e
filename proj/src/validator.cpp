#include "swarmsched/validator.hpp"

#include <algorithm>
#include <queue>

#include "swarmsched/errors.hpp"

namespace swarmsched {

namespace {

std::string task_label(int k) { return "task " + std::to_string(k); }

}  // namespace

DeadlockError::DeadlockError(std::vector<int> cycle)
    : Error([&] {
        std::string what = "cyclic precedence between tasks:";
        for (int k : cycle) what += " " + std::to_string(k);
        return what;
      }()),
      cycle_(std::move(cycle)) {}

LoopCheck detect_loops(const AssignmentTensor& x) {
  const int end = x.end_task();
  for (int i = 0; i < x.robots(); ++i) {
    const ArcMatrix& arcs = x.robot(i);
    LoopCheck check;
    check.robot = i;
    check.visited = static_cast<int>(arcs.cast<int>().sum());
    int next = 0;
    bool stuck = false;
    while (next != end) {
      int successor = -1, out_degree = 0;
      for (int k = 0; k <= end; ++k) {
        if (arcs(next, k)) {
          if (successor == -1) successor = k;
          ++out_degree;
        }
      }
      if (out_degree != 1 || check.count >= end + 1) {
        stuck = true;
        break;
      }
      next = successor;
      ++check.count;
    }
    if (stuck || check.count != check.visited) {
      check.valid = false;
      return check;
    }
  }
  return LoopCheck{};
}

CheckResult check_route_structure(const AssignmentTensor& x) {
  CheckResult out{"route_structure", {}};
  const int end = x.end_task();
  auto add = [&](const char* eq, int i, int k, std::string msg) {
    out.violations.push_back({eq, i, k, -1, std::move(msg)});
  };
  for (int i = 0; i < x.robots(); ++i) {
    const Eigen::MatrixXi arcs = x.robot(i).cast<int>();
    const Eigen::VectorXi out_degree = arcs.rowwise().sum();
    const Eigen::RowVectorXi in_degree = arcs.colwise().sum();

    if (out_degree(0) != 1)
      add("start_once", i, 0, std::to_string(out_degree(0)) + " arcs leave task 0");
    if (in_degree(end) != 1)
      add("end_once", i, end, std::to_string(in_degree(end)) + " arcs enter task m+1");
    if (in_degree(0) != 0) add("enters_start", i, 0, "an arc enters task 0");
    if (out_degree(end) != 0) add("leaves_end", i, end, "an arc leaves task m+1");
    for (int k = 1; k < end; ++k) {
      if (in_degree(k) > 1) add("entered_twice", i, k, task_label(k) + " entered more than once");
      if (out_degree(k) > 1) add("left_twice", i, k, task_label(k) + " left more than once");
      if (in_degree(k) != out_degree(k))
        add("flow", i, k, task_label(k) + " entered and left a different number of times");
    }
    for (int k = 0; k <= end; ++k)
      if (arcs(k, k) != 0) add("self_loop", i, k, "self-transition at " + task_label(k));
  }
  const LoopCheck loops = detect_loops(x);
  if (!loops.valid)
    add("loop", loops.robot, -1,
        "walked " + std::to_string(loops.count) + " arcs from task 0 but " +
            std::to_string(loops.visited) + " are set");
  return out;
}

Eigen::MatrixXi attendance(const Instance& instance, const Schedule& schedule) {
  Eigen::MatrixXi a = Eigen::MatrixXi::Zero(instance.tasks(), instance.robots());
  for (std::size_t i = 0; i < schedule.routes.size() && static_cast<int>(i) < instance.robots(); ++i)
    for (int k : schedule.routes[i])
      if (k >= 1 && k <= instance.tasks()) a(k - 1, static_cast<int>(i)) = 1;
  return a;
}

CoverageCheck check_skill_coverage(const Instance& instance, const Schedule& schedule) {
  CoverageCheck out{{"skill_coverage", {}}, {}};
  const Eigen::MatrixXi a = attendance(instance, schedule);
  const Eigen::MatrixXi q = instance.q_matrix();
  const Eigen::MatrixXi r = instance.r_matrix();
  out.z = a * q;

  for (int k = 1; k <= instance.tasks(); ++k) {
    for (int i = 0; i < instance.robots(); ++i) {
      if (a(k - 1, i) && instance.robot_skills(i).overlap(instance.requirement(k)) == 0)
        out.result.violations.push_back(
            {"no_shared_skill", i, k, -1, "robot offers none of the skills " + task_label(k) + " requires"});
    }
    for (int s = 0; s < instance.skills(); ++s) {
      if (out.z(k - 1, s) < r(k - 1, s))
        out.result.violations.push_back(
            {"uncovered", -1, k, s, task_label(k) + " lacks skill " + std::to_string(s)});
    }
  }
  return out;
}

SuperfluousCheck check_no_superfluous(const Instance& instance, const Schedule& schedule,
                                      const SkillCountMatrix& z) {
  SuperfluousCheck out{{"no_superfluous", {}}, {}};
  const Eigen::MatrixXi a = attendance(instance, schedule);
  const Eigen::MatrixXi q = instance.q_matrix();
  const Eigen::MatrixXi r = instance.r_matrix();
  out.zb = (z.array() > r.array()).cast<int>();

  // Row (k-1, i): required skills of robot i at task k that are in excess,
  // and required skills it offers. Skills the task does not require never
  // make a robot superfluous.
  const Eigen::MatrixXi excess = (out.zb.array() * r.array()).matrix() * q.transpose();
  const Eigen::MatrixXi useful = r * q.transpose();
  for (int k = 1; k <= instance.tasks(); ++k)
    for (int i = 0; i < instance.robots(); ++i)
      if (a(k - 1, i) && excess(k - 1, i) > useful(k - 1, i) - 1)
        out.result.violations.push_back(
            {"superfluous", i, k, -1, "robot is superfluous at " + task_label(k)});
  return out;
}

SuperfluousCheck check_no_superfluous(const Instance& instance, const Schedule& schedule) {
  return check_no_superfluous(instance, schedule, check_skill_coverage(instance, schedule).z);
}

std::vector<int> precedence_order(const Instance& instance, const Schedule& schedule) {
  const int m = instance.tasks(), end = m + 1;

  // Precedence j -> k when some robot moves from real task j to k.
  std::vector<std::vector<int>> successors(end), predecessors(end);
  std::vector<int> in_degree(end, 0);
  std::vector<bool> used(end, false);
  for (const auto& route : schedule.routes) {
    for (std::size_t p = 0; p < route.size(); ++p) {
      used[route[p]] = true;
      if (p == 0) continue;
      successors[route[p - 1]].push_back(route[p]);
      predecessors[route[p]].push_back(route[p - 1]);
      ++in_degree[route[p]];
    }
  }

  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int k = 1; k <= m; ++k)
    if (used[k] && in_degree[k] == 0) ready.push(k);
  std::vector<int> order;
  while (!ready.empty()) {
    const int k = ready.top();
    ready.pop();
    order.push_back(k);
    for (int s : successors[k])
      if (--in_degree[s] == 0) ready.push(s);
  }

  const auto used_count = std::count(used.begin() + 1, used.end(), true);
  if (static_cast<long>(order.size()) != used_count) {
    // Every unresolved task waits on another unresolved one; walk back
    // along waiting edges until a task repeats.
    std::vector<int> position(end, -1);
    std::vector<int> walk;
    int k = 1;
    while (!(used[k] && in_degree[k] > 0)) ++k;
    while (position[k] == -1) {
      position[k] = static_cast<int>(walk.size());
      walk.push_back(k);
      for (int p : predecessors[k])
        if (in_degree[p] > 0) {
          k = p;
          break;
        }
    }
    throw DeadlockError(std::vector<int>(walk.begin() + position[k], walk.end()));
  }
  return order;
}

Timing propagate_times(const Instance& instance, const Schedule& schedule, BufferMode mode) {
  const int m = instance.tasks(), n = instance.robots(), end = m + 1;
  const LegCosts costs(instance, mode);
  const std::vector<int> order = precedence_order(instance, schedule);

  Timing timing;
  timing.arrivals = Eigen::MatrixXd::Zero(n, m + 2);
  timing.visited = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, m + 2, false);
  timing.task_starts = Eigen::VectorXd::Zero(m + 2);

  // Route predecessor of robot i at each task.
  Eigen::MatrixXi previous = Eigen::MatrixXi::Constant(n, m + 2, -1);
  for (int i = 0; i < n; ++i) {
    timing.visited(i, 0) = true;
    int prev = 0;
    for (int k : schedule.routes[i]) {
      previous(i, k) = prev;
      prev = k;
    }
    previous(i, end) = prev;
  }

  auto arrival = [&](int i, int k) {
    const int j = previous(i, k);
    return timing.task_starts(j) + instance.exec_time(j) + costs.leg(i, j, k);
  };

  for (int k : order) {
    double start = 0.0;
    bool first = true;
    for (int i = 0; i < n; ++i) {
      if (previous(i, k) < 0) continue;
      const double y = arrival(i, k);
      timing.arrivals(i, k) = y;
      timing.visited(i, k) = true;
      start = first ? y : std::max(start, y);
      first = false;
    }
    timing.task_starts(k) = start;
  }

  double makespan = 0.0;
  for (int i = 0; i < n; ++i) {
    const double y = arrival(i, end);
    timing.arrivals(i, end) = y;
    timing.visited(i, end) = true;
    makespan = i == 0 ? y : std::max(makespan, y);
  }
  timing.task_starts(end) = makespan;
  timing.makespan = makespan;
  return timing;
}

const CheckResult* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::size_t ValidationReport::violation_count() const {
  std::size_t total = 0;
  for (const auto& c : checks) total += c.violations.size();
  return total;
}

ValidationReport validate(const Instance& instance, const Schedule& schedule, BufferMode mode) {
  ValidationReport report;
  const int m = instance.tasks(), n = instance.robots();

  CheckResult form{"schedule_form", {}};
  if (static_cast<int>(schedule.routes.size()) != n) {
    form.violations.push_back({"form", -1, -1, -1,
                               "schedule has " + std::to_string(schedule.routes.size()) +
                                   " routes for " + std::to_string(n) + " robots"});
  } else {
    for (int i = 0; i < n; ++i) {
      std::vector<bool> seen(m + 2, false);
      for (int k : schedule.routes[i]) {
        if (k < 1 || k > m) {
          form.violations.push_back(
              {"form", i, k, -1, "task index outside 1.." + std::to_string(m)});
        } else if (seen[k]) {
          form.violations.push_back({"entered_twice", i, k, -1, task_label(k) + " visited twice"});
        } else {
          seen[k] = true;
        }
      }
    }
  }
  const bool form_ok = form.passed();
  report.checks.push_back(std::move(form));
  if (!form_ok) return report;

  report.checks.push_back(check_route_structure(schedule_to_tensor(schedule, instance)));
  const bool structure_ok = report.checks.back().passed();

  CoverageCheck coverage = check_skill_coverage(instance, schedule);
  report.checks.push_back(std::move(coverage.result));
  SuperfluousCheck superfluous = check_no_superfluous(instance, schedule, coverage.z);
  report.checks.push_back(std::move(superfluous.result));
  report.z = std::move(coverage.z);
  report.zb = std::move(superfluous.zb);

  if (structure_ok) {
    CheckResult timing_check{"timing", {}};
    try {
      report.timing = propagate_times(instance, schedule, mode);
    } catch (const DeadlockError& e) {
      timing_check.violations.push_back({"deadlock", -1, e.cycle().front(), -1, e.what()});
    }
    report.checks.push_back(std::move(timing_check));
  }

  report.feasible = std::all_of(report.checks.begin(), report.checks.end(),
                                [](const CheckResult& c) { return c.passed(); });
  return report;
}

}  // namespace swarmsched
