#include "swarmsched/exact.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "swarmsched/errors.hpp"
#include "swarmsched/greedy.hpp"
#include "swarmsched/validator.hpp"

namespace swarmsched {

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::ProvedOptimal: return "optimal";
    case SolveStatus::IncumbentOnly: return "incumbent";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Heuristic: return "heuristic";
  }
  return "unknown";
}

std::vector<Coalition> enumerate_coalitions(const Instance& instance, int task,
                                            std::size_t max_count) {
  const SkillSet& required = instance.requirement(task);
  std::vector<int> candidates;
  std::vector<std::vector<int>> offered;  // required skills each candidate offers
  for (int i = 0; i < instance.robots(); ++i) {
    auto mine = (instance.robot_skills(i) & required).indices();
    if (mine.empty()) continue;
    candidates.push_back(i);
    offered.push_back(std::move(mine));
  }

  // Each member owns a required skill, so no coalition is larger than the
  // requirement set.
  const std::size_t max_size = required.count();
  std::vector<Coalition> out;
  std::vector<int> providers(instance.skills(), 0);
  std::vector<std::size_t> chosen;

  auto accept = [&] {
    for (int s : required.indices())
      if (providers[s] == 0) return false;
    for (std::size_t c : chosen) {
      const auto& mine = offered[c];
      if (std::none_of(mine.begin(), mine.end(), [&](int s) { return providers[s] == 1; }))
        return false;
    }
    return true;
  };

  auto recurse = [&](auto&& self, std::size_t next) -> void {
    if (!chosen.empty() && accept()) {
      Coalition c;
      for (std::size_t p : chosen) c.push_back(candidates[p]);
      out.push_back(std::move(c));
      if (out.size() > max_count)
        throw TooLargeError("task " + std::to_string(task) + " has more than " +
                            std::to_string(max_count) + " coalitions");
    }
    if (chosen.size() == max_size) return;
    for (std::size_t p = next; p < candidates.size(); ++p) {
      chosen.push_back(p);
      for (int s : offered[p]) ++providers[s];
      self(self, p + 1);
      for (int s : offered[p]) --providers[s];
      chosen.pop_back();
    }
  };
  recurse(recurse, 0);

  if (out.empty())
    throw InfeasibleError("no coalition can serve task " + std::to_string(task));
  std::sort(out.begin(), out.end(), [](const Coalition& a, const Coalition& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kInf = std::numeric_limits<double>::infinity();

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

class Search {
 public:
  Search(const Instance& instance, const SolveOptions& options)
      : instance_(instance),
        options_(options),
        m_(instance.tasks()),
        n_(instance.robots()),
        end_(m_ + 1),
        location_(n_, 0),
        ready_(n_, 0.0),
        routes_(Schedule::empty(n_)) {
    const LegCosts costs(instance, options.mode);
    legs_.resize(static_cast<std::size_t>(n_) * (end_ + 1) * (end_ + 1));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j <= end_; ++j)
        for (int k = 0; k <= end_; ++k) legs_[index(i, j, k)] = costs.leg(i, j, k);

    build_reach();

    coalitions_.resize(end_);
    masks_.resize(end_);
    for (int k = 1; k <= m_; ++k) {
      coalitions_[k] = enumerate_coalitions(instance, k);
      for (const Coalition& c : coalitions_[k]) {
        std::uint64_t mask = 0;
        for (int i : c) mask |= std::uint64_t{1} << i;
        masks_[k].push_back(mask);
      }
    }
    // Fail-first: tasks with fewest coalitions are branched on first.
    branch_order_.resize(m_);
    std::iota(branch_order_.begin(), branch_order_.end(), 1);
    std::stable_sort(branch_order_.begin(), branch_order_.end(), [&](int a, int b) {
      return coalitions_[a].size() < coalitions_[b].size();
    });
  }

  ExactResult run() {
    start_ = Clock::now();
    if (options_.warm_start) {
      GreedyResult greedy = solve_greedy(instance_, options_.mode);
      record(greedy.schedule, greedy.timing.makespan);
    }
    descend();

    ExactResult result;
    result.nodes = nodes_;
    result.incumbents = std::move(trace_);
    if (best_makespan_ == kInf) {
      // Limit hit before any leaf; fall back to the greedy schedule.
      GreedyResult greedy = solve_greedy(instance_, options_.mode);
      best_schedule_ = greedy.schedule;
      best_makespan_ = greedy.timing.makespan;
      result.incumbents.push_back({seconds_since(start_), best_makespan_});
    }
    result.schedule = best_schedule_;
    result.makespan = best_makespan_;
    result.status = stopped_ ? SolveStatus::IncumbentOnly : SolveStatus::ProvedOptimal;
    result.seconds = seconds_since(start_);
    return result;
  }

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * (end_ + 1) + j) * (end_ + 1) + k;
  }
  double leg(int i, int j, int k) const { return legs_[index(i, j, k)]; }

  // reach_[i](a, b): least time robot i needs from finishing a to arriving
  // at b, through any tasks, counting their execution but no waiting.
  void build_reach() {
    reach_.assign(n_, Eigen::MatrixXd::Constant(end_ + 1, end_ + 1, kInf));
    for (int i = 0; i < n_; ++i) {
      Eigen::MatrixXd& d = reach_[i];
      for (int a = 0; a < end_; ++a)
        for (int b = 1; b <= end_; ++b)
          if (a != b) d(a, b) = leg(i, a, b) + instance_.exec_time(b);
      for (int a = 0; a <= end_; ++a) d(a, a) = 0.0;
      for (int via = 1; via <= m_; ++via)
        for (int a = 0; a <= end_; ++a)
          for (int b = 0; b <= end_; ++b)
            d(a, b) = std::min(d(a, b), d(a, via) + d(via, b));
      // Negative cycles only arise from negative buffers; give up bounding.
      if ((d.diagonal().array() < 0.0).any()) d.setConstant(-kInf);
      for (int b = 1; b <= m_; ++b) d.col(b).array() -= instance_.exec_time(b);
    }
  }

  double lower_bound(std::uint64_t assigned) const {
    double bound = -kInf;
    for (int i = 0; i < n_; ++i)
      bound = std::max(bound, ready_[i] + reach_[i](location_[i], end_));
    for (int k = 1; k <= m_; ++k) {
      if (assigned >> (k - 1) & 1u) continue;
      double best = kInf;
      for (const Coalition& c : coalitions_[k]) {
        double arrive = -kInf, leave = -kInf;
        for (int i : c) {
          arrive = std::max(arrive, ready_[i] + reach_[i](location_[i], k));
          leave = std::max(leave, reach_[i](k, end_));
        }
        best = std::min(best, arrive + instance_.exec_time(k) + leave);
      }
      bound = std::max(bound, best);
    }
    return bound;
  }

  void record(const Schedule& schedule, double makespan) {
    best_schedule_ = schedule;
    best_makespan_ = makespan;
    if (options_.emit_incumbents) trace_.push_back({seconds_since(start_), makespan});
  }

  bool out_of_budget() {
    if (nodes_ >= options_.node_limit) return true;
    if ((nodes_ & 0xff) == 0 && seconds_since(start_) > options_.time_limit) return true;
    return false;
  }

  void descend() {
    ++nodes_;
    if (out_of_budget()) {
      stopped_ = true;
      return;
    }
    const std::uint64_t all = m_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m_) - 1;
    if (assigned_ == all) {
      double makespan = -kInf;
      for (int i = 0; i < n_; ++i)
        makespan = std::max(makespan, ready_[i] + leg(i, location_[i], end_));
      if (makespan < best_makespan_ - kTimeTolerance) record(routes_, makespan);
      return;
    }
    if (lower_bound(assigned_) >= best_makespan_ - kTimeTolerance) return;

    const int last_task = last_task_;
    const std::uint64_t last_mask = last_mask_;
    std::vector<int> saved_location(n_);
    std::vector<double> saved_ready(n_);
    for (int k : branch_order_) {
      if (assigned_ >> (k - 1) & 1u) continue;
      for (std::size_t c = 0; c < coalitions_[k].size(); ++c) {
        // Independent consecutive tasks commute; keep only the ascending
        // order of such pairs.
        if ((masks_[k][c] & last_mask) == 0 && k < last_task) continue;
        const Coalition& coalition = coalitions_[k][c];
        double start = -kInf;
        for (int i : coalition) start = std::max(start, ready_[i] + leg(i, location_[i], k));
        for (int i : coalition) {
          saved_location[i] = location_[i];
          saved_ready[i] = ready_[i];
          location_[i] = k;
          ready_[i] = start + instance_.exec_time(k);
          routes_.routes[i].push_back(k);
        }
        assigned_ |= std::uint64_t{1} << (k - 1);
        last_task_ = k;
        last_mask_ = masks_[k][c];

        descend();

        assigned_ &= ~(std::uint64_t{1} << (k - 1));
        last_task_ = last_task;
        last_mask_ = last_mask;
        for (int i : coalition) {
          location_[i] = saved_location[i];
          ready_[i] = saved_ready[i];
          routes_.routes[i].pop_back();
        }
        if (stopped_) return;
      }
    }
  }

  const Instance& instance_;
  SolveOptions options_;
  int m_, n_, end_;
  std::vector<double> legs_;
  std::vector<Eigen::MatrixXd> reach_;
  std::vector<std::vector<Coalition>> coalitions_;
  std::vector<std::vector<std::uint64_t>> masks_;
  std::vector<int> branch_order_;

  std::vector<int> location_;
  std::vector<double> ready_;
  Schedule routes_;
  std::uint64_t assigned_ = 0;
  int last_task_ = 0;
  std::uint64_t last_mask_ = 0;

  Clock::time_point start_;
  std::uint64_t nodes_ = 0;
  bool stopped_ = false;
  double best_makespan_ = kInf;
  Schedule best_schedule_;
  std::vector<Incumbent> trace_;
};

}  // namespace

ExactResult solve_exact(const Instance& instance, const SolveOptions& options) {
  if (options.time_limit <= 0.0 || options.node_limit == 0)
    throw DomainError("solve_exact: limits must be positive");
  if (instance.tasks() > 64 || instance.robots() > 64)
    throw TooLargeError("solve_exact supports at most 64 tasks and 64 robots");
  try {
    Search search(instance, options);
    return search.run();
  } catch (const InfeasibleError&) {
    ExactResult result;
    result.status = SolveStatus::Infeasible;
    result.makespan = kInf;
    result.schedule = Schedule::empty(instance.robots());
    return result;
  }
}

double brute_force_oracle(const Instance& instance, BufferMode mode, std::uint64_t guard) {
  const int m = instance.tasks(), n = instance.robots();
  std::vector<std::vector<Coalition>> options(m + 1);
  double assignments = 1.0;
  for (int k = 1; k <= m; ++k) {
    options[k] = enumerate_coalitions(instance, k);
    assignments *= static_cast<double>(options[k].size());
  }
  if (assignments > static_cast<double>(guard))
    throw TooLargeError("brute force: too many coalition assignments");

  auto factorial = [](std::size_t v) {
    double f = 1.0;
    for (std::size_t t = 2; t <= v; ++t) f *= static_cast<double>(t);
    return f;
  };

  // Odometer over coalition choices, one digit per task.
  auto for_each_assignment = [&](auto&& visit) {
    std::vector<std::size_t> digit(m + 1, 0);
    for (;;) {
      std::vector<std::vector<int>> tasks_of(n);
      for (int k = 1; k <= m; ++k)
        for (int i : options[k][digit[k]]) tasks_of[i].push_back(k);
      visit(tasks_of);
      int k = 1;
      while (k <= m && ++digit[k] == options[k].size()) digit[k++] = 0;
      if (k > m) return;
    }
  };

  double candidates = 0.0;
  for_each_assignment([&](const std::vector<std::vector<int>>& tasks_of) {
    double orders = 1.0;
    for (const auto& t : tasks_of) orders *= factorial(t.size());
    candidates += orders;
  });
  if (candidates > static_cast<double>(guard))
    throw TooLargeError("brute force: too many candidate schedules");

  double best = std::numeric_limits<double>::infinity();
  for_each_assignment([&](const std::vector<std::vector<int>>& tasks_of) {
    Schedule schedule{tasks_of};
    for (auto& route : schedule.routes) std::sort(route.begin(), route.end());
    for (;;) {
      try {
        best = std::min(best, propagate_times(instance, schedule, mode).makespan);
      } catch (const DeadlockError&) {
      }
      int i = 0;
      while (i < n && !std::next_permutation(schedule.routes[i].begin(),
                                             schedule.routes[i].end()))
        ++i;
      if (i == n) break;
    }
  });
  return best;
}

}  // namespace swarmsched
