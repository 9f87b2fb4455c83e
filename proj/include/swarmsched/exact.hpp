#pragma once

#include <cstdint>
#include <vector>

#include "swarmsched/model.hpp"

namespace swarmsched {

// Sorted robot indices attending one task.
using Coalition = std::vector<int>;

// Every robot subset that covers task k's requirements and in which each
// member provides some required skill no other member provides. Sorted by
// size, then lexicographically. Throws InfeasibleError when empty and
// TooLargeError past max_count subsets.
std::vector<Coalition> enumerate_coalitions(const Instance& instance, int task,
                                            std::size_t max_count = 1'000'000);

enum class SolveStatus { ProvedOptimal, IncumbentOnly, Infeasible, Heuristic };

const char* to_string(SolveStatus status);

struct SolveOptions {
  double time_limit = 300.0;  // wall seconds
  std::uint64_t node_limit = 10'000'000;
  BufferMode mode = BufferMode::Corrected;
  bool emit_incumbents = true;
  // Seed the incumbent with the greedy schedule before searching.
  bool warm_start = false;
};

struct Incumbent {
  double seconds = 0.0;
  double makespan = 0.0;
};

struct ExactResult {
  Schedule schedule;
  double makespan = 0.0;
  SolveStatus status = SolveStatus::Infeasible;
  std::vector<Incumbent> incumbents;  // nonincreasing makespans
  std::uint64_t nodes = 0;
  double seconds = 0.0;  // total wall time, including the optimality proof
};

// Branch-and-bound minimising the makespan. Tasks are appended to the
// routes of their coalition in an order compatible with every robot's
// route, so partial plans never deadlock.
ExactResult solve_exact(const Instance& instance, const SolveOptions& options = {});

// Exhaustive minimum over every coalition assignment and every per-robot
// route order, timed with propagate_times. Throws TooLargeError when the
// candidate count exceeds guard.
double brute_force_oracle(const Instance& instance,
                          BufferMode mode = BufferMode::Corrected,
                          std::uint64_t guard = 10'000'000);

}  // namespace swarmsched
