#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "swarmsched/exact.hpp"
#include "swarmsched/greedy.hpp"
#include "swarmsched/model.hpp"
#include "swarmsched/simulate.hpp"
#include "swarmsched/validator.hpp"

namespace swarmsched {

using json = nlohmann::json;

// Instance schema:
//   {"l", "m", "n", "Q": n x l 0/1, "R": m x l 0/1, "exec_times": [m],
//    "travel": {"task_to_task", "start_legs", "end_legs", "start_to_end"},
//    "stochastic": {"mu_fraction": f | "mu": table, "sigma": table},
//    "epsilon", "positions": {"tasks", "starts", "end"} (optional)}
// A table is either travel-shaped or an (m+2) x (m+2) matrix indexed by
// task pair, shared by every robot. Unknown fields are rejected. Real
// tasks are 1-based in schedules; rows of R are listed in task order.
json instance_to_json(const Instance& instance);
Instance instance_from_json(const json& doc);

// {"routes": [[task, ...], ...]}, one route per robot.
json schedule_to_json(const Schedule& schedule);
Schedule schedule_from_json(const json& doc);

json report_to_json(const ValidationReport& report);
json timing_to_json(const Timing& timing);
json exact_result_to_json(const ExactResult& result);
json greedy_result_to_json(const GreedyResult& result);
json simulation_to_json(const SimulationStats& stats);

// Parses text, throwing ParseError with the byte offset on bad JSON.
json parse_json(const std::string& text);
json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& doc);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const std::filesystem::path& path, const Instance& instance);
Schedule load_schedule(const std::filesystem::path& path);
void save_schedule(const std::filesystem::path& path, const Schedule& schedule);

}  // namespace swarmsched
