#include "swarmsched/io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "swarmsched/errors.hpp"

namespace swarmsched {

namespace {

void expect_keys(const json& obj, const char* where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ParseError(std::string(where) + ": expected an object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* key : allowed) known = known || item.key() == key;
    if (!known) throw ParseError(std::string(where) + ": unknown field '" + item.key() + "'");
  }
}

const json& field(const json& obj, const char* where, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string(where) + ": missing field '" + key + "'");
  return *it;
}

template <typename T>
T number(const json& value, const std::string& where) {
  if (!value.is_number()) throw ParseError(where + ": expected a number");
  return value.get<T>();
}

Eigen::MatrixXd matrix(const json& value, Eigen::Index rows, Eigen::Index cols,
                       const std::string& where) {
  if (!value.is_array() || static_cast<Eigen::Index>(value.size()) != rows)
    throw ParseError(where + ": expected " + std::to_string(rows) + " rows");
  Eigen::MatrixXd out(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const json& row = value[r];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw ParseError(where + ": row " + std::to_string(r) + " must have " +
                       std::to_string(cols) + " entries");
    for (Eigen::Index c = 0; c < cols; ++c) out(r, c) = number<double>(row[c], where);
  }
  return out;
}

Eigen::VectorXd vector(const json& value, Eigen::Index size, const std::string& where) {
  if (!value.is_array() || static_cast<Eigen::Index>(value.size()) != size)
    throw ParseError(where + ": expected " + std::to_string(size) + " entries");
  Eigen::VectorXd out(size);
  for (Eigen::Index p = 0; p < size; ++p) out(p) = number<double>(value[p], where);
  return out;
}

json to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

json to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index p = 0; p < v.size(); ++p) out.push_back(v(p));
  return out;
}

json to_json(const LegTable& t) {
  return {{"task_to_task", to_json(t.task_to_task)},
          {"start_legs", to_json(t.start_legs)},
          {"end_legs", to_json(t.end_legs)},
          {"start_to_end", to_json(t.start_to_end)}};
}

LegTable table_from_json(const json& value, int n, int m, const std::string& where) {
  if (value.is_array()) {
    // Task-pair matrix shared by all robots.
    const Eigen::MatrixXd pair = matrix(value, m + 2, m + 2, where);
    LegTable t = LegTable::zeros(n, m);
    t.task_to_task = pair.block(1, 1, m, m);
    for (int i = 0; i < n; ++i) {
      t.start_legs.row(i) = pair.block(0, 1, 1, m);
      t.end_legs.row(i) = pair.block(1, m + 1, m, 1).transpose();
      t.start_to_end(i) = pair(0, m + 1);
    }
    return t;
  }
  expect_keys(value, where.c_str(), {"task_to_task", "start_legs", "end_legs", "start_to_end"});
  return LegTable{matrix(field(value, where.c_str(), "task_to_task"), m, m, where + ".task_to_task"),
                  matrix(field(value, where.c_str(), "start_legs"), n, m, where + ".start_legs"),
                  matrix(field(value, where.c_str(), "end_legs"), n, m, where + ".end_legs"),
                  vector(field(value, where.c_str(), "start_to_end"), n, where + ".start_to_end")};
}

std::vector<SkillSet> skill_rows(const json& value, int rows, int l, const std::string& where) {
  if (!value.is_array() || static_cast<int>(value.size()) != rows)
    throw ParseError(where + ": expected " + std::to_string(rows) + " rows");
  std::vector<SkillSet> out;
  for (int r = 0; r < rows; ++r) {
    const json& row = value[r];
    if (!row.is_array() || static_cast<int>(row.size()) != l)
      throw ParseError(where + ": row " + std::to_string(r) + " must have l entries");
    std::vector<int> bits;
    for (const json& b : row) {
      if (!b.is_number_integer() || (b.get<int>() != 0 && b.get<int>() != 1))
        throw ParseError(where + ": entries must be 0 or 1");
      bits.push_back(b.get<int>());
    }
    out.push_back(SkillSet::from_row(bits));
  }
  return out;
}

Eigen::Matrix2Xd points(const json& value, int count, const std::string& where) {
  return matrix(value, count, 2, where).transpose();
}

json points_to_json(const Eigen::Matrix2Xd& p) { return to_json(Eigen::MatrixXd(p.transpose())); }

int integer(const json& obj, const char* key) {
  const json& v = field(obj, "instance", key);
  if (!v.is_number_integer()) throw ParseError(std::string("instance: '") + key + "' must be an integer");
  return v.get<int>();
}

}  // namespace

json instance_to_json(const Instance& instance) {
  const InstanceData& d = instance.data();
  json q = json::array(), r = json::array();
  for (const auto& row : d.robot_skills) q.push_back(row.to_row());
  for (const auto& row : d.task_requirements) r.push_back(row.to_row());
  json doc = {{"l", d.l},
              {"m", d.m},
              {"n", d.n},
              {"Q", q},
              {"R", r},
              {"exec_times", to_json(d.exec_times)},
              {"travel", to_json(d.travel)},
              {"stochastic", {{"mu", to_json(d.mu)}, {"sigma", to_json(d.sigma)}}},
              {"epsilon", d.epsilon}};
  if (d.positions) {
    doc["positions"] = {{"tasks", points_to_json(d.positions->tasks)},
                        {"starts", points_to_json(d.positions->starts)},
                        {"end", {d.positions->end.x(), d.positions->end.y()}}};
  }
  return doc;
}

Instance instance_from_json(const json& doc) {
  expect_keys(doc, "instance",
              {"l", "m", "n", "Q", "R", "exec_times", "travel", "stochastic", "epsilon",
               "positions"});
  InstanceData d;
  d.l = integer(doc, "l");
  d.m = integer(doc, "m");
  d.n = integer(doc, "n");
  if (d.l < 1 || d.m < 0 || d.n < 1) throw ParseError("instance: l, n must be positive, m nonnegative");
  d.robot_skills = skill_rows(field(doc, "instance", "Q"), d.n, d.l, "Q");
  d.task_requirements = skill_rows(field(doc, "instance", "R"), d.m, d.l, "R");
  d.exec_times = vector(field(doc, "instance", "exec_times"), d.m, "exec_times");
  d.travel = table_from_json(field(doc, "instance", "travel"), d.n, d.m, "travel");

  const json& stochastic = field(doc, "instance", "stochastic");
  expect_keys(stochastic, "stochastic", {"mu_fraction", "mu", "sigma"});
  const bool has_fraction = stochastic.contains("mu_fraction");
  if (has_fraction == stochastic.contains("mu"))
    throw ParseError("stochastic: give exactly one of 'mu_fraction' and 'mu'");
  if (has_fraction) {
    const double f = number<double>(stochastic["mu_fraction"], "stochastic.mu_fraction");
    d.mu = LegTable{d.travel.task_to_task * f, d.travel.start_legs * f, d.travel.end_legs * f,
                    d.travel.start_to_end * f};
  } else {
    d.mu = table_from_json(stochastic["mu"], d.n, d.m, "stochastic.mu");
  }
  d.sigma = table_from_json(field(stochastic, "stochastic", "sigma"), d.n, d.m, "stochastic.sigma");
  d.epsilon = number<double>(field(doc, "instance", "epsilon"), "epsilon");

  if (doc.contains("positions")) {
    const json& p = doc["positions"];
    expect_keys(p, "positions", {"tasks", "starts", "end"});
    Positions pos;
    pos.tasks = points(field(p, "positions", "tasks"), d.m, "positions.tasks");
    pos.starts = points(field(p, "positions", "starts"), d.n, "positions.starts");
    pos.end = vector(field(p, "positions", "end"), 2, "positions.end");
    d.positions = std::move(pos);
  }
  return Instance(std::move(d));
}

json schedule_to_json(const Schedule& schedule) { return {{"routes", schedule.routes}}; }

Schedule schedule_from_json(const json& doc) {
  expect_keys(doc, "schedule", {"routes"});
  const json& routes = field(doc, "schedule", "routes");
  if (!routes.is_array()) throw ParseError("schedule: 'routes' must be an array");
  Schedule out;
  for (const json& route : routes) {
    if (!route.is_array()) throw ParseError("schedule: each route must be an array");
    std::vector<int> r;
    for (const json& k : route) {
      if (!k.is_number_integer()) throw ParseError("schedule: task indices must be integers");
      r.push_back(k.get<int>());
    }
    out.routes.push_back(std::move(r));
  }
  return out;
}

json timing_to_json(const Timing& timing) {
  json arrivals = json::array();
  for (Eigen::Index i = 0; i < timing.arrivals.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < timing.arrivals.cols(); ++k)
      row.push_back(timing.visited(i, k) ? json(timing.arrivals(i, k)) : json(nullptr));
    arrivals.push_back(std::move(row));
  }
  return {{"arrivals", arrivals},
          {"task_starts", to_json(timing.task_starts)},
          {"makespan", timing.makespan}};
}

json report_to_json(const ValidationReport& report) {
  json checks = json::array();
  for (const CheckResult& c : report.checks) {
    json violations = json::array();
    for (const Violation& v : c.violations) {
      json item = {{"constraint", v.constraint}, {"message", v.message}};
      if (v.robot >= 0) item["robot"] = v.robot;
      if (v.task >= 0) item["task"] = v.task;
      if (v.skill >= 0) item["skill"] = v.skill;
      violations.push_back(std::move(item));
    }
    checks.push_back({{"name", c.name}, {"passed", c.passed()}, {"violations", violations}});
  }
  json doc = {{"feasible", report.feasible}, {"checks", checks}};
  if (report.timing) doc["timing"] = timing_to_json(*report.timing);
  return doc;
}

json exact_result_to_json(const ExactResult& result) {
  json incumbents = json::array();
  for (const Incumbent& inc : result.incumbents) incumbents.push_back({inc.seconds, inc.makespan});
  return {{"schedule", schedule_to_json(result.schedule)},
          {"makespan", result.makespan},
          {"status", to_string(result.status)},
          {"incumbents", incumbents},
          {"nodes", result.nodes},
          {"seconds", result.seconds}};
}

json greedy_result_to_json(const GreedyResult& result) {
  return {{"schedule", schedule_to_json(result.schedule)},
          {"makespan", result.timing.makespan},
          {"status", to_string(SolveStatus::Heuristic)},
          {"incumbents", json::array()}};
}

json simulation_to_json(const SimulationStats& stats) {
  json legs = json::array();
  for (std::size_t p = 0; p < stats.legs.size(); ++p) {
    const LegOutcome& leg = stats.legs[p];
    legs.push_back({{"robot", leg.robot},
                    {"from", leg.from},
                    {"to", leg.to},
                    {"planned_arrival", leg.planned_arrival},
                    {"on_time_fraction", stats.on_time_fraction(p)},
                    {"on_schedule_fraction", stats.on_schedule_fraction(p)}});
  }
  return {{"trials", stats.trials},
          {"planned_makespan", stats.planned_makespan},
          {"realized_makespan",
           {{"mean", stats.realized_mean},
            {"stdev", stats.realized_stdev},
            {"min", stats.realized_min},
            {"p50", stats.realized_p50},
            {"p95", stats.realized_p95},
            {"max", stats.realized_max},
            {"on_time_fraction", stats.makespan_on_time}}},
          {"min_leg_on_time_fraction", stats.min_on_time_fraction()},
          {"legs", legs}};
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what(), e.byte);
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_json(text.str());
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

Instance load_instance(const std::filesystem::path& path) {
  return instance_from_json(read_json_file(path));
}

void save_instance(const std::filesystem::path& path, const Instance& instance) {
  write_json_file(path, instance_to_json(instance));
}

Schedule load_schedule(const std::filesystem::path& path) {
  return schedule_from_json(read_json_file(path));
}

void save_schedule(const std::filesystem::path& path, const Schedule& schedule) {
  write_json_file(path, schedule_to_json(schedule));
}

}  // namespace swarmsched
