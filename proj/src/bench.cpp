#include "swarmsched/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <tuple>

#include "swarmsched/errors.hpp"
#include "swarmsched/exact.hpp"
#include "swarmsched/greedy.hpp"

namespace swarmsched {

SuiteConfig suite_from_json(const nlohmann::json& doc) {
  SuiteConfig suite;
  if (!doc.is_object()) throw ParseError("suite: expected an object");
  for (const auto& item : doc.items()) {
    static const char* known[] = {"shapes", "seeds", "solvers", "buffer_mode", "time_limit",
                                  "node_limit", "workers", "full_circle"};
    if (std::find_if(std::begin(known), std::end(known),
                     [&](const char* k) { return item.key() == k; }) == std::end(known))
      throw ParseError("suite: unknown field '" + item.key() + "'");
  }
  try {
    for (const auto& s : doc.at("shapes"))
      suite.shapes.push_back({s.at("l").get<int>(), s.at("m").get<int>(), s.at("n").get<int>()});
    const auto& seeds = doc.at("seeds");
    if (seeds.is_array()) {
      suite.seeds = seeds.get<std::vector<std::uint64_t>>();
    } else {
      const auto first = seeds.at("first").get<std::uint64_t>();
      const auto count = seeds.at("count").get<std::uint64_t>();
      for (std::uint64_t s = 0; s < count; ++s) suite.seeds.push_back(first + s);
    }
    if (doc.contains("solvers")) suite.solvers = doc["solvers"].get<std::vector<std::string>>();
    if (doc.contains("buffer_mode"))
      suite.mode = buffer_mode_from_string(doc["buffer_mode"].get<std::string>());
    if (doc.contains("time_limit")) suite.time_limit = doc["time_limit"].get<double>();
    if (doc.contains("node_limit")) suite.node_limit = doc["node_limit"].get<std::uint64_t>();
    if (doc.contains("workers")) suite.workers = doc["workers"].get<int>();
    if (doc.contains("full_circle")) suite.generator.full_circle = doc["full_circle"].get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("suite: ") + e.what());
  }
  for (const auto& solver : suite.solvers)
    if (solver != "greedy" && solver != "exact")
      throw ParseError("suite: unknown solver '" + solver + "'");
  if (suite.workers < 1) throw ParseError("suite: workers must be positive");
  return suite;
}

namespace {

struct Job {
  std::size_t shape;
  std::uint64_t seed;
  std::string solver;
};

BenchRecord run_job(const SuiteConfig& suite, const Job& job) {
  const Shape& shape = suite.shapes[job.shape];
  GeneratorConfig config = suite.generator;
  config.l = shape.l;
  config.m = shape.m;
  config.n = shape.n;
  config.seed = job.seed;

  BenchRecord record{job.seed, shape.l, shape.m, shape.n, job.solver, suite.mode, 0.0, 0.0, ""};
  try {
    const Instance instance = generate_instance(config);
    const auto started = std::chrono::steady_clock::now();
    if (job.solver == "greedy") {
      const GreedyResult result = solve_greedy(instance, suite.mode);
      record.makespan = result.timing.makespan;
      record.status = to_string(SolveStatus::Heuristic);
    } else {
      SolveOptions options;
      options.time_limit = suite.time_limit;
      options.node_limit = suite.node_limit;
      options.mode = suite.mode;
      const ExactResult result = solve_exact(instance, options);
      record.makespan = result.makespan;
      record.status = to_string(result.status);
    }
    record.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
            .count();
  } catch (const Error& e) {
    record.status = "error";
    record.makespan = std::nan("");
  }
  return record;
}

}  // namespace

std::vector<BenchRecord> run_benchmark(const SuiteConfig& suite, std::ostream* csv) {
  std::vector<std::string> solvers = suite.solvers;
  std::sort(solvers.begin(), solvers.end());
  std::vector<std::uint64_t> seeds = suite.seeds;
  std::sort(seeds.begin(), seeds.end());

  std::vector<Job> jobs;
  for (std::size_t s = 0; s < suite.shapes.size(); ++s)
    for (std::uint64_t seed : seeds)
      for (const auto& solver : solvers) jobs.push_back({s, seed, solver});

  std::vector<std::optional<BenchRecord>> slots(jobs.size());
  std::mutex lock;
  std::condition_variable done;
  std::size_t next_job = 0;

  auto worker = [&] {
    for (;;) {
      std::size_t mine;
      {
        std::lock_guard guard(lock);
        if (next_job == jobs.size()) return;
        mine = next_job++;
      }
      BenchRecord record = run_job(suite, jobs[mine]);
      {
        std::lock_guard guard(lock);
        slots[mine] = std::move(record);
      }
      done.notify_one();
    }
  };

  if (csv) *csv << kCsvHeader << '\n' << std::flush;
  const int workers = std::max(1, std::min<int>(suite.workers, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);

  std::size_t flushed = 0;
  {
    std::unique_lock guard(lock);
    while (flushed < jobs.size()) {
      done.wait(guard, [&] { return slots[flushed].has_value(); });
      while (flushed < jobs.size() && slots[flushed]) {
        if (csv) {
          write_csv_row(*csv, *slots[flushed]);
          csv->flush();
        }
        ++flushed;
      }
    }
  }
  for (auto& t : pool) t.join();

  std::vector<BenchRecord> records;
  for (auto& slot : slots) records.push_back(std::move(*slot));
  return records;
}

std::vector<RelativeRecord> relative_performance(const std::vector<BenchRecord>& records,
                                                 const std::string& numerator,
                                                 const std::string& denominator) {
  using Key = std::tuple<int, int, int, std::uint64_t>;
  std::map<Key, const BenchRecord*> base;
  for (const auto& r : records)
    if (r.solver == denominator) base[{r.l, r.m, r.n, r.seed}] = &r;

  std::vector<RelativeRecord> out;
  for (const auto& r : records) {
    if (r.solver != numerator) continue;
    auto it = base.find({r.l, r.m, r.n, r.seed});
    if (it == base.end()) continue;
    const BenchRecord& d = *it->second;
    out.push_back({r.seed, r.l, r.m, r.n, r.makespan / d.makespan,
                   std::log10(r.wall_ms / d.wall_ms)});
  }
  return out;
}

void write_csv_row(std::ostream& out, const BenchRecord& r) {
  std::ostringstream row;
  row << std::setprecision(17) << r.seed << ',' << r.l << ',' << r.m << ',' << r.n << ','
      << r.solver << ',' << to_string(r.mode) << ',' << r.makespan << ',' << r.wall_ms << ','
      << r.status << '\n';
  out << row.str();
}

void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) write_csv_row(out, r);
}

std::vector<BenchRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw ParseError("benchmark CSV: missing or unexpected header");
  std::vector<BenchRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 9)
      throw ParseError("benchmark CSV: line " + std::to_string(line_no) + " has " +
                       std::to_string(cells.size()) + " fields");
    try {
      BenchRecord r;
      r.seed = std::stoull(cells[0]);
      r.l = std::stoi(cells[1]);
      r.m = std::stoi(cells[2]);
      r.n = std::stoi(cells[3]);
      r.solver = cells[4];
      r.mode = buffer_mode_from_string(cells[5]);
      r.makespan = std::stod(cells[6]);
      r.wall_ms = std::stod(cells[7]);
      r.status = cells[8];
      out.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw ParseError("benchmark CSV: line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<BenchRecord> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return read_csv(in);
}

void write_relative_csv(std::ostream& out, const std::vector<RelativeRecord>& records) {
  out << "seed,l,m,n,relative_cost,log10_relative_time\n" << std::setprecision(17);
  for (const auto& r : records)
    out << r.seed << ',' << r.l << ',' << r.m << ',' << r.n << ',' << r.relative_cost << ','
        << r.log10_relative_time << '\n';
}

}  // namespace swarmsched
