#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "swarmsched/generator.hpp"
#include "swarmsched/stochastic.hpp"

namespace swarmsched {

struct Shape {
  int l = 2;
  int m = 8;
  int n = 4;
};

struct SuiteConfig {
  std::vector<Shape> shapes;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> solvers{"greedy"};  // "greedy" and/or "exact"
  BufferMode mode = BufferMode::Corrected;
  double time_limit = 300.0;
  std::uint64_t node_limit = 10'000'000;
  int workers = 1;
  // Everything except l, m, n and seed, which the suite sets per run.
  GeneratorConfig generator;
};

// {"shapes": [{"l", "m", "n"}], "seeds": [..] | {"first": s, "count": c},
//  "solvers": [..], "buffer_mode", "time_limit", "node_limit", "workers",
//  "full_circle"}
SuiteConfig suite_from_json(const nlohmann::json& doc);

// One solver run.
struct BenchRecord {
  std::uint64_t seed = 0;
  int l = 0, m = 0, n = 0;
  std::string solver;
  BufferMode mode = BufferMode::Corrected;
  double makespan = 0.0;
  double wall_ms = 0.0;
  std::string status;
};

// Cost and run-time of one solver relative to another on one instance.
struct RelativeRecord {
  std::uint64_t seed = 0;
  int l = 0, m = 0, n = 0;
  double relative_cost = 0.0;        // numerator makespan / denominator makespan
  double log10_relative_time = 0.0;  // log10(numerator wall / denominator wall)
};

inline constexpr const char* kCsvHeader = "seed,l,m,n,solver,buffer_mode,makespan,wall_ms,status";

// Runs every solver on every (shape, seed) instance. Records come back
// sorted by shape, seed, solver name. When csv is given, rows are written
// as soon as every earlier row is known.
std::vector<BenchRecord> run_benchmark(const SuiteConfig& suite, std::ostream* csv = nullptr);

std::vector<RelativeRecord> relative_performance(const std::vector<BenchRecord>& records,
                                                 const std::string& numerator = "greedy",
                                                 const std::string& denominator = "exact");

void write_csv_row(std::ostream& out, const BenchRecord& record);
void write_csv(std::ostream& out, const std::vector<BenchRecord>& records);
std::vector<BenchRecord> read_csv(std::istream& in);
std::vector<BenchRecord> read_csv(const std::filesystem::path& path);
void write_relative_csv(std::ostream& out, const std::vector<RelativeRecord>& records);

}  // namespace swarmsched
