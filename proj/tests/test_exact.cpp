#include <doctest.h>

#include "support.hpp"
#include "swarmsched/errors.hpp"
#include "swarmsched/exact.hpp"
#include "swarmsched/generator.hpp"
#include "swarmsched/greedy.hpp"
#include "swarmsched/validator.hpp"

using namespace swarmsched;
using testing::Builder;

namespace {

Instance generated(int l, int n, int m, std::uint64_t seed) {
  GeneratorConfig g;
  g.l = l;
  g.n = n;
  g.m = m;
  g.seed = seed;
  return generate_instance(g);
}

}  // namespace

TEST_SUITE("exact") {

TEST_CASE("coalitions: duplicate holders are alternatives") {
  const Instance inst = Builder(2, 2, 1).robot(0, {0}).robot(1, {0}).task(1, {0}, 1.0).build();
  const auto c = enumerate_coalitions(inst, 1);
  CHECK(c == std::vector<Coalition>{{0}, {1}});
  CHECK(c == testing::exhaustive_coalitions(inst, 1));
}

TEST_CASE("coalitions: a redundant partner is excluded") {
  const Instance inst = Builder(4, 3, 1)
                            .robot(0, {0, 1})
                            .robot(1, {0})
                            .robot(2, {1})
                            .task(1, {0, 1}, 1.0)
                            .build();
  const auto c = enumerate_coalitions(inst, 1);
  CHECK(c == std::vector<Coalition>{{0}, {1, 2}});
  CHECK(c == testing::exhaustive_coalitions(inst, 1));
}

TEST_CASE("coalitions agree with the subset filter on random instances") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance inst = generated(2 + 2 * static_cast<int>(seed % 4), 6, 4, seed);
    for (int k = 1; k <= inst.tasks(); ++k)
      CHECK(enumerate_coalitions(inst, k) == testing::exhaustive_coalitions(inst, k));
  }
}

TEST_CASE("coalition count guard") {
  const Instance inst = generated(2, 12, 1, 3);
  CHECK_THROWS_AS(enumerate_coalitions(inst, 1, 2), TooLargeError);
}

TEST_CASE("single task, single robot") {
  const Instance inst = Builder(2, 1, 1)
                            .robot(0, {0})
                            .task(1, {0}, 10.0)
                            .from_start(0, 1, 7.0, 1.0)
                            .to_end(0, 1, 3.0, 0.5)
                            .build();
  const ExactResult r = solve_exact(inst);
  CHECK(r.status == SolveStatus::ProvedOptimal);
  CHECK(r.makespan == doctest::Approx(21.5));
  CHECK(r.schedule == Schedule{{{1}}});
  CHECK(brute_force_oracle(inst) == doctest::Approx(21.5));
}

TEST_CASE("two tasks, one robot, asymmetric travel") {
  const Instance inst = Builder(4, 1, 2)
                            .robot(0, {0, 1})
                            .task(1, {0}, 1.0)
                            .task(2, {1}, 1.0)
                            .from_start(0, 1, 3.0)
                            .from_start(0, 2, 10.0)
                            .directed(1, 2, 2.0)
                            .directed(2, 1, 20.0)
                            .to_end(0, 1, 9.0)
                            .to_end(0, 2, 1.0)
                            .build();
  // 1 then 2: 3+1+2+1+1 = 8; 2 then 1: 10+1+20+1+9 = 41.
  const ExactResult r = solve_exact(inst);
  CHECK(r.status == SolveStatus::ProvedOptimal);
  CHECK(r.makespan == doctest::Approx(8.0));
  CHECK(r.schedule == Schedule{{{1, 2}}});
  CHECK(brute_force_oracle(inst) == doctest::Approx(8.0));
}

TEST_CASE("one indispensable robot reduces to a shortest path") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int m = 3 + static_cast<int>(seed % 4);
    InstanceData d = generated(4, 3, m, seed).data();
    d.robot_skills = {testing::bits(4, {0, 1}), testing::bits(4, {2}), testing::bits(4, {3})};
    for (int k = 0; k < m; ++k) d.task_requirements[k] = testing::bits(4, {k % 2 == 0 ? 0 : 1});
    const Instance inst(d);
    std::vector<int> all;
    for (int k = 1; k <= m; ++k) all.push_back(k);
    const LegCosts costs(inst, BufferMode::Corrected);
    double expected = testing::held_karp(inst, 0, all);
    for (int i = 1; i < 3; ++i) expected = std::max(expected, costs.leg(i, 0, m + 1));

    const ExactResult r = solve_exact(inst);
    CHECK(r.status == SolveStatus::ProvedOptimal);
    CHECK(r.makespan == doctest::Approx(expected).epsilon(1e-12));
    CHECK(brute_force_oracle(inst) == doctest::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("matches the brute-force oracle") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance inst = generated(2, 3, 4, seed);
    const ExactResult r = solve_exact(inst);
    CHECK(r.status == SolveStatus::ProvedOptimal);
    CHECK(std::abs(r.makespan - brute_force_oracle(inst)) < 1e-6);
  }
}

TEST_CASE("matches the oracle in the literal buffer mode") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = generated(4, 3, 4, seed);
    SolveOptions o;
    o.mode = BufferMode::PaperLiteral;
    CHECK(std::abs(solve_exact(inst, o).makespan -
                   brute_force_oracle(inst, BufferMode::PaperLiteral)) < 1e-6);
  }
}

TEST_CASE("result is feasible, dominates greedy, trace is monotone") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = generated(2 + 2 * static_cast<int>(seed % 2), 4, 6, seed);
    const ExactResult r = solve_exact(inst);
    REQUIRE(r.status == SolveStatus::ProvedOptimal);
    const ValidationReport report = validate(inst, r.schedule);
    REQUIRE(report.feasible);
    CHECK(report.timing->makespan == doctest::Approx(r.makespan).epsilon(1e-12));
    CHECK(r.makespan <= solve_greedy(inst).timing.makespan + 1e-9);
    REQUIRE_FALSE(r.incumbents.empty());
    for (std::size_t p = 1; p < r.incumbents.size(); ++p) {
      CHECK(r.incumbents[p].makespan <= r.incumbents[p - 1].makespan);
      CHECK(r.incumbents[p].seconds >= r.incumbents[p - 1].seconds);
    }
    CHECK(r.incumbents.back().makespan == r.makespan);
    CHECK(r.incumbents.front().seconds <= r.seconds);
  }
}

TEST_CASE("node limit returns a feasible incumbent") {
  const Instance inst = generated(2, 4, 7, 5);
  const double optimum = solve_exact(inst).makespan;
  for (std::uint64_t limit : {1, 10, 100, 1000}) {
    SolveOptions o;
    o.node_limit = limit;
    const ExactResult r = solve_exact(inst, o);
    CHECK(r.status == SolveStatus::IncumbentOnly);
    CHECK(validate(inst, r.schedule).feasible);
    CHECK(r.makespan >= optimum - 1e-9);
  }
}

TEST_CASE("warm start keeps the optimum") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Instance inst = generated(2, 4, 6, seed);
    SolveOptions o;
    o.warm_start = true;
    const ExactResult warm = solve_exact(inst, o);
    CHECK(warm.incumbents.front().makespan ==
          doctest::Approx(solve_greedy(inst).timing.makespan));
    CHECK(warm.makespan == doctest::Approx(solve_exact(inst).makespan).epsilon(1e-12));
  }
}

TEST_CASE("bad limits and oversize inputs") {
  const Instance inst = generated(2, 2, 3, 0);
  SolveOptions o;
  o.time_limit = 0.0;
  CHECK_THROWS_AS(solve_exact(inst, o), DomainError);
  CHECK_THROWS_AS(brute_force_oracle(generated(2, 4, 8, 0), BufferMode::Corrected, 100),
                  TooLargeError);
  CHECK_THROWS_AS(solve_exact(generated(2, 2, 65, 0)), TooLargeError);
}

}  // TEST_SUITE
