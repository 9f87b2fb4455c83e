#include "swarmsched/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "swarmsched/errors.hpp"

namespace swarmsched {

Eigen::Vector2d robot_start(int robot, int robots, double radius, bool full_circle) {
  const double angle = (full_circle ? 2.0 : 1.0) * robot * std::numbers::pi / robots;
  return {radius * std::sin(angle), radius * std::cos(angle)};
}

namespace {

void check_config(const GeneratorConfig& c) {
  if (c.l < 1 || c.m < 1 || c.n < 1) throw DomainError("generator: l, m, n must be positive");
  if (!(c.area_side > 0.0) || !(c.start_radius >= 0.0))
    throw DomainError("generator: area side must be positive");
  if (!(c.exec_min >= 0.0 && c.exec_max >= c.exec_min))
    throw DomainError("generator: bad execution-time range");
  if (!(c.mu_fraction >= 0.0)) throw DomainError("generator: mu_fraction must be nonnegative");
  if (!(c.sigma_fraction_min > 0.0 && c.sigma_fraction_max < 1.0 &&
        c.sigma_fraction_min <= c.sigma_fraction_max))
    throw DomainError("generator: sigma fraction range must lie within (0, 1)");
  if (!(c.epsilon > 0.0 && c.epsilon < 1.0))
    throw DomainError("generator: epsilon must lie in (0, 1)");
  if (c.max_tries < 1) throw DomainError("generator: max_tries must be positive");
}

SkillSet random_requirement(int l, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  SkillSet out(l);
  while (out.none())
    for (int s = 0; s < l; ++s) out.set(s, coin(rng));
  return out;
}

SkillSet random_robot(int l, Rng& rng) {
  std::uniform_int_distribution<int> size(1, l / 2);
  std::vector<int> all(l);
  std::iota(all.begin(), all.end(), 0);
  std::vector<int> picked;
  std::sample(all.begin(), all.end(), std::back_inserter(picked), size(rng), rng);
  SkillSet out(l);
  for (int s : picked) out.set(s);
  return out;
}

}  // namespace

Instance generate_instance(const GeneratorConfig& config) {
  check_config(config);
  const int l = config.l, m = config.m, n = config.n;
  Rng rng(config.seed);

  InstanceData data;
  data.l = l;
  data.m = m;
  data.n = n;
  data.epsilon = config.epsilon;

  Positions pos;
  const double half = config.area_side / 2.0;
  std::uniform_real_distribution<double> coord(-half, half);
  pos.tasks.resize(2, m);
  for (int k = 0; k < m; ++k) {
    pos.tasks(0, k) = coord(rng);
    pos.tasks(1, k) = coord(rng);
  }
  pos.starts.resize(2, n);
  for (int i = 0; i < n; ++i)
    pos.starts.col(i) = robot_start(i, n, config.start_radius, config.full_circle);
  pos.end = Eigen::Vector2d::Zero();

  std::uniform_real_distribution<double> exec(config.exec_min, config.exec_max);
  data.exec_times.resize(m);
  for (int k = 0; k < m; ++k) data.exec_times(k) = exec(rng);

  for (int k = 0; k < m; ++k) data.task_requirements.push_back(random_requirement(l, rng));

  if (l / 2 < 1)
    throw GenerationError("generator: l = " + std::to_string(l) +
                          " leaves no room for a robot skill");
  bool valid = false;
  for (int attempt = 0; attempt < config.max_tries && !valid; ++attempt) {
    data.robot_skills.clear();
    SkillSet pool(l);
    for (int i = 0; i < n; ++i) {
      data.robot_skills.push_back(random_robot(l, rng));
      pool |= data.robot_skills.back();
    }
    valid = pool.count() == static_cast<std::size_t>(l);
  }
  if (!valid)
    throw GenerationError("generator: no valid robot pool after " +
                          std::to_string(config.max_tries) + " tries");

  // Unit speed: travel time equals Euclidean distance.
  LegTable& t = data.travel;
  t = LegTable::zeros(n, m);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k)
      t.task_to_task(j, k) = (pos.tasks.col(j) - pos.tasks.col(k)).norm();
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < m; ++k) {
      t.start_legs(i, k) = (pos.starts.col(i) - pos.tasks.col(k)).norm();
      t.end_legs(i, k) = (pos.tasks.col(k) - pos.end).norm();
    }
    t.start_to_end(i) = (pos.starts.col(i) - pos.end).norm();
  }

  data.mu = LegTable{t.task_to_task * config.mu_fraction, t.start_legs * config.mu_fraction,
                     t.end_legs * config.mu_fraction, t.start_to_end * config.mu_fraction};

  std::uniform_real_distribution<double> spread(config.sigma_fraction_min,
                                                config.sigma_fraction_max);
  auto scaled = [&](const Eigen::MatrixXd& mu) {
    Eigen::MatrixXd sigma(mu.rows(), mu.cols());
    for (Eigen::Index r = 0; r < mu.rows(); ++r)
      for (Eigen::Index c = 0; c < mu.cols(); ++c) sigma(r, c) = spread(rng) * mu(r, c);
    return sigma;
  };
  data.sigma.task_to_task = scaled(data.mu.task_to_task);
  data.sigma.start_legs = scaled(data.mu.start_legs);
  data.sigma.end_legs = scaled(data.mu.end_legs);
  data.sigma.start_to_end = scaled(data.mu.start_to_end);

  data.positions = std::move(pos);
  return Instance(std::move(data));
}

}  // namespace swarmsched
