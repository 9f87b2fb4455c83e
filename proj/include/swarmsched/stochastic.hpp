#pragma once

#include <random>
#include <string>

namespace swarmsched {

// Gaussian travel delay G(mu, sigma) attached to one leg.
struct DelayParams {
  double mu = 0.0;
  double sigma = 0.0;
};

// Corrected:    t^s = mu + sigma   * z_eps   (satisfies P(delay <= t^s) = eps)
// PaperLiteral: t^s = mu + sigma^2 * z_eps   (variance in place of stdev)
enum class BufferMode { Corrected, PaperLiteral };

const char* to_string(BufferMode mode);
BufferMode buffer_mode_from_string(const std::string& name);

// Standard normal CDF via erfc.
double normal_cdf(double x);

// Inverse of normal_cdf on (0, 1). Throws DomainError outside.
// Accurate to |normal_cdf(q) - p| < 1e-9.
double normal_quantile(double p);

// Safety margin added to a leg so that the robot arrives on time with
// probability epsilon.
double buffer(const DelayParams& params, double epsilon,
              BufferMode mode = BufferMode::Corrected);

// Same as buffer() with a precomputed quantile z = normal_quantile(epsilon).
inline double buffer_from_quantile(const DelayParams& params, double z,
                                   BufferMode mode) {
  const double spread =
      mode == BufferMode::Corrected ? params.sigma : params.sigma * params.sigma;
  return params.mu + spread * z;
}

using Rng = std::mt19937_64;

// One draw from Normal(mu, sigma). Negative draws are not clamped.
double sample_delay(const DelayParams& params, Rng& rng);

}  // namespace swarmsched
