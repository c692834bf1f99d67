#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "forecastability/core.hpp"

namespace fcast {

/// Y_t = phi * Y_{t-1} + e_t
struct Ar1 {
  double phi = 0.0;
};

/// (1 - phi B)(1 - seasonal_phi B^period) Y_t = e_t
struct SeasonalAr {
  double phi = 0.0;
  double seasonal_phi = 0.0;
  std::size_t period = 12;
};

/// Autocorrelations rho_1..rho_L given directly. Simulation uses the
/// maximum-entropy extension, i.e. the AR(L) process whose Yule-Walker
/// equations reproduce these values.
struct ExplicitAcf {
  std::vector<double> rho;
};

struct GaussianProcessSpec {
  std::variant<Ar1, SeasonalAr, ExplicitAcf> kind;
  double innovation_variance = 1.0;

  /// Throws DomainError on a non-stationary or otherwise invalid model.
  void validate() const;
};

struct GaussianEntropySummary {
  double marginal_entropy_nats = 0.0;
  double entropy_rate_nats = 0.0;
  double one_step_forecastability_nats = 0.0;
};

/// -0.5 * log(1 - r2): mutual information of a Gaussian target with a
/// Gaussian predictor set explaining a fraction r2 of its variance.
[[nodiscard]] double forecastability_from_r2(double r2);

/// F(h) = -0.5 * log(1 - phi^(2h)) at each horizon.
[[nodiscard]] ForecastabilityProfile ar1_profile(double phi,
                                                 std::span<const std::size_t> horizons);

/// Exact stationary autocorrelations rho_1..rho_max_lag of the multiplicative
/// seasonal AR model, from the MA(infinity) weights truncated once the tail
/// energy is provably below 1e-12 of the total.
[[nodiscard]] std::vector<double> seasonal_ar_acf(double phi, double seasonal_phi,
                                                  std::size_t period, std::size_t max_lag);

/// rho_1..rho_max_lag for any supported model. For ExplicitAcf the supplied
/// sequence must already be long enough (CoverageError otherwise).
[[nodiscard]] std::vector<double> autocorrelation(const GaussianProcessSpec& spec,
                                                  std::size_t max_lag);

/// Gaussian forecastability of Y_{t+h} given the window (Y_t, ..., Y_{t-p+1}).
///
/// `rho` holds rho_1, rho_2, ... (rho_0 = 1 is implicit). The explained
/// variance is r' R^{-1} r with R the p x p Toeplitz correlation matrix,
/// accumulated as a running sum of squared whitened covariances so that the
/// value for lag order p is a prefix of the value for p + 1. This makes the
/// profile exactly non-decreasing in p, in floating point as well.
[[nodiscard]] ForecastabilityProfile gaussian_profile_from_acf(
    std::span<const double> rho, std::size_t p, std::span<const std::size_t> horizons);

/// gaussian_profile_from_acf over the model's own autocorrelations.
[[nodiscard]] ForecastabilityProfile analytic_profile(const GaussianProcessSpec& spec,
                                                      std::size_t p,
                                                      std::span<const std::size_t> horizons);

/// Marginal entropy, entropy rate and one-step forecastability of a Gaussian
/// AR(1). Other models throw DomainError.
[[nodiscard]] GaussianEntropySummary gaussian_entropy_summary(const GaussianProcessSpec& spec);

/// AR recursion coefficients a_1..a_q with Y_t = sum_j a_j Y_{t-j} + e_t.
[[nodiscard]] std::vector<double> ar_coefficients(const GaussianProcessSpec& spec);

/// Sample path of length n from zero initial conditions, discarding the first
/// `burn_in` steps. Deterministic in (spec, n, seed, burn_in).
[[nodiscard]] TimeSeries simulate(const GaussianProcessSpec& spec, std::size_t n,
                                  std::uint64_t seed, std::size_t burn_in = 1000);

}  // namespace fcast
