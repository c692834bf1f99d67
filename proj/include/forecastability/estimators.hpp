#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "forecastability/core.hpp"
#include "forecastability/neighbors.hpp"

namespace fcast {

struct EstimatorConfig {
  std::size_t k = 5;
  /// Jitter amplitude relative to the sample standard deviation. Points are
  /// shifted by independent uniform draws on [-a, a].
  double jitter_scale = 1e-10;
  bool standardize = true;
  std::uint64_t seed = 0;
  NeighborSearch search = NeighborSearch::kAuto;
  /// Worker threads for neighbour queries; 0 uses all hardware threads.
  /// Results do not depend on this value.
  std::size_t threads = 1;

  void validate() const;
};

/// Kozachenko-Leonenko differential entropy (nats) under the max-norm:
/// psi(N) - psi(k) + d*log(2) + (d/N) * sum_i log(eps_i).
/// Throws ConfigError if k >= N and DegenerateSample if any eps_i is zero.
[[nodiscard]] double kl_entropy(const PointSet& sample, std::size_t k,
                                NeighborSearch search = NeighborSearch::kAuto,
                                std::size_t threads = 1);

/// Kraskov-Stoegbauer-Grassberger mutual information (algorithm 1), nats.
///
/// eps_i is the max-norm distance to the k-th neighbour in the joint space;
/// n_x(i), n_y(i) count marginal neighbours strictly inside eps_i, and
/// I = psi(k) + psi(N) - mean(psi(n_x + 1) + psi(n_y + 1)).
[[nodiscard]] double ksg_mutual_information(const PointSet& x, const PointSet& y, std::size_t k,
                                            NeighborSearch search = NeighborSearch::kAuto,
                                            std::size_t threads = 1);

/// Series after the configured standardization and seeded jitter. This is the
/// exact input every profile estimate embeds. Throws DegenerateSample for a
/// constant series.
[[nodiscard]] std::vector<double> prepare_series(std::span<const double> values,
                                                 const EstimatorConfig& config);

/// Estimated F(h) at each horizon via KSG on lag-embedded pairs.
///
/// Horizons with n - h - p + 1 <= k + 1 become gaps (with a reason) instead of
/// failing the whole profile.
[[nodiscard]] ForecastabilityProfile estimate_profile(const TimeSeries& series,
                                                      const InformationSetSpec& spec,
                                                      const EstimatorConfig& config);

struct FiniteWindowBudget {
  std::vector<std::size_t> horizons;
  std::size_t p_small = 0;
  std::size_t p_large = 0;
  std::vector<double> small_nats;  // F-hat(h; p_small) on the common window
  std::vector<double> large_nats;  // F-hat(h; p_large) on the common window
  std::vector<double> delta_nats;  // large - small; may be slightly negative
  std::vector<std::size_t> n_effective;
};

/// Estimated information lost by truncating the window from p_large to
/// p_small lags. Both estimates use the same pairs (the p_small window is the
/// most-recent prefix of the p_large window), so their difference is the
/// conditional mutual information of the remote lags given the short window.
[[nodiscard]] FiniteWindowBudget finite_window_budget(const TimeSeries& series,
                                                      std::size_t p_small, std::size_t p_large,
                                                      std::span<const std::size_t> horizons,
                                                      const EstimatorConfig& config);

}  // namespace fcast
