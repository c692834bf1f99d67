#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "forecastability/core.hpp"
#include "forecastability/estimators.hpp"

namespace fcast {

inline constexpr std::size_t kMinReplicates = 19;

struct SignificanceResult {
  std::size_t horizon = 0;
  double observed_nats = 0.0;
  std::vector<double> null_samples;
  double p_value = 1.0;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
};

/// (1 + #{null >= observed}) / (B + 1).
[[nodiscard]] double permutation_p_value(double observed, std::span<const double> null_samples);

/// Uniform random permutation of the whole series for replicate `replicate`,
/// drawn from an engine seeded with derive_seed(seed, replicate).
[[nodiscard]] TimeSeries permuted_replicate(const TimeSeries& series, std::uint64_t seed,
                                            std::size_t replicate);

/// Permutation null for every horizon of `spec`.
///
/// Each replicate shuffles the series (destroying all temporal dependence)
/// and re-runs estimate_profile with the unchanged config. Horizons that are
/// gaps in the observed profile are omitted. `threads` spreads replicates
/// over workers without changing any output. Throws ConfigError if B < 19.
[[nodiscard]] std::vector<SignificanceResult> permutation_test(const TimeSeries& series,
                                                               const InformationSetSpec& spec,
                                                               const EstimatorConfig& config,
                                                               std::size_t replicates,
                                                               std::uint64_t seed,
                                                               std::size_t threads = 1);

}  // namespace fcast
