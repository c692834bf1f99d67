#include "forecastability/significance.hpp"

#include <algorithm>
#include <string>

#include "forecastability/error.hpp"
#include "forecastability/parallel.hpp"
#include "forecastability/rng.hpp"

namespace fcast {

double permutation_p_value(double observed, std::span<const double> null_samples) {
  const auto exceed = std::count_if(null_samples.begin(), null_samples.end(),
                                    [&](double v) { return v >= observed; });
  return static_cast<double>(1 + exceed) / static_cast<double>(null_samples.size() + 1);
}

TimeSeries permuted_replicate(const TimeSeries& series, std::uint64_t seed,
                              std::size_t replicate) {
  std::vector<double> values(series.values().begin(), series.values().end());
  Engine engine = make_engine(derive_seed(seed, replicate));
  std::shuffle(values.begin(), values.end(), engine);
  return TimeSeries(std::move(values), series.name(), series.period_hint());
}

std::vector<SignificanceResult> permutation_test(const TimeSeries& series,
                                                 const InformationSetSpec& spec,
                                                 const EstimatorConfig& config,
                                                 std::size_t replicates, std::uint64_t seed,
                                                 std::size_t threads) {
  if (replicates < kMinReplicates) {
    throw ConfigError("permutation test needs at least " + std::to_string(kMinReplicates) +
                      " replicates, got " + std::to_string(replicates));
  }
  const ForecastabilityProfile observed = estimate_profile(series, spec, config);

  EstimatorConfig replicate_config = config;
  if (resolve_threads(threads) > 1) replicate_config.threads = 1;
  std::vector<ForecastabilityProfile> nulls(replicates);
  parallel_for(replicates, threads, [&](std::size_t b) {
    nulls[b] = estimate_profile(permuted_replicate(series, seed, b), spec, replicate_config);
  });

  std::vector<SignificanceResult> out;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (!observed.values_nats[i]) continue;
    SignificanceResult r;
    r.horizon = observed.horizons[i];
    r.observed_nats = *observed.values_nats[i];
    r.replicates = replicates;
    r.seed = seed;
    r.null_samples.reserve(replicates);
    for (const auto& null : nulls) r.null_samples.push_back(*null.values_nats[i]);
    r.p_value = permutation_p_value(r.observed_nats, r.null_samples);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace fcast
