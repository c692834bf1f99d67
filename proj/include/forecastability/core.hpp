#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fcast {

/// Ordered real-valued observations in original units.
///
/// Construction validates that there are at least two values and that all
/// of them are finite; after that the object is immutable.
class TimeSeries {
 public:
  explicit TimeSeries(std::vector<double> values,
                      std::optional<std::string> name = std::nullopt,
                      std::optional<std::size_t> period_hint = std::nullopt);

  [[nodiscard]] std::span<const double> values() const { return values_; }
  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
  [[nodiscard]] const std::optional<std::string>& name() const { return name_; }
  [[nodiscard]] std::optional<std::size_t> period_hint() const { return period_hint_; }

 private:
  std::vector<double> values_;
  std::optional<std::string> name_;
  std::optional<std::size_t> period_hint_;
};

/// Declared conditioning structure: a window of the last `lag_order`
/// observations, evaluated at each of `horizons`.
struct InformationSetSpec {
  std::size_t lag_order = 1;
  std::vector<std::size_t> horizons;

  /// Throws ConfigError unless lag_order >= 1 and horizons are a nonempty,
  /// strictly ascending list of positive integers.
  void validate() const;
};

/// Row-major matrix of points: `rows` points of dimension `dim`.
struct PointSet {
  std::size_t rows = 0;
  std::size_t dim = 0;
  std::vector<double> data;

  PointSet() = default;
  PointSet(std::size_t rows, std::size_t dim) : rows(rows), dim(dim), data(rows * dim) {}

  [[nodiscard]] std::span<const double> row(std::size_t i) const {
    return {data.data() + i * dim, dim};
  }
  [[nodiscard]] std::span<double> row(std::size_t i) { return {data.data() + i * dim, dim}; }

  /// One-dimensional point set from a plain sequence.
  static PointSet column(std::span<const double> values);
};

/// Paired (past window, future value) dataset for one horizon.
///
/// Pair i has past = (y[p-1+i], y[p-2+i], ..., y[i]), most recent lag first,
/// and future = y[p-1+i+h].
struct EmbeddedPairs {
  PointSet past;
  std::vector<double> future;
  std::size_t horizon = 0;
  std::size_t lag_order = 0;

  [[nodiscard]] std::size_t n_effective() const { return future.size(); }
  /// Index into the source series of the last observation in pair i's window.
  [[nodiscard]] std::size_t origin(std::size_t i) const { return lag_order - 1 + i; }
};

/// Number of pairs lag_embed would produce; zero when the series is too short.
[[nodiscard]] std::size_t effective_sample_size(std::size_t n, std::size_t p, std::size_t h);

/// Throws InsufficientData when n - h - p + 1 < 1.
[[nodiscard]] EmbeddedPairs lag_embed(std::span<const double> series, std::size_t p,
                                      std::size_t h);
[[nodiscard]] EmbeddedPairs lag_embed(const TimeSeries& series, std::size_t p, std::size_t h);

enum class ProfileSource { kAnalytic, kEstimated };

struct EstimatorMeta {
  std::size_t k = 0;
  std::size_t lag_order = 0;
  std::vector<std::size_t> n_effective;  // parallel to the profile's horizons
  double jitter_scale = 0.0;
  bool standardize = true;
  unsigned long long seed = 0;
};

/// Forecastability F(h) in nats for each horizon.
///
/// Estimated profiles may contain small negative values (estimator noise) and
/// gaps (std::nullopt) at horizons that could not be estimated. Neither is
/// hidden here; use clamped_nonneg() when a non-negative view is needed.
struct ForecastabilityProfile {
  std::vector<std::size_t> horizons;
  std::vector<std::optional<double>> values_nats;
  ProfileSource source = ProfileSource::kAnalytic;
  std::optional<EstimatorMeta> estimator_meta;
  /// Reason for each gap, empty for estimated horizons.
  std::vector<std::string> gap_reasons;

  [[nodiscard]] std::size_t size() const { return horizons.size(); }
  [[nodiscard]] bool contains(std::size_t h) const;
  /// Value at horizon h; nullopt when h is a gap. Throws MissingHorizon if absent.
  [[nodiscard]] std::optional<double> at(std::size_t h) const;
  [[nodiscard]] std::vector<std::optional<double>> clamped_nonneg() const;
  [[nodiscard]] bool all_gaps() const;
};

}  // namespace fcast
