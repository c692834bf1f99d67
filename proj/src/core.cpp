#include "forecastability/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "forecastability/error.hpp"

namespace fcast {

TimeSeries::TimeSeries(std::vector<double> values, std::optional<std::string> name,
                       std::optional<std::size_t> period_hint)
    : values_(std::move(values)), name_(std::move(name)), period_hint_(period_hint) {
  if (values_.size() < 2) {
    throw InsufficientData("time series needs at least 2 observations, got " +
                           std::to_string(values_.size()));
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw DomainError("time series value at index " + std::to_string(i) + " is not finite");
    }
  }
  if (period_hint_ && *period_hint_ == 0) {
    throw DomainError("period hint must be positive");
  }
}

void InformationSetSpec::validate() const {
  if (lag_order < 1) throw ConfigError("lag order must be >= 1");
  if (horizons.empty()) throw ConfigError("horizon list is empty");
  if (horizons.front() < 1) throw ConfigError("horizons must be >= 1");
  for (std::size_t i = 1; i < horizons.size(); ++i) {
    if (horizons[i] <= horizons[i - 1]) {
      throw ConfigError("horizons must be strictly ascending");
    }
  }
}

PointSet PointSet::column(std::span<const double> values) {
  PointSet out(values.size(), 1);
  std::copy(values.begin(), values.end(), out.data.begin());
  return out;
}

std::size_t effective_sample_size(std::size_t n, std::size_t p, std::size_t h) {
  if (p == 0 || h == 0) return 0;
  if (n < h + p) return 0;
  return n - h - p + 1;
}

EmbeddedPairs lag_embed(std::span<const double> series, std::size_t p, std::size_t h) {
  if (p == 0 || h == 0) throw ConfigError("lag order and horizon must be positive");
  const std::size_t n_eff = effective_sample_size(series.size(), p, h);
  if (n_eff < 1) {
    throw InsufficientData("series of length " + std::to_string(series.size()) +
                           " too short for p=" + std::to_string(p) +
                           ", h=" + std::to_string(h));
  }
  EmbeddedPairs out;
  out.horizon = h;
  out.lag_order = p;
  out.past = PointSet(n_eff, p);
  out.future.resize(n_eff);
  for (std::size_t i = 0; i < n_eff; ++i) {
    auto row = out.past.row(i);
    const std::size_t last = p - 1 + i;
    for (std::size_t j = 0; j < p; ++j) row[j] = series[last - j];
    out.future[i] = series[last + h];
  }
  return out;
}

EmbeddedPairs lag_embed(const TimeSeries& series, std::size_t p, std::size_t h) {
  return lag_embed(series.values(), p, h);
}

bool ForecastabilityProfile::contains(std::size_t h) const {
  return std::find(horizons.begin(), horizons.end(), h) != horizons.end();
}

std::optional<double> ForecastabilityProfile::at(std::size_t h) const {
  auto it = std::find(horizons.begin(), horizons.end(), h);
  if (it == horizons.end()) {
    throw MissingHorizon("profile has no horizon " + std::to_string(h));
  }
  return values_nats[static_cast<std::size_t>(it - horizons.begin())];
}

std::vector<std::optional<double>> ForecastabilityProfile::clamped_nonneg() const {
  std::vector<std::optional<double>> out(values_nats.size());
  for (std::size_t i = 0; i < values_nats.size(); ++i) {
    if (values_nats[i]) out[i] = std::max(*values_nats[i], 0.0);
  }
  return out;
}

bool ForecastabilityProfile::all_gaps() const {
  return std::none_of(values_nats.begin(), values_nats.end(),
                      [](const auto& v) { return v.has_value(); });
}

}  // namespace fcast
