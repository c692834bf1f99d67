#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "forecastability/core.hpp"
#include "forecastability/estimators.hpp"

namespace fcast {

/// Denominator floor for the exploitation ratio.
inline constexpr double kRatioFloorNats = 1e-6;
/// Below this, F-hat is too small for the exploitation ratio to mean much.
inline constexpr double kLowForecastabilityNats = 0.01;

/// Log predictive densities of a probe forecaster at one horizon.
///
/// Entry i is log q_h(y[origins[i] + horizon] | information up to origins[i]),
/// in nats and in the original units of the series.
struct ProbeEvaluation {
  std::size_t horizon = 0;
  std::vector<std::size_t> origins;
  std::vector<double> log_densities;

  [[nodiscard]] std::size_t n_eval() const { return log_densities.size(); }
  /// Throws DomainError on misaligned or non-finite input, or fewer than two
  /// evaluations. Thirty or more are recommended for stable averages.
  void validate(std::size_t series_length) const;
};

struct LossDecomposition {
  std::size_t horizon = 0;
  std::size_t n_eval = 0;
  double expected_loss_nats = 0.0;     // mean of -log q
  double marginal_entropy_nats = 0.0;  // H-hat(Y_{t+h}), original units
  double forecastability_nats = 0.0;   // F-hat(h)
  double irreducible_nats = 0.0;       // H-hat - F-hat
  double exploitability_nats = 0.0;    // H-hat - expected loss
  double exploitation_ratio = 0.0;     // exploitability / max(F-hat, floor)
  double approximation_gap_nats = 0.0; // F-hat - exploitability
  bool low_forecastability = false;
};

/// Splits a probe's realized log loss into the irreducible floor and the
/// approximation gap.
///
/// The marginal entropy is estimated with kl_entropy on the realized outcomes
/// in ORIGINAL units (jittered but never standardized) because the probe's
/// densities are in original units. Passing densities for a rescaled series
/// silently shifts every quantity by log(scale); this cannot be detected here.
/// Throws MissingHorizon if fhat lacks the probe's horizon and
/// InsufficientData if that horizon is a gap.
[[nodiscard]] LossDecomposition decompose_loss(const ProbeEvaluation& probe,
                                               const TimeSeries& series,
                                               const ForecastabilityProfile& fhat,
                                               const EstimatorConfig& config);

struct FanoBound {
  double min_error = 0.0;  // raw value, may be negative
  std::size_t alphabet_size = 0;
  bool vacuous = false;    // min_error <= 0
};

/// Lower bound on P(prediction != outcome) for an M-valued outcome:
/// (H - F - 1) / log(M), natural logs throughout.
[[nodiscard]] FanoBound fano_bound(double forecastability_nats, double marginal_entropy_nats,
                                   std::size_t alphabet_size);

/// Upper bound sqrt(F / 2) on the total variation distance between the
/// conditional and marginal predictive distributions.
[[nodiscard]] double pinsker_bound(double forecastability_nats);

struct FloorBounds {
  std::optional<double> fano_min_error;
  bool fano_vacuous = false;
  std::optional<std::size_t> alphabet_size;
  double pinsker_tv_bound = 0.0;
};

/// Pinsker bound on max(F, 0) and, when an alphabet size is given, Fano.
[[nodiscard]] FloorBounds floor_bounds(double forecastability_nats, double marginal_entropy_nats,
                                       std::optional<std::size_t> alphabet_size);

}  // namespace fcast
