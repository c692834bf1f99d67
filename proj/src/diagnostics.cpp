#include "forecastability/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "forecastability/error.hpp"
#include "forecastability/rng.hpp"

namespace fcast {
namespace {

constexpr std::uint64_t kMarginalJitterStream = 0x6d617267696eULL;

}  // namespace

void ProbeEvaluation::validate(std::size_t series_length) const {
  if (horizon < 1) throw DomainError("probe horizon must be >= 1");
  if (origins.size() != log_densities.size()) {
    throw DomainError("probe has " + std::to_string(origins.size()) + " origins but " +
                      std::to_string(log_densities.size()) + " log densities");
  }
  if (n_eval() < 2) throw DomainError("probe needs at least 2 evaluations");
  for (std::size_t i = 0; i < n_eval(); ++i) {
    if (origins[i] + horizon >= series_length) {
      throw DomainError("probe origin " + std::to_string(origins[i]) + " at horizon " +
                        std::to_string(horizon) + " is outside a series of length " +
                        std::to_string(series_length));
    }
    if (!std::isfinite(log_densities[i])) {
      throw DomainError("probe log density at origin " + std::to_string(origins[i]) +
                        " is not finite");
    }
  }
}

LossDecomposition decompose_loss(const ProbeEvaluation& probe, const TimeSeries& series,
                                 const ForecastabilityProfile& fhat,
                                 const EstimatorConfig& config) {
  config.validate();
  probe.validate(series.size());
  const auto f = fhat.at(probe.horizon);
  if (!f) {
    throw InsufficientData("forecastability at horizon " + std::to_string(probe.horizon) +
                           " could not be estimated");
  }

  std::vector<double> outcomes(probe.n_eval());
  for (std::size_t i = 0; i < probe.n_eval(); ++i) {
    outcomes[i] = series[probe.origins[i] + probe.horizon];
  }
  if (config.jitter_scale > 0.0) {
    double mean = 0.0;
    for (double v : outcomes) mean += v;
    mean /= static_cast<double>(outcomes.size());
    double ss = 0.0;
    for (double v : outcomes) ss += (v - mean) * (v - mean);
    const double amp = config.jitter_scale * std::sqrt(ss / static_cast<double>(outcomes.size()));
    Engine engine = make_engine(derive_seed(config.seed, kMarginalJitterStream));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (double& v : outcomes) v += amp * unit(engine);
  }

  LossDecomposition out;
  out.horizon = probe.horizon;
  out.n_eval = probe.n_eval();
  // Running mean: exact when every density is the same.
  double loss = 0.0;
  for (std::size_t i = 0; i < probe.n_eval(); ++i) {
    loss += (-probe.log_densities[i] - loss) / static_cast<double>(i + 1);
  }
  out.expected_loss_nats = loss;
  out.marginal_entropy_nats =
      kl_entropy(PointSet::column(outcomes), config.k, config.search, config.threads);
  out.forecastability_nats = *f;
  out.irreducible_nats = out.marginal_entropy_nats - out.forecastability_nats;
  out.exploitability_nats = out.marginal_entropy_nats - out.expected_loss_nats;
  out.exploitation_ratio =
      out.exploitability_nats / std::max(out.forecastability_nats, kRatioFloorNats);
  out.approximation_gap_nats = out.forecastability_nats - out.exploitability_nats;
  out.low_forecastability = out.forecastability_nats < kLowForecastabilityNats;
  return out;
}

FanoBound fano_bound(double forecastability_nats, double marginal_entropy_nats,
                     std::size_t alphabet_size) {
  if (alphabet_size < 2) throw DomainError("Fano bound needs an alphabet of at least 2 symbols");
  FanoBound out;
  out.alphabet_size = alphabet_size;
  out.min_error = (marginal_entropy_nats - forecastability_nats - 1.0) /
                  std::log(static_cast<double>(alphabet_size));
  out.vacuous = out.min_error <= 0.0;
  return out;
}

double pinsker_bound(double forecastability_nats) {
  if (!(forecastability_nats >= 0.0)) {
    throw DomainError("Pinsker bound needs non-negative forecastability");
  }
  return std::sqrt(forecastability_nats / 2.0);
}

FloorBounds floor_bounds(double forecastability_nats, double marginal_entropy_nats,
                         std::optional<std::size_t> alphabet_size) {
  FloorBounds out;
  out.pinsker_tv_bound = pinsker_bound(std::max(forecastability_nats, 0.0));
  if (alphabet_size) {
    const auto fano = fano_bound(forecastability_nats, marginal_entropy_nats, *alphabet_size);
    out.fano_min_error = fano.min_error;
    out.fano_vacuous = fano.vacuous;
    out.alphabet_size = alphabet_size;
  }
  return out;
}

}  // namespace fcast
