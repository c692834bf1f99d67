#include "forecastability/estimators.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "forecastability/error.hpp"
#include "forecastability/rng.hpp"
#include "forecastability/special_functions.hpp"

namespace fcast {
namespace {

constexpr std::uint64_t kJitterStream = 0x6a6974746572ULL;

PointSet concat(const PointSet& x, const PointSet& y) {
  PointSet joint(x.rows, x.dim + y.dim);
  for (std::size_t i = 0; i < x.rows; ++i) {
    auto out = joint.row(i);
    const auto a = x.row(i);
    const auto b = y.row(i);
    std::copy(a.begin(), a.end(), out.begin());
    std::copy(b.begin(), b.end(), out.begin() + static_cast<std::ptrdiff_t>(x.dim));
  }
  return joint;
}

PointSet prefix_columns(const PointSet& points, std::size_t dim) {
  PointSet out(points.rows, dim);
  for (std::size_t i = 0; i < points.rows; ++i) {
    const auto src = points.row(i);
    std::copy(src.begin(), src.begin() + static_cast<std::ptrdiff_t>(dim), out.row(i).begin());
  }
  return out;
}

void check_sample(std::size_t n, std::size_t k) {
  if (k < 1) throw ConfigError("k must be >= 1");
  if (k >= n) {
    throw ConfigError("k=" + std::to_string(k) + " requires more than " + std::to_string(k) +
                      " points, got " + std::to_string(n));
  }
}

void check_distances(std::span<const double> eps) {
  for (double e : eps) {
    if (!(e > 0.0)) {
      throw DegenerateSample("zero neighbour distance: coincident points remain after jitter");
    }
  }
}

}  // namespace

void EstimatorConfig::validate() const {
  if (k < 1) throw ConfigError("k must be >= 1");
  if (!(jitter_scale >= 0.0) || !std::isfinite(jitter_scale)) {
    throw ConfigError("jitter scale must be finite and >= 0");
  }
}

double kl_entropy(const PointSet& sample, std::size_t k, NeighborSearch search,
                  std::size_t threads) {
  const std::size_t n = sample.rows;
  check_sample(n, k);
  const auto eps = kth_neighbor_distances(sample, k, search, threads);
  check_distances(eps);
  double log_sum = 0.0;
  for (double e : eps) log_sum += std::log(e);
  const double nd = static_cast<double>(n);
  const double d = static_cast<double>(sample.dim);
  return digamma(nd) - digamma(static_cast<double>(k)) + d * std::numbers::ln2 +
         d * log_sum / nd;
}

double ksg_mutual_information(const PointSet& x, const PointSet& y, std::size_t k,
                              NeighborSearch search, std::size_t threads) {
  if (x.rows != y.rows) throw ConfigError("x and y must have the same number of points");
  const std::size_t n = x.rows;
  check_sample(n, k);
  const PointSet joint = concat(x, y);
  const auto eps = kth_neighbor_distances(joint, k, search, threads);
  check_distances(eps);
  const auto nx = counts_within(x, eps, search, threads);
  const auto ny = counts_within(y, eps, search, threads);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += digamma(static_cast<double>(nx[i] + 1)) + digamma(static_cast<double>(ny[i] + 1));
  }
  return digamma(static_cast<double>(k)) + digamma(static_cast<double>(n)) -
         acc / static_cast<double>(n);
}

std::vector<double> prepare_series(std::span<const double> values, const EstimatorConfig& config) {
  config.validate();
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / n);
  if (!(sd > 0.0)) throw DegenerateSample("series is constant");

  std::vector<double> out(values.begin(), values.end());
  double scale = sd;
  if (config.standardize) {
    for (double& v : out) v = (v - mean) / sd;
    scale = 1.0;
  }
  if (config.jitter_scale > 0.0) {
    Engine engine = make_engine(derive_seed(config.seed, kJitterStream));
    const double amp = config.jitter_scale * scale;
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (double& v : out) v += amp * unit(engine);
  }
  return out;
}

ForecastabilityProfile estimate_profile(const TimeSeries& series, const InformationSetSpec& spec,
                                        const EstimatorConfig& config) {
  spec.validate();
  config.validate();
  const auto prepared = prepare_series(series.values(), config);
  const std::size_t p = spec.lag_order;

  ForecastabilityProfile out;
  out.source = ProfileSource::kEstimated;
  out.horizons = spec.horizons;
  EstimatorMeta meta{config.k, p, {}, config.jitter_scale, config.standardize, config.seed};
  for (std::size_t h : spec.horizons) {
    const std::size_t n_eff = effective_sample_size(series.size(), p, h);
    meta.n_effective.push_back(n_eff);
    if (n_eff <= config.k + 1) {
      out.values_nats.emplace_back(std::nullopt);
      out.gap_reasons.push_back("insufficient data: n_effective=" + std::to_string(n_eff) +
                                " <= k+1=" + std::to_string(config.k + 1));
      continue;
    }
    const EmbeddedPairs pairs = lag_embed(prepared, p, h);
    out.values_nats.emplace_back(ksg_mutual_information(
        pairs.past, PointSet::column(pairs.future), config.k, config.search, config.threads));
    out.gap_reasons.emplace_back();
  }
  out.estimator_meta = std::move(meta);
  return out;
}

FiniteWindowBudget finite_window_budget(const TimeSeries& series, std::size_t p_small,
                                        std::size_t p_large,
                                        std::span<const std::size_t> horizons,
                                        const EstimatorConfig& config) {
  if (p_small < 1 || p_small >= p_large) {
    throw ConfigError("finite window budget requires 1 <= p_small < p_large");
  }
  InformationSetSpec spec{p_large, {horizons.begin(), horizons.end()}};
  spec.validate();
  config.validate();
  for (std::size_t h : horizons) {
    const std::size_t n_eff = effective_sample_size(series.size(), p_large, h);
    if (n_eff <= config.k + 1) {
      throw InsufficientData("p=" + std::to_string(p_large) + ", h=" + std::to_string(h) +
                             " leaves n_effective=" + std::to_string(n_eff));
    }
  }
  const auto prepared = prepare_series(series.values(), config);

  FiniteWindowBudget out;
  out.horizons = spec.horizons;
  out.p_small = p_small;
  out.p_large = p_large;
  for (std::size_t h : horizons) {
    const EmbeddedPairs pairs = lag_embed(prepared, p_large, h);
    const PointSet future = PointSet::column(pairs.future);
    const double large =
        ksg_mutual_information(pairs.past, future, config.k, config.search, config.threads);
    const double small = ksg_mutual_information(prefix_columns(pairs.past, p_small), future,
                                                config.k, config.search, config.threads);
    out.large_nats.push_back(large);
    out.small_nats.push_back(small);
    out.delta_nats.push_back(large - small);
    out.n_effective.push_back(pairs.n_effective());
  }
  return out;
}

}  // namespace fcast
