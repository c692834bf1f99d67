#include "forecastability/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "forecastability/error.hpp"
#include "forecastability/rng.hpp"

namespace fcast {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_horizons(std::span<const std::size_t> horizons) {
  InformationSetSpec{1, {horizons.begin(), horizons.end()}}.validate();
}

void check_seasonal(double phi, double seasonal_phi, std::size_t period) {
  if (!(std::abs(phi) < 1.0) || !(std::abs(seasonal_phi) < 1.0)) {
    throw DomainError("seasonal AR requires |phi| < 1 and |Phi| < 1");
  }
  if (period < 1) throw DomainError("seasonal period must be >= 1");
}

// Durbin-Levinson: AR(L) coefficients whose autocorrelations are rho_1..rho_L.
// Returns the coefficients and the innovation variance relative to gamma(0).
std::pair<std::vector<double>, double> levinson(std::span<const double> rho) {
  std::vector<double> a;
  double v = 1.0;
  for (std::size_t m = 0; m < rho.size(); ++m) {
    double num = rho[m];
    for (std::size_t j = 0; j < m; ++j) num -= a[j] * rho[m - 1 - j];
    const double kappa = num / v;
    if (!(std::abs(kappa) < 1.0)) {
      throw SingularSystem("autocorrelation sequence is not positive definite at lag " +
                           std::to_string(m + 1));
    }
    std::vector<double> next(m + 1);
    for (std::size_t j = 0; j < m; ++j) next[j] = a[j] - kappa * a[m - 1 - j];
    next[m] = kappa;
    a = std::move(next);
    v *= 1.0 - kappa * kappa;
  }
  return {a, v};
}

}  // namespace

void GaussianProcessSpec::validate() const {
  if (!(innovation_variance > 0.0) || !std::isfinite(innovation_variance)) {
    throw DomainError("innovation variance must be positive and finite");
  }
  std::visit(overloaded{
                 [](const Ar1& m) {
                   if (!(std::abs(m.phi) < 1.0)) throw DomainError("AR(1) requires |phi| < 1");
                 },
                 [](const SeasonalAr& m) { check_seasonal(m.phi, m.seasonal_phi, m.period); },
                 [](const ExplicitAcf& m) {
                   if (m.rho.empty()) throw DomainError("explicit ACF is empty");
                   for (double r : m.rho) {
                     if (!(std::abs(r) < 1.0)) {
                       throw DomainError("explicit ACF values must satisfy |rho| < 1");
                     }
                   }
                 },
             },
             kind);
}

double forecastability_from_r2(double r2) {
  if (!(r2 < 1.0)) throw SingularSystem("explained variance fraction reached 1");
  return -0.5 * std::log1p(-r2);
}

ForecastabilityProfile ar1_profile(double phi, std::span<const std::size_t> horizons) {
  if (!(std::abs(phi) < 1.0)) throw DomainError("AR(1) requires |phi| < 1");
  check_horizons(horizons);
  ForecastabilityProfile out;
  out.source = ProfileSource::kAnalytic;
  out.horizons.assign(horizons.begin(), horizons.end());
  out.gap_reasons.assign(horizons.size(), {});
  for (std::size_t h : horizons) {
    const double r2 = std::pow(phi, 2.0 * static_cast<double>(h));
    out.values_nats.emplace_back(-0.5 * std::log1p(-r2));
  }
  return out;
}

std::vector<double> seasonal_ar_acf(double phi, double seasonal_phi, std::size_t period,
                                    std::size_t max_lag) {
  check_seasonal(phi, seasonal_phi, period);
  const double s = static_cast<double>(period);
  // |psi_j| <= (floor(j/s) + 1) r^j, so the tail energy past J is bounded by
  // a geometric series once the bound's step ratio drops below one.
  const double r = std::max(std::abs(phi), std::pow(std::abs(seasonal_phi), 1.0 / s));
  std::size_t cutoff = 0;
  if (r > 0.0) {
    for (std::size_t j = 1;; ++j) {
      const double jd = static_cast<double>(j);
      const double poly = (jd / s + 1.0) * (jd / s + 1.0);
      const double ratio = ((jd + 1.0) / s + 1.0) * ((jd + 1.0) / s + 1.0) / poly * r * r;
      const double next_term = ((jd + 1.0) / s + 1.0) * ((jd + 1.0) / s + 1.0) *
                               std::pow(r, 2.0 * (jd + 1.0));
      if (ratio < 1.0 && next_term / (1.0 - ratio) < 1e-12) {
        cutoff = j;
        break;
      }
    }
  }

  const std::size_t len = cutoff + max_lag + 1;
  std::vector<double> psi(len, 0.0);
  psi[0] = 1.0;
  for (std::size_t j = 1; j < len; ++j) {
    double v = phi * psi[j - 1];
    if (j >= period) v += seasonal_phi * psi[j - period];
    if (j >= period + 1) v -= phi * seasonal_phi * psi[j - period - 1];
    psi[j] = v;
  }
  auto gamma = [&](std::size_t h) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= cutoff; ++j) acc += psi[j] * psi[j + h];
    return acc;
  };
  const double g0 = gamma(0);
  std::vector<double> rho(max_lag);
  for (std::size_t h = 1; h <= max_lag; ++h) rho[h - 1] = gamma(h) / g0;
  return rho;
}

std::vector<double> autocorrelation(const GaussianProcessSpec& spec, std::size_t max_lag) {
  spec.validate();
  return std::visit(
      overloaded{
          [&](const Ar1& m) {
            std::vector<double> rho(max_lag);
            for (std::size_t h = 1; h <= max_lag; ++h) {
              rho[h - 1] = std::pow(m.phi, static_cast<double>(h));
            }
            return rho;
          },
          [&](const SeasonalAr& m) {
            return seasonal_ar_acf(m.phi, m.seasonal_phi, m.period, max_lag);
          },
          [&](const ExplicitAcf& m) {
            if (m.rho.size() < max_lag) {
              throw CoverageError("explicit ACF has " + std::to_string(m.rho.size()) +
                                  " lags, " + std::to_string(max_lag) + " needed");
            }
            return std::vector<double>(m.rho.begin(), m.rho.begin() + max_lag);
          },
      },
      spec.kind);
}

ForecastabilityProfile gaussian_profile_from_acf(std::span<const double> rho, std::size_t p,
                                                 std::span<const std::size_t> horizons) {
  if (p < 1) throw ConfigError("lag order must be >= 1");
  check_horizons(horizons);
  const std::size_t needed = horizons.back() + p - 1;
  if (rho.size() < needed) {
    throw CoverageError("autocorrelation sequence has " + std::to_string(rho.size()) +
                        " lags, " + std::to_string(needed) + " needed");
  }
  auto corr = [&](std::size_t lag) { return lag == 0 ? 1.0 : rho[lag - 1]; };

  // Row-by-row Cholesky of the Toeplitz matrix; row i depends only on rows < i.
  std::vector<double> chol(p * p, 0.0);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double acc = corr(i - j);
      for (std::size_t m = 0; m < j; ++m) acc -= chol[i * p + m] * chol[j * p + m];
      if (i == j) {
        if (!(acc > 0.0)) {
          throw SingularSystem("Toeplitz correlation matrix of order " + std::to_string(p) +
                               " is not positive definite");
        }
        chol[i * p + i] = std::sqrt(acc);
      } else {
        chol[i * p + j] = acc / chol[j * p + j];
      }
    }
  }

  ForecastabilityProfile out;
  out.source = ProfileSource::kAnalytic;
  out.horizons.assign(horizons.begin(), horizons.end());
  out.gap_reasons.assign(horizons.size(), {});
  std::vector<double> w(p);
  for (std::size_t h : horizons) {
    double r2 = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
      double acc = corr(h + i);
      for (std::size_t m = 0; m < i; ++m) acc -= chol[i * p + m] * w[m];
      w[i] = acc / chol[i * p + i];
      r2 += w[i] * w[i];
    }
    out.values_nats.emplace_back(forecastability_from_r2(r2));
  }
  return out;
}

ForecastabilityProfile analytic_profile(const GaussianProcessSpec& spec, std::size_t p,
                                        std::span<const std::size_t> horizons) {
  check_horizons(horizons);
  if (std::holds_alternative<Ar1>(spec.kind) && p == 1) {
    return ar1_profile(std::get<Ar1>(spec.kind).phi, horizons);
  }
  const auto rho = autocorrelation(spec, horizons.back() + p - 1);
  return gaussian_profile_from_acf(rho, p, horizons);
}

GaussianEntropySummary gaussian_entropy_summary(const GaussianProcessSpec& spec) {
  spec.validate();
  const auto* ar1 = std::get_if<Ar1>(&spec.kind);
  if (ar1 == nullptr) throw DomainError("entropy summary is only available for AR(1)");
  const double phi2 = ar1->phi * ar1->phi;
  const double two_pi_e = 2.0 * std::numbers::pi * std::numbers::e;
  GaussianEntropySummary out;
  out.entropy_rate_nats = 0.5 * std::log(two_pi_e * spec.innovation_variance);
  out.one_step_forecastability_nats = -0.5 * std::log1p(-phi2);
  out.marginal_entropy_nats = out.entropy_rate_nats + out.one_step_forecastability_nats;
  return out;
}

std::vector<double> ar_coefficients(const GaussianProcessSpec& spec) {
  spec.validate();
  return std::visit(overloaded{
                        [](const Ar1& m) { return std::vector<double>{m.phi}; },
                        [](const SeasonalAr& m) {
                          std::vector<double> a(m.period + 1, 0.0);
                          a[0] += m.phi;
                          a[m.period - 1] += m.seasonal_phi;
                          a[m.period] -= m.phi * m.seasonal_phi;
                          return a;
                        },
                        [](const ExplicitAcf& m) { return levinson(m.rho).first; },
                    },
                    spec.kind);
}

TimeSeries simulate(const GaussianProcessSpec& spec, std::size_t n, std::uint64_t seed,
                    std::size_t burn_in) {
  const auto a = ar_coefficients(spec);
  const double sigma = std::sqrt(spec.innovation_variance);
  Engine engine = make_engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  const std::size_t total = burn_in + n;
  std::vector<double> path(total, 0.0);
  for (std::size_t t = 0; t < total; ++t) {
    double v = sigma * normal(engine);
    const std::size_t q = std::min(a.size(), t);
    for (std::size_t j = 1; j <= q; ++j) v += a[j - 1] * path[t - j];
    path[t] = v;
  }
  return TimeSeries(std::vector<double>(path.begin() + static_cast<std::ptrdiff_t>(burn_in),
                                        path.end()));
}

}  // namespace fcast
