#pragma once

// Test-only data generators and reference probes. Nothing here is used by the
// library; the oracles must stay independent of the code they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "forecastability/core.hpp"

namespace fcast::testing {

struct Pairs {
  PointSet x;
  PointSet y;
};

/// N draws of a standard bivariate normal with correlation rho.
inline Pairs bivariate_gaussian(std::size_t n, double rho, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal;
  Pairs out{PointSet(n, 1), PointSet(n, 1)};
  const double c = std::sqrt(1.0 - rho * rho);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = normal(engine);
    const double b = normal(engine);
    out.x.data[i] = a;
    out.y.data[i] = rho * a + c * b;
  }
  return out;
}

inline std::vector<double> gaussian_noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal;
  std::vector<double> out(n);
  for (double& v : out) v = normal(engine);
  return out;
}

inline double gaussian_mi(double rho) { return -0.5 * std::log(1.0 - rho * rho); }

inline double normal_log_density(double y, double mean, double variance) {
  const double z = y - mean;
  return -0.5 * std::log(2.0 * std::numbers::pi * variance) - 0.5 * z * z / variance;
}

/// Independent closed form of the AR(1) profile, computed without log1p.
inline double ar1_forecastability(double phi, std::size_t h) {
  return -0.5 * std::log(1.0 - std::pow(phi, 2.0 * static_cast<double>(h)));
}

/// Least-squares AR(order) fit with intercept on values[0, fit_end): returns
/// (coefficients with intercept first, residual variance). Normal equations
/// solved by Gaussian elimination with partial pivoting.
inline std::pair<std::vector<double>, double> fit_ar(const std::vector<double>& values,
                                                     std::size_t order, std::size_t fit_end) {
  const std::size_t m = order + 1;
  std::vector<double> a(m * m, 0.0), b(m, 0.0);
  for (std::size_t t = order; t < fit_end; ++t) {
    std::vector<double> row(m);
    row[0] = 1.0;
    for (std::size_t j = 1; j <= order; ++j) row[j] = values[t - j];
    for (std::size_t i = 0; i < m; ++i) {
      b[i] += row[i] * values[t];
      for (std::size_t j = 0; j < m; ++j) a[i * m + j] += row[i] * row[j];
    }
  }
  for (std::size_t c = 0; c < m; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < m; ++r) {
      if (std::abs(a[r * m + c]) > std::abs(a[piv * m + c])) piv = r;
    }
    for (std::size_t j = 0; j < m; ++j) std::swap(a[c * m + j], a[piv * m + j]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < m; ++r) {
      const double f = a[r * m + c] / a[c * m + c];
      for (std::size_t j = c; j < m; ++j) a[r * m + j] -= f * a[c * m + j];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> coef(m);
  for (std::size_t c = m; c-- > 0;) {
    double acc = b[c];
    for (std::size_t j = c + 1; j < m; ++j) acc -= a[c * m + j] * coef[j];
    coef[c] = acc / a[c * m + c];
  }
  double ss = 0.0;
  for (std::size_t t = order; t < fit_end; ++t) {
    double pred = coef[0];
    for (std::size_t j = 1; j <= order; ++j) pred += coef[j] * values[t - j];
    ss += (values[t] - pred) * (values[t] - pred);
  }
  return {coef, ss / static_cast<double>(fit_end - order)};
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace fcast::testing
