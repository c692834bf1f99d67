// Acceptance suite: one PASS/FAIL line per criterion, each followed by the
// measured quantities. Exit status is non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "forecastability/analytic.hpp"
#include "forecastability/diagnostics.hpp"
#include "forecastability/estimators.hpp"
#include "forecastability/significance.hpp"

namespace {

using namespace fcast;
namespace fx = fcast::testing;

struct Report {
  bool pass = true;
  std::vector<std::string> details;

  void check(bool ok, const char* fmt, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    details.push_back(std::string(ok ? "ok   " : "MISS ") + buf);
    pass = pass && ok;
  }
};

std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> out(hi - lo + 1);
  std::iota(out.begin(), out.end(), lo);
  return out;
}

const GaussianProcessSpec kSeasonal{SeasonalAr{0.5, 0.8, 12}};

Report analytic_ar1() {
  Report r;
  const auto prof = analytic_profile({Ar1{0.3}}, 1, range(1, 2));
  const double f1 = *prof.values_nats[0];
  const double f2 = *prof.values_nats[1];
  r.check(std::abs(f1 - 0.047215) <= 1e-6, "F(1) = %.7f, target 0.047215 +- 1e-6 (off by %.2e)",
          f1, std::abs(f1 - 0.047215));
  r.check(f2 < 0.005, "F(2) = %.7f < 0.005", f2);
  return r;
}

Report analytic_seasonal() {
  Report r;
  const auto hs = range(1, 36);
  const auto prof = analytic_profile(kSeasonal, 1, hs);
  auto f = [&](std::size_t h) { return *prof.values_nats[h - 1]; };

  auto band = [&](std::size_t h, double target) {
    r.check(std::abs(f(h) - target) <= 0.02, "F(%zu) = %.5f, target %.2f +- 0.02", h, f(h),
            target);
  };
  band(1, 0.14);
  std::size_t argmin = 5;
  for (std::size_t h = 5; h <= 9; ++h) argmin = f(h) < f(argmin) ? h : argmin;
  r.check(f(argmin) <= 0.005, "min over h in [5,9] is F(%zu) = %.6f <= 0.005", argmin, f(argmin));
  band(12, 0.49);
  band(24, 0.25);
  band(36, 0.13);

  // Oracle: sample ACF of a 10^7-step simulation.
  const std::size_t n = 10'000'000;
  const auto sim = simulate(kSeasonal, n, 2024);
  const auto y = sim.values();
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / double(n);
  std::vector<double> c(37, 0.0);
  for (std::size_t t = 0; t < n; ++t) {
    const double a = y[t] - mean;
    const std::size_t top = std::min<std::size_t>(36, n - 1 - t);
    for (std::size_t l = 0; l <= top; ++l) c[l] += a * (y[t + l] - mean);
  }
  double worst = 0.0;
  std::size_t worst_h = 0;
  for (std::size_t h = 1; h <= 36; ++h) {
    const double err = std::abs(fx::gaussian_mi(c[h] / c[0]) - f(h));
    if (err > worst) worst = err, worst_h = h;
  }
  r.check(worst <= 0.005, "simulation oracle (n=1e7): max |F_sim - F| = %.5f at h=%zu (<= 0.005)",
          worst, worst_h);
  return r;
}

Report ksg_accuracy() {
  Report r;
  for (double rho : {0.3, 0.6, 0.9}) {
    std::vector<double> errors;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const auto p = fx::bivariate_gaussian(2000, rho, seed);
      errors.push_back(std::abs(ksg_mutual_information(p.x, p.y, 5, NeighborSearch::kBruteForce) -
                                fx::gaussian_mi(rho)));
    }
    const double med = fx::median(errors);
    r.check(med <= 0.03, "rho=%.1f: median |I_hat - I| = %.4f over 20 seeds (<= 0.03)", rho, med);
  }
  return r;
}

Report end_to_end_ar1() {
  Report r;
  const auto hs = range(1, 5);
  std::vector<std::vector<double>> errors(hs.size());
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto s = simulate({Ar1{0.95}}, 5000, seed);
    const auto prof = estimate_profile(s, {1, hs}, {});
    for (std::size_t i = 0; i < hs.size(); ++i) {
      errors[i].push_back(std::abs(*prof.values_nats[i] - fx::ar1_forecastability(0.95, hs[i])));
    }
  }
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const double med = fx::median(errors[i]);
    r.check(med <= 0.08, "h=%zu: median |F_hat - F| = %.4f over 10 seeds (<= 0.08)", hs[i], med);
  }
  return r;
}

Report dpi_monotonicity() {
  Report r;
  const auto hs = range(1, 24);
  std::vector<ForecastabilityProfile> by_p;
  for (std::size_t p = 1; p <= 6; ++p) by_p.push_back(analytic_profile(kSeasonal, p, hs));
  std::size_t violations = 0;
  for (std::size_t p = 1; p < 6; ++p) {
    for (std::size_t i = 0; i < hs.size(); ++i) {
      if (*by_p[p].values_nats[i] < *by_p[p - 1].values_nats[i]) ++violations;
    }
  }
  r.check(violations == 0, "F_p(h) <= F_{p+1}(h) for p=1..5, h=1..24: %zu violations",
          violations);
  return r;
}

Report finite_window() {
  Report r;
  const auto hs = range(1, 36);
  const auto small = analytic_profile(kSeasonal, 1, hs);
  const auto large = analytic_profile(kSeasonal, 13, hs);
  double min_delta = INFINITY;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    min_delta = std::min(min_delta, *large.values_nats[i] - *small.values_nats[i]);
  }
  r.check(min_delta >= 0.0, "analytic Delta(h) >= 0 for h=1..36 (min %.3e)", min_delta);
  const double delta12 = *large.values_nats[11] - *small.values_nats[11];
  const double delta1 = *large.values_nats[0] - *small.values_nats[0];
  char info[128];
  std::snprintf(info, sizeof info, "info analytic Delta(1) = %.6f, Delta(12) = %.3e", delta1,
                delta12);
  r.details.emplace_back(info);

  const auto s = simulate(kSeasonal, 20000, 12);
  const std::vector<std::size_t> h12{12};
  const auto budget = finite_window_budget(s, 1, 13, h12, {});
  const double est = budget.delta_nats[0];
  r.check(est > 0.0, "estimated Delta_hat(12) = %.4f > 0 (n=20000, k=5)", est);
  r.check(std::abs(est - delta12) <= 0.1, "|Delta_hat(12) - Delta(12)| = %.4f <= 0.1",
          std::abs(est - delta12));
  return r;
}

Report periodicity() {
  Report r;
  std::vector<double> rho(48);
  for (std::size_t h = 1; h <= rho.size(); ++h) {
    rho[h - 1] = 0.6 * std::cos(2.0 * std::numbers::pi * double(h % 12) / 12.0);
  }
  const auto prof = analytic_profile({ExplicitAcf{rho}}, 1, range(1, 24));
  std::size_t mismatches = 0;
  for (std::size_t h = 1; h <= 12; ++h) {
    if (*prof.values_nats[h - 1] != *prof.values_nats[h + 11]) ++mismatches;
  }
  r.check(mismatches == 0, "F(h) == F(h+12) bitwise for h=1..12: %zu mismatches", mismatches);
  return r;
}

Report permutation_calibration() {
  Report r;
  const InformationSetSpec spec{1, {1}};
  const std::size_t outer = 200;
  std::size_t rejections = 0;
  std::size_t strong_ok = 0;
  double worst_strong = 0.0;
  for (std::uint64_t seed = 0; seed < outer; ++seed) {
    EstimatorConfig config;
    config.seed = seed;
    const TimeSeries noise(fx::gaussian_noise(1000, 10'000 + seed));
    if (permutation_test(noise, spec, config, 99, seed).front().p_value <= 0.05) ++rejections;
    const auto ar = simulate({Ar1{0.95}}, 1000, 20'000 + seed);
    const double p = permutation_test(ar, spec, config, 99, seed).front().p_value;
    worst_strong = std::max(worst_strong, p);
    if (p == 0.01) ++strong_ok;
  }
  const double rate = double(rejections) / double(outer);
  r.check(rate >= 0.01 && rate <= 0.12,
          "white noise: rejection rate at 0.05 = %.3f over %zu seeds (in [0.01, 0.12])", rate,
          outer);
  r.check(strong_ok == outer, "AR(1) phi=0.95: p = 0.01 on %zu/%zu seeds (max p %.3f)", strong_ok,
          outer, worst_strong);
  return r;
}

ProbeEvaluation ar1_probe(const TimeSeries& s, double phi, std::size_t h, bool oracle) {
  ProbeEvaluation probe{h, {}, {}};
  const double phi_h = std::pow(phi, double(h));
  const double marginal = 1.0 / (1.0 - phi * phi);
  const double conditional = (1.0 - phi_h * phi_h) * marginal;
  for (std::size_t t = 0; t + h < s.size(); ++t) {
    probe.origins.push_back(t);
    probe.log_densities.push_back(oracle
                                      ? fx::normal_log_density(s[t + h], phi_h * s[t], conditional)
                                      : fx::normal_log_density(s[t + h], 0.0, marginal));
  }
  return probe;
}

Report loss_decomposition() {
  Report r;
  const std::vector<std::size_t> hs{1, 2, 5};
  double chi_lo = INFINITY, chi_hi = -INFINITY, marg_worst = 0.0, slack = INFINITY;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto s = simulate({Ar1{0.95}}, 5000, 300 + seed);
    const auto fhat = estimate_profile(s, {1, hs}, {});
    for (std::size_t h : hs) {
      const auto oracle = decompose_loss(ar1_probe(s, 0.95, h, true), s, fhat, {});
      const auto marg = decompose_loss(ar1_probe(s, 0.95, h, false), s, fhat, {});
      chi_lo = std::min(chi_lo, oracle.exploitation_ratio);
      chi_hi = std::max(chi_hi, oracle.exploitation_ratio);
      marg_worst = std::max(marg_worst, std::abs(marg.exploitability_nats));
      for (const auto& d : {oracle, marg}) {
        slack = std::min(slack, d.forecastability_nats + 0.08 - d.exploitability_nats);
      }
    }
  }
  // White-noise fixture: the marginal probe is the oracle.
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const TimeSeries s(fx::gaussian_noise(3000, 400 + seed));
    const auto fhat = estimate_profile(s, {1, {1}}, {});
    const auto d = decompose_loss(ar1_probe(s, 0.0, 1, true), s, fhat, {});
    slack = std::min(slack, d.forecastability_nats + 0.08 - d.exploitability_nats);
  }
  r.check(chi_lo >= 0.85 && chi_hi <= 1.1,
          "oracle probe chi over 5 seeds x h in {1,2,5}: [%.4f, %.4f] within [0.85, 1.1]", chi_lo,
          chi_hi);
  r.check(marg_worst <= 0.05, "marginal probe: max |X| = %.4f <= 0.05", marg_worst);
  r.check(slack >= 0.0, "X <= F_hat + 0.08 on every fixture (min slack %.4f)", slack);
  return r;
}

Report bounds() {
  Report r;
  const double pinsker = pinsker_bound(0.02);
  r.check(pinsker == 0.1, "pinsker_bound(0.02) = %.17g == 0.1", pinsker);
  const double ln8 = std::log(8.0);
  const auto fano = fano_bound(0.0, ln8, 8);
  const double expected = (ln8 - 1.0) / ln8;
  r.check(std::abs(fano.min_error - expected) <= 1e-12 && !fano.vacuous,
          "fano_bound(0, ln 8, 8) = %.15f vs %.15f", fano.min_error, expected);
  std::size_t flag_errors = 0, cases = 0;
  for (std::size_t m : {2u, 3u, 8u, 64u}) {
    for (double h = 0.0; h <= 5.0; h += 0.25) {
      for (double f = 0.0; f <= h + 1.0; f += 0.125) {
        const auto b = fano_bound(f, h, m);
        ++cases;
        if (b.vacuous != (b.min_error <= 0.0)) ++flag_errors;
      }
    }
  }
  r.check(flag_errors == 0, "vacuous flag == (value <= 0) on %zu grid cases: %zu errors", cases,
          flag_errors);
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Report()>>> criteria{
      {"analytic AR(1) profile", analytic_ar1},
      {"analytic seasonal profile", analytic_seasonal},
      {"KSG accuracy on bivariate Gaussians", ksg_accuracy},
      {"end-to-end AR(1) estimation", end_to_end_ar1},
      {"DPI monotonicity in lag order", dpi_monotonicity},
      {"finite-window budget", finite_window},
      {"periodicity of a periodic ACF", periodicity},
      {"permutation test calibration", permutation_calibration},
      {"loss decomposition", loss_decomposition},
      {"Fano and Pinsker bounds", bounds},
  };
  std::size_t failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    const Report r = criteria[i].second();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  criterion %zu: %s (%.1f s)\n", r.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first, secs);
    for (const auto& d : r.details) std::printf("        %s\n", d.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failed;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
