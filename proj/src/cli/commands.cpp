#include "forecastability/cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>

#include "forecastability/analytic.hpp"
#include "forecastability/cli/csv.hpp"
#include "forecastability/cli/manifest.hpp"
#include "forecastability/cli/report.hpp"
#include "forecastability/diagnostics.hpp"
#include "forecastability/error.hpp"
#include "forecastability/estimators.hpp"
#include "forecastability/significance.hpp"

namespace fcast::cli {
namespace {

using Json = nlohmann::ordered_json;

struct OutputOptions {
  std::string format = "csv";
  std::string units = "nats";
  std::string output = "-";
  std::string plot;
  std::string manifest;

  [[nodiscard]] double scale(double nats) const {
    return units == "bits" ? nats / std::numbers::ln2 : nats;
  }
  [[nodiscard]] std::string col(const std::string& base) const { return base + "_" + units; }
  void describe(Json& config) const {
    config["units"] = units;
    config["format"] = format;
  }
};

struct EstimationOptions {
  std::string input;
  std::size_t lags = 1;
  std::string horizons = "1..10";
  std::size_t k = 5;
  std::uint64_t seed = 0;
  double jitter = 1e-10;
  bool no_standardize = false;
  std::size_t threads = 1;

  [[nodiscard]] EstimatorConfig config() const {
    EstimatorConfig c;
    c.k = k;
    c.seed = seed;
    c.jitter_scale = jitter;
    c.standardize = !no_standardize;
    c.threads = threads;
    return c;
  }
  void describe(Json& config) const {
    config["input"] = input;
    config["lags"] = lags;
    config["horizons"] = parse_horizons(horizons);
    config["k"] = k;
    config["jitter_scale"] = jitter;
    config["standardize"] = !no_standardize;
  }
};

struct ModelOptions {
  std::string model = "ar1";
  double phi = 0.0;
  double seasonal_phi = 0.0;
  std::size_t period = 12;
  double sigma2 = 1.0;

  [[nodiscard]] GaussianProcessSpec spec() const {
    GaussianProcessSpec s;
    if (model == "ar1") {
      s.kind = Ar1{phi};
    } else {
      s.kind = SeasonalAr{phi, seasonal_phi, period};
    }
    s.innovation_variance = sigma2;
    s.validate();
    return s;
  }
  void describe(Json& config) const {
    config["model"] = model;
    config["phi"] = phi;
    if (model == "seasonal") {
      config["Phi"] = seasonal_phi;
      config["s"] = period;
    }
    config["sigma2"] = sigma2;
  }
};

void add_output_flags(CLI::App* cmd, OutputOptions& o, bool plot) {
  cmd->add_option("--units", o.units, "Information units")
      ->check(CLI::IsMember({"nats", "bits"}))
      ->capture_default_str();
  cmd->add_option("--out", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("-o,--output", o.output, "Output file, '-' for stdout")->capture_default_str();
  cmd->add_option("--manifest", o.manifest,
                  "Manifest path (default: <output>.manifest.json for CSV files)");
  if (plot) cmd->add_option("--plot", o.plot, "Write an SVG plot of the profile");
}

void add_estimation_flags(CLI::App* cmd, EstimationOptions& e, bool horizons) {
  cmd->add_option("input", e.input, "Series CSV (one value column, or index,value)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("-p,--lags", e.lags, "Lag window order p")->capture_default_str();
  if (horizons) {
    cmd->add_option("--horizons", e.horizons, "Horizons, e.g. 1..12 or 1,6,12")
        ->capture_default_str();
  }
  cmd->add_option("-k,--k", e.k, "Nearest-neighbour count")->capture_default_str();
  cmd->add_option("--seed", e.seed, "Seed for jitter and permutations")->capture_default_str();
  cmd->add_option("--jitter", e.jitter, "Relative tie-breaking jitter amplitude")
      ->capture_default_str();
  cmd->add_flag("--no-standardize", e.no_standardize, "Skip standardization before estimation");
  cmd->add_option("--threads", e.threads, "Worker threads (0 = all cores)")->capture_default_str();
}

void add_model_flags(CLI::App* cmd, ModelOptions& m) {
  cmd->add_option("--model", m.model, "Process model")
      ->check(CLI::IsMember({"ar1", "seasonal"}))
      ->capture_default_str();
  cmd->add_option("--phi", m.phi, "Non-seasonal AR coefficient")->capture_default_str();
  cmd->add_option("--Phi", m.seasonal_phi, "Seasonal AR coefficient")->capture_default_str();
  cmd->add_option("--s", m.period, "Seasonal period")->capture_default_str();
  cmd->add_option("--sigma2", m.sigma2, "Innovation variance")->capture_default_str();
}

void write_to(const std::string& path, std::ostream& fallback,
              const std::function<void(std::ostream&)>& fn) {
  if (path.empty() || path == "-") {
    fn(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ParseError("cannot write " + path);
  fn(file);
}

void emit(const Table& table, RunManifest manifest, const OutputOptions& o, std::ostream& out) {
  manifest.timestamp = utc_timestamp();
  const Json manifest_json = manifest.to_json();
  if (o.format == "json") {
    Json doc;
    doc["manifest"] = manifest_json;
    doc["records"] = table_records(table);
    write_to(o.output, out, [&](std::ostream& s) { s << doc.dump(2) << '\n'; });
  } else {
    write_to(o.output, out, [&](std::ostream& s) { write_csv(table, s); });
  }
  std::string manifest_path = o.manifest;
  if (manifest_path.empty() && o.format == "csv" && o.output != "-" && !o.output.empty()) {
    manifest_path = o.output + ".manifest.json";
  }
  if (!manifest_path.empty()) {
    write_to(manifest_path, out, [&](std::ostream& s) { s << manifest_json.dump(2) << '\n'; });
  }
}

Table profile_table(const ForecastabilityProfile& prof, const OutputOptions& o) {
  Table t;
  t.columns = {"horizon", o.col("forecastability"), "n_effective", "gap"};
  for (std::size_t i = 0; i < prof.size(); ++i) {
    std::vector<Cell> row{prof.horizons[i]};
    if (prof.values_nats[i]) {
      row.emplace_back(o.scale(*prof.values_nats[i]));
    } else {
      row.emplace_back(std::monostate{});
    }
    if (prof.estimator_meta) {
      row.emplace_back(prof.estimator_meta->n_effective[i]);
    } else {
      row.emplace_back(std::monostate{});
    }
    row.emplace_back(!prof.values_nats[i].has_value());
    t.rows.push_back(std::move(row));
  }
  return t;
}

void maybe_plot(const Table& table, const OutputOptions& o, const std::string& title,
                std::ostream& out) {
  if (o.plot.empty()) return;
  const std::string y = o.col("forecastability");
  write_to(o.plot, out, [&](std::ostream& s) {
    write_svg_plot(table, {{"F(h)", "horizon", y}}, title, "horizon h",
                   "forecastability F(h) [" + o.units + "]", s);
  });
}

TimeSeries load_series(const std::string& path) {
  return TimeSeries(read_series_csv_file(path), path);
}

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

int cmd_profile(const EstimationOptions& e, const OutputOptions& o, std::ostream& out,
                std::ostream& err) {
  const auto series = load_series(e.input);
  const InformationSetSpec spec{e.lags, parse_horizons(e.horizons)};
  const auto prof = estimate_profile(series, spec, e.config());
  for (std::size_t i = 0; i < prof.size(); ++i) {
    if (!prof.values_nats[i]) {
      err << "warning: horizon " << prof.horizons[i] << ": " << prof.gap_reasons[i] << '\n';
    }
  }
  if (prof.all_gaps()) {
    err << "error: no horizon has enough data\n";
    return kExitInsufficient;
  }
  RunManifest m;
  m.command = "profile";
  m.seed = e.seed;
  e.describe(m.config);
  o.describe(m.config);
  m.input_digests[e.input] = sha256_file(e.input);
  const Table table = profile_table(prof, o);
  emit(table, m, o, out);
  maybe_plot(table, o, "Estimated forecastability profile (p = " + std::to_string(e.lags) + ")",
             out);
  return kExitOk;
}

int cmd_analytic(const ModelOptions& model, std::size_t lags, const std::string& horizons,
                 const OutputOptions& o, std::ostream& out) {
  const auto spec = model.spec();
  const auto prof = analytic_profile(spec, lags, parse_horizons(horizons));
  RunManifest m;
  m.command = "analytic";
  model.describe(m.config);
  m.config["lags"] = lags;
  m.config["horizons"] = prof.horizons;
  o.describe(m.config);
  const Table table = profile_table(prof, o);
  emit(table, m, o, out);
  maybe_plot(table, o, "Gaussian " + model.model + " forecastability profile (p = " +
                           std::to_string(lags) + ")",
             out);
  return kExitOk;
}

int cmd_significance(const EstimationOptions& e, std::size_t replicates, const OutputOptions& o,
                     std::ostream& out, std::ostream& err) {
  const auto series = load_series(e.input);
  const InformationSetSpec spec{e.lags, parse_horizons(e.horizons)};
  const auto results = permutation_test(series, spec, e.config(), replicates, e.seed, e.threads);
  if (results.empty()) {
    err << "error: no horizon has enough data\n";
    return kExitInsufficient;
  }
  if (results.size() < spec.horizons.size()) {
    err << "warning: " << spec.horizons.size() - results.size()
        << " horizon(s) skipped for insufficient data\n";
  }
  Table t;
  t.columns = {"horizon",          o.col("observed"), "p_value",         "replicates",
               o.col("null_q05"), o.col("null_q50"), o.col("null_q95"), o.col("null_max")};
  for (const auto& r : results) {
    t.rows.push_back({r.horizon, o.scale(r.observed_nats), r.p_value, r.replicates,
                      o.scale(quantile(r.null_samples, 0.05)),
                      o.scale(quantile(r.null_samples, 0.5)),
                      o.scale(quantile(r.null_samples, 0.95)),
                      o.scale(*std::max_element(r.null_samples.begin(), r.null_samples.end()))});
  }
  RunManifest m;
  m.command = "significance";
  m.seed = e.seed;
  e.describe(m.config);
  m.config["replicates"] = replicates;
  o.describe(m.config);
  m.input_digests[e.input] = sha256_file(e.input);
  emit(t, m, o, out);
  return kExitOk;
}

int cmd_decompose(const EstimationOptions& e, const std::string& probe_path,
                  std::optional<std::size_t> alphabet, const OutputOptions& o,
                  std::ostream& out) {
  const auto series = load_series(e.input);
  std::map<std::size_t, ProbeEvaluation> probes;
  for (const auto& row : read_probe_csv_file(probe_path)) {
    auto& probe = probes[row.horizon];
    probe.horizon = row.horizon;
    probe.origins.push_back(row.t_index);
    probe.log_densities.push_back(row.log_density);
  }
  std::vector<std::size_t> horizons;
  for (const auto& [h, probe] : probes) {
    probe.validate(series.size());
    horizons.push_back(h);
  }
  const auto config = e.config();
  const auto fhat = estimate_profile(series, {e.lags, horizons}, config);

  Table t;
  t.columns = {"horizon",
               "n_eval",
               o.col("expected_loss"),
               o.col("marginal_entropy"),
               o.col("forecastability"),
               o.col("irreducible"),
               o.col("exploitability"),
               o.col("approximation_gap"),
               "exploitation_ratio",
               "low_forecastability",
               "pinsker_tv_bound"};
  if (alphabet) {
    t.columns.emplace_back("fano_min_error");
    t.columns.emplace_back("fano_vacuous");
  }
  for (const auto& [h, probe] : probes) {
    const auto d = decompose_loss(probe, series, fhat, config);
    const auto bounds = floor_bounds(d.forecastability_nats, d.marginal_entropy_nats, alphabet);
    std::vector<Cell> row{h,
                          d.n_eval,
                          o.scale(d.expected_loss_nats),
                          o.scale(d.marginal_entropy_nats),
                          o.scale(d.forecastability_nats),
                          o.scale(d.irreducible_nats),
                          o.scale(d.exploitability_nats),
                          o.scale(d.approximation_gap_nats),
                          d.exploitation_ratio,
                          d.low_forecastability,
                          bounds.pinsker_tv_bound};
    if (alphabet) {
      row.emplace_back(*bounds.fano_min_error);
      row.emplace_back(bounds.fano_vacuous);
    }
    t.rows.push_back(std::move(row));
  }
  RunManifest m;
  m.command = "decompose";
  m.seed = e.seed;
  e.describe(m.config);
  m.config["horizons"] = horizons;
  m.config["probe"] = probe_path;
  if (alphabet) m.config["alphabet"] = *alphabet;
  o.describe(m.config);
  m.input_digests[e.input] = sha256_file(e.input);
  m.input_digests[probe_path] = sha256_file(probe_path);
  emit(t, m, o, out);
  return kExitOk;
}

int cmd_simulate(const ModelOptions& model, std::size_t n, std::uint64_t seed,
                 std::size_t burn_in, const std::string& output, std::ostream& out) {
  const auto series = simulate(model.spec(), n, seed, burn_in);
  write_to(output, out, [&](std::ostream& s) {
    s << "t,value\n";
    for (std::size_t t = 0; t < series.size(); ++t) s << t << ',' << format_exact(series[t]) << '\n';
  });
  if (!output.empty() && output != "-") {
    RunManifest m;
    m.command = "simulate";
    m.seed = seed;
    m.timestamp = utc_timestamp();
    model.describe(m.config);
    m.config["n"] = n;
    m.config["burn_in"] = burn_in;
    write_to(output + ".manifest.json", out,
             [&](std::ostream& s) { s << m.to_json().dump(2) << '\n'; });
  }
  return kExitOk;
}

std::string json_scalar(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_exact(v.get<double>());
  if (v.is_array()) {
    std::string joined;
    for (const auto& item : v) joined += (joined.empty() ? "" : ",") + json_scalar(item);
    return joined;
  }
  return v.dump();
}

// Rebuild the argument list of a recorded run. Inputs must still hash to the
// recorded digests.
std::vector<std::string> replay_arguments(const std::string& manifest_path,
                                          const std::string& output) {
  std::ifstream in(manifest_path);
  Json m;
  try {
    m = Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError(manifest_path + ": " + e.what());
  }
  if (m.contains("manifest")) m = m["manifest"];
  if (!m.contains("command") || !m.contains("config")) {
    throw ParseError(manifest_path + ": not a run manifest");
  }
  const Json inputs = m.value("inputs", Json::object());
  for (const auto& [path, digest] : inputs.items()) {
    if (sha256_file(path) != digest.at("sha256").get<std::string>()) {
      throw ConfigError("input " + path + " changed since the manifest was written");
    }
  }
  static const std::map<std::string, std::string> flags{
      {"lags", "--lags"},   {"horizons", "--horizons"}, {"k", "--k"},
      {"jitter_scale", "--jitter"}, {"replicates", "--replicates"}, {"units", "--units"},
      {"format", "--out"},  {"model", "--model"},       {"phi", "--phi"},
      {"Phi", "--Phi"},     {"s", "--s"},               {"sigma2", "--sigma2"},
      {"probe", "--probe"}, {"alphabet", "--alphabet"}, {"n", "--n"},
      {"burn_in", "--burn-in"}};
  const auto command = m["command"].get<std::string>();
  std::vector<std::string> args{command};
  for (const auto& [key, value] : m["config"].items()) {
    if (key == "input") {
      args.push_back(value.get<std::string>());
    } else if (key == "standardize") {
      if (!value.get<bool>()) args.emplace_back("--no-standardize");
    } else if (auto it = flags.find(key); it != flags.end()) {
      args.push_back(it->second);
      args.push_back(json_scalar(value));
    }
  }
  if (command != "analytic") {
    args.emplace_back("--seed");
    args.push_back(std::to_string(m.value("seed", std::uint64_t{0})));
  }
  args.emplace_back("--output");
  args.push_back(output);
  if (command != "simulate" && output != "-") {
    args.emplace_back("--manifest");
    args.push_back(output + ".manifest.json");
  }
  return args;
}

}  // namespace

std::vector<std::size_t> parse_horizons(std::string_view text) {
  auto number = [&](std::string_view s) {
    double v = 0.0;
    if (!parse_double(s, v) || v < 1.0 || v != std::floor(v) || v > 1e9) {
      throw ConfigError("invalid horizon '" + std::string(s) + "'");
    }
    return static_cast<std::size_t>(v);
  };
  std::vector<std::size_t> out;
  for (const auto& token : split_fields(text)) {
    const auto dots = token.find("..");
    if (dots == std::string::npos) {
      out.push_back(number(token));
      continue;
    }
    const std::size_t lo = number(std::string_view(token).substr(0, dots));
    const std::size_t hi = number(std::string_view(token).substr(dots + 2));
    if (hi < lo) throw ConfigError("empty horizon range '" + token + "'");
    for (std::size_t h = lo; h <= hi; ++h) out.push_back(h);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw ConfigError("no horizons given");
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Forecastability profiles: how much log loss a lag window can remove, per horizon",
               "fcast"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  OutputOptions out_opts;
  EstimationOptions est;
  ModelOptions model;
  std::size_t analytic_lags = 1;
  std::string analytic_horizons = "1..36";
  std::size_t replicates = 99;
  std::string probe_path;
  std::optional<std::size_t> alphabet;
  std::size_t sim_n = 1000;
  std::uint64_t sim_seed = 0;
  std::size_t burn_in = 1000;
  std::string sim_output = "-";

  auto* profile = app.add_subcommand("profile", "Estimate F(h) from a series");
  add_estimation_flags(profile, est, true);
  add_output_flags(profile, out_opts, true);

  auto* analytic = app.add_subcommand("analytic", "Exact Gaussian profile of an AR model");
  add_model_flags(analytic, model);
  analytic->add_option("-p,--lags", analytic_lags, "Lag window order p")->capture_default_str();
  analytic->add_option("--horizons", analytic_horizons, "Horizons")->capture_default_str();
  add_output_flags(analytic, out_opts, true);

  auto* significance = app.add_subcommand("significance", "Permutation test of F(h) > 0");
  add_estimation_flags(significance, est, true);
  significance->add_option("-B,--replicates", replicates, "Permutation replicates")
      ->capture_default_str();
  add_output_flags(significance, out_opts, false);

  auto* decompose = app.add_subcommand("decompose", "Split a probe's log loss into components");
  add_estimation_flags(decompose, est, false);
  decompose->add_option("--probe", probe_path, "Probe CSV: t_index,horizon,log_density")
      ->required()
      ->check(CLI::ExistingFile);
  decompose->add_option("--alphabet", alphabet, "Alphabet size M for the Fano bound");
  add_output_flags(decompose, out_opts, false);

  auto* sim = app.add_subcommand("simulate", "Simulate a Gaussian AR series");
  add_model_flags(sim, model);
  sim->add_option("-n,--n", sim_n, "Series length")->capture_default_str();
  sim->add_option("--seed", sim_seed, "Random seed")->capture_default_str();
  sim->add_option("--burn-in", burn_in, "Discarded initial steps")->capture_default_str();
  sim->add_option("-o,--output,--out", sim_output, "Output CSV, '-' for stdout")->capture_default_str();

  std::string replay_manifest;
  std::string replay_output = "-";
  auto* replay = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
  replay->add_option("manifest", replay_manifest, "Manifest JSON written by an earlier run")
      ->required()
      ->check(CLI::ExistingFile);
  replay->add_option("-o,--output", replay_output, "Output file, '-' for stdout")
      ->capture_default_str();

  std::vector<std::string> argv_store{"fcast"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*profile) return cmd_profile(est, out_opts, out, err);
    if (*analytic) return cmd_analytic(model, analytic_lags, analytic_horizons, out_opts, out);
    if (*significance) return cmd_significance(est, replicates, out_opts, out, err);
    if (*decompose) return cmd_decompose(est, probe_path, alphabet, out_opts, out);
    if (*sim) return cmd_simulate(model, sim_n, sim_seed, burn_in, sim_output, out);
    if (*replay) return run(replay_arguments(replay_manifest, replay_output), out, err);
  } catch (const InsufficientData& e) {
    err << "error: " << e.what() << '\n';
    return kExitInsufficient;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace fcast::cli
