#include "mdelta/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <random>
#include <set>
#include <sstream>

namespace mdelta {

namespace {

void check_likert(const std::optional<int>& levels) {
  if (levels && *levels < 2) {
    raise(ErrorCode::Usage, "likert_levels must be >= 2");
  }
}

// Affine rescale of the whole matrix onto [1, L], then round to integers and
// clamp. Degenerate (constant) input lands on the middle level.
void discretize_likert(std::vector<double>& values, int levels) {
  double lo = values[0];
  double hi = values[0];
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (hi - lo <= 0.0) {
    const double mid = std::floor((1.0 + levels) / 2.0);
    std::fill(values.begin(), values.end(), mid);
    return;
  }
  const double scale = (levels - 1.0) / (hi - lo);
  for (double& v : values) {
    double mapped = 1.0 + (v - lo) * scale;
    long rounded = std::lround(mapped);
    rounded = std::clamp(rounded, 1L, static_cast<long>(levels));
    v = static_cast<double>(rounded);
  }
}

std::vector<std::string> default_labels(int k, const std::string& prefix) {
  std::vector<std::string> labels(k);
  for (int l = 0; l < k; ++l) labels[l] = prefix + std::to_string(l + 1);
  return labels;
}

double column_sd(const ResponseMatrix& m, int col) {
  const int n = m.n_respondents();
  double mean = 0.0;
  for (int j = 0; j < n; ++j) mean += m.at(j, col);
  mean /= n;
  double ss = 0.0;
  for (int j = 0; j < n; ++j) {
    const double d = m.at(j, col) - mean;
    ss += d * d;
  }
  return std::sqrt(ss / (n - 1));
}

}  // namespace

ResponseMatrix generate_unidimensional(const SyntheticSpec& spec) {
  const int n = spec.n_respondents;
  const int k = spec.n_items;
  if (n < 2 || k < 1) {
    raise(ErrorCode::Usage, "generator needs n >= 2 and k >= 1");
  }
  if (static_cast<int>(spec.loadings.size()) != k) {
    raise(ErrorCode::LengthMismatch, "loadings length must equal n_items");
  }
  check_likert(spec.likert_levels);

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<double> factor(n);
  for (int j = 0; j < n; ++j) factor[j] = gauss(rng);

  std::vector<double> values(static_cast<std::size_t>(n) * k);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < k; ++l) {
      const double eps = gauss(rng);
      values[static_cast<std::size_t>(j) * k + l] =
          spec.loadings[l] * factor[j] + spec.noise_sd * eps;
    }
  }
  if (spec.likert_levels) discretize_likert(values, *spec.likert_levels);

  return ResponseMatrix(n, k, std::move(values), default_labels(k, "q"));
}

ResponseMatrix inject_redundancy(const ResponseMatrix& m, int r, double factor,
                                 std::optional<double> noise_sd,
                                 std::optional<int> likert_levels,
                                 std::uint64_t seed) {
  if (r < 1) {
    raise(ErrorCode::Usage, "redundancy count must be >= 1");
  }
  check_likert(likert_levels);
  const int n = m.n_respondents();
  const int k = m.n_items();
  const int k_out = k + r;

  std::vector<double> values(static_cast<std::size_t>(n) * k_out);
  for (int j = 0; j < n; ++j) {
    const double* row = m.row(j);
    std::copy(row, row + k, values.begin() + static_cast<std::size_t>(j) * k_out);
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::string> labels = m.item_labels();

  for (int i = 0; i < r; ++i) {
    const int src = i % k;
    const double sd = noise_sd ? *noise_sd : 0.05 * column_sd(m, src);
    for (int j = 0; j < n; ++j) {
      double v = factor * m.at(j, src) + sd * gauss(rng);
      if (likert_levels) {
        long rounded = std::lround(v);
        rounded = std::clamp(rounded, 1L, static_cast<long>(*likert_levels));
        v = static_cast<double>(rounded);
      }
      values[static_cast<std::size_t>(j) * k_out + k + i] = v;
    }
    labels.push_back(m.item_labels()[src] + "_dup" + std::to_string(i + 1));
  }

  return ResponseMatrix(n, k_out, std::move(values), std::move(labels));
}

ResponseMatrix generate_multidimensional(const MultiTraitSpec& spec) {
  const int n = spec.n_respondents;
  const int k1 = spec.k1;
  const int k2 = spec.k2;
  if (n < 2 || k1 < 2 || k2 < 2) {
    raise(ErrorCode::Usage, "two-trait generator needs n >= 2, k1, k2 >= 2");
  }
  if (static_cast<int>(spec.loadings1.size()) != k1 ||
      static_cast<int>(spec.loadings2.size()) != k2) {
    raise(ErrorCode::LengthMismatch, "loadings lengths must equal k1 and k2");
  }
  if (spec.trait_correlation < 0.0 || spec.trait_correlation > 1.0) {
    raise(ErrorCode::Usage, "trait_correlation must lie in [0, 1]");
  }
  check_likert(spec.likert_levels);

  const int k = k1 + k2;
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<double> trait1(n);
  for (int j = 0; j < n; ++j) trait1[j] = gauss(rng);
  const double rho = spec.trait_correlation;
  const double residual = std::sqrt(1.0 - rho * rho);
  std::vector<double> trait2(n);
  for (int j = 0; j < n; ++j) trait2[j] = rho * trait1[j] + residual * gauss(rng);

  std::vector<double> values(static_cast<std::size_t>(n) * k);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < k; ++l) {
      const double eps = gauss(rng);
      const double common = l < k1 ? spec.loadings1[l] * trait1[j]
                                   : spec.loadings2[l - k1] * trait2[j];
      values[static_cast<std::size_t>(j) * k + l] =
          common + spec.noise_sd * eps;
    }
  }
  if (spec.likert_levels) discretize_likert(values, *spec.likert_levels);

  std::vector<std::string> labels(k);
  for (int l = 0; l < k1; ++l) labels[l] = "a" + std::to_string(l + 1);
  for (int l = 0; l < k2; ++l) labels[k1 + l] = "b" + std::to_string(l + 1);
  return ResponseMatrix(n, k, std::move(values), std::move(labels));
}

ResponseMatrix apply_nonnormal_correlated(const NonNormalSpec& spec) {
  const int n = spec.n_respondents;
  const int k = spec.n_items;
  if (n < 2 || k < 1) {
    raise(ErrorCode::Usage, "generator needs n >= 2 and k >= 1");
  }
  if (static_cast<int>(spec.loadings.size()) != k) {
    raise(ErrorCode::LengthMismatch, "loadings length must equal n_items");
  }
  if (spec.skew_strength < 0.0) {
    raise(ErrorCode::Usage, "skew_strength must be >= 0");
  }
  if (spec.error_rho < 0.0 || spec.error_rho >= 1.0) {
    raise(ErrorCode::Usage, "error_rho must lie in [0, 1)");
  }
  check_likert(spec.likert_levels);

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<double> factor(n);
  for (int j = 0; j < n; ++j) factor[j] = gauss(rng);

  // Stationary AR(1) item errors: each marginally standard normal, adjacent
  // items correlated at error_rho.
  const double rho = spec.error_rho;
  const double innovation = std::sqrt(1.0 - rho * rho);
  std::vector<double> values(static_cast<std::size_t>(n) * k);
  for (int j = 0; j < n; ++j) {
    double err = 0.0;
    for (int l = 0; l < k; ++l) {
      const double z = gauss(rng);
      err = l == 0 ? z : rho * err + innovation * z;
      values[static_cast<std::size_t>(j) * k + l] =
          spec.loadings[l] * factor[j] + spec.noise_sd * err;
    }
  }

  // Strictly increasing skew/kurtosis transform: a signed power stretch plus
  // an exponential tilt whose rate equals the strength, so the Pearson
  // structure collapses while every ordinal comparison survives. Disabled at
  // strength 0 so the null perturbation reproduces the plain generator bit
  // for bit.
  const double s = spec.skew_strength;
  if (s > 0.0) {
    const double power = 1.0 + s;
    for (double& v : values) {
      const double sign = v < 0.0 ? -1.0 : 1.0;
      v = sign * std::pow(std::fabs(v), power) + s * (std::exp(s * v) - 1.0);
    }
  }

  if (spec.likert_levels) discretize_likert(values, *spec.likert_levels);
  return ResponseMatrix(n, k, std::move(values), default_labels(k, "q"));
}

namespace {

std::string trim_copy(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  std::size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim_copy(tok);
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    raise(ErrorCode::Config, "key '" + key + "': bad number '" + value + "'");
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    raise(ErrorCode::Config, "key '" + key + "': bad integer '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  raise(ErrorCode::Config, "key '" + key + "': bad boolean '" + value + "'");
}

}  // namespace

ScenarioConfig parse_scenario_config(std::istream& in) {
  ScenarioConfig config;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string stripped = trim_copy(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) {
      raise(ErrorCode::Config, "line " + std::to_string(lineno) +
                                   ": expected 'key = value'");
    }
    const std::string key = trim_copy(stripped.substr(0, eq));
    const std::string value = trim_copy(stripped.substr(eq + 1));

    if (key == "seed") {
      config.seed = static_cast<std::uint64_t>(parse_int(key, value));
    } else if (key == "n_respondents") {
      config.n_respondents = static_cast<int>(parse_int(key, value));
    } else if (key == "n_items") {
      config.n_items = static_cast<int>(parse_int(key, value));
    } else if (key == "loading") {
      config.loading = parse_double(key, value);
    } else if (key == "noise_sd") {
      config.noise_sd = parse_double(key, value);
    } else if (key == "likert_levels") {
      config.likert_levels = static_cast<int>(parse_int(key, value));
    } else if (key == "redundancy_count") {
      config.redundancy_count = static_cast<int>(parse_int(key, value));
    } else if (key == "redundancy_factor") {
      config.redundancy_factor = parse_double(key, value);
    } else if (key == "redundancy_noise_sd") {
      config.redundancy_noise_sd = parse_double(key, value);
    } else if (key == "k1") {
      config.k1 = static_cast<int>(parse_int(key, value));
    } else if (key == "k2") {
      config.k2 = static_cast<int>(parse_int(key, value));
    } else if (key == "trait_correlation") {
      config.trait_correlation = parse_double(key, value);
    } else if (key == "skew_strength") {
      config.skew_strength = parse_double(key, value);
    } else if (key == "error_rho") {
      config.error_rho = parse_double(key, value);
    } else if (key == "s4_noise_sd") {
      config.s4_noise_sd = parse_double(key, value);
    } else if (key == "scenarios") {
      config.scenarios.clear();
      for (const std::string& tok : split_list(value)) {
        config.scenarios.push_back(static_cast<int>(parse_int(key, tok)));
      }
    } else if (key == "measures") {
      config.measures.clear();
      for (const std::string& tok : split_list(value)) {
        auto m = measure_from_name(tok);
        if (!m) {
          raise(ErrorCode::Config, "unknown measure '" + tok + "'");
        }
        if (std::find(config.measures.begin(), config.measures.end(), *m) ==
            config.measures.end()) {
          config.measures.push_back(*m);
        }
      }
    } else if (key == "include_baselines") {
      config.include_baselines = parse_bool(key, value);
    } else if (key == "restarts") {
      config.restarts = static_cast<int>(parse_int(key, value));
    } else if (key == "max_non_improving") {
      config.max_non_improving = parse_int(key, value);
    } else if (key == "variance_mode") {
      if (value == "sample") {
        config.variance_mode = VarianceMode::Sample;
      } else if (value == "population") {
        config.variance_mode = VarianceMode::Population;
      } else {
        raise(ErrorCode::Config, "variance_mode must be sample or population");
      }
    } else if (key == "split_scheme") {
      if (value == "odd-even") {
        config.split_scheme = SplitScheme::OddEven;
      } else if (value == "random") {
        config.split_scheme = SplitScheme::SeededRandom;
      } else {
        raise(ErrorCode::Config, "split_scheme must be odd-even or random");
      }
    } else {
      raise(ErrorCode::Config, "unknown key '" + key + "'");
    }
  }
  return config;
}

ScenarioConfig parse_scenario_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    raise(ErrorCode::Io, "cannot open '" + path + "'");
  }
  return parse_scenario_config(in);
}

nlohmann::ordered_json config_echo(const ScenarioConfig& c) {
  nlohmann::ordered_json j;
  j["seed"] = c.seed;
  j["n_respondents"] = c.n_respondents;
  j["n_items"] = c.n_items;
  j["loading"] = c.loading;
  j["noise_sd"] = c.noise_sd;
  j["likert_levels"] = c.likert_levels;
  j["redundancy_count"] = c.redundancy_count;
  j["redundancy_factor"] = c.redundancy_factor;
  j["redundancy_noise_sd"] = c.redundancy_noise_sd;
  j["k1"] = c.k1;
  j["k2"] = c.k2;
  j["trait_correlation"] = c.trait_correlation;
  j["skew_strength"] = c.skew_strength;
  j["error_rho"] = c.error_rho;
  j["s4_noise_sd"] = c.s4_noise_sd;
  j["scenarios"] = c.scenarios;
  std::vector<std::string> names;
  for (Measure m : c.measures) names.emplace_back(measure_name(m));
  j["measures"] = names;
  j["include_baselines"] = c.include_baselines;
  j["restarts"] = c.restarts;
  j["max_non_improving"] = c.max_non_improving;
  j["variance_mode"] =
      c.variance_mode == VarianceMode::Sample ? "sample" : "population";
  j["split_scheme"] =
      c.split_scheme == SplitScheme::OddEven ? "odd-even" : "random";
  return j;
}

ScenarioReport run_scenario_suite(const ScenarioConfig& config) {
  if (config.n_respondents < 2 || config.n_items < 2) {
    raise(ErrorCode::Config, "suite needs n_respondents >= 2, n_items >= 2");
  }
  std::set<int> wanted(config.scenarios.begin(), config.scenarios.end());
  for (int s : wanted) {
    if (s < 1 || s > 4) {
      raise(ErrorCode::Config, "unknown scenario " + std::to_string(s));
    }
  }

  const std::optional<int> likert =
      config.likert_levels > 0 ? std::optional<int>(config.likert_levels)
                               : std::nullopt;
  auto loadings = [&](int k) {
    return std::vector<double>(k, config.loading);
  };

  MeasureOptions options;
  options.variance_mode = config.variance_mode;
  options.split_scheme = config.split_scheme;
  options.split_seed = config.seed;
  options.search.seed = config.seed;
  options.search.restarts = config.restarts;
  options.search.max_non_improving = config.max_non_improving;

  // Each scenario derives its own generator seed so scenario subsets stay
  // reproducible regardless of which others run.
  auto scenario_seed = [&](int s) {
    return config.seed + 101ULL * static_cast<std::uint64_t>(s);
  };

  std::vector<std::pair<std::string, ResponseMatrix>> datasets;
  if (wanted.count(1) != 0) {
    SyntheticSpec spec{config.n_respondents, config.n_items,
                       loadings(config.n_items), config.noise_sd, likert,
                       scenario_seed(1)};
    datasets.emplace_back("s1_ideal", generate_unidimensional(spec));
  }
  if (wanted.count(2) != 0) {
    SyntheticSpec spec{config.n_respondents, config.n_items,
                       loadings(config.n_items), config.noise_sd, likert,
                       scenario_seed(2)};
    ResponseMatrix base = generate_unidimensional(spec);
    const std::optional<double> noise =
        config.redundancy_noise_sd >= 0.0
            ? std::optional<double>(config.redundancy_noise_sd)
            : std::nullopt;
    ResponseMatrix redundant =
        inject_redundancy(base, config.redundancy_count,
                          config.redundancy_factor, noise, likert,
                          scenario_seed(2) + 1);
    if (config.include_baselines) {
      datasets.emplace_back("s2_base", std::move(base));
    }
    datasets.emplace_back("s2_redundant", std::move(redundant));
  }
  if (wanted.count(3) != 0) {
    if (config.include_baselines) {
      SyntheticSpec baseline{config.n_respondents, config.k1 + config.k2,
                             loadings(config.k1 + config.k2), config.noise_sd,
                             likert, scenario_seed(3)};
      datasets.emplace_back("s3_unidim_baseline",
                            generate_unidimensional(baseline));
    }
    MultiTraitSpec spec{config.n_respondents,
                        config.k1,
                        config.k2,
                        loadings(config.k1),
                        loadings(config.k2),
                        config.trait_correlation,
                        config.noise_sd,
                        likert,
                        scenario_seed(3) + 1};
    datasets.emplace_back("s3_twotrait", generate_multidimensional(spec));
  }
  if (wanted.count(4) != 0) {
    NonNormalSpec spec{config.n_respondents, config.n_items,
                       loadings(config.n_items), config.skew_strength,
                       config.error_rho, config.s4_noise_sd, likert,
                       scenario_seed(4)};
    datasets.emplace_back("s4_nonnormal", apply_nonnormal_correlated(spec));
  }

  ScenarioReport report;
  report.config = config;
  for (const auto& [label, matrix] : datasets) {
    std::vector<ReportRow> rows =
        time_measures(matrix, config.measures, options, label);
    report.rows.insert(report.rows.end(), rows.begin(), rows.end());
  }
  return report;
}

}  // namespace mdelta
