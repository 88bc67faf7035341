#pragma once

// Seeded synthetic generators for the four stress scenarios and the
// benchmark suite that runs every measure over them.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mdelta/report.hpp"
#include "mdelta/response_data.hpp"

namespace mdelta {

// One-factor generator: x = loading * F + noise_sd * eps, optionally
// discretized onto a 1..L Likert grid.
struct SyntheticSpec {
  int n_respondents = 0;
  int n_items = 0;
  std::vector<double> loadings;  // length n_items
  double noise_sd = 1.0;
  std::optional<int> likert_levels;  // >= 2; absent = continuous
  std::uint64_t seed = 0;
};

struct MultiTraitSpec {
  int n_respondents = 0;
  int k1 = 0;
  int k2 = 0;
  std::vector<double> loadings1;  // length k1
  std::vector<double> loadings2;  // length k2
  double trait_correlation = 0.0;  // in [0, 1]
  double noise_sd = 1.0;
  std::optional<int> likert_levels;
  std::uint64_t seed = 0;
};

struct NonNormalSpec {
  int n_respondents = 0;
  int n_items = 0;
  std::vector<double> loadings;
  double skew_strength = 0.0;  // >= 0; 0 disables the transform
  double error_rho = 0.0;      // AR(1) correlation of item errors, [0, 1)
  double noise_sd = 1.0;
  std::optional<int> likert_levels;
  std::uint64_t seed = 0;
};

ResponseMatrix generate_unidimensional(const SyntheticSpec& spec);

// Appends r near-duplicate columns (round-robin sources), each
// factor*source + N(0, noise) with noise defaulting to 5% of the source
// column's standard deviation. Likert sources keep their grid.
ResponseMatrix inject_redundancy(const ResponseMatrix& m, int r,
                                 double factor, std::optional<double> noise_sd,
                                 std::optional<int> likert_levels,
                                 std::uint64_t seed);

ResponseMatrix generate_multidimensional(const MultiTraitSpec& spec);

// One-factor data with AR(1)-correlated item errors, then a strictly
// increasing skew/kurtosis transform applied before discretization.
ResponseMatrix apply_nonnormal_correlated(const NonNormalSpec& spec);

struct ScenarioConfig {
  std::uint64_t seed = 42;
  int n_respondents = 350;
  int n_items = 15;
  double loading = 0.85;
  double noise_sd = 0.5;
  int likert_levels = 5;  // 0 = continuous
  // scenario 2
  int redundancy_count = 7;
  double redundancy_factor = 0.95;
  double redundancy_noise_sd = -1.0;  // < 0 = auto
  // scenario 3
  int k1 = 8;
  int k2 = 8;
  double trait_correlation = 0.0;
  // scenario 4
  double skew_strength = 1.5;
  double error_rho = 0.6;
  double s4_noise_sd = 1.5;  // heavier noise so the factor share shrinks

  std::vector<int> scenarios = {1, 2, 3, 4};
  std::vector<Measure> measures = all_measures();
  bool include_baselines = true;

  int restarts = 10;
  std::int64_t max_non_improving = 0;  // 0 = auto n*(n-1)
  VarianceMode variance_mode = VarianceMode::Sample;
  SplitScheme split_scheme = SplitScheme::OddEven;
};

struct ScenarioReport {
  std::vector<ReportRow> rows;
  ScenarioConfig config;  // echoed for reproducibility
};

// Flat key = value text; '#' lines are comments; unknown keys are errors.
ScenarioConfig parse_scenario_config(std::istream& in);
ScenarioConfig parse_scenario_config_file(const std::string& path);

nlohmann::ordered_json config_echo(const ScenarioConfig& config);

// Generates every requested scenario dataset and evaluates every requested
// measure; rows come out in canonical (scenario, dataset, measure) order.
ScenarioReport run_scenario_suite(const ScenarioConfig& config);

}  // namespace mdelta
