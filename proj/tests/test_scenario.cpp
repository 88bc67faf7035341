// Tests for the synthetic scenario generators and the benchmark suite.

#include "doctest.h"

#include <cmath>
#include <sstream>

#include "mdelta/measures.hpp"
#include "mdelta/optimizer.hpp"
#include "mdelta/scenario.hpp"

using namespace mdelta;

namespace {

bool all_likert(const ResponseMatrix& m, int levels) {
  for (double v : m.values()) {
    if (v < 1.0 || v > levels || v != std::floor(v)) return false;
  }
  return true;
}

std::vector<double> equal_loadings(int k, double value) {
  return std::vector<double>(k, value);
}

}  // namespace

TEST_CASE("unidimensional generator shape, bounds, and determinism") {
  SyntheticSpec spec{60, 9, equal_loadings(9, 0.8), 0.6, 5, 123};
  ResponseMatrix a = generate_unidimensional(spec);
  CHECK(a.n_respondents() == 60);
  CHECK(a.n_items() == 9);
  CHECK(all_likert(a, 5));
  CHECK(a.item_labels().size() == 9);

  ResponseMatrix b = generate_unidimensional(spec);
  CHECK(a.values() == b.values());  // bit-exact for a fixed seed

  spec.seed = 124;
  ResponseMatrix c = generate_unidimensional(spec);
  CHECK(a.values() != c.values());
}

TEST_CASE("continuous generation skips the likert grid") {
  SyntheticSpec spec{40, 5, equal_loadings(5, 0.8), 0.6, std::nullopt, 9};
  ResponseMatrix m = generate_unidimensional(spec);
  bool any_fractional = false;
  for (double v : m.values()) {
    if (v != std::floor(v)) any_fractional = true;
  }
  CHECK(any_fractional);
}

TEST_CASE("calibrated tau-equivalent data lands in the alpha band") {
  SyntheticSpec spec{350, 15, equal_loadings(15, 0.8), 0.6, 5, 4242};
  const double alpha = cronbach_alpha(generate_unidimensional(spec));
  CHECK(alpha >= 0.85);
  CHECK(alpha <= 0.97);
}

TEST_CASE("overwhelming noise drives alpha toward zero") {
  SyntheticSpec spec{1000, 8, equal_loadings(8, 0.8), 100.0, 5, 99};
  CHECK(cronbach_alpha(generate_unidimensional(spec)) <= 0.2);
}

TEST_CASE("zero loadings leave no latent structure") {
  SyntheticSpec spec{200, 8, equal_loadings(8, 0.0), 1.0, std::nullopt, 77};
  ResponseMatrix m = generate_unidimensional(spec);
  CHECK(cronbach_alpha(m) <= 0.1);
  SearchParams params;
  params.seed = 1;
  CHECK(compute_monotone_delta(m, params).delta <= 0.75);
}

TEST_CASE("redundancy injection appends suffixed near-duplicates") {
  SyntheticSpec spec{80, 6, equal_loadings(6, 0.8), 0.6, 5, 10};
  ResponseMatrix base = generate_unidimensional(spec);
  ResponseMatrix out = inject_redundancy(base, 4, 0.95, std::nullopt, 5, 11);

  CHECK(out.n_items() == 10);
  CHECK(out.n_respondents() == 80);
  for (int j = 0; j < 80; ++j) {
    for (int l = 0; l < 6; ++l) {
      CHECK(out.at(j, l) == base.at(j, l));  // originals bit-identical
    }
  }
  CHECK(out.item_labels()[6] == base.item_labels()[0] + "_dup1");
  CHECK(out.item_labels()[7] == base.item_labels()[1] + "_dup2");
  CHECK(all_likert(out, 5));
}

TEST_CASE("exact duplication leaves delta untouched") {
  SyntheticSpec spec{50, 5, equal_loadings(5, 0.8), 0.6, 5, 21};
  ResponseMatrix base = generate_unidimensional(spec);
  // noise 0, factor 1, one duplicate per column: the two-fold item set
  ResponseMatrix doubled = inject_redundancy(base, 5, 1.0, 0.0, 5, 22);

  SearchParams params;
  params.seed = 3;
  DeltaResult before = compute_monotone_delta(base, params);
  DeltaResult after = compute_monotone_delta(doubled, params);
  CHECK(after.c_star == 2 * before.c_star);
  CHECK(after.c_max == 2 * before.c_max);
  CHECK(after.delta == before.delta);
}

TEST_CASE("noisy redundancy inflates alpha") {
  for (std::uint64_t seed : {5ULL, 6ULL, 7ULL}) {
    SyntheticSpec spec{350, 15, equal_loadings(15, 0.8), 0.6, 5, seed};
    ResponseMatrix base = generate_unidimensional(spec);
    ResponseMatrix redundant =
        inject_redundancy(base, 7, 0.95, std::nullopt, 5, seed + 1);
    CHECK(cronbach_alpha(redundant) > cronbach_alpha(base));
  }
}

TEST_CASE("two-trait generator shape and degenerate correlation") {
  MultiTraitSpec spec{350, 8, 7, equal_loadings(8, 0.8), equal_loadings(7, 0.8),
                      1.0, 0.6, 5, 31};
  ResponseMatrix m = generate_multidimensional(spec);
  CHECK(m.n_items() == 15);
  CHECK(all_likert(m, 5));

  // with perfectly correlated traits this is one-factor data; delta should
  // sit within sampling noise of a matched unidimensional draw
  SyntheticSpec uni{350, 15, equal_loadings(15, 0.8), 0.6, 5, 31};
  SearchParams params;
  params.seed = 2;
  const double delta_mm = compute_monotone_delta(m, params).delta;
  const double delta_uni =
      compute_monotone_delta(generate_unidimensional(uni), params).delta;
  CHECK(std::fabs(delta_mm - delta_uni) <= 0.05);
}

TEST_CASE("uncorrelated traits leave near-zero cross-block covariance") {
  MultiTraitSpec spec{20000, 6,   6,   equal_loadings(6, 0.8),
                      equal_loadings(6, 0.8), 0.0, 0.6, std::nullopt, 12};
  ResponseMatrix m = generate_multidimensional(spec);
  SummaryStats st = summarize(m);
  for (int a = 0; a < 6; ++a) {
    for (int b = 6; b < 12; ++b) {
      CHECK(std::fabs(st.cov(a, b)) <= 0.05);
    }
  }
}

TEST_CASE("null perturbation reproduces the plain generator bit for bit") {
  NonNormalSpec null_spec{120, 10, equal_loadings(10, 0.8), 0.0, 0.0,
                          0.6, 5, 67};
  SyntheticSpec plain{120, 10, equal_loadings(10, 0.8), 0.6, 5, 67};
  CHECK(apply_nonnormal_correlated(null_spec).values() ==
        generate_unidimensional(plain).values());
}

TEST_CASE("the skew transform is ordinally invisible before discretization") {
  NonNormalSpec flat{150, 8, equal_loadings(8, 0.8), 0.0, 0.4,
                     0.8, std::nullopt, 88};
  NonNormalSpec skewed = flat;
  skewed.skew_strength = 1.5;

  SearchParams params;
  params.seed = 5;
  DeltaResult a = compute_monotone_delta(apply_nonnormal_correlated(flat), params);
  DeltaResult b =
      compute_monotone_delta(apply_nonnormal_correlated(skewed), params);
  CHECK(a.c_star == b.c_star);
  CHECK(a.delta == b.delta);
}

TEST_CASE("frozen non-normal configuration crushes alpha but not delta") {
  // the scenario-4 regression values: rho 0.6, strength 1.5, likert 5
  NonNormalSpec spec{350, 15, equal_loadings(15, 0.85), 1.5, 0.6,
                     1.5, 5, 42 + 101 * 4};
  ResponseMatrix m = apply_nonnormal_correlated(spec);
  const double alpha = cronbach_alpha(m);
  SearchParams params;
  params.seed = 42;
  params.restarts = 10;
  const double delta = compute_monotone_delta(m, params).delta;
  CHECK(alpha <= 0.55);
  CHECK(delta >= 0.65);
}

TEST_CASE("generator parameter validation") {
  CHECK_THROWS_AS(
      generate_unidimensional(SyntheticSpec{1, 3, equal_loadings(3, 0.8),
                                            0.6, 5, 1}),
      Error);
  CHECK_THROWS_AS(
      generate_unidimensional(SyntheticSpec{10, 3, equal_loadings(2, 0.8),
                                            0.6, 5, 1}),
      Error);
  CHECK_THROWS_AS(
      generate_unidimensional(SyntheticSpec{10, 3, equal_loadings(3, 0.8),
                                            0.6, 1, 1}),
      Error);
  SyntheticSpec ok{10, 3, equal_loadings(3, 0.8), 0.6, 5, 1};
  ResponseMatrix base = generate_unidimensional(ok);
  CHECK_THROWS_AS(inject_redundancy(base, 0, 0.95, std::nullopt, 5, 1), Error);
  NonNormalSpec bad_rho{10, 3, equal_loadings(3, 0.8), 0.0, 1.0, 0.6, 5, 1};
  CHECK_THROWS_AS(apply_nonnormal_correlated(bad_rho), Error);
}

TEST_CASE("scenario config parses, echoes, and rejects unknown keys") {
  std::istringstream in(
      "# comment\n"
      "seed = 9\n"
      "n_respondents = 40\n"
      "n_items = 6\n"
      "loading = 0.7\n"
      "noise_sd = 0.9\n"
      "likert_levels = 7\n"
      "scenarios = 1,4\n"
      "measures = alpha,delta\n"
      "include_baselines = false\n"
      "restarts = 3\n"
      "variance_mode = population\n"
      "split_scheme = random\n");
  ScenarioConfig config = parse_scenario_config(in);
  CHECK(config.seed == 9);
  CHECK(config.n_respondents == 40);
  CHECK(config.n_items == 6);
  CHECK(config.loading == 0.7);
  CHECK(config.likert_levels == 7);
  CHECK(config.scenarios == std::vector<int>{1, 4});
  CHECK(config.measures ==
        std::vector<Measure>{Measure::Alpha, Measure::MonotoneDelta});
  CHECK(!config.include_baselines);
  CHECK(config.restarts == 3);
  CHECK(config.variance_mode == VarianceMode::Population);
  CHECK(config.split_scheme == SplitScheme::SeededRandom);

  nlohmann::ordered_json echo = config_echo(config);
  CHECK(echo["seed"] == 9);
  CHECK(echo["variance_mode"] == "population");

  std::istringstream bad("frobnicate = 3\n");
  CHECK_THROWS_AS(parse_scenario_config(bad), Error);
  std::istringstream bad2("seed == oops\n");
  CHECK_THROWS_AS(parse_scenario_config(bad2), Error);
}

TEST_CASE("suite cardinality: four scenarios times six measures") {
  ScenarioConfig config;
  config.n_respondents = 40;  // small for speed
  config.n_items = 6;
  config.k1 = 3;
  config.k2 = 3;
  config.include_baselines = false;
  config.restarts = 2;
  ScenarioReport report = run_scenario_suite(config);
  CHECK(report.rows.size() == 24);

  // canonical order and no duplicate (dataset, measure) pairs
  std::vector<std::string> expected_datasets = {"s1_ideal", "s2_redundant",
                                                "s3_twotrait", "s4_nonnormal"};
  std::size_t idx = 0;
  for (const std::string& dataset : expected_datasets) {
    for (Measure measure : all_measures()) {
      REQUIRE(idx < report.rows.size());
      CHECK(report.rows[idx].dataset == dataset);
      CHECK(report.rows[idx].measure == measure_name(measure));
      ++idx;
    }
  }
}

TEST_CASE("suite reruns are identical apart from timings") {
  ScenarioConfig config;
  config.n_respondents = 35;
  config.n_items = 6;
  config.k1 = 3;
  config.k2 = 3;
  config.restarts = 2;
  ScenarioReport a = run_scenario_suite(config);
  ScenarioReport b = run_scenario_suite(config);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].dataset == b.rows[i].dataset);
    CHECK(a.rows[i].measure == b.rows[i].measure);
    CHECK(a.rows[i].value == b.rows[i].value);
    CHECK(a.rows[i].note == b.rows[i].note);
  }
}

TEST_CASE("suite includes baselines by default") {
  ScenarioConfig config;
  config.n_respondents = 35;
  config.n_items = 6;
  config.k1 = 3;
  config.k2 = 3;
  config.restarts = 2;
  config.measures = {Measure::Alpha};
  ScenarioReport report = run_scenario_suite(config);
  std::vector<std::string> datasets;
  for (const ReportRow& row : report.rows) datasets.push_back(row.dataset);
  CHECK(datasets == std::vector<std::string>{"s1_ideal", "s2_base",
                                             "s2_redundant",
                                             "s3_unidim_baseline",
                                             "s3_twotrait", "s4_nonnormal"});
}
