#include "mdelta/cli.hpp"

#include <algorithm>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mdelta/measures.hpp"
#include "mdelta/optimizer.hpp"
#include "mdelta/report.hpp"
#include "mdelta/response_data.hpp"
#include "mdelta/scenario.hpp"

namespace mdelta {

namespace {

enum class Format { Json, Csv, Table };

Format parse_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "table") return Format::Table;
  raise(ErrorCode::Usage, "unknown format '" + name + "'");
}

void write_payload(const std::string& payload, const std::string& output_path,
                   std::ostream& out) {
  if (output_path.empty()) {
    out << payload;
    return;
  }
  std::ofstream f(output_path);
  if (!f) {
    raise(ErrorCode::Io, "cannot open '" + output_path + "' for writing");
  }
  f << payload;
}

std::string dataset_label_for(const std::string& input_path) {
  std::filesystem::path p(input_path);
  std::string stem = p.stem().string();
  return stem.empty() ? std::string("dataset") : stem;
}

std::vector<Measure> parse_measures(const std::string& spec,
                                    OmegaVariant omega_variant) {
  if (spec.empty() || spec == "all") return all_measures();
  std::vector<Measure> out;
  auto add = [&](Measure m) {
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  };
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    if (tok == "omega") {
      add(omega_variant == OmegaVariant::Paper ? Measure::OmegaPaper
                                               : Measure::OmegaConventional);
      continue;
    }
    auto m = measure_from_name(tok);
    if (!m) {
      raise(ErrorCode::Usage, "unknown measure '" + tok + "'");
    }
    add(*m);
  }
  if (out.empty()) {
    raise(ErrorCode::Usage, "no measures selected");
  }
  return out;
}

struct CommonFlags {
  std::string input;
  std::string output;
  std::string format = "table";
  std::uint64_t seed = 0;
  int restarts = 10;
  std::int64_t max_non_improving = 0;
  std::string variance_mode = "sample";
  std::string omega_variant = "paper";
  std::string split_scheme = "odd-even";
};

VarianceMode parse_variance_mode(const std::string& s) {
  if (s == "sample") return VarianceMode::Sample;
  if (s == "population") return VarianceMode::Population;
  raise(ErrorCode::Usage, "variance-mode must be sample or population");
}

OmegaVariant parse_omega_variant(const std::string& s) {
  if (s == "paper") return OmegaVariant::Paper;
  if (s == "conventional") return OmegaVariant::Conventional;
  raise(ErrorCode::Usage, "omega-variant must be paper or conventional");
}

SplitScheme parse_split_scheme(const std::string& s) {
  if (s == "odd-even") return SplitScheme::OddEven;
  if (s == "random") return SplitScheme::SeededRandom;
  raise(ErrorCode::Usage, "split-scheme must be odd-even or random");
}

nlohmann::ordered_json options_echo(const CommonFlags& flags) {
  nlohmann::ordered_json j;
  j["seed"] = flags.seed;
  j["restarts"] = flags.restarts;
  j["max_non_improving"] = flags.max_non_improving;
  j["variance_mode"] = flags.variance_mode;
  j["omega_variant"] = flags.omega_variant;
  j["split_scheme"] = flags.split_scheme;
  return j;
}

int run_compute(const CommonFlags& flags, const std::string& measures_spec,
                std::ostream& out) {
  const OmegaVariant omega_variant = parse_omega_variant(flags.omega_variant);
  const std::vector<Measure> measures =
      parse_measures(measures_spec, omega_variant);
  const Format format = parse_format(flags.format);
  ResponseMatrix m = load_csv_file(flags.input);

  MeasureOptions options;
  options.variance_mode = parse_variance_mode(flags.variance_mode);
  options.split_scheme = parse_split_scheme(flags.split_scheme);
  options.split_seed = flags.seed;
  options.search.seed = flags.seed;
  options.search.restarts = flags.restarts;
  options.search.max_non_improving = flags.max_non_improving;

  std::vector<ReportRow> rows =
      time_measures(m, measures, options, dataset_label_for(flags.input));

  std::string payload;
  if (format == Format::Csv) {
    payload = emit_csv(rows);
  } else if (format == Format::Table) {
    payload = emit_table(rows);
  } else {
    nlohmann::ordered_json meta;
    meta["version"] = kVersion;
    meta["command"] = "compute";
    meta["input"] = flags.input;
    meta["n_respondents"] = m.n_respondents();
    meta["n_items"] = m.n_items();
    meta["options"] = options_echo(flags);
    payload = emit_json(meta, rows);
  }
  write_payload(payload, flags.output, out);
  return 0;
}

int run_scenario_command(const ScenarioConfig& config, const CommonFlags& flags,
                         std::ostream& out) {
  const Format format = parse_format(flags.format);
  ScenarioReport report = run_scenario_suite(config);

  std::string payload;
  if (format == Format::Csv) {
    payload = emit_csv(report.rows);
  } else if (format == Format::Table) {
    payload = emit_table(report.rows);
  } else {
    nlohmann::ordered_json meta;
    meta["version"] = kVersion;
    meta["command"] = "scenario";
    meta["config"] = config_echo(report.config);
    payload = emit_json(meta, report.rows);
  }
  write_payload(payload, flags.output, out);
  return 0;
}

int run_oracle(const CommonFlags& flags, int oracle_limit, std::ostream& out) {
  const Format format = parse_format(flags.format);
  ResponseMatrix m = load_csv_file(flags.input);
  DominanceMatrix t = build_tournament(m);
  const auto t0 = std::chrono::steady_clock::now();
  ExactResult exact = exact_min_contradictions(t, oracle_limit);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  const std::int64_t c_max = max_contradictions(t.n, t.k_items);
  const double delta = delta_from_counts(exact.c_star, c_max);

  if (format == Format::Json) {
    nlohmann::ordered_json meta;
    meta["version"] = kVersion;
    meta["command"] = "oracle";
    meta["input"] = flags.input;
    meta["oracle_limit"] = oracle_limit;
    nlohmann::ordered_json root;
    root["meta"] = meta;
    nlohmann::ordered_json res;
    res["c_star"] = exact.c_star;
    res["c_max"] = c_max;
    res["delta"] = delta;
    res["permutations_examined"] = exact.permutations_examined;
    res["ordering"] = exact.best_ordering.perm;
    res["seconds"] = seconds;
    root["result"] = res;
    write_payload(root.dump(2) + "\n", flags.output, out);
    return 0;
  }
  if (format == Format::Csv) {
    std::vector<ReportRow> rows;
    const std::string label = dataset_label_for(flags.input);
    rows.push_back({label, "c_star", static_cast<double>(exact.c_star),
                    seconds, ""});
    rows.push_back({label, "c_max", static_cast<double>(c_max), seconds, ""});
    rows.push_back({label, "delta", delta, seconds, ""});
    rows.push_back({label, "permutations_examined",
                    static_cast<double>(exact.permutations_examined), seconds,
                    ""});
    write_payload(emit_csv(rows), flags.output, out);
    return 0;
  }
  std::ostringstream text;
  text << "c_star = " << exact.c_star << "\n";
  text << "c_max = " << c_max << "\n";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", delta);
  text << "delta = " << buf << "\n";
  text << "permutations_examined = " << exact.permutations_examined << "\n";
  text << "ordering =";
  for (int e : exact.best_ordering.perm) text << ' ' << e;
  text << "\n";
  write_payload(text.str(), flags.output, out);
  return 0;
}

int run_dump_tournament(const CommonFlags& flags, std::ostream& out) {
  ResponseMatrix m = load_csv_file(flags.input);
  DominanceMatrix t = build_tournament(m);
  std::string payload;
  for (int j = 0; j < t.n; ++j) {
    for (int k = 0; k < t.n; ++k) {
      if (k > 0) payload += ',';
      payload += std::to_string(t.at(j, k));
    }
    payload += '\n';
  }
  write_payload(payload, flags.output, out);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Monotone Delta internal-consistency toolkit"};
  app.name("mdelta");
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CommonFlags flags;
  std::string measures_spec;
  std::string config_path;
  int oracle_limit = 9;

  auto add_common = [&](CLI::App* cmd, bool with_input) {
    if (with_input) {
      cmd->add_option("--input", flags.input, "input csv file")->required();
    }
    cmd->add_option("--output", flags.output, "write payload to file");
    cmd->add_option("--format", flags.format, "json|csv|table");
  };
  auto add_measure_opts = [&](CLI::App* cmd) {
    cmd->add_option("--seed", flags.seed, "optimizer / split seed");
    cmd->add_option("--restarts", flags.restarts, "local search restarts");
    cmd->add_option("--max-non-improving", flags.max_non_improving,
                    "rejected proposals ending a restart (0 = n*(n-1))");
    cmd->add_option("--variance-mode", flags.variance_mode,
                    "sample|population");
    cmd->add_option("--omega-variant", flags.omega_variant,
                    "paper|conventional (resolves the 'omega' alias)");
    cmd->add_option("--split-scheme", flags.split_scheme, "odd-even|random");
  };

  CLI::App* compute = app.add_subcommand("compute", "measures on a csv dataset");
  add_common(compute, true);
  add_measure_opts(compute);
  compute->add_option("--measures", measures_spec,
                      "comma list (default all); alias: delta, omega");

  CLI::App* scenario =
      app.add_subcommand("scenario", "run the synthetic stress-scenario suite");
  add_common(scenario, false);
  scenario->add_option("--config", config_path, "flat key=value config file");
  // every config key is also a flag; flags override the file
  std::uint64_t sc_seed = 0;
  int sc_n = 0, sc_k = 0, sc_likert = -1, sc_r = 0, sc_k1 = 0, sc_k2 = 0;
  int sc_restarts = 0;
  std::int64_t sc_mni = -1;
  double sc_loading = 0, sc_noise = 0, sc_rfactor = 0, sc_rnoise = 0,
         sc_rho = 0, sc_skew = 0, sc_erho = 0, sc_s4noise = 0;
  std::string sc_scenarios, sc_measures, sc_vmode, sc_sscheme;
  bool sc_no_baselines = false;
  auto* o_seed = scenario->add_option("--seed", sc_seed, "generator seed");
  auto* o_n = scenario->add_option("--n-respondents", sc_n, "");
  auto* o_k = scenario->add_option("--n-items", sc_k, "");
  auto* o_loading = scenario->add_option("--loading", sc_loading, "");
  auto* o_noise = scenario->add_option("--noise-sd", sc_noise, "");
  auto* o_likert = scenario->add_option("--likert-levels", sc_likert,
                                        "0 = continuous");
  auto* o_r = scenario->add_option("--redundancy-count", sc_r, "");
  auto* o_rfactor = scenario->add_option("--redundancy-factor", sc_rfactor, "");
  auto* o_rnoise =
      scenario->add_option("--redundancy-noise-sd", sc_rnoise, "");
  auto* o_k1 = scenario->add_option("--k1", sc_k1, "");
  auto* o_k2 = scenario->add_option("--k2", sc_k2, "");
  auto* o_rho = scenario->add_option("--trait-correlation", sc_rho, "");
  auto* o_skew = scenario->add_option("--skew-strength", sc_skew, "");
  auto* o_erho = scenario->add_option("--error-rho", sc_erho, "");
  auto* o_s4noise = scenario->add_option("--s4-noise-sd", sc_s4noise, "");
  auto* o_scen = scenario->add_option("--scenarios", sc_scenarios,
                                      "comma list of 1..4");
  auto* o_meas = scenario->add_option("--measures", sc_measures, "comma list");
  auto* o_restarts = scenario->add_option("--restarts", sc_restarts, "");
  auto* o_mni =
      scenario->add_option("--max-non-improving", sc_mni, "0 = n*(n-1)");
  auto* o_vmode = scenario->add_option("--variance-mode", sc_vmode, "");
  auto* o_sscheme = scenario->add_option("--split-scheme", sc_sscheme, "");
  auto* o_nobase = scenario->add_flag("--no-baselines", sc_no_baselines,
                                      "omit s2_base / s3_unidim_baseline");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "exact minimum contradiction count (small n only)");
  add_common(oracle, true);
  oracle->add_option("--oracle-limit", oracle_limit,
                     "maximum n for exhaustive enumeration");

  CLI::App* dump = app.add_subcommand("dump-tournament",
                                      "dominance matrix W as integer csv");
  add_common(dump, true);

  std::vector<const char*> argv;
  argv.push_back("mdelta");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error[USAGE]: " << e.what() << "\n";
    return 2;
  }

  try {
    if (compute->parsed()) {
      return run_compute(flags, measures_spec, out);
    }
    if (scenario->parsed()) {
      ScenarioConfig config;
      if (!config_path.empty()) {
        config = parse_scenario_config_file(config_path);
      }
      if (o_seed->count() > 0) config.seed = sc_seed;
      if (o_n->count() > 0) config.n_respondents = sc_n;
      if (o_k->count() > 0) config.n_items = sc_k;
      if (o_loading->count() > 0) config.loading = sc_loading;
      if (o_noise->count() > 0) config.noise_sd = sc_noise;
      if (o_likert->count() > 0) config.likert_levels = sc_likert;
      if (o_r->count() > 0) config.redundancy_count = sc_r;
      if (o_rfactor->count() > 0) config.redundancy_factor = sc_rfactor;
      if (o_rnoise->count() > 0) config.redundancy_noise_sd = sc_rnoise;
      if (o_k1->count() > 0) config.k1 = sc_k1;
      if (o_k2->count() > 0) config.k2 = sc_k2;
      if (o_rho->count() > 0) config.trait_correlation = sc_rho;
      if (o_skew->count() > 0) config.skew_strength = sc_skew;
      if (o_erho->count() > 0) config.error_rho = sc_erho;
      if (o_s4noise->count() > 0) config.s4_noise_sd = sc_s4noise;
      if (o_scen->count() > 0) {
        config.scenarios.clear();
        std::stringstream ss(sc_scenarios);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
          if (!tok.empty()) config.scenarios.push_back(std::stoi(tok));
        }
      }
      if (o_meas->count() > 0) {
        config.measures = parse_measures(
            sc_measures, parse_omega_variant(flags.omega_variant));
      }
      if (o_restarts->count() > 0) config.restarts = sc_restarts;
      if (o_mni->count() > 0) config.max_non_improving = sc_mni;
      if (o_vmode->count() > 0) {
        config.variance_mode = parse_variance_mode(sc_vmode);
      }
      if (o_sscheme->count() > 0) {
        config.split_scheme = parse_split_scheme(sc_sscheme);
      }
      if (o_nobase->count() > 0) config.include_baselines = !sc_no_baselines;
      return run_scenario_command(config, flags, out);
    }
    if (oracle->parsed()) {
      return run_oracle(flags, oracle_limit, out);
    }
    if (dump->parsed()) {
      return run_dump_tournament(flags, out);
    }
  } catch (const Error& e) {
    err << "error[" << error_code_name(e.code()) << "]: " << e.what() << "\n";
    return e.code() == ErrorCode::Usage ? 2 : 1;
  } catch (const std::exception& e) {
    err << "error[INTERNAL]: " << e.what() << "\n";
    return 1;
  }
  err << "error[USAGE]: no command\n";
  return 2;
}

}  // namespace mdelta
