#include "mdelta/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

namespace mdelta {

namespace {

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

std::string evaluate(const ResponseMatrix& m, Measure measure,
                     const MeasureOptions& options, double& value) {
  switch (measure) {
    case Measure::Alpha:
      value = cronbach_alpha(m);
      return "";
    case Measure::OmegaPaper:
    case Measure::OmegaConventional: {
      if (m.n_items() < 2) {
        raise(ErrorCode::SingleItem, "omega needs at least 2 items");
      }
      SummaryStats st = summarize(m, options.variance_mode);
      if (st.total_variance <= 0.0) {
        raise(ErrorCode::ZeroTotalVariance,
              "total scores are constant; omega undefined");
      }
      OneFactorFit fit = fit_one_factor(st.covariance, m.n_items());
      const bool paper = measure == Measure::OmegaPaper;
      value = omega_from_fit(
          fit, paper ? OmegaVariant::Paper : OmegaVariant::Conventional);
      const double other = omega_from_fit(
          fit, paper ? OmegaVariant::Conventional : OmegaVariant::Paper);
      std::string note = paper ? "conventional=" : "paper=";
      note += fixed4(other);
      if (fit.heywood_clamped) note += "; heywood_clamped";
      if (!fit.converged) {
        note += "; fit_not_converged(iter=" +
                std::to_string(fit.iterations) + ")";
      }
      return note;
    }
    case Measure::Glb: {
      SummaryStats st = summarize(m, options.variance_mode);
      GlbResult r = glb_from_cov(st.covariance, m.n_items());
      value = r.value;
      if (!r.converged) {
        return "glb_not_converged(iter=" + std::to_string(r.iterations) + ")";
      }
      return "";
    }
    case Measure::SplitHalf:
      value = split_half(m, options.split_scheme, options.split_seed);
      return options.split_scheme == SplitScheme::OddEven
                 ? "scheme=odd-even"
                 : "scheme=random(seed=" + std::to_string(options.split_seed) +
                       ")";
    case Measure::MonotoneDelta: {
      DeltaResult r = compute_monotone_delta(m, options.search);
      value = r.delta;
      return "c_star=" + std::to_string(r.c_star) +
             "; c_max=" + std::to_string(r.c_max) +
             "; restarts=" + std::to_string(r.diagnostics.restarts_used);
    }
  }
  raise(ErrorCode::Usage, "unknown measure");
}

}  // namespace

std::vector<ReportRow> time_measures(const ResponseMatrix& m,
                                     const std::vector<Measure>& measures,
                                     const MeasureOptions& options,
                                     const std::string& dataset_label) {
  std::vector<ReportRow> rows;
  rows.reserve(measures.size());
  for (Measure measure : measures) {
    ReportRow row;
    row.dataset = dataset_label;
    row.measure = measure_name(measure);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      double value = 0.0;
      row.note = evaluate(m, measure, options, value);
      row.value = value;
    } catch (const Error& e) {
      row.value = std::nullopt;
      row.note = std::string("error[") + error_code_name(e.code()) +
                 "]: " + e.what();
    }
    row.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string emit_csv(const std::vector<ReportRow>& rows) {
  std::string out = "dataset,measure,value,seconds\n";
  for (const ReportRow& row : rows) {
    out += row.dataset;
    out += ',';
    out += row.measure;
    out += ',';
    if (row.value) out += fixed4(*row.value);
    out += ',';
    out += fixed4(row.seconds);
    out += '\n';
  }
  return out;
}

std::string emit_json(const nlohmann::ordered_json& meta,
                      const std::vector<ReportRow>& rows) {
  nlohmann::ordered_json root;
  root["meta"] = meta;
  root["rows"] = nlohmann::ordered_json::array();
  for (const ReportRow& row : rows) {
    nlohmann::ordered_json j;
    j["dataset"] = row.dataset;
    j["measure"] = row.measure;
    if (row.value) {
      j["value"] = *row.value;
    } else {
      j["value"] = nullptr;
    }
    j["seconds"] = row.seconds;
    if (!row.note.empty()) j["note"] = row.note;
    root["rows"].push_back(std::move(j));
  }
  return root.dump(2) + "\n";
}

std::string emit_table(const std::vector<ReportRow>& rows) {
  std::vector<std::string> datasets;
  std::vector<std::string> measures;
  for (const ReportRow& row : rows) {
    if (std::find(datasets.begin(), datasets.end(), row.dataset) ==
        datasets.end()) {
      datasets.push_back(row.dataset);
    }
    if (std::find(measures.begin(), measures.end(), row.measure) ==
        measures.end()) {
      measures.push_back(row.measure);
    }
  }

  auto cell = [&](const std::string& dataset,
                  const std::string& measure) -> std::string {
    for (const ReportRow& row : rows) {
      if (row.dataset == dataset && row.measure == measure) {
        return row.value ? fixed4(*row.value) : "n/a";
      }
    }
    return "";
  };

  std::size_t first_width = std::string("dataset").size();
  for (const auto& d : datasets) first_width = std::max(first_width, d.size());
  std::vector<std::size_t> widths;
  for (const auto& m : measures) {
    std::size_t w = m.size();
    for (const auto& d : datasets) w = std::max(w, cell(d, m).size());
    widths.push_back(w);
  }

  std::ostringstream out;
  out << std::string("dataset") +
             std::string(first_width - 7, ' ');
  for (std::size_t i = 0; i < measures.size(); ++i) {
    out << "  " << measures[i]
        << std::string(widths[i] - measures[i].size(), ' ');
  }
  out << '\n';
  for (const auto& d : datasets) {
    out << d << std::string(first_width - d.size(), ' ');
    for (std::size_t i = 0; i < measures.size(); ++i) {
      const std::string c = cell(d, measures[i]);
      out << "  " << c << std::string(widths[i] - c.size(), ' ');
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace mdelta
