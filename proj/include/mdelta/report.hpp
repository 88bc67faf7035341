#pragma once

// Report rows, the per-measure timing runner, and the three emitters
// (json, csv, table).

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mdelta/measures.hpp"
#include "mdelta/optimizer.hpp"

namespace mdelta {

struct ReportRow {
  std::string dataset;
  std::string measure;
  std::optional<double> value;  // absent when the measure errored
  double seconds = 0.0;
  std::string note;
};

struct MeasureOptions {
  VarianceMode variance_mode = VarianceMode::Sample;
  SplitScheme split_scheme = SplitScheme::OddEven;
  std::uint64_t split_seed = 0;
  SearchParams search;
};

// Runs each measure with a monotonic-clock timing. A measure failure becomes
// a row with no value and an "error[CODE]: ..." note; the suite never aborts.
std::vector<ReportRow> time_measures(const ResponseMatrix& m,
                                     const std::vector<Measure>& measures,
                                     const MeasureOptions& options,
                                     const std::string& dataset_label);

// csv: header dataset,measure,value,seconds; values and seconds at 4
// decimals, '.' decimal point, empty value field for error rows.
std::string emit_csv(const std::vector<ReportRow>& rows);

// json: {"meta": ..., "rows": [...]}, insertion-ordered keys, stable output.
std::string emit_json(const nlohmann::ordered_json& meta,
                      const std::vector<ReportRow>& rows);

// table: datasets as rows, measures as columns, 4-decimal cells.
std::string emit_table(const std::vector<ReportRow>& rows);

}  // namespace mdelta
