#include "mdelta/response_data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string_view>
#include <unordered_set>

namespace mdelta {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_cell(const std::string& field, std::size_t row, std::size_t col) {
  std::string_view t = trim(field);
  if (!t.empty() && t.front() == '+') t.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  bool ok = !t.empty() && ec == std::errc{} && ptr == t.data() + t.size() &&
            std::isfinite(value);
  if (!ok) {
    raise(ErrorCode::NonNumericCell,
          "row " + std::to_string(row) + ", column " + std::to_string(col + 1) +
              ": cell '" + field + "' is not a finite number");
  }
  return value;
}

}  // namespace

ResponseMatrix::ResponseMatrix(int n_respondents, int n_items,
                               std::vector<double> values,
                               std::vector<std::string> item_labels)
    : n_(n_respondents),
      k_(n_items),
      values_(std::move(values)),
      labels_(std::move(item_labels)) {
  if (k_ < 1) {
    raise(ErrorCode::DegenerateInstance, "matrix needs at least one item");
  }
  if (n_ < 2) {
    raise(ErrorCode::TooFewRespondents,
          "need at least 2 respondents, got " + std::to_string(n_));
  }
  if (values_.size() != static_cast<std::size_t>(n_) * k_) {
    raise(ErrorCode::LengthMismatch,
          "value buffer does not match " + std::to_string(n_) + "x" +
              std::to_string(k_));
  }
  if (labels_.size() != static_cast<std::size_t>(k_)) {
    raise(ErrorCode::LengthMismatch, "expected " + std::to_string(k_) +
                                         " item labels, got " +
                                         std::to_string(labels_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      raise(ErrorCode::NonNumericCell, "matrix contains a non-finite value");
    }
  }
  std::unordered_set<std::string> seen;
  for (const auto& label : labels_) {
    if (!seen.insert(label).second) {
      raise(ErrorCode::DuplicateLabel, "duplicate item label '" + label + "'");
    }
  }
}

ResponseMatrix load_csv(std::istream& source) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(source, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (lines.empty() && line.rfind("\xEF\xBB\xBF", 0) == 0) {
      line.erase(0, 3);  // utf-8 byte order mark
    }
    lines.push_back(line);
  }
  // A final newline produces no extra line from getline, but tolerate a
  // single trailing blank.
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) {
    raise(ErrorCode::Io, "empty csv: missing header row");
  }

  std::vector<std::string> labels = split_fields(lines[0]);
  const std::size_t k = labels.size();

  std::vector<double> values;
  values.reserve((lines.size() - 1) * k);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    std::vector<std::string> fields = split_fields(lines[r]);
    if (fields.size() != k) {
      raise(ErrorCode::RaggedRow,
            "row " + std::to_string(r) + " has " +
                std::to_string(fields.size()) + " fields, expected " +
                std::to_string(k));
    }
    for (std::size_t c = 0; c < k; ++c) {
      values.push_back(parse_cell(fields[c], r, c));
    }
  }

  const std::size_t n = lines.size() - 1;
  if (n < 2) {
    raise(ErrorCode::TooFewRespondents,
          "need at least 2 respondents, got " + std::to_string(n));
  }
  return ResponseMatrix(static_cast<int>(n), static_cast<int>(k),
                        std::move(values), std::move(labels));
}

ResponseMatrix load_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    raise(ErrorCode::Io, "cannot open '" + path + "'");
  }
  return load_csv(in);
}

SummaryStats summarize(const ResponseMatrix& m, VarianceMode mode) {
  const int n = m.n_respondents();
  const int k = m.n_items();
  const double divisor =
      mode == VarianceMode::Sample ? static_cast<double>(n - 1)
                                   : static_cast<double>(n);

  std::vector<double> mean(k, 0.0);
  for (int j = 0; j < n; ++j) {
    const double* row = m.row(j);
    for (int l = 0; l < k; ++l) mean[l] += row[l];
  }
  for (int l = 0; l < k; ++l) mean[l] /= n;

  SummaryStats out;
  out.k = k;
  out.total_scores.resize(n, 0.0);
  for (int j = 0; j < n; ++j) {
    const double* row = m.row(j);
    double t = 0.0;
    for (int l = 0; l < k; ++l) t += row[l];
    out.total_scores[j] = t;
  }

  out.covariance.assign(static_cast<std::size_t>(k) * k, 0.0);
  for (int a = 0; a < k; ++a) {
    for (int b = a; b < k; ++b) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) {
        const double* row = m.row(j);
        s += (row[a] - mean[a]) * (row[b] - mean[b]);
      }
      const double c = s / divisor;
      out.covariance[static_cast<std::size_t>(a) * k + b] = c;
      out.covariance[static_cast<std::size_t>(b) * k + a] = c;
    }
  }

  out.item_variances.resize(k);
  for (int l = 0; l < k; ++l) {
    out.item_variances[l] = out.covariance[static_cast<std::size_t>(l) * k + l];
  }

  // Total variance from the total scores directly; the 1' Sigma 1 identity
  // is a checked property, not the construction.
  double tmean = 0.0;
  for (double t : out.total_scores) tmean += t;
  tmean /= n;
  double ss = 0.0;
  for (double t : out.total_scores) ss += (t - tmean) * (t - tmean);
  out.total_variance = ss / divisor;

  return out;
}

}  // namespace mdelta
