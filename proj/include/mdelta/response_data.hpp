#pragma once

// Response-matrix data model: CSV ingestion, validation, and the summary
// statistics every reliability measure is built on.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "mdelta/error.hpp"

namespace mdelta {

enum class VarianceMode { Sample, Population };

// N x K table of finite survey responses, one row per respondent.
// Immutable after construction; safe to share across threads.
class ResponseMatrix {
 public:
  ResponseMatrix(int n_respondents, int n_items, std::vector<double> values,
                 std::vector<std::string> item_labels);

  int n_respondents() const { return n_; }
  int n_items() const { return k_; }
  double at(int j, int l) const {
    return values_[static_cast<std::size_t>(j) * k_ + l];
  }
  const double* row(int j) const {
    return values_.data() + static_cast<std::size_t>(j) * k_;
  }
  const std::vector<double>& values() const { return values_; }
  const std::vector<std::string>& item_labels() const { return labels_; }

 private:
  int n_ = 0;
  int k_ = 0;
  std::vector<double> values_;  // row-major
  std::vector<std::string> labels_;
};

struct SummaryStats {
  std::vector<double> total_scores;    // T_j, length N
  std::vector<double> item_variances;  // length K
  double total_variance = 0.0;
  std::vector<double> covariance;  // K x K, row-major
  int k = 0;

  double cov(int a, int b) const {
    return covariance[static_cast<std::size_t>(a) * k + b];
  }
};

// Parses the CSV wire format: UTF-8, comma separated, mandatory header row
// of item labels, one row of numeric fields per respondent. Empty cells and
// non-finite values are rejected.
ResponseMatrix load_csv(std::istream& source);
ResponseMatrix load_csv_file(const std::string& path);

SummaryStats summarize(const ResponseMatrix& m,
                       VarianceMode mode = VarianceMode::Sample);

}  // namespace mdelta
