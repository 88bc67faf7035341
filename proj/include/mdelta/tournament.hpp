#pragma once

// Weighted tournament over respondents: dominance counts, contradiction
// evaluation, and the delta normalization.

#include <cstdint>
#include <vector>

#include "mdelta/error.hpp"
#include "mdelta/response_data.hpp"

namespace mdelta {

// W(j,k) = number of items on which respondent j strictly outscores k.
// Zero diagonal; w[j][k] + w[k][j] <= k_items with the gap made of ties.
struct DominanceMatrix {
  int n = 0;
  int k_items = 0;
  std::vector<std::int32_t> w;  // n x n, row-major

  std::int32_t at(int j, int k) const {
    return w[static_cast<std::size_t>(j) * n + k];
  }
};

// Permutation of respondent indices; position 0 is the hypothesized bottom
// of the latent order.
struct Ordering {
  std::vector<int> perm;
};

struct SearchDiagnostics {
  int restarts_used = 0;
  std::int64_t proposals = 0;
  std::int64_t acceptances = 0;
  double wall_seconds = 0.0;
};

struct DeltaResult {
  std::int64_t c_star = 0;
  std::int64_t c_max = 0;
  double delta = 0.0;
  Ordering best_ordering;
  SearchDiagnostics diagnostics;
};

DominanceMatrix build_tournament(const ResponseMatrix& m);

// C(pi): sum over positions p<q of w[perm[p]][perm[q]].
std::int64_t contradiction_count(const DominanceMatrix& t, const Ordering& o);

// K * N(N-1)/2. Requires n >= 2, k >= 1.
std::int64_t max_contradictions(std::int64_t n, std::int64_t k);

// 1 - c_star/c_max.
double delta_from_counts(std::int64_t c_star, std::int64_t c_max);

}  // namespace mdelta
