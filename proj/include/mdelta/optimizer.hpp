#pragma once

// Ordering search: strict-descent pairwise-swap local search with seeded
// restarts, plus an exact enumeration oracle for desk-scale instances.

#include <cstdint>

#include "mdelta/tournament.hpp"

namespace mdelta {

struct SearchParams {
  enum class ProposalMode { RandomPair, AdjacentSweepThenRandom };

  std::uint64_t seed = 0;
  int restarts = 10;
  // Consecutive rejected proposals that end a restart; 0 means the
  // per-instance default n*(n-1).
  std::int64_t max_non_improving = 0;
  ProposalMode proposal_mode = ProposalMode::AdjacentSweepThenRandom;
};

struct ExactResult {
  std::int64_t c_star = 0;
  Ordering best_ordering;  // lexicographically smallest optimum
  std::int64_t permutations_examined = 0;
};

// Respondents sorted ascending by mean score, ties broken by row index.
Ordering initial_ordering(const ResponseMatrix& m);

// C(pi') - C(pi) for swapping positions p < q, evaluated in O(q - p).
std::int64_t swap_cost_delta(const DominanceMatrix& t, const Ordering& o,
                             int p, int q);

// Restart 1 starts from `first_start`; later restarts from seeded random
// permutations. Only strictly improving swaps are accepted.
DeltaResult local_search(const DominanceMatrix& t, const SearchParams& params,
                         const Ordering& first_start);
// Same, with the identity permutation as the first start.
DeltaResult local_search(const DominanceMatrix& t, const SearchParams& params);

// Exhaustive minimum over all n! orderings (prefix-cost pruned).
ExactResult exact_min_contradictions(const DominanceMatrix& t, int limit = 9);

// The full pipeline: tournament, mean-score initial ordering, local search.
DeltaResult compute_monotone_delta(const ResponseMatrix& m,
                                   const SearchParams& params);

}  // namespace mdelta
