#include "mdelta/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>
#include <random>
#include <string>

namespace mdelta {

namespace {

void check_params(const SearchParams& params) {
  if (params.restarts < 1) {
    raise(ErrorCode::Usage, "restarts must be >= 1");
  }
  if (params.max_non_improving < 0) {
    raise(ErrorCode::Usage, "max-non-improving must be >= 1 (or 0 for auto)");
  }
}

void check_start(const Ordering& start, int n) {
  if (static_cast<int>(start.perm.size()) != n) {
    raise(ErrorCode::LengthMismatch,
          "start ordering has " + std::to_string(start.perm.size()) +
              " entries, tournament has " + std::to_string(n));
  }
  std::vector<bool> seen(n, false);
  for (int e : start.perm) {
    if (e < 0 || e >= n || seen[e]) {
      raise(ErrorCode::LengthMismatch, "start ordering is not a permutation");
    }
    seen[e] = true;
  }
}

struct RestartOutcome {
  std::vector<int> perm;
  std::int64_t cost = 0;
};

// One restart: optional adjacent-transposition sweeps to local exhaustion,
// then random pair proposals until max_non_improving consecutive rejects.
RestartOutcome run_restart(const DominanceMatrix& t, std::vector<int> perm,
                           std::mt19937_64& rng, std::int64_t max_non_improving,
                           SearchParams::ProposalMode mode,
                           std::int64_t& proposals, std::int64_t& acceptances) {
  const int n = t.n;
  const std::int32_t* w = t.w.data();
  auto wat = [&](int a, int b) -> std::int64_t {
    return w[static_cast<std::size_t>(a) * n + b];
  };

  std::int64_t cost = contradiction_count(t, Ordering{perm});

  // Cost of swapping positions p < q; only pairs involving the two moved
  // elements change relative order.
  auto span_delta = [&](int p, int q) -> std::int64_t {
    const int a = perm[p];
    const int b = perm[q];
    std::int64_t d = wat(b, a) - wat(a, b);
    for (int r = p + 1; r < q; ++r) {
      const int c = perm[r];
      d += wat(c, a) - wat(a, c);
      d += wat(b, c) - wat(c, b);
    }
    return d;
  };

  if (mode == SearchParams::ProposalMode::AdjacentSweepThenRandom) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (int p = 0; p + 1 < n; ++p) {
        ++proposals;
        const int a = perm[p];
        const int b = perm[p + 1];
        const std::int64_t d = wat(b, a) - wat(a, b);
        if (d < 0) {
          std::swap(perm[p], perm[p + 1]);
          cost += d;
          ++acceptances;
          improved = true;
        }
      }
    }
  }

  std::uniform_int_distribution<int> pick_first(0, n - 1);
  std::uniform_int_distribution<int> pick_second(0, n - 2);
  std::int64_t non_improving = 0;
  while (non_improving < max_non_improving) {
    int i = pick_first(rng);
    int j = pick_second(rng);
    if (j >= i) ++j;
    const int p = std::min(i, j);
    const int q = std::max(i, j);
    ++proposals;
    const std::int64_t d = span_delta(p, q);
    if (d < 0) {
      std::swap(perm[p], perm[q]);
      cost += d;
      ++acceptances;
      non_improving = 0;
    } else {
      ++non_improving;
    }
  }

  return RestartOutcome{std::move(perm), cost};
}

}  // namespace

Ordering initial_ordering(const ResponseMatrix& m) {
  const int n = m.n_respondents();
  const int k = m.n_items();
  std::vector<double> mean(n, 0.0);
  for (int j = 0; j < n; ++j) {
    const double* row = m.row(j);
    double s = 0.0;
    for (int l = 0; l < k; ++l) s += row[l];
    mean[j] = s / k;
  }
  Ordering o;
  o.perm.resize(n);
  std::iota(o.perm.begin(), o.perm.end(), 0);
  std::stable_sort(o.perm.begin(), o.perm.end(),
                   [&](int a, int b) { return mean[a] < mean[b]; });
  return o;
}

std::int64_t swap_cost_delta(const DominanceMatrix& t, const Ordering& o,
                             int p, int q) {
  const int n = t.n;
  if (static_cast<int>(o.perm.size()) != n) {
    raise(ErrorCode::LengthMismatch,
          "ordering has " + std::to_string(o.perm.size()) +
              " entries, tournament has " + std::to_string(n));
  }
  if (p < 0 || q >= n || p >= q) {
    raise(ErrorCode::PositionOutOfRange,
          "positions (" + std::to_string(p) + ", " + std::to_string(q) +
              ") invalid for n=" + std::to_string(n));
  }
  const std::int32_t* w = t.w.data();
  auto wat = [&](int a, int b) -> std::int64_t {
    return w[static_cast<std::size_t>(a) * n + b];
  };
  const int a = o.perm[p];
  const int b = o.perm[q];
  std::int64_t d = wat(b, a) - wat(a, b);
  for (int r = p + 1; r < q; ++r) {
    const int c = o.perm[r];
    d += wat(c, a) - wat(a, c);
    d += wat(b, c) - wat(c, b);
  }
  return d;
}

DeltaResult local_search(const DominanceMatrix& t, const SearchParams& params,
                         const Ordering& first_start) {
  check_params(params);
  const int n = t.n;
  check_start(first_start, n);
  const std::int64_t c_max = max_contradictions(n, t.k_items);
  const std::int64_t max_non_improving =
      params.max_non_improving > 0
          ? params.max_non_improving
          : static_cast<std::int64_t>(n) * (n - 1);

  const auto t0 = std::chrono::steady_clock::now();

  DeltaResult result;
  result.c_star = std::numeric_limits<std::int64_t>::max();
  std::int64_t proposals = 0;
  std::int64_t acceptances = 0;

  for (int r = 0; r < params.restarts; ++r) {
    std::mt19937_64 rng(params.seed + static_cast<std::uint64_t>(r));
    std::vector<int> perm;
    if (r == 0) {
      perm = first_start.perm;
    } else {
      perm.resize(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
    }
    RestartOutcome outcome =
        run_restart(t, std::move(perm), rng, max_non_improving,
                    params.proposal_mode, proposals, acceptances);
    // strict < keeps the earliest restart on ties
    if (outcome.cost < result.c_star) {
      result.c_star = outcome.cost;
      result.best_ordering.perm = std::move(outcome.perm);
    }
  }

  result.c_max = c_max;
  result.delta = delta_from_counts(result.c_star, c_max);
  result.diagnostics.restarts_used = params.restarts;
  result.diagnostics.proposals = proposals;
  result.diagnostics.acceptances = acceptances;
  result.diagnostics.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return result;
}

DeltaResult local_search(const DominanceMatrix& t, const SearchParams& params) {
  Ordering identity;
  identity.perm.resize(t.n);
  std::iota(identity.perm.begin(), identity.perm.end(), 0);
  return local_search(t, params, identity);
}

ExactResult exact_min_contradictions(const DominanceMatrix& t, int limit) {
  const int n = t.n;
  if (limit < 1) {
    raise(ErrorCode::Usage, "oracle limit must be >= 1");
  }
  if (n > limit) {
    raise(ErrorCode::InstanceTooLarge,
          "n=" + std::to_string(n) + " exceeds the enumeration limit " +
              std::to_string(limit));
  }
  const std::int32_t* w = t.w.data();

  std::vector<int> current(n);
  std::vector<bool> used(n, false);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::vector<int> best_perm;
  std::int64_t leaves = 0;

  // Depth-first over prefixes in lexicographic order; a prefix whose cost
  // already reaches the incumbent cannot improve, and the first optimum
  // found is the lexicographically smallest.
  auto rec = [&](auto&& self, int depth, std::int64_t cost) -> void {
    if (depth == n) {
      ++leaves;
      best = cost;
      best_perm = current;
      return;
    }
    for (int e = 0; e < n; ++e) {
      if (used[e]) continue;
      std::int64_t add = 0;
      for (int d = 0; d < depth; ++d) {
        add += w[static_cast<std::size_t>(current[d]) * n + e];
      }
      if (cost + add >= best) continue;
      used[e] = true;
      current[depth] = e;
      self(self, depth + 1, cost + add);
      used[e] = false;
    }
  };
  rec(rec, 0, 0);

  ExactResult out;
  out.c_star = best;
  out.best_ordering.perm = std::move(best_perm);
  out.permutations_examined = leaves;
  return out;
}

DeltaResult compute_monotone_delta(const ResponseMatrix& m,
                                   const SearchParams& params) {
  DominanceMatrix t = build_tournament(m);
  return local_search(t, params, initial_ordering(m));
}

}  // namespace mdelta
