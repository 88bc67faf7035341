// Tests for the ordering local search and the exact enumeration oracle.

#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "mdelta/optimizer.hpp"

using namespace mdelta;

namespace {

ResponseMatrix matrix_from(int n, int k, std::vector<double> values) {
  std::vector<std::string> labels(k);
  for (int l = 0; l < k; ++l) labels[l] = "q" + std::to_string(l + 1);
  return ResponseMatrix(n, k, std::move(values), std::move(labels));
}

ResponseMatrix random_likert(std::uint64_t seed, int n, int k) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> likert(1, 5);
  std::vector<double> values(static_cast<std::size_t>(n) * k);
  for (double& v : values) v = likert(rng);
  return matrix_from(n, k, std::move(values));
}

}  // namespace

TEST_CASE("initial_ordering sorts by mean score with index tie-break") {
  ResponseMatrix m = matrix_from(3, 2, {2, 2, 1, 1, 3, 3});
  CHECK(initial_ordering(m).perm == std::vector<int>{1, 0, 2});

  ResponseMatrix same = matrix_from(4, 2, {2, 2, 2, 2, 2, 2, 2, 2});
  CHECK(initial_ordering(same).perm == std::vector<int>{0, 1, 2, 3});

  ResponseMatrix sorted = matrix_from(3, 2, {1, 1, 2, 2, 3, 3});
  CHECK(initial_ordering(sorted).perm == std::vector<int>{0, 1, 2});
}

TEST_CASE("swap_cost_delta for an adjacent pair") {
  // a before b with w[a][b]=2, w[b][a]=1: swapping gains 1 - 2 = -1
  DominanceMatrix t{2, 3, {0, 2, 1, 0}};
  CHECK(swap_cost_delta(t, Ordering{{0, 1}}, 0, 1) == -1);
  CHECK(swap_cost_delta(t, Ordering{{1, 0}}, 0, 1) == 1);
  CHECK_THROWS_AS(swap_cost_delta(t, Ordering{{0, 1}}, 1, 1), Error);
  CHECK_THROWS_AS(swap_cost_delta(t, Ordering{{0, 1}}, 0, 2), Error);
}

TEST_CASE("swapping an indifferent pair costs nothing") {
  DominanceMatrix t{2, 4, {0, 0, 0, 0}};
  CHECK(swap_cost_delta(t, Ordering{{0, 1}}, 0, 1) == 0);
}

TEST_CASE("swap_cost_delta equals full recomputation everywhere") {
  std::mt19937_64 rng(2024);
  for (int instance = 0; instance < 6; ++instance) {
    const int n = 4 + static_cast<int>(rng() % 9);  // up to 12
    ResponseMatrix m = random_likert(rng(), n, 4);
    DominanceMatrix t = build_tournament(m);

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Ordering o{perm};
    const std::int64_t base = contradiction_count(t, o);

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        Ordering swapped = o;
        std::swap(swapped.perm[p], swapped.perm[q]);
        const std::int64_t direct = contradiction_count(t, swapped) - base;
        CHECK(swap_cost_delta(t, o, p, q) == direct);
      }
    }
  }
}

TEST_CASE("exact oracle on tiny instances") {
  DominanceMatrix single{1, 2, {0}};
  ExactResult one = exact_min_contradictions(single);
  CHECK(one.c_star == 0);
  CHECK(one.best_ordering.perm == std::vector<int>{0});
  CHECK(one.permutations_examined >= 1);

  DominanceMatrix pair{2, 3, {0, 2, 1, 0}};
  ExactResult two = exact_min_contradictions(pair);
  CHECK(two.c_star == 1);
  CHECK(two.best_ordering.perm == std::vector<int>{1, 0});

  DominanceMatrix zero{4, 2, std::vector<std::int32_t>(16, 0)};
  ExactResult z = exact_min_contradictions(zero);
  CHECK(z.c_star == 0);
  CHECK(z.best_ordering.perm == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("exact oracle refuses oversized instances") {
  DominanceMatrix big{10, 3, std::vector<std::int32_t>(100, 0)};
  CHECK_THROWS_AS(exact_min_contradictions(big, 9), Error);
  CHECK_NOTHROW(exact_min_contradictions(big, 10));
}

TEST_CASE("exact oracle beats or ties every sampled ordering") {
  std::mt19937_64 rng(555);
  ResponseMatrix m = random_likert(rng(), 7, 4);
  DominanceMatrix t = build_tournament(m);
  ExactResult exact = exact_min_contradictions(t);
  CHECK(contradiction_count(t, exact.best_ordering) == exact.c_star);

  std::vector<int> perm(7);
  std::iota(perm.begin(), perm.end(), 0);
  for (int trial = 0; trial < 50; ++trial) {
    std::shuffle(perm.begin(), perm.end(), rng);
    CHECK(contradiction_count(t, Ordering{perm}) >= exact.c_star);
  }
}

TEST_CASE("local_search on perfectly monotone data reaches delta one") {
  ResponseMatrix m = matrix_from(4, 2, {1, 1, 2, 2, 3, 3, 4, 4});
  SearchParams params;
  params.seed = 3;
  DeltaResult r = compute_monotone_delta(m, params);
  CHECK(r.c_star == 0);
  CHECK(r.delta == 1.0);
}

TEST_CASE("local_search resolves the two-respondent example") {
  DominanceMatrix t{2, 3, {0, 2, 1, 0}};
  SearchParams params;
  params.seed = 1;
  DeltaResult r = local_search(t, params);
  CHECK(r.c_star == 1);
  CHECK(r.c_max == 3);
  CHECK(r.delta == doctest::Approx(2.0 / 3.0));
  CHECK(r.best_ordering.perm == std::vector<int>{1, 0});
}

TEST_CASE("local_search matches the oracle on a seeded instance") {
  ResponseMatrix m = random_likert(77, 6, 4);
  DominanceMatrix t = build_tournament(m);
  SearchParams params;
  params.seed = 13;
  DeltaResult r = local_search(t, params, initial_ordering(m));
  ExactResult exact = exact_min_contradictions(t);
  CHECK(r.c_star == exact.c_star);
}

TEST_CASE("local_search soundness: reported cost matches its ordering") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL}) {
    ResponseMatrix m = random_likert(seed, 12, 5);
    DominanceMatrix t = build_tournament(m);
    SearchParams params;
    params.seed = seed;
    DeltaResult r = local_search(t, params, initial_ordering(m));
    CHECK(contradiction_count(t, r.best_ordering) == r.c_star);
    CHECK(r.c_star >= 0);
    CHECK(r.c_star <= r.c_max);
    CHECK(r.diagnostics.proposals > 0);
  }
}

TEST_CASE("local_search is deterministic for a fixed seed") {
  ResponseMatrix m = random_likert(91, 15, 6);
  DominanceMatrix t = build_tournament(m);
  SearchParams params;
  params.seed = 4242;
  DeltaResult a = local_search(t, params, initial_ordering(m));
  DeltaResult b = local_search(t, params, initial_ordering(m));
  CHECK(a.c_star == b.c_star);
  CHECK(a.delta == b.delta);
  CHECK(a.best_ordering.perm == b.best_ordering.perm);
  CHECK(a.diagnostics.proposals == b.diagnostics.proposals);
  CHECK(a.diagnostics.acceptances == b.diagnostics.acceptances);
}

TEST_CASE("strict descent holds for a hand-driven accept loop") {
  ResponseMatrix m = random_likert(17, 10, 4);
  DominanceMatrix t = build_tournament(m);
  Ordering o = initial_ordering(m);
  std::int64_t cost = contradiction_count(t, o);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pick(0, 9);
  for (int step = 0; step < 500; ++step) {
    int p = pick(rng);
    int q = pick(rng);
    if (p == q) continue;
    if (p > q) std::swap(p, q);
    const std::int64_t d = swap_cost_delta(t, o, p, q);
    if (d < 0) {
      std::swap(o.perm[p], o.perm[q]);
      const std::int64_t next = contradiction_count(t, o);
      CHECK(next == cost + d);
      CHECK(next < cost);
      cost = next;
    }
  }
}

TEST_CASE("delta is one exactly when a contradiction-free ordering exists") {
  std::mt19937_64 rng(33);
  int ones_seen = 0;
  for (int instance = 0; instance < 30; ++instance) {
    const int n = 4 + static_cast<int>(rng() % 3);
    ResponseMatrix m = random_likert(rng(), n, 2);
    DominanceMatrix t = build_tournament(m);
    ExactResult exact = exact_min_contradictions(t);
    const double delta =
        delta_from_counts(exact.c_star, max_contradictions(n, t.k_items));
    CHECK((delta == 1.0) == (exact.c_star == 0));
    if (exact.c_star == 0) ++ones_seen;
  }
  // the sample should contain both kinds of instance
  CHECK(ones_seen > 0);
  CHECK(ones_seen < 30);
}

TEST_CASE("random-pair proposal mode is sound and deterministic") {
  ResponseMatrix m = random_likert(64, 8, 4);
  DominanceMatrix t = build_tournament(m);
  SearchParams params;
  params.seed = 11;
  params.proposal_mode = SearchParams::ProposalMode::RandomPair;
  DeltaResult a = local_search(t, params, initial_ordering(m));
  DeltaResult b = local_search(t, params, initial_ordering(m));
  CHECK(a.c_star == b.c_star);
  CHECK(a.best_ordering.perm == b.best_ordering.perm);
  CHECK(contradiction_count(t, a.best_ordering) == a.c_star);
  ExactResult exact = exact_min_contradictions(t);
  CHECK(a.c_star >= exact.c_star);
}

TEST_CASE("restart merging keeps the earliest best and validates params") {
  DominanceMatrix t{2, 3, {0, 2, 1, 0}};
  SearchParams bad;
  bad.restarts = 0;
  CHECK_THROWS_AS(local_search(t, bad), Error);

  SearchParams params;
  CHECK_THROWS_AS(local_search(t, params, Ordering{{0, 0}}), Error);
  CHECK_THROWS_AS(local_search(t, params, Ordering{{0}}), Error);
}
