#include "mdelta/tournament.hpp"

#include <string>

namespace mdelta {

DominanceMatrix build_tournament(const ResponseMatrix& m) {
  const int n = m.n_respondents();
  const int k = m.n_items();
  DominanceMatrix t;
  t.n = n;
  t.k_items = k;
  t.w.assign(static_cast<std::size_t>(n) * n, 0);

  for (int j = 0; j < n; ++j) {
    const double* rj = m.row(j);
    for (int i = j + 1; i < n; ++i) {
      const double* ri = m.row(i);
      std::int32_t ji = 0;  // items where j beats i
      std::int32_t ij = 0;  // items where i beats j
      for (int l = 0; l < k; ++l) {
        if (rj[l] > ri[l]) {
          ++ji;
        } else if (ri[l] > rj[l]) {
          ++ij;
        }
        // ties contribute to neither direction
      }
      t.w[static_cast<std::size_t>(j) * n + i] = ji;
      t.w[static_cast<std::size_t>(i) * n + j] = ij;
    }
  }
  return t;
}

std::int64_t contradiction_count(const DominanceMatrix& t, const Ordering& o) {
  const int n = t.n;
  if (static_cast<int>(o.perm.size()) != n) {
    raise(ErrorCode::LengthMismatch,
          "ordering has " + std::to_string(o.perm.size()) +
              " entries, tournament has " + std::to_string(n));
  }
  std::int64_t total = 0;
  for (int p = 0; p < n; ++p) {
    const std::int32_t* row =
        t.w.data() + static_cast<std::size_t>(o.perm[p]) * n;
    for (int q = p + 1; q < n; ++q) {
      total += row[o.perm[q]];
    }
  }
  return total;
}

std::int64_t max_contradictions(std::int64_t n, std::int64_t k) {
  if (n < 2) {
    raise(ErrorCode::DegenerateInstance,
          "maximum contradiction count needs n >= 2, got " + std::to_string(n));
  }
  if (k < 1) {
    raise(ErrorCode::DegenerateInstance,
          "maximum contradiction count needs k >= 1, got " + std::to_string(k));
  }
  return k * n * (n - 1) / 2;
}

double delta_from_counts(std::int64_t c_star, std::int64_t c_max) {
  if (c_max < 1) {
    raise(ErrorCode::CountOutOfRange,
          "c_max must be positive, got " + std::to_string(c_max));
  }
  if (c_star < 0 || c_star > c_max) {
    raise(ErrorCode::CountOutOfRange,
          "c_star " + std::to_string(c_star) + " outside [0, " +
              std::to_string(c_max) + "]");
  }
  return 1.0 - static_cast<double>(c_star) / static_cast<double>(c_max);
}

}  // namespace mdelta
