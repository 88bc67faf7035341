#include "mdelta/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mdelta {

SymEigen sym_eigen(std::vector<double> a, int k) {
  const std::size_t kk = static_cast<std::size_t>(k);
  // symmetrize; callers hold matrices symmetric to rounding anyway
  for (int p = 0; p < k; ++p) {
    for (int q = p + 1; q < k; ++q) {
      const double avg = 0.5 * (a[p * kk + q] + a[q * kk + p]);
      a[p * kk + q] = avg;
      a[q * kk + p] = avg;
    }
  }

  std::vector<double> v(kk * kk, 0.0);
  for (int i = 0; i < k; ++i) v[i * kk + i] = 1.0;

  if (k > 1) {
    double scale = 0.0;
    for (int i = 0; i < k; ++i) scale = std::max(scale, std::fabs(a[i * kk + i]));
    for (int p = 0; p < k; ++p) {
      for (int q = p + 1; q < k; ++q) {
        scale = std::max(scale, std::fabs(a[p * kk + q]));
      }
    }
    const double stop = std::max(scale * 1e-13, 1e-300);

    for (int sweep = 0; sweep < 100; ++sweep) {
      double off = 0.0;
      for (int p = 0; p < k; ++p) {
        for (int q = p + 1; q < k; ++q) {
          off = std::max(off, std::fabs(a[p * kk + q]));
        }
      }
      if (off <= stop) break;

      for (int p = 0; p < k; ++p) {
        for (int q = p + 1; q < k; ++q) {
          const double apq = a[p * kk + q];
          if (std::fabs(apq) <= stop * 1e-2) continue;
          const double app = a[p * kk + p];
          const double aqq = a[q * kk + q];
          const double theta = (aqq - app) / (2.0 * apq);
          const double t =
              (theta >= 0.0 ? 1.0 : -1.0) /
              (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
          const double c = 1.0 / std::sqrt(t * t + 1.0);
          const double s = t * c;

          a[p * kk + p] = app - t * apq;
          a[q * kk + q] = aqq + t * apq;
          a[p * kk + q] = 0.0;
          a[q * kk + p] = 0.0;
          for (int i = 0; i < k; ++i) {
            if (i == p || i == q) continue;
            const double aip = a[i * kk + p];
            const double aiq = a[i * kk + q];
            a[i * kk + p] = c * aip - s * aiq;
            a[p * kk + i] = a[i * kk + p];
            a[i * kk + q] = s * aip + c * aiq;
            a[q * kk + i] = a[i * kk + q];
          }
          for (int i = 0; i < k; ++i) {
            const double vip = v[i * kk + p];
            const double viq = v[i * kk + q];
            v[i * kk + p] = c * vip - s * viq;
            v[i * kk + q] = s * vip + c * viq;
          }
        }
      }
    }
  }

  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    return a[x * kk + x] < a[y * kk + y];
  });

  SymEigen out;
  out.k = k;
  out.values.resize(k);
  out.vectors.resize(kk * kk);
  for (int col = 0; col < k; ++col) {
    const int src = order[col];
    out.values[col] = a[src * kk + src];
    for (int row = 0; row < k; ++row) {
      out.vectors[row * kk + col] = v[row * kk + src];
    }
  }
  return out;
}

}  // namespace mdelta
