#pragma once

// Small dense symmetric eigensolver (cyclic Jacobi). K here is item count,
// tens at most, so O(K^3) sweeps are plenty.

#include <vector>

namespace mdelta {

struct SymEigen {
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // k x k row-major; column i pairs values[i]

  double vec(int row, int col) const {
    return vectors[static_cast<std::size_t>(row) * k + col];
  }
  int k = 0;
};

// `a` is k x k row-major and assumed symmetric (it is symmetrized on entry).
SymEigen sym_eigen(std::vector<double> a, int k);

}  // namespace mdelta
