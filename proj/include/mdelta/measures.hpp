#pragma once

// Classical internal-consistency measures: Cronbach's alpha, McDonald's
// omega on a one-factor fit, split-half with Spearman-Brown step-up, and a
// greatest-lower-bound heuristic.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mdelta/response_data.hpp"

namespace mdelta {

enum class Measure {
  Alpha,
  OmegaPaper,
  OmegaConventional,
  Glb,
  SplitHalf,
  MonotoneDelta,
};

// Canonical row names used in every report format.
const char* measure_name(Measure m);
// Accepts canonical names plus the aliases "delta" and "split-half".
std::optional<Measure> measure_from_name(std::string_view name);
std::vector<Measure> all_measures();

enum class OmegaVariant { Paper, Conventional };
enum class SplitScheme { OddEven, SeededRandom };

struct MeasureValue {
  Measure measure = Measure::Alpha;
  double value = 0.0;
  std::string notes;
};

struct OneFactorFit {
  std::vector<double> loadings;
  std::vector<double> uniquenesses;
  double factor_variance = 1.0;  // identification convention
  bool converged = false;
  int iterations = 0;
  bool heywood_clamped = false;
  double max_offdiag_residual = 0.0;
  double max_diag_residual = 0.0;
};

struct GlbResult {
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

// (K/(K-1)) * (1 - sum item variances / total variance). Identical for
// sample and population modes: the divisor cancels, so it is computed from
// raw centered sums of squares.
double cronbach_alpha(const ResponseMatrix& m);

// One-factor decomposition cov ~ loadings*loadings' + diag(uniquenesses),
// minimizing squared off-diagonal residuals by iterated dominant-eigenvector
// extraction of the communality-adjusted matrix. Never throws on
// non-convergence; check `converged`.
OneFactorFit fit_one_factor(const std::vector<double>& cov, int k,
                            double tol = 1e-8, int max_iter = 1000);

double omega_from_fit(const OneFactorFit& fit, OmegaVariant variant);
double mcdonald_omega(const ResponseMatrix& m, OmegaVariant variant,
                      VarianceMode mode = VarianceMode::Sample);

// Pearson correlation of the two half-total scores, stepped up by
// Spearman-Brown 2r/(1+r). Seed only matters for SeededRandom.
double split_half(const ResponseMatrix& m,
                  SplitScheme scheme = SplitScheme::OddEven,
                  std::uint64_t seed = 0);

// Alternating PSD projection / diagonal-slack reset, maximizing total error
// variance subject to the implied common part staying PSD.
GlbResult glb_from_cov(const std::vector<double>& cov, int k,
                       double tol = 1e-6, int max_iter = 500);
double glb(const ResponseMatrix& m, double tol = 1e-6, int max_iter = 500);

}  // namespace mdelta
