#include "mdelta/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "mdelta/linalg.hpp"

namespace mdelta {

namespace {

// Centered sum of squares, divisor-free so sample/population cancels exactly
// wherever only ratios matter.
double centered_ss(const std::vector<double>& x) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return ss;
}

double centered_cross(const std::vector<double>& x,
                      const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += (x[i] - mx) * (y[i] - my);
  return s;
}

}  // namespace

const char* measure_name(Measure m) {
  switch (m) {
    case Measure::Alpha: return "alpha";
    case Measure::OmegaPaper: return "omega_paper";
    case Measure::OmegaConventional: return "omega_conventional";
    case Measure::Glb: return "glb";
    case Measure::SplitHalf: return "split_half";
    case Measure::MonotoneDelta: return "monotone_delta";
  }
  return "unknown";
}

std::optional<Measure> measure_from_name(std::string_view name) {
  if (name == "alpha") return Measure::Alpha;
  if (name == "omega_paper") return Measure::OmegaPaper;
  if (name == "omega_conventional") return Measure::OmegaConventional;
  if (name == "glb") return Measure::Glb;
  if (name == "split_half" || name == "split-half") return Measure::SplitHalf;
  if (name == "monotone_delta" || name == "delta") return Measure::MonotoneDelta;
  return std::nullopt;
}

std::vector<Measure> all_measures() {
  return {Measure::Alpha,     Measure::OmegaPaper, Measure::OmegaConventional,
          Measure::Glb,       Measure::SplitHalf,  Measure::MonotoneDelta};
}

double cronbach_alpha(const ResponseMatrix& m) {
  const int n = m.n_respondents();
  const int k = m.n_items();
  if (k < 2) {
    raise(ErrorCode::SingleItem, "alpha needs at least 2 items");
  }

  double item_ss_sum = 0.0;
  std::vector<double> column(n);
  for (int l = 0; l < k; ++l) {
    for (int j = 0; j < n; ++j) column[j] = m.at(j, l);
    item_ss_sum += centered_ss(column);
  }

  std::vector<double> totals(n, 0.0);
  for (int j = 0; j < n; ++j) {
    const double* row = m.row(j);
    double t = 0.0;
    for (int l = 0; l < k; ++l) t += row[l];
    totals[j] = t;
  }
  const double total_ss = centered_ss(totals);
  if (total_ss <= 0.0) {
    raise(ErrorCode::ZeroTotalVariance,
          "total scores are constant; alpha undefined");
  }
  return (static_cast<double>(k) / (k - 1)) * (1.0 - item_ss_sum / total_ss);
}

OneFactorFit fit_one_factor(const std::vector<double>& cov, int k, double tol,
                            int max_iter) {
  if (k < 2) {
    raise(ErrorCode::SingleItem, "one-factor fit needs at least 2 items");
  }
  if (cov.size() != static_cast<std::size_t>(k) * k) {
    raise(ErrorCode::LengthMismatch, "covariance is not k x k");
  }
  const std::size_t kk = static_cast<std::size_t>(k);

  std::vector<double> diag(k);
  double max_offdiag = 0.0;
  for (int i = 0; i < k; ++i) {
    diag[i] = cov[i * kk + i];
    for (int j = i + 1; j < k; ++j) {
      max_offdiag = std::max(max_offdiag, std::fabs(cov[i * kk + j]));
    }
  }

  OneFactorFit fit;
  fit.loadings.assign(k, 0.0);
  fit.uniquenesses = diag;
  for (double& u : fit.uniquenesses) u = std::max(u, 0.0);

  if (max_offdiag <= 0.0) {
    // no common variance at all: zero loadings, done
    fit.converged = true;
    return fit;
  }

  // Iterated principal-axis extraction: put communalities on the diagonal,
  // take the dominant eigenpair, refresh communalities from the implied
  // loadings, repeat.
  std::vector<double> communality = diag;
  std::vector<double> adjusted(cov);
  std::vector<double> loadings(k, 0.0);
  int iter = 0;
  bool converged = false;
  while (iter < max_iter) {
    ++iter;
    for (int i = 0; i < k; ++i) adjusted[i * kk + i] = communality[i];
    SymEigen eig = sym_eigen(adjusted, k);
    const double lam = eig.values[k - 1];
    if (lam <= 0.0) {
      std::fill(loadings.begin(), loadings.end(), 0.0);
    } else {
      const double root = std::sqrt(lam);
      for (int i = 0; i < k; ++i) loadings[i] = root * eig.vec(i, k - 1);
    }
    double change = 0.0;
    for (int i = 0; i < k; ++i) {
      double h = loadings[i] * loadings[i];
      h = std::min(h, std::max(diag[i], 0.0));
      change = std::max(change, std::fabs(h - communality[i]));
      communality[i] = h;
    }
    if (change < tol) {
      converged = true;
      break;
    }
  }

  double loading_sum = 0.0;
  for (double l : loadings) loading_sum += l;
  if (loading_sum < 0.0) {
    for (double& l : loadings) l = -l;
  }

  fit.loadings = loadings;
  fit.converged = converged;
  fit.iterations = iter;
  for (int i = 0; i < k; ++i) {
    const double u = diag[i] - loadings[i] * loadings[i];
    if (u < 0.0) {
      if (u < -1e-12) fit.heywood_clamped = true;
      fit.uniquenesses[i] = 0.0;
    } else {
      fit.uniquenesses[i] = u;
    }
    fit.max_diag_residual =
        std::max(fit.max_diag_residual,
                 std::fabs(diag[i] - (loadings[i] * loadings[i] +
                                      fit.uniquenesses[i])));
  }
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      fit.max_offdiag_residual =
          std::max(fit.max_offdiag_residual,
                   std::fabs(cov[i * kk + j] - loadings[i] * loadings[j]));
    }
  }
  return fit;
}

double omega_from_fit(const OneFactorFit& fit, OmegaVariant variant) {
  double sum_l = 0.0;
  double sum_l2 = 0.0;
  double sum_psi = 0.0;
  for (double l : fit.loadings) {
    sum_l += l;
    sum_l2 += l * l;
  }
  for (double u : fit.uniquenesses) sum_psi += u;

  const double common = variant == OmegaVariant::Paper
                            ? sum_l2 * fit.factor_variance
                            : sum_l * sum_l * fit.factor_variance;
  const double denom = common + sum_psi;
  if (denom <= 0.0) return 0.0;
  return common / denom;
}

double mcdonald_omega(const ResponseMatrix& m, OmegaVariant variant,
                      VarianceMode mode) {
  if (m.n_items() < 2) {
    raise(ErrorCode::SingleItem, "omega needs at least 2 items");
  }
  SummaryStats st = summarize(m, mode);
  if (st.total_variance <= 0.0) {
    raise(ErrorCode::ZeroTotalVariance,
          "total scores are constant; omega undefined");
  }
  OneFactorFit fit = fit_one_factor(st.covariance, m.n_items());
  return omega_from_fit(fit, variant);
}

double split_half(const ResponseMatrix& m, SplitScheme scheme,
                  std::uint64_t seed) {
  const int n = m.n_respondents();
  const int k = m.n_items();
  if (k < 2) {
    raise(ErrorCode::SingleItem, "split-half needs at least 2 items");
  }

  std::vector<int> first_half;
  std::vector<int> second_half;
  if (scheme == SplitScheme::OddEven) {
    for (int l = 0; l < k; ++l) {
      (l % 2 == 0 ? first_half : second_half).push_back(l);
    }
  } else {
    std::vector<int> cols(k);
    std::iota(cols.begin(), cols.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(cols.begin(), cols.end(), rng);
    const int half = (k + 1) / 2;
    first_half.assign(cols.begin(), cols.begin() + half);
    second_half.assign(cols.begin() + half, cols.end());
  }

  std::vector<double> a(n, 0.0);
  std::vector<double> b(n, 0.0);
  for (int j = 0; j < n; ++j) {
    const double* row = m.row(j);
    for (int l : first_half) a[j] += row[l];
    for (int l : second_half) b[j] += row[l];
  }

  const double ssa = centered_ss(a);
  const double ssb = centered_ss(b);
  if (ssa <= 0.0 || ssb <= 0.0) {
    raise(ErrorCode::ConstantHalf,
          "a half-total score is constant; split-half undefined");
  }
  const double r = centered_cross(a, b) / std::sqrt(ssa * ssb);
  const double stepped = 2.0 * r / (1.0 + r);
  if (!std::isfinite(stepped)) {
    raise(ErrorCode::NonConvergence,
          "half correlation of -1 makes Spearman-Brown undefined");
  }
  return stepped;
}

GlbResult glb_from_cov(const std::vector<double>& cov, int k, double tol,
                       int max_iter) {
  if (k < 2) {
    raise(ErrorCode::SingleItem, "glb needs at least 2 items");
  }
  if (cov.size() != static_cast<std::size_t>(k) * k) {
    raise(ErrorCode::LengthMismatch, "covariance is not k x k");
  }
  const std::size_t kk = static_cast<std::size_t>(k);

  double sigma_total = 0.0;
  for (double v : cov) sigma_total += v;
  if (sigma_total <= 0.0) {
    raise(ErrorCode::ZeroTotalVariance,
          "total variance is not positive; glb undefined");
  }

  std::vector<double> diag(k);
  for (int i = 0; i < k; ++i) diag[i] = std::max(cov[i * kk + i], 0.0);

  std::vector<double> theta = diag;
  std::vector<double> work(cov);
  GlbResult out;
  while (out.iterations < max_iter) {
    ++out.iterations;
    // common part candidate: Sigma - diag(theta)
    work = cov;
    for (int i = 0; i < k; ++i) work[i * kk + i] = cov[i * kk + i] - theta[i];
    SymEigen eig = sym_eigen(work, k);
    // PSD projection: drop negative eigenvalues
    std::vector<double> projected_diag(k, 0.0);
    for (int e = 0; e < k; ++e) {
      if (eig.values[e] <= 0.0) continue;
      for (int i = 0; i < k; ++i) {
        const double vi = eig.vec(i, e);
        projected_diag[i] += eig.values[e] * vi * vi;
      }
    }
    double change = 0.0;
    for (int i = 0; i < k; ++i) {
      double next = cov[i * kk + i] - projected_diag[i];
      next = std::clamp(next, 0.0, diag[i]);
      change = std::max(change, std::fabs(next - theta[i]));
      theta[i] = next;
    }
    if (change < tol) {
      out.converged = true;
      break;
    }
  }

  double theta_sum = 0.0;
  for (double v : theta) theta_sum += v;
  out.value = 1.0 - theta_sum / sigma_total;
  return out;
}

double glb(const ResponseMatrix& m, double tol, int max_iter) {
  SummaryStats st = summarize(m);
  return glb_from_cov(st.covariance, m.n_items(), tol, max_iter).value;
}

}  // namespace mdelta
