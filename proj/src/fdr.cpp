#include "jaccard/fdr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace jaccard {

namespace {

void check_pvalues(const std::vector<double>& pvalues) {
  if (pvalues.empty()) {
    throw ValidationError("p-value batch is empty");
  }
  for (double p : pvalues) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ValidationError("p-values must lie in [0, 1]");
    }
  }
}

}  // namespace

double estimate_pi0(const std::vector<double>& pvalues, double lambda) {
  check_pvalues(pvalues);
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw ValidationError("lambda must lie in [0, 1)");
  }
  const auto above = static_cast<double>(
      std::count_if(pvalues.begin(), pvalues.end(),
                    [lambda](double p) { return p > lambda; }));
  const double pi0 =
      above / ((1.0 - lambda) * static_cast<double>(pvalues.size()));
  return std::min(1.0, pi0);
}

double estimate_pi0_smoothed(const std::vector<double>& pvalues) {
  check_pvalues(pvalues);
  // Least-squares cubic through pi0(lambda) on the standard grid, read off
  // at the right end where the estimate is least biased.
  double sums[7] = {0, 0, 0, 0, 0, 0, 0};
  double rhs[4] = {0, 0, 0, 0};
  for (int g = 0; g < 19; ++g) {
    const double lambda = 0.05 * (g + 1);
    const double y = estimate_pi0(pvalues, lambda);
    double pw = 1.0;
    for (int d = 0; d < 7; ++d) {
      sums[d] += pw;
      if (d < 4) rhs[d] += y * pw;
      pw *= lambda;
    }
  }
  // Normal equations for coefficients of 1, x, x^2, x^3.
  double a[4][5];
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) a[r][c] = sums[r + c];
    a[r][4] = rhs[r];
  }
  for (int col = 0; col < 4; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 4; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < 5; ++c) a[r][c] -= f * a[col][c];
    }
  }
  const double x = 0.95;
  double value = 0.0, pw = 1.0;
  for (int d = 0; d < 4; ++d) {
    value += a[d][4] / a[d][d] * pw;
    pw *= x;
  }
  return std::clamp(value, 0.0, 1.0);
}

FdrResult q_values(const std::vector<double>& pvalues, double pi0) {
  check_pvalues(pvalues);
  if (!(pi0 > 0.0 && pi0 <= 1.0)) {
    throw ValidationError("pi0 must lie in (0, 1]");
  }
  const std::size_t n = pvalues.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return pvalues[a] < pvalues[b];
                   });

  FdrResult result;
  result.pi0 = pi0;
  result.q_values.resize(n);
  double running = 1.0;
  for (std::size_t r = n; r-- > 0;) {
    const double rank = static_cast<double>(r + 1);
    const double value =
        pi0 * static_cast<double>(n) * pvalues[order[r]] / rank;
    running = std::min(running, std::min(value, 1.0));
    result.q_values[order[r]] = running;
  }
  return result;
}

FdrResult fdr_analysis(const std::vector<double>& pvalues, double lambda,
                       bool smooth) {
  const double raw =
      smooth ? estimate_pi0_smoothed(pvalues) : estimate_pi0(pvalues, lambda);
  // Floor keeps pi0 inside (0, 1] when every p-value sits below lambda.
  const double pi0 =
      std::max(raw, 1.0 / static_cast<double>(pvalues.size()));
  FdrResult result = q_values(pvalues, pi0);
  if (smooth) {
    for (int g = 0; g < 19; ++g) result.lambdas.push_back(0.05 * (g + 1));
  } else {
    result.lambdas.push_back(lambda);
  }
  return result;
}

}  // namespace jaccard
