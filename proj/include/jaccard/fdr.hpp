#pragma once

#include <vector>

#include "jaccard/types.hpp"

namespace jaccard {

struct FdrResult {
  double pi0 = 1.0;
  // Aligned with the input p-value order.
  std::vector<double> q_values;
  // Tuning parameter(s) the pi0 estimate was built from.
  std::vector<double> lambdas;
};

// Storey estimator: min(1, #{p > lambda} / ((1 - lambda) * n)).
// Requires lambda in [0, 1) and a non-empty input.
double estimate_pi0(const std::vector<double>& pvalues, double lambda = 0.5);

// pi0(lambda) over lambda = 0.05, 0.10, ..., 0.95, smoothed by a
// least-squares cubic and evaluated at lambda = 0.95; clamped to [0, 1].
double estimate_pi0_smoothed(const std::vector<double>& pvalues);

// Step-up q-values: sort p ascending, q_(i) = min_{j>=i} pi0*n*p_(j)/j,
// clamped to [0,1], returned in input order. Requires pi0 in (0, 1].
FdrResult q_values(const std::vector<double>& pvalues, double pi0);

// pi0 estimation followed by q-values. The estimate is floored at 1/n so it
// stays inside (0, 1] even when every p-value falls below lambda.
FdrResult fdr_analysis(const std::vector<double>& pvalues,
                       double lambda = 0.5, bool smooth = false);

}  // namespace jaccard
