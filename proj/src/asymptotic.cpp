#include "jaccard/asymptotic.hpp"

#include <cmath>

#include "jaccard/similarity.hpp"

namespace jaccard {

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double asymptotic_variance(const OccurrenceProbs& probs) {
  probs.validate();
  const double q1 = probs.q1();
  const double q2 = probs.q2();
  const double denom = q1 + q2;
  if (denom <= 0.0) {
    throw ValidationError(
        "asymptotic variance undefined: both occurrence probabilities are 0");
  }
  return q1 * q2 * (1.0 - q2) / (denom * denom * denom);
}

TestResult asymptotic_pvalue(const BinaryVector& a, const BinaryVector& b) {
  const CenteredStatistic stat = centered_statistic(a, b);
  const ContingencyTable t = contingency(a, b);
  const OccurrenceProbs probs = OccurrenceProbs::from_table(t);

  TestResult result;
  result.coefficient = stat.coefficient;
  result.expectation = stat.expectation;
  result.centered = stat.centered;
  result.engine = Engine::asymptotic;

  const double denom = probs.q1() + probs.q2();
  const double sigma2 =
      denom > 0.0
          ? probs.q1() * probs.q2() * (1.0 - probs.q2()) / (denom * denom * denom)
          : 0.0;
  if (sigma2 <= 0.0) {
    // Constant statistic: no evidence either way.
    result.z = 0.0;
    result.p_value = std::abs(stat.centered) <= 1e-12 ? 1.0 : 0.0;
    return result;
  }

  const double z =
      std::sqrt(static_cast<double>(a.size())) * stat.centered /
      std::sqrt(sigma2);
  result.z = z;
  // 2*(1 - Phi(|z|)) via erfc keeps tail p-values accurate.
  result.p_value = std::erfc(std::abs(z) / std::sqrt(2.0));
  return result;
}

}  // namespace jaccard
