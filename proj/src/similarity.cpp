#include "jaccard/similarity.hpp"

namespace jaccard {

ContingencyTable contingency(const BinaryVector& a, const BinaryVector& b) {
  if (a.size() != b.size()) {
    throw ValidationError("vector lengths differ: " +
                          std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
  }
  std::uint32_t n1 = 0;
  const auto& xa = a.bits();
  const auto& xb = b.bits();
  for (std::size_t k = 0; k < xa.size(); ++k) {
    n1 += static_cast<std::uint32_t>(xa[k] & xb[k]);
  }
  const auto m = static_cast<std::uint32_t>(a.size());
  const auto ones_a = static_cast<std::uint32_t>(a.ones());
  const auto ones_b = static_cast<std::uint32_t>(b.ones());
  return ContingencyTable{n1, ones_a - n1, ones_b - n1,
                          m - ones_a - ones_b + n1};
}

double expectation(const OccurrenceProbs& probs) {
  // Saturated margins simplify algebraically; evaluating them directly
  // keeps the centered statistic at exactly 0 for generalist vectors.
  if (probs.p_i == 1.0) return probs.p_j;
  if (probs.p_j == 1.0) return probs.p_i;
  const double denom = probs.q1() + probs.q2();  // p_i + p_j - p_i*p_j
  if (denom <= 0.0) return 0.0;                  // p_i = p_j = 0 limit
  return probs.q1() / denom;
}

double coefficient(const ContingencyTable& t, const OccurrenceProbs& probs) {
  if (t.union_size() > 0) {
    return static_cast<double>(t.n1) / static_cast<double>(t.union_size());
  }
  return expectation(probs);
}

CenteredStatistic centered_statistic(const BinaryVector& a,
                                     const BinaryVector& b) {
  const ContingencyTable t = contingency(a, b);
  const OccurrenceProbs probs = OccurrenceProbs::from_table(t);
  const double coef = coefficient(t, probs);
  const double expect = expectation(probs);
  return CenteredStatistic{coef, expect, coef - expect};
}

}  // namespace jaccard
