#include "jaccard/multinomial.hpp"

#include <cmath>
#include <limits>

namespace jaccard {

CellProbs CellProbs::from(const OccurrenceProbs& probs) {
  probs.validate();
  const double pi = probs.p_i, pj = probs.p_j;
  return CellProbs{{pi * pj, pi * (1.0 - pj), (1.0 - pi) * pj,
                    (1.0 - pi) * (1.0 - pj)}};
}

void CellProbs::validate() const {
  double sum = 0.0;
  for (double v : q) {
    if (!(v >= 0.0)) {
      throw ValidationError("cell probabilities must be non-negative");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ValidationError("cell probabilities must sum to 1");
  }
}

LogFactorialTable::LogFactorialTable(std::uint32_t max_n) {
  table_.resize(static_cast<std::size_t>(max_n) + 1);
  for (std::uint32_t n = 0; n <= max_n; ++n) {
    table_[n] = std::lgamma(static_cast<double>(n) + 1.0);
  }
}

double log_multinomial_pmf(const MultinomialState& s, const CellProbs& cells,
                           const LogFactorialTable& lf) {
  const std::uint32_t counts[4] = {s.n1, s.n2, s.n3, s.n4};
  double logp = lf(s.m());
  for (int c = 0; c < 4; ++c) {
    if (counts[c] == 0) continue;  // 0 * log(0) taken as 0
    if (cells.q[c] == 0.0) return -std::numeric_limits<double>::infinity();
    logp += counts[c] * std::log(cells.q[c]) - lf(counts[c]);
  }
  return logp;
}

double state_deviation(const MultinomialState& s) {
  const std::uint32_t u = s.n1 + s.n2 + s.n3;
  if (u == 0) return 0.0;  // T falls back to its own expectation
  const double m = static_cast<double>(s.m());
  const double t = static_cast<double>(s.n1) / static_cast<double>(u);
  const double pi = (s.n1 + s.n2) / m;
  const double pj = (s.n1 + s.n3) / m;
  const double denom = pi + pj - pi * pj;  // > 0 whenever u > 0
  return std::abs(t - pi * pj / denom);
}

}  // namespace jaccard
