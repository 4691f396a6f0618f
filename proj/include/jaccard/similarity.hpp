#pragma once

#include "jaccard/types.hpp"

namespace jaccard {

// Per-unit category counts for a pair of equal-length vectors.
ContingencyTable contingency(const BinaryVector& a, const BinaryVector& b);

// Jaccard/Tanimoto coefficient n1/(n1+n2+n3). When the union is empty the
// coefficient falls back to its expected value q1/(q1+q2) so it stays
// defined; with p_i = p_j = 0 that limit is taken as 0.
double coefficient(const ContingencyTable& t, const OccurrenceProbs& probs);

// E[T] = p_i*p_j / (p_i + p_j - p_i*p_j), i.e. q1/(q1+q2); 0 when both
// probabilities vanish.
double expectation(const OccurrenceProbs& probs);

struct CenteredStatistic {
  double coefficient = 0.0;
  double expectation = 0.0;
  double centered = 0.0;  // coefficient - expectation
};

// Coefficient, plug-in expectation and their difference for an observed
// pair. Occurrence probabilities are estimated from the pair itself.
CenteredStatistic centered_statistic(const BinaryVector& a,
                                     const BinaryVector& b);

}  // namespace jaccard
