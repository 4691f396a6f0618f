#pragma once

#include "jaccard/types.hpp"

namespace jaccard {

// Standard Gaussian CDF via erfc; deep-tail values keep full relative
// accuracy.
double normal_cdf(double x);

// Limit variance of sqrt(m) * T^c: q1*q2*(1-q2) / (q1+q2)^3.
// Throws ValidationError when q1+q2 = 0 (both probabilities zero).
double asymptotic_variance(const OccurrenceProbs& probs);

// Two-sided Gaussian p-value 2*(1 - Phi(|z|)) with
// z = sqrt(m) * (T - q1/(q1+q2)) / sigma from plug-in estimates.
// With sigma = 0 the statistic carries no evidence: p = 1 when T equals its
// expectation, 0 otherwise.
//
// Calibration is approximate at any m: mid-range occurrence probabilities
// run anti-conservative and high ones slightly conservative. Reach for the
// bootstrap or mca engines unless runtime is the binding constraint.
TestResult asymptotic_pvalue(const BinaryVector& a, const BinaryVector& b);

}  // namespace jaccard
