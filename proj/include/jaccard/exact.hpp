#pragma once

#include <cstdint>

#include "jaccard/multinomial.hpp"
#include "jaccard/types.hpp"

namespace jaccard {

struct ExactConfig {
  // Refuse vectors longer than this; the enumeration is O(m^3).
  std::uint32_t m_cap = 2000;
  // Absolute slack on the region membership comparison, so the observed
  // configuration is never dropped by roundoff.
  double tol = 1e-12;
  // Number of workers for the n1-sliced enumeration. Results are identical
  // for any thread count: slices accumulate in fixed order and are merged
  // sequentially.
  unsigned threads = 1;
};

// Membership in the bias-corrected critical region: the configuration's own
// deviation reaches the observed |centered| statistic (minus tol).
bool in_critical_region(const MultinomialState& s,
                        double observed_abs_centered, double tol);

// Exact p-value: total multinomial mass of the critical region under the
// plug-in independence measure, enumerated over all states with sum m.
TestResult exact_pvalue(const BinaryVector& a, const BinaryVector& b,
                        const ExactConfig& cfg = {});

}  // namespace jaccard
