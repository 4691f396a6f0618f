#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "jaccard/rng.hpp"
#include "jaccard/types.hpp"

namespace jaccard {

// Parameters of a synthetic presence-absence ensemble: a query vector plus
// n panel vectors of which a (1 - pi0) fraction depend on the query.
struct SimSpec {
  std::size_t n = 2000;
  std::size_t m = 200;
  double p = 0.5;          // occurrence probability, in (0,1)
  double pi0 = 1.0;        // null proportion, in [0,1]
  double dependence_strength = 0.5;  // in (0,1]
  std::uint64_t seed = 0;

  void validate() const;
};

// Two independent i.i.d. Bernoulli vectors.
std::pair<BinaryVector, BinaryVector> simulate_null_pair(std::size_t m,
                                                         double p_i,
                                                         double p_j, Rng& rng);

struct Mixture {
  BinaryVector query;
  std::vector<BinaryVector> panel;
  // truth[k] is true when panel[k] was generated dependent on the query.
  std::vector<bool> truth;
};

// ceil((1-pi0)*n) dependent vectors followed by independent ones. A
// dependent vector copies each query coordinate with probability
// dependence_strength and draws Bernoulli(p) otherwise, which keeps its
// marginal at Bernoulli(p). Per-vector streams make generation order
// irrelevant.
Mixture simulate_mixture(const SimSpec& spec);

}  // namespace jaccard
