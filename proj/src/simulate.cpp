#include "jaccard/simulate.hpp"

#include <cmath>

namespace jaccard {

void SimSpec::validate() const {
  if (n < 1) throw ValidationError("simulation needs n >= 1 vectors");
  if (m < 1) throw ValidationError("simulation needs m >= 1 units");
  if (!(p > 0.0 && p < 1.0)) {
    throw ValidationError("occurrence probability must lie in (0, 1)");
  }
  if (!(pi0 >= 0.0 && pi0 <= 1.0)) {
    throw ValidationError("pi0 must lie in [0, 1]");
  }
  if (!(dependence_strength > 0.0 && dependence_strength <= 1.0)) {
    throw ValidationError("dependence strength must lie in (0, 1]");
  }
}

namespace {

BinaryVector bernoulli_vector(std::size_t m, double p, Rng& rng) {
  std::vector<std::uint8_t> bits(m);
  for (std::size_t k = 0; k < m; ++k) {
    bits[k] = rng.bernoulli(p) ? 1 : 0;
  }
  return BinaryVector(std::move(bits));
}

}  // namespace

std::pair<BinaryVector, BinaryVector> simulate_null_pair(std::size_t m,
                                                         double p_i,
                                                         double p_j,
                                                         Rng& rng) {
  BinaryVector a = bernoulli_vector(m, p_i, rng);
  BinaryVector b = bernoulli_vector(m, p_j, rng);
  return {std::move(a), std::move(b)};
}

Mixture simulate_mixture(const SimSpec& spec) {
  spec.validate();
  const std::size_t alternatives = static_cast<std::size_t>(
      std::ceil((1.0 - spec.pi0) * static_cast<double>(spec.n)));

  Rng query_rng = Rng::stream(spec.seed, 0);
  Mixture mix{bernoulli_vector(spec.m, spec.p, query_rng), {}, {}};
  mix.panel.reserve(spec.n);
  mix.truth.resize(spec.n, false);

  for (std::size_t v = 0; v < spec.n; ++v) {
    Rng rng = Rng::stream(spec.seed, v + 1);
    if (v < alternatives) {
      std::vector<std::uint8_t> bits(spec.m);
      for (std::size_t k = 0; k < spec.m; ++k) {
        bits[k] = rng.bernoulli(spec.dependence_strength)
                      ? mix.query[k]
                      : (rng.bernoulli(spec.p) ? 1 : 0);
      }
      mix.panel.emplace_back(std::move(bits));
      mix.truth[v] = true;
    } else {
      mix.panel.push_back(bernoulli_vector(spec.m, spec.p, rng));
    }
  }
  return mix;
}

}  // namespace jaccard
