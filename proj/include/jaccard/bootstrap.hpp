#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "jaccard/rng.hpp"
#include "jaccard/types.hpp"

namespace jaccard {

struct BootstrapConfig {
  // Resampling iterations; defaults to 5*m when unset.
  std::optional<std::uint64_t> iterations;
  std::uint64_t seed = 0;
  // Report (1 + count) / (1 + B) instead of count / B, keeping p-values
  // strictly positive for downstream FDR use.
  bool add_one_smoothing = false;
  // Slack on the |t*| >= |t| comparison so resamples that reproduce the
  // observed configuration always count.
  double tol = 1e-12;

  std::uint64_t resolve_iterations(std::size_t m) const {
    return iterations.value_or(5 * static_cast<std::uint64_t>(m));
  }
};

// One resample with replacement: every output position is drawn uniformly
// and independently from the positions of v.
BinaryVector resample(const BinaryVector& v, Rng& rng);

// Empirical p-value: resample both vectors independently B times, recompute
// the centered statistic with plug-ins taken from each resampled pair, and
// count |t*| >= |t|. Deterministic given the seed; iteration b uses its own
// derived stream.
TestResult bootstrap_pvalue(const BinaryVector& a, const BinaryVector& b,
                            const BootstrapConfig& cfg = {});

// The B bootstrap null statistics t*_b themselves, in iteration order.
// Used by the pooled batch mode and by calibration checks.
std::vector<double> bootstrap_null_statistics(const BinaryVector& a,
                                              const BinaryVector& b,
                                              std::uint64_t iterations,
                                              std::uint64_t seed);

}  // namespace jaccard
