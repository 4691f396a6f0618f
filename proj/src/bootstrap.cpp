#include "jaccard/bootstrap.hpp"

#include <cmath>

#include "jaccard/similarity.hpp"

namespace jaccard {

BinaryVector resample(const BinaryVector& v, Rng& rng) {
  const auto m = static_cast<std::uint32_t>(v.size());
  std::vector<std::uint8_t> out(m);
  for (std::uint32_t k = 0; k < m; ++k) {
    out[k] = v[rng.below(m)];
  }
  return BinaryVector(std::move(out));
}

namespace {

// Centered statistic of a resampled pair, drawn into scratch buffers to keep
// the iteration allocation-free. Draw order matches resample(): all of a,
// then all of b.
double resampled_centered(const BinaryVector& a, const BinaryVector& b,
                          Rng& rng, std::vector<std::uint8_t>& buf_a,
                          std::vector<std::uint8_t>& buf_b) {
  const auto m = static_cast<std::uint32_t>(a.size());
  for (std::uint32_t k = 0; k < m; ++k) buf_a[k] = a[rng.below(m)];
  for (std::uint32_t k = 0; k < m; ++k) buf_b[k] = b[rng.below(m)];

  std::uint32_t n1 = 0, ones_a = 0, ones_b = 0;
  for (std::uint32_t k = 0; k < m; ++k) {
    n1 += static_cast<std::uint32_t>(buf_a[k] & buf_b[k]);
    ones_a += buf_a[k];
    ones_b += buf_b[k];
  }
  const std::uint32_t u = ones_a + ones_b - n1;
  const double pi = static_cast<double>(ones_a) / m;
  const double pj = static_cast<double>(ones_b) / m;
  double expect;
  if (pi == 1.0) {
    expect = pj;  // saturated margins, as in expectation()
  } else if (pj == 1.0) {
    expect = pi;
  } else {
    const double denom = pi + pj - pi * pj;
    expect = denom > 0.0 ? pi * pj / denom : 0.0;
  }
  const double coef = u > 0 ? static_cast<double>(n1) / u : expect;
  return coef - expect;
}

}  // namespace

TestResult bootstrap_pvalue(const BinaryVector& a, const BinaryVector& b,
                            const BootstrapConfig& cfg) {
  const CenteredStatistic stat = centered_statistic(a, b);
  const std::uint64_t iterations = cfg.resolve_iterations(a.size());
  if (iterations < 1) {
    throw ValidationError("bootstrap iteration count must be >= 1");
  }

  const double observed = std::abs(stat.centered);
  std::vector<std::uint8_t> buf_a(a.size()), buf_b(b.size());
  std::uint64_t count = 0;
  for (std::uint64_t it = 0; it < iterations; ++it) {
    Rng rng = Rng::stream(cfg.seed, it);
    const double t_star = resampled_centered(a, b, rng, buf_a, buf_b);
    if (std::abs(t_star) >= observed - cfg.tol) ++count;
  }

  TestResult result;
  result.coefficient = stat.coefficient;
  result.expectation = stat.expectation;
  result.centered = stat.centered;
  result.engine = Engine::bootstrap;
  result.states = iterations;
  result.exceedances = count;
  result.p_value =
      cfg.add_one_smoothing
          ? static_cast<double>(count + 1) / static_cast<double>(iterations + 1)
          : static_cast<double>(count) / static_cast<double>(iterations);
  return result;
}

std::vector<double> bootstrap_null_statistics(const BinaryVector& a,
                                              const BinaryVector& b,
                                              std::uint64_t iterations,
                                              std::uint64_t seed) {
  if (a.size() != b.size()) {
    throw ValidationError("vector lengths differ: " +
                          std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
  }
  std::vector<std::uint8_t> buf_a(a.size()), buf_b(b.size());
  std::vector<double> stats(iterations);
  for (std::uint64_t it = 0; it < iterations; ++it) {
    Rng rng = Rng::stream(seed, it);
    stats[it] = resampled_centered(a, b, rng, buf_a, buf_b);
  }
  return stats;
}

}  // namespace jaccard
