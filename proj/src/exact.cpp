#include "jaccard/exact.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "jaccard/similarity.hpp"

namespace jaccard {

bool in_critical_region(const MultinomialState& s,
                        double observed_abs_centered, double tol) {
  return state_deviation(s) >= observed_abs_centered - tol;
}

namespace {

struct SliceSums {
  double region = 0.0;
  double total = 0.0;
  std::uint64_t states = 0;
  bool all_in_region = true;
};

// Accumulates one n1-slice in a fixed (n2, n3) order. Probabilities are
// exponentiated against a common shift so the sums stay in a safe range;
// zero-probability cells pin their counts to zero.
SliceSums accumulate_slice(std::uint32_t n1, std::uint32_t m,
                           const CellProbs& cells, const LogFactorialTable& lf,
                           double shift, double threshold, double tol) {
  SliceSums sums;
  double comp_region = 0.0, comp_total = 0.0;
  const std::uint32_t rest1 = m - n1;
  const std::uint32_t n2_hi = cells.q[1] > 0.0 ? rest1 : 0;
  for (std::uint32_t n2 = 0; n2 <= n2_hi; ++n2) {
    const std::uint32_t rest2 = rest1 - n2;
    const std::uint32_t n3_lo = cells.q[3] > 0.0 ? 0 : rest2;
    const std::uint32_t n3_hi = cells.q[2] > 0.0 ? rest2 : 0;
    if (n3_lo > n3_hi) continue;
    for (std::uint32_t n3 = n3_lo; n3 <= n3_hi; ++n3) {
      const MultinomialState s{n1, n2, n3, rest2 - n3};
      ++sums.states;
      const double w = std::exp(log_multinomial_pmf(s, cells, lf) - shift);
      double y = w - comp_total;
      double t = sums.total + y;
      comp_total = (t - sums.total) - y;
      sums.total = t;
      if (state_deviation(s) >= threshold - tol) {
        y = w - comp_region;
        t = sums.region + y;
        comp_region = (t - sums.region) - y;
        sums.region = t;
      } else {
        sums.all_in_region = false;
      }
    }
  }
  return sums;
}

// Start state for the log-sum-exp shift: the rounded mean, nudged to sum m
// without putting mass on zero-probability cells.
MultinomialState near_mean_state(std::uint32_t m, const CellProbs& cells) {
  MultinomialState s;
  std::int64_t sum = 0;
  for (int c = 0; c < 4; ++c) {
    const auto v = static_cast<std::uint32_t>(std::lround(m * cells.q[c]));
    s.set_cell(c, v);
    sum += v;
  }
  while (sum > m) {
    int pick = -1;
    double worst = -1.0;
    for (int c = 0; c < 4; ++c) {
      const double excess = s.cell(c) - m * cells.q[c];
      if (s.cell(c) > 0 && excess > worst) {
        worst = excess;
        pick = c;
      }
    }
    s.set_cell(pick, s.cell(pick) - 1);
    --sum;
  }
  while (sum < m) {
    int pick = -1;
    double worst = 1.0;
    for (int c = 0; c < 4; ++c) {
      const double deficit = s.cell(c) - m * cells.q[c];
      if (cells.q[c] > 0.0 && deficit < worst) {
        worst = deficit;
        pick = c;
      }
    }
    s.set_cell(pick, s.cell(pick) + 1);
    ++sum;
  }
  return s;
}

}  // namespace

TestResult exact_pvalue(const BinaryVector& a, const BinaryVector& b,
                        const ExactConfig& cfg) {
  const CenteredStatistic stat = centered_statistic(a, b);
  const auto m = static_cast<std::uint32_t>(a.size());
  if (m > cfg.m_cap) {
    throw ResourceLimitError(
        "exact enumeration refused: m = " + std::to_string(m) +
        " exceeds the cap of " + std::to_string(cfg.m_cap));
  }

  const ContingencyTable observed = contingency(a, b);
  const CellProbs cells = CellProbs::from(OccurrenceProbs::from_table(observed));
  const LogFactorialTable lf(m);
  const double threshold = std::abs(stat.centered);
  const double shift = log_multinomial_pmf(near_mean_state(m, cells), cells, lf);

  const std::uint32_t n1_hi = cells.q[0] > 0.0 ? m : 0;
  std::vector<SliceSums> slices(n1_hi + 1);
  const unsigned workers = cfg.threads > 1 ? cfg.threads : 1;
  if (workers == 1) {
    for (std::uint32_t n1 = 0; n1 <= n1_hi; ++n1) {
      slices[n1] =
          accumulate_slice(n1, m, cells, lf, shift, threshold, cfg.tol);
    }
  } else {
    std::atomic<std::uint32_t> next{0};
    auto work = [&] {
      for (std::uint32_t n1 = next.fetch_add(1); n1 <= n1_hi;
           n1 = next.fetch_add(1)) {
        slices[n1] =
            accumulate_slice(n1, m, cells, lf, shift, threshold, cfg.tol);
      }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
  }

  // Sequential merge in slice order keeps the result identical for any
  // worker count.
  double region = 0.0, total = 0.0, comp_region = 0.0, comp_total = 0.0;
  bool all_in_region = true;
  std::uint64_t states = 0;
  for (std::uint32_t n1 = 0; n1 <= n1_hi; ++n1) {
    double y = slices[n1].region - comp_region;
    double t = region + y;
    comp_region = (t - region) - y;
    region = t;
    y = slices[n1].total - comp_total;
    t = total + y;
    comp_total = (t - total) - y;
    total = t;
    all_in_region = all_in_region && slices[n1].all_in_region;
    states += slices[n1].states;
  }

  TestResult result;
  result.coefficient = stat.coefficient;
  result.expectation = stat.expectation;
  result.centered = stat.centered;
  result.engine = Engine::exact;
  result.covered_mass = std::exp(shift) * total;
  result.states = states;
  // The critical region is the whole support exactly when every enumerated
  // state qualified; its measure is then 1 by total probability, so report
  // that rather than the accumulated roundoff.
  double p = all_in_region ? 1.0 : std::exp(shift) * region;
  result.p_value = p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
  return result;
}

}  // namespace jaccard
