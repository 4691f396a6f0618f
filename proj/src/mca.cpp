#include "jaccard/mca.hpp"

#include <cmath>

#include "jaccard/similarity.hpp"

namespace jaccard {

std::vector<MultinomialState> neighbors(const MultinomialState& s) {
  std::vector<MultinomialState> out;
  out.reserve(12);
  for (int from = 0; from < 4; ++from) {
    if (s.cell(from) == 0) continue;
    for (int to = 0; to < 4; ++to) {
      if (to == from) continue;
      MultinomialState next = s;
      next.set_cell(from, s.cell(from) - 1);
      next.set_cell(to, s.cell(to) + 1);
      out.push_back(next);
    }
  }
  return out;
}

namespace {

bool lex_less(const MultinomialState& a, const MultinomialState& b) {
  if (a.n1 != b.n1) return a.n1 < b.n1;
  if (a.n2 != b.n2) return a.n2 < b.n2;
  return a.n3 < b.n3;
}

}  // namespace

MultinomialState find_mode(std::uint32_t m, const CellProbs& cells) {
  cells.validate();
  const LogFactorialTable lf(m);

  // Start at the rounded mean, nudged onto the simplex without putting mass
  // on zero-probability cells.
  MultinomialState s;
  std::int64_t sum = 0;
  for (int c = 0; c < 4; ++c) {
    const auto v = static_cast<std::uint32_t>(std::lround(m * cells.q[c]));
    s.set_cell(c, v);
    sum += v;
  }
  while (sum > m) {
    int pick = -1;
    double excess = -1.0;
    for (int c = 0; c < 4; ++c) {
      const double e = s.cell(c) - m * cells.q[c];
      if (s.cell(c) > 0 && e > excess) {
        excess = e;
        pick = c;
      }
    }
    s.set_cell(pick, s.cell(pick) - 1);
    --sum;
  }
  while (sum < m) {
    int pick = -1;
    double deficit = 1.0;
    for (int c = 0; c < 4; ++c) {
      const double d = s.cell(c) - m * cells.q[c];
      if (cells.q[c] > 0.0 && d < deficit) {
        deficit = d;
        pick = c;
      }
    }
    s.set_cell(pick, s.cell(pick) + 1);
    ++sum;
  }

  // Hill climb: the pmf is unimodal, so the first local maximum is global.
  double best = log_multinomial_pmf(s, cells, lf);
  for (;;) {
    MultinomialState next = s;
    double next_pmf = best;
    bool improved = false;
    for (const MultinomialState& cand : neighbors(s)) {
      const double pmf = log_multinomial_pmf(cand, cells, lf);
      if (pmf > next_pmf ||
          (improved && pmf == next_pmf && lex_less(cand, next))) {
        next = cand;
        next_pmf = pmf;
        improved = true;
      }
    }
    if (!improved) break;
    s = next;
    best = next_pmf;
  }
  return s;
}

TestResult mca_pvalue(const BinaryVector& a, const BinaryVector& b,
                      const McaConfig& cfg) {
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) {
    throw ValidationError("mca epsilon must lie in (0, 1)");
  }
  if (a.size() >= (1ULL << 21)) {
    throw ResourceLimitError("mca refuses m >= 2^21 (state packing limit)");
  }
  const CenteredStatistic stat = centered_statistic(a, b);
  const auto m = static_cast<std::uint32_t>(a.size());
  const ContingencyTable observed = contingency(a, b);
  const CellProbs cells = CellProbs::from(OccurrenceProbs::from_table(observed));
  const LogFactorialTable lf(m);
  const double threshold = std::abs(stat.centered);

  double region = 0.0, comp = 0.0;
  std::uint64_t visited = 0;
  const double mass = detail::expand_concentration_set(
      m, cells, cfg.epsilon, lf,
      [&](const MultinomialState& s, double log_pmf) {
        ++visited;
        if (state_deviation(s) >= threshold - cfg.tol) {
          const double y = std::exp(log_pmf) - comp;
          const double t = region + y;
          comp = (t - region) - y;
          region = t;
        }
      });

  TestResult result;
  result.coefficient = stat.coefficient;
  result.expectation = stat.expectation;
  result.centered = stat.centered;
  result.engine = Engine::mca;
  result.states = visited;
  result.covered_mass = mass;
  // Every state qualifies when the observed deviation is zero; the region is
  // then the whole space with measure exactly 1.
  double lower = threshold <= cfg.tol ? 1.0 : (region > 1.0 ? 1.0 : region);
  double upper = lower + cfg.epsilon;
  if (upper > 1.0) upper = 1.0;
  result.p_upper = upper;
  result.p_value = cfg.report_upper ? upper : lower;
  return result;
}

}  // namespace jaccard
