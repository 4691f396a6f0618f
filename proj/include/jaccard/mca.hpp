#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "jaccard/multinomial.hpp"
#include "jaccard/state_set.hpp"
#include "jaccard/types.hpp"

namespace jaccard {

struct McaConfig {
  // Mass left outside the concentration set; the reported lower bound is
  // within epsilon of the exact p-value.
  double epsilon = 1e-5;
  // Report the upper bound min(1, p_lower + epsilon) as the p-value instead
  // of the lower bound.
  bool report_upper = false;
  // Region membership slack, as in the exact engine.
  double tol = 1e-12;
};

// Mode of Multi(m, q) by hill climbing from the rounded mean. Ties among
// equally good neighbors break lexicographically on (n1, n2, n3).
MultinomialState find_mode(std::uint32_t m, const CellProbs& cells);

// All states reachable by moving one element between cells; at most 12.
std::vector<MultinomialState> neighbors(const MultinomialState& s);

// P-value bounds from the concentration set I_eps: expand states best-first
// by pmf from the mode until their total mass reaches 1 - epsilon, summing
// the mass of those inside the critical region. p_value holds the lower
// bound, p_upper = p_lower + epsilon.
TestResult mca_pvalue(const BinaryVector& a, const BinaryVector& b,
                      const McaConfig& cfg = {});

namespace detail {

// Frontier keyed by log pmf, bucketed at 1/16 of a log unit below the mode.
// Pops come from the highest non-empty bucket (LIFO inside a bucket), which
// keeps the expansion within a whisker of strict best-first order at a
// fraction of a binary heap's cost. Push and pop order are deterministic.
class BucketFrontier {
 public:
  struct Entry {
    double log_pmf;
    std::uint64_t packed;  // n1 | n2 << 21 | n3 << 42
  };

  explicit BucketFrontier(double top_log_pmf) : top_(top_log_pmf) {}

  void push(double log_pmf, std::uint64_t packed) {
    const double depth = (top_ - log_pmf) * 16.0;
    // Far-tail states funnel into the last bucket, where order is moot.
    const std::size_t idx =
        depth <= 0.0 ? 0
                     : (depth >= static_cast<double>(kMaxBucket)
                            ? kMaxBucket
                            : static_cast<std::size_t>(depth));
    if (idx >= buckets_.size()) buckets_.resize(idx + 1);
    buckets_[idx].push_back(Entry{log_pmf, packed});
    if (idx < cursor_) cursor_ = idx;
    ++size_;
  }

  bool empty() const { return size_ == 0; }

  Entry pop() {
    while (buckets_[cursor_].empty()) ++cursor_;
    Entry e = buckets_[cursor_].back();
    buckets_[cursor_].pop_back();
    --size_;
    return e;
  }

 private:
  static constexpr std::size_t kMaxBucket = 1 << 16;
  std::vector<std::vector<Entry>> buckets_;
  std::size_t cursor_ = 0;
  std::size_t size_ = 0;
  double top_;
};

// Expansion body shared by the dense and hashed seen-set backends.
template <class SeenSet, class Visitor>
double expand_with_seen_set(std::uint32_t m, const CellProbs& cells,
                            double epsilon, const LogFactorialTable& lf,
                            SeenSet& seen, Visitor&& visit) {
  constexpr std::uint64_t kMask = (1ULL << 21) - 1;
  const MultinomialState mode = find_mode(m, cells);
  const double mode_log_pmf = log_multinomial_pmf(mode, cells, lf);
  const double lfm = lf(m);
  const double lq[4] = {
      cells.q[0] > 0.0 ? std::log(cells.q[0]) : 0.0,
      cells.q[1] > 0.0 ? std::log(cells.q[1]) : 0.0,
      cells.q[2] > 0.0 ? std::log(cells.q[2]) : 0.0,
      cells.q[3] > 0.0 ? std::log(cells.q[3]) : 0.0,
  };
  const bool live[4] = {cells.q[0] > 0.0, cells.q[1] > 0.0, cells.q[2] > 0.0,
                        cells.q[3] > 0.0};

  BucketFrontier frontier(mode_log_pmf);
  seen.insert(mode.n1, mode.n2, mode.n3);
  frontier.push(mode_log_pmf,
                static_cast<std::uint64_t>(mode.n1) |
                    (static_cast<std::uint64_t>(mode.n2) << 21) |
                    (static_cast<std::uint64_t>(mode.n3) << 42));

  double mass = 0.0, comp = 0.0;  // Kahan-compensated accumulation
  const double target = 1.0 - epsilon;
  while (!frontier.empty()) {
    const BucketFrontier::Entry top = frontier.pop();
    const std::uint32_t n1 = static_cast<std::uint32_t>(top.packed & kMask);
    const std::uint32_t n2 =
        static_cast<std::uint32_t>((top.packed >> 21) & kMask);
    const std::uint32_t n3 =
        static_cast<std::uint32_t>((top.packed >> 42) & kMask);
    const std::uint32_t n4 = m - n1 - n2 - n3;

    const double pmf = std::exp(top.log_pmf);
    const double y = pmf - comp;
    const double t = mass + y;
    comp = (t - mass) - y;
    mass = t;
    visit(MultinomialState{n1, n2, n3, n4}, top.log_pmf);
    if (mass >= target) break;

    // Neighbors grouped by their (n2, n3) row so states one n1-step apart
    // share a single occupancy-chunk probe.
    auto push_fresh = [&](std::uint32_t pn1, std::uint32_t pn2,
                          std::uint32_t pn3, std::uint32_t pn4) {
      const double log_pmf = lfm + pn1 * lq[0] - lf(pn1) + pn2 * lq[1] -
                             lf(pn2) + pn3 * lq[2] - lf(pn3) + pn4 * lq[3] -
                             lf(pn4);
      frontier.push(log_pmf, static_cast<std::uint64_t>(pn1) |
                                 (static_cast<std::uint64_t>(pn2) << 21) |
                                 (static_cast<std::uint64_t>(pn3) << 42));
    };
    auto consider_row = [&](std::uint32_t pn2, std::uint32_t pn3,
                            std::uint32_t n1a, std::uint32_t n4a, bool va,
                            std::uint32_t n1b, std::uint32_t n4b, bool vb) {
      if (va && vb && (n1a >> 6) == (n1b >> 6)) {
        std::uint64_t& bits = seen.chunk(n1a >> 6, pn2, pn3);
        const std::uint64_t bit_a = 1ULL << (n1a & 63U);
        const std::uint64_t bit_b = 1ULL << (n1b & 63U);
        if (!(bits & bit_a)) {
          bits |= bit_a;
          push_fresh(n1a, pn2, pn3, n4a);
        }
        if (!(bits & bit_b)) {
          bits |= bit_b;
          push_fresh(n1b, pn2, pn3, n4b);
        }
        return;
      }
      if (va && seen.insert(n1a, pn2, pn3)) push_fresh(n1a, pn2, pn3, n4a);
      if (vb && seen.insert(n1b, pn2, pn3)) push_fresh(n1b, pn2, pn3, n4b);
    };

    // (n2, n3): cell1 <-> cell4 moves.
    consider_row(n2, n3, n1 - 1, n4 + 1, n1 > 0 && live[3],  //
                 n1 + 1, n4 - 1, n4 > 0 && live[0]);
    // (n2+1, n3): into cell2 from cell1 / cell4.
    if (live[1]) {
      consider_row(n2 + 1, n3, n1 - 1, n4, n1 > 0,  //
                   n1, n4 - 1, n4 > 0);
    }
    // (n2-1, n3): out of cell2 into cell1 / cell4.
    if (n2 > 0) {
      consider_row(n2 - 1, n3, n1 + 1, n4, live[0],  //
                   n1, n4 + 1, live[3]);
    }
    // (n2, n3+1): into cell3 from cell1 / cell4.
    if (live[2]) {
      consider_row(n2, n3 + 1, n1 - 1, n4, n1 > 0,  //
                   n1, n4 - 1, n4 > 0);
    }
    // (n2, n3-1): out of cell3 into cell1 / cell4.
    if (n3 > 0) {
      consider_row(n2, n3 - 1, n1 + 1, n4, live[0],  //
                   n1, n4 + 1, live[3]);
    }
    // (n2+1, n3-1) and (n2-1, n3+1): cell2 <-> cell3 moves.
    if (n3 > 0 && live[1] && seen.insert(n1, n2 + 1, n3 - 1)) {
      push_fresh(n1, n2 + 1, n3 - 1, n4);
    }
    if (n2 > 0 && live[2] && seen.insert(n1, n2 - 1, n3 + 1)) {
      push_fresh(n1, n2 - 1, n3 + 1, n4);
    }
  }
  return mass;
}

// Best-first expansion of the concentration set. Calls
// visit(state, log_pmf) exactly once per state, in (near) decreasing pmf
// order, until accumulated mass reaches 1 - epsilon or the support is
// exhausted. Returns the accumulated mass. Cells with zero probability are
// never incremented.
template <class Visitor>
double expand_concentration_set(std::uint32_t m, const CellProbs& cells,
                                double epsilon, const LogFactorialTable& lf,
                                Visitor&& visit) {
  if (m <= 1024) {
    DenseStateSet seen(m);
    return expand_with_seen_set(m, cells, epsilon, lf, seen,
                                std::forward<Visitor>(visit));
  }
  StateKeySet seen;
  return expand_with_seen_set(m, cells, epsilon, lf, seen,
                              std::forward<Visitor>(visit));
}

}  // namespace detail

}  // namespace jaccard
