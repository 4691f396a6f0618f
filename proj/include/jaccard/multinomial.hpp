#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "jaccard/types.hpp"

namespace jaccard {

// One configuration (N1,N2,N3,N4) of the four-category multinomial with
// N1+N2+N3+N4 = m.
struct MultinomialState {
  std::uint32_t n1 = 0;
  std::uint32_t n2 = 0;
  std::uint32_t n3 = 0;
  std::uint32_t n4 = 0;

  std::uint32_t m() const { return n1 + n2 + n3 + n4; }
  std::uint32_t cell(int c) const {
    return c == 0 ? n1 : c == 1 ? n2 : c == 2 ? n3 : n4;
  }
  void set_cell(int c, std::uint32_t v) {
    (c == 0 ? n1 : c == 1 ? n2 : c == 2 ? n3 : n4) = v;
  }

  bool operator==(const MultinomialState&) const = default;
};

// Category probabilities (p_i*p_j, p_i*(1-p_j), (1-p_i)*p_j,
// (1-p_i)*(1-p_j)) of the independence measure.
struct CellProbs {
  std::array<double, 4> q{};

  static CellProbs from(const OccurrenceProbs& probs);
  void validate() const;  // each >= 0, sum within 1e-9 of 1
};

// log(n!) for n = 0..max_n, filled from lgamma.
class LogFactorialTable {
 public:
  explicit LogFactorialTable(std::uint32_t max_n);
  double operator()(std::uint32_t n) const { return table_[n]; }
  std::uint32_t max_n() const {
    return static_cast<std::uint32_t>(table_.size() - 1);
  }

 private:
  std::vector<double> table_;
};

// log P(N1,N2,N3,N4) under Multi(m, q). Returns -inf when a cell with zero
// probability holds a positive count; zero counts contribute nothing
// regardless of their cell probability.
double log_multinomial_pmf(const MultinomialState& s, const CellProbs& cells,
                           const LogFactorialTable& lf);

// |T(N) - E_tilde(N)| where T = N1/(N1+N2+N3) and the expectation is built
// from the per-configuration estimates p~_i = (N1+N2)/m, p~_j = (N1+N3)/m.
// Defined as 0 when the union N1+N2+N3 is empty.
double state_deviation(const MultinomialState& s);

}  // namespace jaccard
