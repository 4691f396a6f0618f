#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace jaccard {

// Bad or inconsistent input (dimension mismatch, non-binary cells, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Work refused because it would exceed a configured cap or timeout.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One species' presence/absence profile over m biogeographic units.
// Elements are validated to be exactly 0 or 1; m >= 1.
class BinaryVector {
 public:
  explicit BinaryVector(std::vector<std::uint8_t> bits);

  // Validating conversion; rejects anything outside {0,1}.
  static BinaryVector from_ints(const std::vector<int>& values);

  std::size_t size() const { return bits_.size(); }
  std::uint8_t operator[](std::size_t k) const { return bits_[k]; }
  const std::vector<std::uint8_t>& bits() const { return bits_; }
  std::size_t ones() const { return ones_; }
  double occurrence_rate() const {
    return static_cast<double>(ones_) / static_cast<double>(bits_.size());
  }
  // All-ones (generalist) or all-zeros (absent) profile.
  bool is_constant() const { return ones_ == 0 || ones_ == bits_.size(); }

  bool operator==(const BinaryVector& other) const = default;

 private:
  std::vector<std::uint8_t> bits_;
  std::size_t ones_ = 0;
};

// Counts of the four per-unit categories for a vector pair:
// n1 = both present, n2 = first only, n3 = second only, n4 = neither.
struct ContingencyTable {
  std::uint32_t n1 = 0;
  std::uint32_t n2 = 0;
  std::uint32_t n3 = 0;
  std::uint32_t n4 = 0;

  std::uint32_t m() const { return n1 + n2 + n3 + n4; }
  std::uint32_t union_size() const { return n1 + n2 + n3; }

  bool operator==(const ContingencyTable&) const = default;
};

// Marginal occurrence probabilities of a pair, with the derived cell masses
// q1 = p_i*p_j (both present) and q2 = p_i + p_j - 2*p_i*p_j (exactly one).
struct OccurrenceProbs {
  double p_i = 0.0;
  double p_j = 0.0;

  double q1() const { return p_i * p_j; }
  double q2() const { return p_i + p_j - 2.0 * p_i * p_j; }

  // Plug-in estimates p_i = (n1+n2)/m, p_j = (n1+n3)/m.
  static OccurrenceProbs from_table(const ContingencyTable& t);

  void validate() const;
};

enum class Engine { exact, asymptotic, bootstrap, mca };

const char* engine_name(Engine e);
Engine engine_from_name(const std::string& name);

// Outcome of one similarity test. The diagnostic fields are engine specific
// and left at their defaults when they do not apply.
struct TestResult {
  double coefficient = 0.0;
  double expectation = 0.0;
  double centered = 0.0;
  double p_value = 1.0;
  Engine engine = Engine::exact;

  // exact: pmf mass over the enumerated support (should be ~1).
  // mca:   mass covered by the concentration set (>= 1 - epsilon).
  double covered_mass = std::numeric_limits<double>::quiet_NaN();
  // mca only: upper p-value bound p_lower + epsilon.
  double p_upper = std::numeric_limits<double>::quiet_NaN();
  // asymptotic only: standardized statistic.
  double z = std::numeric_limits<double>::quiet_NaN();
  // exact/mca: states evaluated; bootstrap: iterations used.
  std::uint64_t states = 0;
  // bootstrap only: resamples with |t*| >= |t|.
  std::uint64_t exceedances = 0;
};

}  // namespace jaccard
