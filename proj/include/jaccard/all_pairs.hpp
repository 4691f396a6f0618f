#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jaccard/matrix.hpp"
#include "jaccard/types.hpp"

namespace jaccard {

// Engine choice plus every per-engine tuning knob the front end exposes.
struct EngineConfig {
  Engine engine = Engine::mca;
  double epsilon = 1e-5;                  // mca accuracy
  std::optional<std::uint64_t> B;         // bootstrap iterations (5*m when unset)
  std::uint64_t seed = 0;
  bool add_one_smoothing = false;
  bool pool_null_statistics = false;      // pooled bootstrap batch mode
  double lambda = 0.5;                    // pi0 tuning
  bool smooth_pi0 = false;
  std::uint32_t exact_cap = 2000;
  unsigned threads = 0;                   // 0 = hardware concurrency
};

// Dispatch one pair to the configured engine. `stream` salts the RNG so
// every pair of a batch gets its own reproducible substream.
TestResult run_engine(const BinaryVector& a, const BinaryVector& b,
                      const EngineConfig& cfg, std::uint64_t stream = 0);

// One row of the all-pairs output; i < j index into the source matrix.
struct PairReport {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  double coefficient = 0.0;
  double expectation = 0.0;
  double centered = 0.0;
  double p_value = 1.0;
  double q_value = 1.0;
};

struct AllPairsResult {
  std::vector<PairReport> reports;  // lexicographic by (i, j)
  double pi0 = 1.0;
  Engine engine = Engine::mca;
  // Constant (all-present / all-absent) rows, reported rather than dropped.
  std::vector<std::string> warnings;
};

// Tests every unordered row pair, then attaches q-values over the batch.
// Deterministic for a given seed regardless of thread count.
AllPairsResult all_pairs_test(const PresenceAbsenceMatrix& matrix,
                              const EngineConfig& cfg);

// Tab-separated report table, 17 significant digits.
void write_pair_reports(std::ostream& out, const AllPairsResult& result,
                        const PresenceAbsenceMatrix& matrix);

namespace detail {

// Runs fn(i) for i in [0, n) on `threads` workers pulling from a shared
// counter. Callers keep determinism by writing to per-index slots.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

unsigned resolve_threads(unsigned requested);

}  // namespace detail

}  // namespace jaccard
