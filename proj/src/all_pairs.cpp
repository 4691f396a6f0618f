#include "jaccard/all_pairs.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include "jaccard/asymptotic.hpp"
#include "jaccard/bootstrap.hpp"
#include "jaccard/exact.hpp"
#include "jaccard/fdr.hpp"
#include "jaccard/mca.hpp"
#include "jaccard/rng.hpp"
#include "jaccard/similarity.hpp"

namespace jaccard {

namespace detail {

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      if (failed.load(std::memory_order_relaxed)) return;
      try {
        fn(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace detail

TestResult run_engine(const BinaryVector& a, const BinaryVector& b,
                      const EngineConfig& cfg, std::uint64_t stream) {
  switch (cfg.engine) {
    case Engine::exact: {
      ExactConfig exact_cfg;
      exact_cfg.m_cap = cfg.exact_cap;
      return exact_pvalue(a, b, exact_cfg);
    }
    case Engine::asymptotic:
      return asymptotic_pvalue(a, b);
    case Engine::bootstrap: {
      BootstrapConfig boot_cfg;
      boot_cfg.iterations = cfg.B;
      boot_cfg.seed = mix64(cfg.seed) ^ mix64(stream);
      boot_cfg.add_one_smoothing = cfg.add_one_smoothing;
      return bootstrap_pvalue(a, b, boot_cfg);
    }
    case Engine::mca: {
      McaConfig mca_cfg;
      mca_cfg.epsilon = cfg.epsilon;
      return mca_pvalue(a, b, mca_cfg);
    }
  }
  throw ValidationError("unknown engine");
}

namespace {

// Pooled batch mode: concatenate every pair's bootstrap null statistics and
// count exceedances for each observed |t| against the pooled draws.
std::vector<double> pooled_bootstrap_pvalues(
    const PresenceAbsenceMatrix& matrix,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs,
    const std::vector<double>& observed, const EngineConfig& cfg) {
  const std::uint64_t per_pair = cfg.B.value_or(5 * matrix.m());
  std::vector<std::vector<double>> draws(pairs.size());
  detail::parallel_for(pairs.size(), cfg.threads, [&](std::size_t k) {
    draws[k] = bootstrap_null_statistics(
        matrix.rows[pairs[k].first], matrix.rows[pairs[k].second], per_pair,
        mix64(cfg.seed) ^ mix64(k));
  });
  std::vector<double> pooled;
  pooled.reserve(pairs.size() * per_pair);
  for (const auto& d : draws) {
    for (double t : d) pooled.push_back(std::abs(t));
  }
  std::sort(pooled.begin(), pooled.end());

  std::vector<double> pvalues(pairs.size());
  const double total = static_cast<double>(pooled.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto at = std::lower_bound(pooled.begin(), pooled.end(),
                                     std::abs(observed[k]) - 1e-12);
    const double count = static_cast<double>(pooled.end() - at);
    pvalues[k] = cfg.add_one_smoothing ? (count + 1.0) / (total + 1.0)
                                       : count / total;
  }
  return pvalues;
}

}  // namespace

AllPairsResult all_pairs_test(const PresenceAbsenceMatrix& matrix,
                              const EngineConfig& cfg) {
  const std::size_t n = matrix.n();
  if (n < 2) {
    throw ValidationError("all-pairs analysis needs at least 2 rows");
  }
  for (std::size_t r = 1; r < n; ++r) {
    if (matrix.rows[r].size() != matrix.m()) {
      throw ValidationError("matrix rows have unequal lengths");
    }
  }

  AllPairsResult result;
  result.engine = cfg.engine;
  for (std::size_t r = 0; r < n; ++r) {
    if (matrix.rows[r].is_constant()) {
      result.warnings.push_back(
          "row '" + matrix.row_labels[r] + "' is " +
          (matrix.rows[r].ones() == 0 ? "all-absent" : "all-present") +
          "; its tests carry p = 1");
    }
  }

  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  pairs.reserve(n * (n - 1) / 2);
  for (std::uint32_t i = 0; i + 1 < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }

  result.reports.resize(pairs.size());
  detail::parallel_for(pairs.size(), cfg.threads, [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    const std::string pair_label =
        "pair (" + matrix.row_labels[i] + ", " + matrix.row_labels[j] + "): ";
    TestResult r;
    try {
      r = run_engine(matrix.rows[i], matrix.rows[j], cfg, k);
    } catch (const ResourceLimitError& e) {
      throw ResourceLimitError(pair_label + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError(pair_label + e.what());
    }
    result.reports[k] = PairReport{i,          j,         r.coefficient,
                                   r.expectation, r.centered, r.p_value,
                                   1.0};
  });

  if (cfg.engine == Engine::bootstrap && cfg.pool_null_statistics) {
    std::vector<double> observed(pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      observed[k] = result.reports[k].centered;
    }
    const std::vector<double> pooled =
        pooled_bootstrap_pvalues(matrix, pairs, observed, cfg);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      result.reports[k].p_value = pooled[k];
    }
  }

  std::vector<double> pvalues(pairs.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    pvalues[k] = result.reports[k].p_value;
  }
  const FdrResult fdr = fdr_analysis(pvalues, cfg.lambda, cfg.smooth_pi0);
  result.pi0 = fdr.pi0;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    result.reports[k].q_value = fdr.q_values[k];
  }
  return result;
}

void write_pair_reports(std::ostream& out, const AllPairsResult& result,
                        const PresenceAbsenceMatrix& matrix) {
  char buf[256];
  out << "species_i\tspecies_j\tcoefficient\texpectation\tcentered\t"
         "p_value\tq_value\tengine\n";
  for (const PairReport& r : result.reports) {
    out << matrix.row_labels[r.i] << '\t' << matrix.row_labels[r.j];
    std::snprintf(buf, sizeof(buf), "\t%.17g\t%.17g\t%.17g\t%.17g\t%.17g\t%s\n",
                  r.coefficient, r.expectation, r.centered, r.p_value,
                  r.q_value, engine_name(result.engine));
    out << buf;
  }
}

}  // namespace jaccard
