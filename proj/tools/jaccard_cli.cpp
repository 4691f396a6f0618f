// Command-line front end: single-pair tests, all-pairs matrix analysis,
// calibration simulations and engine benchmarks.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "jaccard/all_pairs.hpp"
#include "jaccard/asymptotic.hpp"
#include "jaccard/bootstrap.hpp"
#include "jaccard/exact.hpp"
#include "jaccard/fdr.hpp"
#include "jaccard/matrix.hpp"
#include "jaccard/mca.hpp"
#include "jaccard/rng.hpp"
#include "jaccard/simulate.hpp"
#include "jaccard/similarity.hpp"

namespace {

using jaccard::BinaryVector;
using jaccard::Engine;
using jaccard::EngineConfig;

constexpr int kExitValidation = 2;
constexpr int kExitResourceGuard = 3;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Accepts "1,0,1", "1 0 1" or compact "101".
BinaryVector parse_bits(const std::string& text) {
  std::vector<std::uint8_t> bits;
  bool compact = text.find(',') == std::string::npos &&
                 text.find(' ') == std::string::npos;
  for (std::size_t k = 0; k < text.size(); ++k) {
    const char ch = text[k];
    if (ch == ',' || ch == ' ') continue;
    if (ch != '0' && ch != '1') {
      throw jaccard::ValidationError("non-binary character '" +
                                     std::string(1, ch) + "' in vector" +
                                     (compact ? "" : " element"));
    }
    bits.push_back(ch == '1' ? 1 : 0);
  }
  return BinaryVector(std::move(bits));
}

struct EngineOptions {
  std::string engine = "mca";
  double epsilon = 1e-5;
  std::optional<std::uint64_t> B;
  std::uint64_t seed = 0;
  bool add_one_smoothing = false;
  double lambda = 0.5;
  bool smooth_pi0 = false;
  std::uint32_t exact_cap = 2000;
  unsigned threads = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--engine", engine, "exact|asymptotic|bootstrap|mca")
        ->check(CLI::IsMember({"exact", "asymptotic", "bootstrap", "mca"}));
    cmd->add_option("--epsilon", epsilon, "mca accuracy bound");
    cmd->add_option_function<std::uint64_t>(
        "--B", [this](const std::uint64_t& v) { B = v; },
        "bootstrap iterations (default 5*m)");
    cmd->add_option("--seed", seed, "random seed");
    cmd->add_flag("--smoothing", add_one_smoothing,
                  "bootstrap add-one smoothing");
    cmd->add_option("--lambda", lambda, "pi0 tuning parameter");
    cmd->add_flag("--smooth-pi0", smooth_pi0,
                  "smooth pi0 over a lambda grid");
    cmd->add_option("--exact-cap", exact_cap, "m cap for the exact engine");
    cmd->add_option("--threads", threads, "worker threads (0 = auto)");
  }

  EngineConfig config() const {
    EngineConfig cfg;
    cfg.engine = jaccard::engine_from_name(engine);
    cfg.epsilon = epsilon;
    cfg.B = B;
    cfg.seed = seed;
    cfg.add_one_smoothing = add_one_smoothing;
    cfg.lambda = lambda;
    cfg.smooth_pi0 = smooth_pi0;
    cfg.exact_cap = exact_cap;
    cfg.threads = threads;
    return cfg;
  }
};

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) {
    throw jaccard::ValidationError("cannot open output file '" + path + "'");
  }
  return file;
}

void print_test_result(std::ostream& out, const jaccard::TestResult& r) {
  out << "coefficient\t" << fmt(r.coefficient) << '\n'
      << "expectation\t" << fmt(r.expectation) << '\n'
      << "centered\t" << fmt(r.centered) << '\n'
      << "p_value\t" << fmt(r.p_value) << '\n'
      << "engine\t" << jaccard::engine_name(r.engine) << '\n';
  switch (r.engine) {
    case Engine::asymptotic:
      out << "z\t" << fmt(r.z) << '\n';
      break;
    case Engine::mca:
      out << "p_upper\t" << fmt(r.p_upper) << '\n'
          << "states\t" << r.states << '\n'
          << "covered_mass\t" << fmt(r.covered_mass) << '\n';
      break;
    case Engine::bootstrap:
      out << "iterations\t" << r.states << '\n'
          << "exceedances\t" << r.exceedances << '\n';
      break;
    case Engine::exact:
      out << "states\t" << r.states << '\n'
          << "covered_mass\t" << fmt(r.covered_mass) << '\n';
      break;
  }
}

int run_test(const std::string& a_text, const std::string& b_text,
             const std::string& input, const std::string& rows,
             const EngineOptions& opts) {
  BinaryVector a = BinaryVector({0});
  BinaryVector b = BinaryVector({0});
  if (!input.empty()) {
    const auto matrix = jaccard::parse_matrix_file(input);
    const auto comma = rows.find(',');
    if (rows.empty() || comma == std::string::npos) {
      throw jaccard::ValidationError(
          "--rows LABEL_A,LABEL_B is required with --input");
    }
    auto find_row = [&](const std::string& label) -> const BinaryVector& {
      for (std::size_t r = 0; r < matrix.n(); ++r) {
        if (matrix.row_labels[r] == label) return matrix.rows[r];
      }
      throw jaccard::ValidationError("row '" + label + "' not found");
    };
    a = find_row(rows.substr(0, comma));
    b = find_row(rows.substr(comma + 1));
  } else if (!a_text.empty() && !b_text.empty()) {
    a = parse_bits(a_text);
    b = parse_bits(b_text);
  } else {
    throw jaccard::ValidationError(
        "provide either --a and --b, or --input with --rows");
  }
  const auto result = jaccard::run_engine(a, b, opts.config(), 0);
  print_test_result(std::cout, result);
  return 0;
}

int run_matrix(const std::string& input, const std::string& output,
               bool transpose, bool pool, const EngineOptions& opts) {
  auto matrix = jaccard::parse_matrix_file(input);
  if (transpose) matrix = matrix.transposed();
  EngineConfig cfg = opts.config();
  cfg.pool_null_statistics = pool;
  const auto result = jaccard::all_pairs_test(matrix, cfg);
  for (const auto& warning : result.warnings) {
    std::cerr << "warning: " << warning << '\n';
  }
  std::cerr << "pi0 estimate: " << fmt(result.pi0) << '\n';
  std::ofstream file;
  jaccard::write_pair_reports(open_output(file, output), result, matrix);
  return 0;
}

int run_simulate(jaccard::SimSpec spec, const std::string& output,
                 const EngineOptions& opts) {
  spec.seed = opts.seed;  // one --seed flag drives data and engines alike
  const auto mix = jaccard::simulate_mixture(spec);
  const EngineConfig cfg = opts.config();

  std::vector<jaccard::TestResult> results(mix.panel.size());
  jaccard::detail::parallel_for(
      mix.panel.size(), cfg.threads, [&](std::size_t k) {
        results[k] = jaccard::run_engine(mix.query, mix.panel[k], cfg, k);
      });

  std::vector<double> pvalues(results.size());
  for (std::size_t k = 0; k < results.size(); ++k) {
    pvalues[k] = results[k].p_value;
  }
  const auto fdr = jaccard::fdr_analysis(pvalues, cfg.lambda, cfg.smooth_pi0);
  std::cerr << "pi0 estimate: " << fmt(fdr.pi0) << '\n';

  std::ofstream file;
  std::ostream& out = open_output(file, output);
  out << "index\ttruth\tcoefficient\texpectation\tcentered\tp_value\t"
         "q_value\n";
  char buf[256];
  for (std::size_t k = 0; k < results.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%zu\t%d\t%.17g\t%.17g\t%.17g\t%.17g\t%.17g\n",
                  k + 1, mix.truth[k] ? 1 : 0, results[k].coefficient,
                  results[k].expectation, results[k].centered,
                  results[k].p_value, fdr.q_values[k]);
    out << buf;
  }
  return 0;
}

int run_benchmark(const std::vector<std::uint32_t>& m_grid, unsigned reps,
                  const std::vector<std::string>& engine_names,
                  double timeout_seconds, const std::string& output,
                  const EngineOptions& opts) {
  if (m_grid.empty()) {
    throw jaccard::ValidationError("--m-grid needs at least one value");
  }
  std::ofstream file;
  std::ostream& out = open_output(file, output);
  out << "m\tengine\treps\tmean_seconds\tspeedup_vs_exact\tstatus\n";

  std::vector<Engine> engines;
  for (const auto& name : engine_names) {
    engines.push_back(jaccard::engine_from_name(name));
  }

  std::vector<bool> timed_out(engines.size(), false);
  for (const std::uint32_t m : m_grid) {
    jaccard::Rng rng = jaccard::Rng::stream(opts.seed, m);
    const auto [a, b] = jaccard::simulate_null_pair(m, 0.5, 0.5, rng);

    std::vector<double> means(engines.size(), 0.0);
    std::vector<std::string> status(engines.size(), "ok");
    std::vector<unsigned> done(engines.size(), 0);
    for (std::size_t e = 0; e < engines.size(); ++e) {
      if (timed_out[e]) {
        status[e] = "skipped: exceeded timeout at smaller m";
        continue;
      }
      EngineConfig cfg = opts.config();
      cfg.engine = engines[e];
      if (!cfg.B) cfg.B = 5 * static_cast<std::uint64_t>(m);
      double total = 0.0;
      for (unsigned rep = 0; rep < reps; ++rep) {
        const auto start = std::chrono::steady_clock::now();
        try {
          (void)jaccard::run_engine(a, b, cfg, rep);
        } catch (const jaccard::ResourceLimitError& ex) {
          status[e] = std::string("skipped: ") + ex.what();
          break;
        }
        const std::chrono::duration<double> elapsed =
            std::chrono::steady_clock::now() - start;
        total += elapsed.count();
        ++done[e];
        if (elapsed.count() > timeout_seconds) {
          timed_out[e] = true;
          status[e] = "skipped: call exceeded timeout";
          break;
        }
      }
      if (done[e] > 0 && status[e] == "ok") {
        means[e] = total / done[e];
      }
    }

    double exact_mean = 0.0;
    for (std::size_t e = 0; e < engines.size(); ++e) {
      if (engines[e] == Engine::exact && status[e] == "ok") {
        exact_mean = means[e];
      }
    }
    for (std::size_t e = 0; e < engines.size(); ++e) {
      out << m << '\t' << jaccard::engine_name(engines[e]) << '\t' << done[e]
          << '\t' << (status[e] == "ok" ? fmt(means[e]) : "")
          << '\t'
          << (status[e] == "ok" && exact_mean > 0.0 &&
                      engines[e] != Engine::exact
                  ? fmt(exact_mean / means[e])
                  : "")
          << '\t' << status[e] << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Statistical significance for Jaccard/Tanimoto similarity "
               "between binary presence-absence vectors"};
  app.require_subcommand(1);

  // test
  auto* test_cmd =
      app.add_subcommand("test", "Test one pair of binary vectors");
  std::string a_text, b_text, test_input, test_rows;
  test_cmd->add_option("--a", a_text, "first vector, e.g. 1,0,1 or 101");
  test_cmd->add_option("--b", b_text, "second vector");
  test_cmd->add_option("--input", test_input, "matrix file to read rows from");
  test_cmd->add_option("--rows", test_rows, "two row labels: LABEL_A,LABEL_B");
  EngineOptions test_opts;
  test_opts.attach(test_cmd);

  // matrix
  auto* matrix_cmd =
      app.add_subcommand("matrix", "All-pairs tests over a 0/1 matrix");
  std::string matrix_input, matrix_output;
  bool transpose = false, pool = false;
  matrix_cmd->add_option("--input", matrix_input, "matrix file")->required();
  matrix_cmd->add_option("--output", matrix_output, "output path (default stdout)");
  matrix_cmd->add_flag("--transpose", transpose,
                       "compare columns instead of rows");
  matrix_cmd->add_flag("--pool", pool,
                       "pool bootstrap null statistics across pairs");
  EngineOptions matrix_opts;
  matrix_opts.attach(matrix_cmd);

  // simulate
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Calibration table from a synthetic mixture");
  jaccard::SimSpec spec;
  std::string sim_output;
  sim_cmd->add_option("--n", spec.n, "panel size");
  sim_cmd->add_option("--m", spec.m, "vector length");
  sim_cmd->add_option("--p", spec.p, "occurrence probability");
  sim_cmd->add_option("--pi0", spec.pi0, "null proportion");
  sim_cmd->add_option("--dependence", spec.dependence_strength,
                      "coordinate copy probability for alternatives");
  sim_cmd->add_option("--output", sim_output, "output path (default stdout)");
  EngineOptions sim_opts;
  sim_opts.attach(sim_cmd);

  // benchmark
  auto* bench_cmd =
      app.add_subcommand("benchmark", "Engine runtime comparison");
  std::vector<std::uint32_t> m_grid;
  unsigned reps = 10;
  double timeout_seconds = 120.0;
  std::vector<std::string> bench_engines = {"exact", "asymptotic", "bootstrap",
                                            "mca"};
  std::string bench_output;
  bench_cmd->add_option("--m-grid", m_grid, "vector lengths to time")
      ->delimiter(',')
      ->required();
  bench_cmd->add_option("--reps", reps, "repetitions per engine and m");
  bench_cmd->add_option("--engines", bench_engines, "engines to time")
      ->delimiter(',');
  bench_cmd->add_option("--timeout", timeout_seconds,
                        "per-call timeout in seconds");
  bench_cmd->add_option("--output", bench_output, "output path (default stdout)");
  EngineOptions bench_opts;
  bench_opts.attach(bench_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion") {
      return app.exit(e);
    }
    std::cerr << e.what() << '\n';
    return kExitValidation;
  }

  try {
    if (test_cmd->parsed()) {
      return run_test(a_text, b_text, test_input, test_rows, test_opts);
    }
    if (matrix_cmd->parsed()) {
      return run_matrix(matrix_input, matrix_output, transpose, pool,
                        matrix_opts);
    }
    if (sim_cmd->parsed()) {
      return run_simulate(spec, sim_output, sim_opts);
    }
    if (bench_cmd->parsed()) {
      return run_benchmark(m_grid, reps, bench_engines, timeout_seconds,
                           bench_output, bench_opts);
    }
  } catch (const jaccard::ResourceLimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitResourceGuard;
  } catch (const jaccard::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
