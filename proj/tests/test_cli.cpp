#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct CliResult {
  int exit_code;
  std::string output;
};

CliResult run_cli(const std::string& args) {
  const std::string command =
      std::string(JACCARD_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buffer;
  std::string output;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buffer.data(), buffer.size(), pipe) != nullptr) {
    output += buffer.data();
  }
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

std::string fixture(const std::string& name) {
  return std::string(JACCARD_FIXTURE_DIR) + "/" + name;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("single pair test with the exact engine") {
  const auto r = run_cli("test --a 1,0 --b 1,0 --engine exact");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("p_value\t0.125") != std::string::npos);
  CHECK(r.output.find("coefficient\t1") != std::string::npos);
}

TEST_CASE("compact bit strings are accepted") {
  const auto r = run_cli("test --a 110 --b 101 --engine asymptotic");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("engine\tasymptotic") != std::string::npos);
}

TEST_CASE("validation failures exit with code 2") {
  CHECK(run_cli("test --a 1,2 --b 1,0").exit_code == 2);
  CHECK(run_cli("test --a 1,0").exit_code == 2);
  CHECK(run_cli("test --a 1,0 --b 1,0 --engine nonsense").exit_code == 2);
  CHECK(run_cli("matrix").exit_code == 2);
  CHECK(run_cli("matrix --input /does/not/exist.csv").exit_code == 2);
}

TEST_CASE("resource guard exits with code 3") {
  const auto r = run_cli(
      "test --a 10101010101 --b 01010101011 --engine exact --exact-cap 10");
  CHECK(r.exit_code == 3);
}

TEST_CASE("matrix analysis over the bundled fixture") {
  const std::string out_path = "/tmp/jaccard_cli_matrix_test.tsv";
  const auto r = run_cli("matrix --input " + fixture("example_matrix.csv") +
                         " --engine mca --seed 11 --output " + out_path);
  CHECK(r.exit_code == 0);
  const std::string table = read_file(out_path);
  // 10 species: header + C(10,2) = 45 pair rows.
  CHECK(std::count(table.begin(), table.end(), '\n') == 46);
  CHECK(table.find("warbler_a\twarbler_b") != std::string::npos);

  // Byte-identical on a rerun with more threads.
  const std::string out_path2 = "/tmp/jaccard_cli_matrix_test2.tsv";
  const auto r2 =
      run_cli("matrix --input " + fixture("example_matrix.csv") +
              " --engine mca --seed 11 --threads 4 --output " + out_path2);
  CHECK(r2.exit_code == 0);
  CHECK(read_file(out_path2) == table);
  std::remove(out_path.c_str());
  std::remove(out_path2.c_str());
}

TEST_CASE("matrix analysis reads rows from a file for single tests") {
  const auto r = run_cli("test --input " + fixture("example_matrix.csv") +
                         " --rows warbler_a,warbler_b --engine exact");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("p_value") != std::string::npos);
  const auto missing = run_cli("test --input " + fixture("example_matrix.csv") +
                               " --rows warbler_a,emu");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("transpose flag compares columns") {
  const auto r = run_cli("matrix --input " + fixture("example_matrix.csv") +
                         " --engine asymptotic --transpose");
  CHECK(r.exit_code == 0);
  // 16 islands: header + C(16,2) = 120 rows.
  CHECK(std::count(r.output.begin(), r.output.end(), '\n') == 121);
  CHECK(r.output.find("isl01\tisl02") != std::string::npos);
}

TEST_CASE("simulate emits a deterministic calibration table") {
  const std::string args =
      "simulate --n 50 --m 40 --p 0.5 --pi0 0.5 --engine asymptotic "
      "--seed 7";
  const auto r1 = run_cli(args);
  const auto r2 = run_cli(args);
  CHECK(r1.exit_code == 0);
  CHECK(r1.output == r2.output);
  CHECK(r1.output.find("index\ttruth\t") == 0);
  // 25 alternatives out of 50 at pi0 = 0.5.
  std::istringstream lines(r1.output);
  std::string line;
  std::getline(lines, line);  // header
  int rows = 0, truths = 0;
  while (std::getline(lines, line)) {
    ++rows;
    std::istringstream fields(line);
    std::string index, truth;
    std::getline(fields, index, '\t');
    std::getline(fields, truth, '\t');
    truths += truth == "1" ? 1 : 0;
  }
  CHECK(rows == 50);
  CHECK(truths == 25);
}

TEST_CASE("simulated null p-values from the exact engine are uniform") {
  const auto r = run_cli(
      "simulate --n 2000 --m 100 --p 0.5 --pi0 1.0 --engine exact --seed 11");
  REQUIRE(r.exit_code == 0);
  std::istringstream lines(r.output);
  std::string line;
  std::getline(lines, line);  // header
  std::vector<double> pvalues;
  while (std::getline(lines, line)) {
    std::istringstream fields(line);
    std::string field;
    for (int c = 0; c < 6; ++c) std::getline(fields, field, '\t');
    pvalues.push_back(std::stod(field));
  }
  REQUIRE(pvalues.size() == 2000);
  std::sort(pvalues.begin(), pvalues.end());
  const double n = 2000.0;
  double ks = 0.0;
  for (std::size_t i = 0; i < pvalues.size(); ++i) {
    ks = std::max(ks, std::max((i + 1) / n - pvalues[i],
                               pvalues[i] - i / n));
  }
  CHECK(ks < 0.05);
}

TEST_CASE("simulated mixture keeps the false discovery proportion in check") {
  double total_fdp = 0.0;
  for (int seed : {5, 6, 7}) {
    const auto r = run_cli(
        "simulate --n 500 --m 100 --p 0.5 --pi0 0.5 --dependence 0.6 "
        "--engine mca --seed " +
        std::to_string(seed));
    REQUIRE(r.exit_code == 0);
    std::istringstream lines(r.output);
    std::string line;
    std::getline(lines, line);
    int discoveries = 0, false_discoveries = 0;
    while (std::getline(lines, line)) {
      std::istringstream fields(line);
      std::string index, truth, field, q;
      std::getline(fields, index, '\t');
      std::getline(fields, truth, '\t');
      for (int c = 0; c < 5; ++c) std::getline(fields, q, '\t');
      if (std::stod(q) <= 0.1) {
        ++discoveries;
        if (truth == "0") ++false_discoveries;
      }
    }
    REQUIRE(discoveries > 0);
    total_fdp += static_cast<double>(false_discoveries) / discoveries;
  }
  CHECK(total_fdp / 3.0 <= 0.15);
}

TEST_CASE("benchmark covers the requested grid") {
  const auto r = run_cli(
      "benchmark --m-grid 20,30 --reps 2 --engines asymptotic,mca --seed 3");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.output);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "m\tengine\treps\tmean_seconds\tspeedup_vs_exact\tstatus");
  int rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    std::istringstream fields(line);
    std::string m_field, engine, reps, mean;
    std::getline(fields, m_field, '\t');
    std::getline(fields, engine, '\t');
    std::getline(fields, reps, '\t');
    std::getline(fields, mean, '\t');
    if (engine == "asymptotic") {
      CHECK(std::stod(mean) < 1e-3);  // effectively instantaneous
    }
  }
  CHECK(rows == 4);  // two engines at two grid points
}
