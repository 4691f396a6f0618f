#include <doctest.h>

#include "jaccard/similarity.hpp"
#include "testutil.hpp"

using namespace jaccard;

namespace {

BinaryVector vec(std::vector<int> v) { return BinaryVector::from_ints(v); }

}  // namespace

TEST_CASE("contingency counts partition m") {
  const auto t = contingency(vec({1, 1, 0, 0}), vec({1, 0, 1, 0}));
  CHECK(t == ContingencyTable{1, 1, 1, 1});

  const auto zeros = contingency(vec({0, 0, 0}), vec({0, 0, 0}));
  CHECK(zeros == ContingencyTable{0, 0, 0, 3});

  const auto ones = contingency(vec({1, 1, 1}), vec({1, 1, 1}));
  CHECK(ones == ContingencyTable{3, 0, 0, 0});
}

TEST_CASE("contingency rejects mismatched lengths") {
  CHECK_THROWS_AS(contingency(vec({1, 0}), vec({1, 0, 1})), ValidationError);
}

TEST_CASE("binary vector validation") {
  CHECK_THROWS_AS(BinaryVector::from_ints({1, 2, 0}), ValidationError);
  CHECK_THROWS_AS(BinaryVector::from_ints({-1}), ValidationError);
  CHECK_THROWS_AS(BinaryVector(std::vector<std::uint8_t>{}), ValidationError);
  CHECK(vec({1, 0, 1}).ones() == 2);
  CHECK(vec({0, 0}).is_constant());
  CHECK(vec({1, 1}).is_constant());
  CHECK(!vec({1, 0}).is_constant());
}

TEST_CASE("coefficient with and without the empty-union fallback") {
  CHECK(coefficient(ContingencyTable{1, 1, 1, 1}, OccurrenceProbs{0.5, 0.5}) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(coefficient(ContingencyTable{3, 0, 0, 0}, OccurrenceProbs{1.0, 1.0}) ==
        1.0);
  CHECK(coefficient(ContingencyTable{0, 0, 0, 2}, OccurrenceProbs{0.5, 0.5}) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  // Fully absent pair with vanishing probabilities: continuous extension.
  CHECK(coefficient(ContingencyTable{0, 0, 0, 2}, OccurrenceProbs{0.0, 0.0}) ==
        0.0);
}

TEST_CASE("expectation of an independent pair") {
  CHECK(expectation(OccurrenceProbs{0.5, 0.5}) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(expectation(OccurrenceProbs{0.0, 0.7}) == 0.0);
  CHECK(expectation(OccurrenceProbs{1.0, 1.0}) == 1.0);
  CHECK(expectation(OccurrenceProbs{0.0, 0.0}) == 0.0);
}

TEST_CASE("centered statistic from plug-in estimates") {
  const auto s = centered_statistic(vec({1, 1, 0, 0}), vec({1, 1, 0, 0}));
  CHECK(s.coefficient == 1.0);
  CHECK(s.expectation == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(s.centered == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  const auto tiny = centered_statistic(vec({1, 0}), vec({1, 0}));
  CHECK(tiny.coefficient == 1.0);
  CHECK(tiny.expectation == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(tiny.centered == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  CHECK_THROWS_AS(centered_statistic(vec({1, 0}), vec({1, 0, 1})),
                  ValidationError);
}

TEST_CASE("generalist and absent vectors have centered = 0 exactly") {
  Rng rng(42);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t m = 1 + rng.below(30);
    const auto other = testutil::random_vector(m, rng.u01(), rng);
    const auto all_ones = vec(std::vector<int>(m, 1));
    const auto all_zeros = vec(std::vector<int>(m, 0));
    CHECK(centered_statistic(all_ones, other).centered == 0.0);
    CHECK(centered_statistic(other, all_ones).centered == 0.0);
    CHECK(centered_statistic(all_zeros, other).centered == 0.0);
    CHECK(centered_statistic(other, all_zeros).centered == 0.0);
  }
}

TEST_CASE("centered statistic is symmetric and bounded") {
  Rng rng(7);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t m = 1 + rng.below(40);
    const auto a = testutil::random_vector(m, rng.u01(), rng);
    const auto b = testutil::random_vector(m, rng.u01(), rng);
    const auto ab = centered_statistic(a, b);
    const auto ba = centered_statistic(b, a);
    CHECK(ab.coefficient == ba.coefficient);
    CHECK(ab.expectation == ba.expectation);
    CHECK(ab.centered == ba.centered);
    CHECK(ab.coefficient >= 0.0);
    CHECK(ab.coefficient <= 1.0);
    CHECK(ab.centered >= -1.0);
    CHECK(ab.centered <= 1.0);
  }
}

// Monte Carlo spot check of the expectation identity; the full nine-point
// grid runs in the acceptance suite.
TEST_CASE("coefficient is unbiased for the expectation formula") {
  Rng rng(2024);
  for (const auto& [pi, pj] : std::vector<std::pair<double, double>>{
           {0.5, 0.5}, {0.1, 0.9}}) {
    const std::size_t m = 20;
    const int reps = 100000;
    std::vector<double> values;
    values.reserve(reps);
    const OccurrenceProbs probs{pi, pj};
    for (int rep = 0; rep < reps; ++rep) {
      const auto a = testutil::random_vector(m, pi, rng);
      const auto b = testutil::random_vector(m, pj, rng);
      values.push_back(coefficient(contingency(a, b), probs));
    }
    const auto [mean, sd] = testutil::mean_sd(values);
    const double se = sd / std::sqrt(static_cast<double>(reps));
    CHECK(std::abs(mean - expectation(probs)) < 4.0 * se);
  }
}
