#include <doctest.h>

#include <cmath>

#include "jaccard/asymptotic.hpp"
#include "jaccard/similarity.hpp"
#include "testutil.hpp"

using namespace jaccard;

namespace {

BinaryVector vec(std::vector<int> v) { return BinaryVector::from_ints(v); }

}  // namespace

TEST_CASE("limit variance formula") {
  // q1 = 0.25, q2 = 0.5: 0.25*0.5*0.5 / 0.75^3 = 4/27.
  CHECK(asymptotic_variance(OccurrenceProbs{0.5, 0.5}) ==
        doctest::Approx(4.0 / 27.0).epsilon(1e-14));
  CHECK(asymptotic_variance(OccurrenceProbs{0.0, 0.7}) == 0.0);
  CHECK(asymptotic_variance(OccurrenceProbs{1.0, 0.0}) == 0.0);  // q2 = 1
  CHECK_THROWS_AS(asymptotic_variance(OccurrenceProbs{0.0, 0.0}),
                  ValidationError);
}

TEST_CASE("gaussian cdf anchors") {
  CHECK(normal_cdf(0.0) == 0.5);
  CHECK(std::abs(normal_cdf(1.959964) - 0.975) < 1e-6);
  CHECK(normal_cdf(-40.0) >= 0.0);
  CHECK(normal_cdf(40.0) <= 1.0);
}

TEST_CASE("two-sided tail against a quadrature oracle") {
  // z from the printed scenario T = 0.5, plug-ins 0.5 at m = 100:
  // z = 10 * (1/6) / sqrt(4/27) = 2.5 * sqrt(3).
  const double z = 2.5 * std::sqrt(3.0);
  CHECK(z == doctest::Approx(4.3301).epsilon(1e-4));
  const double p = std::erfc(z / std::sqrt(2.0));
  const double oracle = testutil::gaussian_two_sided_oracle(z);
  CHECK(p == doctest::Approx(oracle).epsilon(1e-9));
  CHECK(p == doctest::Approx(1.49e-5).epsilon(0.01));
}

TEST_CASE("statistic at its expectation gives p = 1") {
  // Margins 2/2 at m = 4 with n1 = 1: T = 1/3 = E.
  const auto r = asymptotic_pvalue(vec({1, 1, 0, 0}), vec({1, 0, 1, 0}));
  CHECK(r.centered == 0.0);
  CHECK(r.z == 0.0);
  CHECK(r.p_value == 1.0);
}

TEST_CASE("engine agrees with the closed form on data") {
  Rng rng(31);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t m = 5 + rng.below(200);
    const auto a = testutil::random_vector(m, rng.u01(), rng);
    const auto b = testutil::random_vector(m, rng.u01(), rng);
    const auto r = asymptotic_pvalue(a, b);
    CHECK(r.p_value >= 0.0);
    CHECK(r.p_value <= 1.0);
    const auto t = contingency(a, b);
    const auto probs = OccurrenceProbs::from_table(t);
    const double denom = probs.q1() + probs.q2();
    if (denom > 0.0) {
      const double sigma2 = probs.q1() * probs.q2() * (1.0 - probs.q2()) /
                            (denom * denom * denom);
      if (sigma2 > 0.0) {
        const double z = std::sqrt(static_cast<double>(m)) * r.centered /
                         std::sqrt(sigma2);
        CHECK(r.z == doctest::Approx(z).epsilon(1e-14));
        // p depends on |z| only: even in the deviation's sign.
        CHECK(r.p_value ==
              doctest::Approx(std::erfc(std::abs(z) / std::sqrt(2.0)))
                  .epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("degenerate sigma handling") {
  // Both margins full: T = E = 1 constantly.
  const auto ones = asymptotic_pvalue(vec({1, 1, 1}), vec({1, 1, 1}));
  CHECK(ones.p_value == 1.0);
  CHECK(ones.centered == 0.0);
  // Both absent.
  const auto zeros = asymptotic_pvalue(vec({0, 0}), vec({0, 0}));
  CHECK(zeros.p_value == 1.0);
  // One saturated margin: sigma > 0 but T^c = 0 identically.
  const auto mixed = asymptotic_pvalue(vec({1, 1, 1, 1}), vec({1, 0, 1, 0}));
  CHECK(mixed.centered == 0.0);
  CHECK(mixed.p_value == 1.0);
}
