// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <cstdint>
#include <vector>

#include "qsc/counter_rng.hpp"
#include "qsc/errors.hpp"
#include "qsc/stats.hpp"

using namespace qsc;

TEST_CASE("gamma_q reproduces chi-square critical points") {
  // Standard table values: P(chi2 > 3.841 | df 1) = 0.05, P(chi2 > 37.697 | df 15) = 0.001.
  CHECK(gamma_q(0.5, 3.841 / 2.0) == doctest::Approx(0.05).epsilon(2e-3));
  CHECK(gamma_q(7.5, 37.697 / 2.0) == doctest::Approx(0.001).epsilon(5e-3));
  CHECK(gamma_q(3.0, 0.0) == 1.0);
  CHECK_THROWS_AS(gamma_q(-1.0, 1.0), InvalidParameter);
}

TEST_CASE("chi2 uniform test separates uniform from skewed counts") {
  std::vector<std::uint64_t> uniform(16, 1000);
  Chi2Result u = chi2_uniform_test(uniform);
  CHECK(u.stat == doctest::Approx(0.0));
  CHECK(u.p_value > 0.999);

  std::vector<std::uint64_t> skewed(16, 1000);
  skewed[0] = 2000;
  Chi2Result s = chi2_uniform_test(skewed);
  CHECK(s.p_value < 1e-6);
}

TEST_CASE("two-sample chi2 on identical and disjoint histograms") {
  std::vector<std::uint64_t> a{100, 200, 300, 400};
  CHECK(chi2_two_sample(a, a).p_value > 0.999);
  std::vector<std::uint64_t> b{400, 300, 200, 100};
  CHECK(chi2_two_sample(a, b).p_value < 1e-6);
}

TEST_CASE("two-sample KS on identical and shifted samples") {
  std::vector<double> a, b, c;
  CounterRng rng(99, 1);
  for (int i = 0; i < 500; ++i) {
    a.push_back(rng.uniform01(i));
    b.push_back(rng.uniform01(i));
    c.push_back(rng.uniform01(i) + 0.8);
  }
  KsResult same = ks_two_sample(a, b);
  CHECK(same.d == 0.0);
  CHECK(same.p_value == 1.0);
  KsResult far = ks_two_sample(a, c);
  CHECK(far.p_value < 1e-6);
}

TEST_CASE("wilson interval brackets the point estimate") {
  BinomialCi ci = wilson_interval(135, 100000);
  CHECK(ci.low > 0.0);
  CHECK(ci.low < 135.0 / 100000.0);
  CHECK(ci.high > 135.0 / 100000.0);
  CHECK(ci.high < 1.0);
  CHECK_THROWS_AS(wilson_interval(1, 0), InvalidParameter);
}

TEST_CASE("entropy helpers") {
  CHECK(binary_entropy_bits(0.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(binary_entropy_bits(0.0) == 0.0);
  std::vector<double> p{0.25, 0.25, 0.25, 0.25};
  CHECK(shannon_entropy_bits(p) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("plug-in MI: identity map vs independent streams") {
  const std::uint32_t m = 16;
  const std::size_t n = 100000;
  std::vector<std::uint32_t> xs(n), same(n), indep(n);
  CounterRng ra(4, 1), rb(4, 2);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = static_cast<std::uint32_t>(ra.word(i) % m);
    same[i] = xs[i];
    indep[i] = static_cast<std::uint32_t>(rb.word(i) % m);
  }
  PluginMi identity = plugin_mutual_information(xs, same, m, m);
  CHECK(identity.bits == doctest::Approx(4.0).epsilon(0.005));
  PluginMi ind = plugin_mutual_information(xs, indep, m, m);
  CHECK(ind.bits <= 1.5 * ind.bias_bound_bits);  // pure plug-in bias
  CHECK(ind.bias_bound_bits == doctest::Approx(225.0 / (2.0 * n * 0.6931471805599453)).epsilon(1e-9));
}
