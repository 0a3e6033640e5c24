// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace qsc {

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
double gamma_q(double a, double x);

struct Chi2Result {
  double stat = 0.0;
  int df = 0;
  double p_value = 1.0;
};

/// Pearson chi-square against an equiprobable multinomial.
Chi2Result chi2_uniform_test(std::span<const std::uint64_t> counts);

/// Two-sample chi-square homogeneity test over matched bins.
Chi2Result chi2_two_sample(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);

struct KsResult {
  double d = 0.0;
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test (asymptotic p-value).
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

struct BinomialCi {
  double low = 0.0;
  double high = 1.0;
};

/// Wilson score interval for a binomial proportion.
BinomialCi wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.96);

double binary_entropy_bits(double p);

/// Shannon entropy in bits of a (sub)distribution; zero entries contribute 0.
double shannon_entropy_bits(std::span<const double> p);

struct PluginMi {
  double bits = 0.0;
  /// First-order plug-in bias bound (|X|-1)(|Y|-1) / (2 n ln 2).
  double bias_bound_bits = 0.0;
  std::uint64_t samples = 0;
};

/// Plug-in mutual information of paired discrete samples.
PluginMi plugin_mutual_information(std::span<const std::uint32_t> xs,
                                   std::span<const std::uint32_t> ys, std::uint32_t x_card,
                                   std::uint32_t y_card);

}  // namespace qsc
