// SPDX-License-Identifier: Apache-2.0
#include "qsc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "qsc/errors.hpp"

namespace qsc {

namespace {

// Series expansion of the lower regularized gamma P(a, x), valid for x < a + 1.
long double gamma_p_series(long double a, long double x) {
  long double ap = a;
  long double sum = 1.0L / a;
  long double del = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0L;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-18L) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for the upper regularized gamma Q(a, x), x >= a + 1.
long double gamma_q_cf(long double a, long double x) {
  const long double tiny = 1e-300L;
  long double b = x + 1.0L - a;
  long double c = 1.0L / tiny;
  long double d = 1.0L / b;
  long double h = d;
  for (int i = 1; i < 500; ++i) {
    long double an = -static_cast<long double>(i) * (static_cast<long double>(i) - a);
    b += 2.0L;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0L / d;
    long double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0L) < 1e-18L) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double chi2_p_from_stat(double stat, int df) {
  if (df <= 0) return 1.0;
  return gamma_q(0.5 * df, 0.5 * stat);
}

// Kolmogorov distribution tail Q_KS(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double ks_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-16) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

double gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw InvalidParameter("gamma_q: require a > 0 and x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return static_cast<double>(1.0L - gamma_p_series(a, x));
  return static_cast<double>(gamma_q_cf(a, x));
}

Chi2Result chi2_uniform_test(std::span<const std::uint64_t> counts) {
  if (counts.size() < 2) throw InvalidParameter("chi2_uniform_test: need at least 2 bins");
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  if (total == 0) throw InvalidParameter("chi2_uniform_test: empty sample");
  const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
  double stat = 0.0;
  for (auto c : counts) {
    const double d = static_cast<double>(c) - expected;
    stat += d * d / expected;
  }
  const int df = static_cast<int>(counts.size()) - 1;
  return {stat, df, chi2_p_from_stat(stat, df)};
}

Chi2Result chi2_two_sample(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  if (a.size() != b.size() || a.size() < 2)
    throw InvalidParameter("chi2_two_sample: matched bins required");
  double na = 0.0, nb = 0.0;
  for (auto c : a) na += static_cast<double>(c);
  for (auto c : b) nb += static_cast<double>(c);
  if (na == 0.0 || nb == 0.0) throw InvalidParameter("chi2_two_sample: empty sample");
  double stat = 0.0;
  int df = -1;  // bins with data contribute (bins - 1) degrees of freedom
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double row = static_cast<double>(a[i] + b[i]);
    if (row == 0.0) continue;
    ++df;
    const double ea = row * na / (na + nb);
    const double eb = row * nb / (na + nb);
    const double da = static_cast<double>(a[i]) - ea;
    const double db = static_cast<double>(b[i]) - eb;
    stat += da * da / ea + db * db / eb;
  }
  if (df <= 0) return {0.0, 0, 1.0};
  return {stat, df, chi2_p_from_stat(stat, df)};
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw InvalidParameter("ks_two_sample: empty sample");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t ia = 0, ib = 0;
  double d = 0.0;
  while (ia < sa.size() && ib < sb.size()) {
    const double va = sa[ia];
    const double vb = sb[ib];
    if (va <= vb) ++ia;
    if (vb <= va) ++ib;
    d = std::max(d, std::fabs(static_cast<double>(ia) / na - static_cast<double>(ib) / nb));
  }
  const double ne = na * nb / (na + nb);
  const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
  return {d, ks_q(lambda)};
}

BinomialCi wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) throw InvalidParameter("wilson_interval: zero trials");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double binary_entropy_bits(double p) {
  if (p < 0.0 || p > 1.0) throw InvalidParameter("binary_entropy_bits: p outside [0,1]");
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

double shannon_entropy_bits(std::span<const double> p) {
  double h = 0.0;
  for (double v : p)
    if (v > 0.0) h -= v * std::log2(v);
  return h;
}

PluginMi plugin_mutual_information(std::span<const std::uint32_t> xs,
                                   std::span<const std::uint32_t> ys, std::uint32_t x_card,
                                   std::uint32_t y_card) {
  if (xs.size() != ys.size() || xs.empty())
    throw InvalidParameter("plugin_mutual_information: paired non-empty samples required");
  if (x_card == 0 || y_card == 0)
    throw InvalidParameter("plugin_mutual_information: zero alphabet");
  std::vector<double> joint(static_cast<std::size_t>(x_card) * y_card, 0.0);
  std::vector<double> px(x_card, 0.0), py(y_card, 0.0);
  const double w = 1.0 / static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] >= x_card || ys[i] >= y_card)
      throw InvalidParameter("plugin_mutual_information: sample outside alphabet");
    joint[static_cast<std::size_t>(xs[i]) * y_card + ys[i]] += w;
    px[xs[i]] += w;
    py[ys[i]] += w;
  }
  double mi = 0.0;
  for (std::uint32_t x = 0; x < x_card; ++x)
    for (std::uint32_t y = 0; y < y_card; ++y) {
      const double j = joint[static_cast<std::size_t>(x) * y_card + y];
      if (j > 0.0) mi += j * std::log2(j / (px[x] * py[y]));
    }
  PluginMi out;
  out.bits = std::max(0.0, mi);
  out.bias_bound_bits = (static_cast<double>(x_card) - 1.0) * (static_cast<double>(y_card) - 1.0) /
                        (2.0 * static_cast<double>(xs.size()) * std::numbers::ln2);
  out.samples = xs.size();
  return out;
}

}  // namespace qsc
