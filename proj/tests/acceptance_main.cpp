// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every tolerance is pinned in code next to the check it gates.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "qsc/constellation.hpp"
#include "qsc/kpa.hpp"
#include "qsc/quantum.hpp"
#include "qsc/receivers.hpp"
#include "qsc/security.hpp"
#include "qsc/simulator.hpp"
#include "qsc/stats.hpp"

using namespace qsc;

namespace {

int failures = 0;

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void report(int id, const char* name, bool pass, const std::string& detail, double secs) {
  std::printf("%s criterion %2d: %-28s %s  [%.2fs]\n", pass ? "PASS" : "FAIL", id, name,
              detail.c_str(), secs);
  if (!pass) ++failures;
}

std::string fmt(const char* f, ...) {
  char buf[256];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

std::vector<cxd> gram_first_row(const PureStateEnsemble& e) {
  CMatrix g = gram_matrix(e);
  std::vector<cxd> row(e.size());
  for (std::size_t k = 0; k < e.size(); ++k) row[k] = g(0, k);
  return row;
}

// 1. Pure-state Helstrom bound vs the mixed-state trace-norm route on a
//    10 x 10 grid of (kappa^2, xi); agreement within 1e-10, under 1 s.
void criterion_1() {
  Timer t;
  double worst = 0.0;
  const double ds[10] = {10.0, 2.0, 1.5, 1.2, 1.0, 0.8, 0.6, 0.4, 0.2, 0.05};
  for (double d : ds)
    for (int j = 1; j <= 10; ++j) {
      const double xi = j / 11.0;
      const cxd a0(0.0, 0.0), a1(d, 0.3 * d);
      const double kappa_sq = std::norm(coherent_overlap(a0, a1));
      auto basis = SpanBasis::build(PureStateEnsemble({a0, a1}, {1.0 - xi, xi}));
      SpanOperator r0{basis->density(0), basis};
      SpanOperator r1{basis->density(1), basis};
      worst = std::max(worst, std::fabs(helstrom_binary_mixed(r0, r1, xi) -
                                        helstrom_binary_pure(kappa_sq, xi)));
    }
  const double secs = t.seconds();
  report(1, "helstrom pure vs mixed", worst <= 1e-10 && secs < 1.0,
         fmt("max |diff| = %.2e (tol 1e-10, 100 points)", worst), secs);
}

// 2-4. SRM closed form vs direct Gram-root channel, minimax spread, and
//      Holevo dominance over the 2M-PSK grid M in {2..32}, alpha in {0.5..4}.
void criteria_2_3_4() {
  Timer t;
  double worst_route = 0.0, worst_spread = 0.0, worst_dom = 0.0;
  for (int m : {2, 4, 8, 16, 32})
    for (double a : {0.5, 1.0, 2.0, 4.0}) {
      const std::size_t n = 2 * static_cast<std::size_t>(m);
      auto ens = PureStateEnsemble::uniform_psk(n, a);
      const double closed = srm_error_covariant(n, gram_first_row(ens));
      ChannelMatrix ch = srm_channel(ens);
      double mean_correct = 0.0;
      for (std::size_t k = 0; k < n; ++k) mean_correct += ch(k, k);
      mean_correct /= static_cast<double>(n);
      worst_route = std::max(worst_route, std::fabs(closed - (1.0 - mean_correct)));

      // Tr rho_l Pi_l on the rank-truncated span, the POVM's native home.
      std::vector<double> correct = correct_probabilities(ens, srm_povm(ens));
      const auto [pmin, pmax] = std::minmax_element(correct.begin(), correct.end());
      worst_spread = std::max(worst_spread, *pmax - *pmin);

      worst_dom =
          std::max(worst_dom, mutual_information(ch, ens.priors) - holevo_information(ens));
    }
  const double secs = t.seconds();
  report(2, "SRM closed form vs direct", worst_route <= 1e-8 && secs < 10.0,
         fmt("max |diff| = %.2e (tol 1e-8), %.1fs (< 10s)", worst_route, secs), secs);
  report(3, "minimax equalizer property", worst_spread <= 1e-10,
         fmt("max spread = %.2e (tol 1e-10)", worst_spread), secs);
  report(4, "Holevo dominance", worst_dom <= 1e-9,
         fmt("max I(SRM) - I_H = %.2e (tol 1e-9)", worst_dom), secs);
}

// 5. Bob Monte Carlo vs the closed form: 10^6 slots at |alpha| = 1.5.
void criterion_5() {
  Timer t;
  TrialConfig cfg;
  cfg.scheme = parse_scheme("y00");
  cfg.m = 16;
  cfg.amplitude = 1.5;
  cfg.n_slots = 1000000;
  cfg.master_seed = 20260808ULL;
  cfg.keystream.key_bits = 16;
  cfg.keystream.key = 0xACE1;
  cfg.threads = 2;
  TrialReport rep = run_trial(cfg);
  const double p = tail_q(3.0);  // Q(3) = 1.3499e-3
  const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(cfg.n_slots));
  const double dev = std::fabs(rep.bob_ber - p) / sigma;
  const double secs = t.seconds();
  report(5, "Bob MC vs Q(2|alpha|)", dev <= 3.0 && secs < 60.0,
         fmt("ber = %.4e vs %.4e (%.2f binomial sigma, tol 3)", rep.bob_ber, p, dev), secs);
}

// 6. Eve Monte Carlo vs the M-ary nearest-neighbor closed form at QNDM
//    spacing: M = 16, |alpha| = 4, 10^5 slots, 5% relative.
void criterion_6() {
  Timer t;
  const double analytic = eve_error_mary(16, 4.0, SpacingMode::kQndm);
  const double mc = eve_block_symbol_error_mc(16, 4.0, SpacingMode::kQndm, 100000, 42, 1.0);
  const double rel = std::fabs(mc - analytic) / analytic;
  const double secs = t.seconds();
  report(6, "Eve MC vs closed form", rel <= 0.05 && secs < 60.0,
         fmt("mc = %.4f vs %.4f (rel %.3f, tol 0.05)", mc, analytic, rel), secs);
}

// 7. Advantage creation at M = 64, |alpha| = 3: binary mixed-state error for
//    Eve ~ 1/2 while Bob's keyed error is negligible.
void criterion_7() {
  Timer t;
  auto [rho0, rho1] = psk_parity_mixtures(64, 3.0);
  const double eve = helstrom_binary_mixed(rho0, rho1, 0.5);
  const double bob = bob_error(3.0);
  const double secs = t.seconds();
  report(7, "advantage creation", eve >= 0.49 && bob <= 1e-8,
         fmt("eve binary = %.6f (>= 0.49), bob = %.2e (<= 1e-8)", eve, bob), secs);
}

// 8. Capacity collapse: the uniform-error channel at M = 1024 carries under
//    1e-3 bits, and the masked QNDM simulation leaks at most 0.05 bits/slot.
void criterion_8() {
  Timer t;
  const int m = 1024;
  const double eps = (1.0 - 1.0 / m) / (m - 1.0);
  const double c1 = capacity_uniform(UniformChannelSpec(m, eps));

  TrialConfig cfg;
  cfg.scheme = parse_scheme("qndm");
  cfg.m = 16;
  cfg.amplitude = 0.5;  // masking condition holds at Lambda = 5
  cfg.n_slots = 100000;
  cfg.master_seed = 5;
  cfg.keystream.key_bits = 16;
  cfg.keystream.key = 0xACE1;
  cfg.threads = 2;
  TrialReport rep = run_trial(cfg);
  const double mi = std::max(rep.mi_k1.bits, rep.mi_k2.bits);
  const double secs = t.seconds();
  report(8, "capacity collapse", c1 < 1e-3 && mi <= 0.05,
         fmt("C1(M=1024) = %.2e (< 1e-3), masked MI = %.4f (<= 0.05)", c1, mi), secs);
}

// 9. KPA equivocation: masked QNDM holds >= 99% of the 2^16 keyspace after
//    160 slots, while noiseless controls reach a unique key within
//    ceil(16 / log2(2M)) + 2 slots.
void criterion_9() {
  Timer t;
  KpaConfig masked;
  masked.base = CipherBase::kQndm;
  masked.m = 16;
  masked.amplitude = 0.5;
  masked.key_bits = 16;
  masked.threads = 2;
  const MaskingReport mr = masking_metrics(QndmConstellation::build(16, 0.5), 1.0, 5.0);
  KpaExperiment exp = make_kpa_experiment(masked, 160, 0xACE1, 77);
  KpaResult res = kpa_search(exp.samples, exp.plaintext, masked);
  const std::uint64_t floor_count = static_cast<std::uint64_t>(std::ceil(0.99 * 65536.0));
  const bool masked_ok = mr.condition_met && res.survivors[160] >= floor_count &&
                         res.equivocation_bits[160] >= 0.99 * 16.0;

  KpaConfig control = masked;
  control.base = CipherBase::kY00;
  control.noise_sigma = 0.0;
  KpaExperiment expc = make_kpa_experiment(control, 12, 0xACE1, 78);
  KpaResult resc = kpa_search(expc.samples, expc.plaintext, control);
  const std::uint64_t bound =
      static_cast<std::uint64_t>(std::ceil(16.0 / std::log2(2.0 * 16.0))) + 2;  // = 6
  const bool control_ok = resc.unique_at && *resc.unique_at <= bound;

  KpaConfig controlq = masked;
  controlq.noise_sigma = 0.0;
  KpaExperiment expq = make_kpa_experiment(controlq, 8, 0xACE1, 79);
  KpaResult resq = kpa_search(expq.samples, expq.plaintext, controlq);
  const bool controlq_ok = resq.unique_at && *resq.unique_at <= bound;

  const double secs = t.seconds();
  report(9, "KPA equivocation", masked_ok && control_ok && controlq_ok && secs < 300.0,
         fmt("survivors = %llu/65536 (>= %llu), noiseless unique at %llu/%llu (<= %llu)",
             static_cast<unsigned long long>(res.survivors[160]),
             static_cast<unsigned long long>(floor_count),
             static_cast<unsigned long long>(resc.unique_at.value_or(999)),
             static_cast<unsigned long long>(resq.unique_at.value_or(999)),
             static_cast<unsigned long long>(bound)),
         secs);
}

// 10. OSK reduction of KPA to COA: survivor curves for correct vs permuted
//     plaintext are statistically indistinguishable (two-sample KS).
void criterion_10() {
  Timer t;
  KpaConfig cfg;
  cfg.base = CipherBase::kY00;
  cfg.osk = true;
  cfg.m = 16;
  cfg.amplitude = 2.0;
  cfg.key_bits = 16;
  cfg.threads = 2;
  KpaExperiment exp = make_kpa_experiment(cfg, 120, 0x1234, 99);
  KpaResult correct = kpa_search(exp.samples, exp.plaintext, cfg);
  KpaResult permuted = kpa_search(exp.samples, permute_plaintext(exp.plaintext, 99), cfg);
  std::vector<double> a(correct.survivors.begin(), correct.survivors.end());
  std::vector<double> b(permuted.survivors.begin(), permuted.survivors.end());
  KsResult ks = ks_two_sample(a, b);
  const double secs = t.seconds();
  report(10, "OSK reduces KPA to COA", ks.p_value > 0.01,
         fmt("KS p = %.3f (> 0.01), D = %.3f", ks.p_value, ks.d), secs);
}

// 11. Quantum data locking: eta(n = 1024, 1-bit key) = 2/1024 exactly,
//     eta < 1 with H(X|Y) > H(K), and the log2(n)/n trend decays for n >= 3.
void criterion_11() {
  Timer t;
  LockingReport r = locking_eta(1.0, 1024.0, 512.0);
  const bool exact = r.eta == 2.0 / 1024.0;
  const bool implication = r.eta < 1.0 && r.h_x_given_y_bits > 1.0;
  bool monotone = true;
  double prev = eta_asymptotic(3);
  for (int n = 4; n <= 4096; ++n) {
    const double e = eta_asymptotic(n);
    if (e >= prev) monotone = false;
    prev = e;
  }
  const double secs = t.seconds();
  report(11, "quantum data locking eta", exact && implication && monotone,
         fmt("eta = %.9f (= 2/1024), H(X|Y) = %.0f > H(K) = 1, trend decays", r.eta,
             r.h_x_given_y_bits),
         secs);
}

}  // namespace

int main() {
  Timer total;
  criterion_1();
  criteria_2_3_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  std::printf("%s: %d criterion(s) failed  [total %.1fs]\n", failures == 0 ? "OK" : "FAILED",
              failures, total.seconds());
  return failures;
}
