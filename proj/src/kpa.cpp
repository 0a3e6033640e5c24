// SPDX-License-Identifier: Apache-2.0
#include "qsc/kpa.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "qsc/angles.hpp"
#include "qsc/counter_rng.hpp"
#include "qsc/errors.hpp"

namespace qsc {

void KpaConfig::validate() const {
  if (m < 1) throw InvalidParameter("KpaConfig: M must be positive");
  if (base == CipherBase::kQndm && m < 2) throw InvalidParameter("KpaConfig: QNDM requires M >= 2");
  if (!(amplitude > 0.0)) throw InvalidParameter("KpaConfig: amplitude must be positive");
  if (key_bits < 1) throw InvalidParameter("KpaConfig: key_bits must be positive");
  if (key_bits > kMaxKeyBits)
    throw InvalidParameter("KpaConfig: keyspace 2^" + std::to_string(key_bits) +
                           " exceeds the desk-scale bound 2^" + std::to_string(kMaxKeyBits));
  if (acceptance_sigma < 0.0) throw InvalidParameter("KpaConfig: negative acceptance radius");
  if (noise_sigma < 0.0) throw InvalidParameter("KpaConfig: negative noise sigma");
  if (threads < 1) throw InvalidParameter("KpaConfig: thread count must be positive");
}

namespace {

KeystreamConfig keystream_for(const KpaConfig& cfg, std::uint64_t key) {
  KeystreamConfig ks;
  ks.kind = cfg.keystream_kind;
  ks.m = cfg.m;
  ks.with_osk = cfg.osk;
  ks.with_k2 = cfg.base == CipherBase::kQndm;
  ks.key_bits = cfg.key_bits;
  ks.key = key;
  ks.taps = cfg.taps;
  return ks;
}

}  // namespace

KpaResult kpa_search(std::span<const cxd> eve_samples,
                     std::span<const std::uint8_t> known_plaintext, const KpaConfig& cfg) {
  cfg.validate();
  const std::size_t n_slots = eve_samples.size();
  if (!cfg.osk && known_plaintext.size() < n_slots)
    throw InvalidParameter("kpa_search: known plaintext shorter than the sample sequence");

  const Encoder enc = Encoder::build(cfg.base, cfg.m, cfg.amplitude);
  const std::uint64_t keyspace = 1ULL << cfg.key_bits;

  // Acceptance radius: arc length acceptance_sigma * sigma_he against
  // |alpha| * dtheta, i.e. an angular radius capped at pi. The noiseless hook
  // (sigma = 0) degenerates to exact phase match up to rounding.
  const double radius =
      std::min(kPi, cfg.acceptance_sigma * cfg.noise_sigma / cfg.amplitude) + 1e-9;

  std::vector<double> sample_phase(n_slots);
  for (std::size_t i = 0; i < n_slots; ++i) sample_phase[i] = canonical_angle(std::arg(eve_samples[i]));

  KpaResult res;
  res.keyspace = keyspace;
  res.survivors.assign(n_slots + 1, 0);
  res.equivocation_bits.assign(n_slots + 1, 0.0);

  // death[k] = number of slots key k survived before the first inconsistency.
  std::vector<std::uint32_t> death(keyspace, static_cast<std::uint32_t>(n_slots));

  auto hard_worker = [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t key = lo; key < hi; ++key) {
      KeystreamStream stream(keystream_for(cfg, key));
      for (std::size_t i = 0; i < n_slots; ++i) {
        const SlotKeys keys = stream.next();
        bool ok;
        if (cfg.osk) {
          // Either OSK branch may explain the sample; the two candidate
          // phases are antipodal, so the plaintext drops out entirely.
          const double p0 = enc.phase(keys, 0);
          ok = angular_distance(sample_phase[i], p0) <= radius ||
               angular_distance(sample_phase[i], canonical_angle(p0 + kPi)) <= radius;
        } else {
          const double p = enc.phase(keys, known_plaintext[i] & 1);
          ok = angular_distance(sample_phase[i], p) <= radius;
        }
        if (!ok) {
          death[key] = static_cast<std::uint32_t>(i);
          break;
        }
      }
    }
  };

  const int n_threads = std::max(1, std::min(cfg.threads, 64));
  if (n_threads == 1 || keyspace < 1024) {
    hard_worker(0, keyspace);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (keyspace + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
      const std::uint64_t lo = std::min<std::uint64_t>(keyspace, t * chunk);
      const std::uint64_t hi = std::min<std::uint64_t>(keyspace, lo + chunk);
      if (lo < hi) pool.emplace_back(hard_worker, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  // Suffix-count survivors: key k is consistent with prefix n iff death >= n.
  std::vector<std::uint64_t> deaths_at(n_slots + 1, 0);
  for (std::uint64_t key = 0; key < keyspace; ++key)
    if (death[key] < n_slots) ++deaths_at[death[key]];
  std::uint64_t alive = keyspace;
  res.survivors[0] = alive;
  for (std::size_t n = 1; n <= n_slots; ++n) {
    alive -= deaths_at[n - 1];
    res.survivors[n] = alive;
  }
  for (std::size_t n = 0; n <= n_slots; ++n) {
    res.equivocation_bits[n] =
        res.survivors[n] > 0 ? std::log2(static_cast<double>(res.survivors[n])) : 0.0;
    if (!res.unique_at && res.survivors[n] == 1) res.unique_at = n;
  }

  if (cfg.soft) {
    // Likelihood-weighted equivocation: entropy of the key posterior under
    // the Gaussian sample model, updated slot by slot.
    res.soft_equivocation_bits.assign(n_slots + 1, static_cast<double>(cfg.key_bits));
    const double qvar = std::max(1e-12, 0.5 * cfg.noise_sigma * cfg.noise_sigma);
    std::vector<double> ll(keyspace, 0.0);
    std::vector<KeystreamStream> streams;
    streams.reserve(keyspace);
    for (std::uint64_t key = 0; key < keyspace; ++key)
      streams.emplace_back(keystream_for(cfg, key));
    for (std::size_t i = 0; i < n_slots; ++i) {
      for (std::uint64_t key = 0; key < keyspace; ++key) {
        const SlotKeys keys = streams[key].next();
        double l;
        if (cfg.osk) {
          const double a = -std::norm(eve_samples[i] - std::polar(cfg.amplitude, enc.phase(keys, 0))) /
                           (2.0 * qvar);
          const double b = -std::norm(eve_samples[i] - std::polar(cfg.amplitude, enc.phase(keys, 1))) /
                           (2.0 * qvar);
          const double mx = std::max(a, b);
          l = mx + std::log(0.5 * (std::exp(a - mx) + std::exp(b - mx)));
        } else {
          l = -std::norm(eve_samples[i] -
                         std::polar(cfg.amplitude, enc.phase(keys, known_plaintext[i] & 1))) /
              (2.0 * qvar);
        }
        ll[key] += l;
      }
      double mx = ll[0];
      for (double v : ll) mx = std::max(mx, v);
      double z = 0.0, weighted = 0.0;
      for (double v : ll) {
        const double w = std::exp(v - mx);
        z += w;
        weighted += w * (v - mx);
      }
      // H = log2 Z - E[log2 w]
      res.soft_equivocation_bits[i + 1] = std::log2(z) - weighted / (z * std::numbers::ln2);
    }
  }
  return res;
}

KpaExperiment make_kpa_experiment(const KpaConfig& cfg, std::size_t n_slots,
                                  std::uint64_t true_key, std::uint64_t seed) {
  cfg.validate();
  TrialConfig trial;
  trial.scheme.base = cfg.base;
  trial.scheme.osk = cfg.osk;
  trial.m = cfg.m;
  trial.amplitude = cfg.amplitude;
  trial.n_slots = n_slots;
  trial.master_seed = seed;
  trial.keystream = keystream_for(cfg, true_key);
  trial.plaintext_source = PlaintextSource::kRandom;
  trial.noise_scale = cfg.noise_sigma;  // sigma_he units
  trial.validate();

  const Encoder enc = Encoder::build(cfg.base, cfg.m, cfg.amplitude);
  KpaExperiment exp;
  exp.true_key = true_key;
  exp.plaintext = make_plaintext(trial);
  const std::vector<SlotKeys> keys = generate_keystream(trial.keystream, n_slots);
  const std::vector<double> phases = alice_encode(trial, enc, keys, exp.plaintext);
  exp.samples = eve_receive(phases, cfg.amplitude, cfg.noise_sigma, seed);
  return exp;
}

std::vector<std::uint8_t> permute_plaintext(std::span<const std::uint8_t> bits,
                                            std::uint64_t seed) {
  std::vector<std::uint8_t> out(bits.begin(), bits.end());
  CounterRng rng(seed, CounterRng::kPermute);
  for (std::size_t i = out.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.word(i) % i);
    std::swap(out[i - 1], out[j]);
  }
  return out;
}

}  // namespace qsc
