// SPDX-License-Identifier: Apache-2.0
#include "qsc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "qsc/errors.hpp"

namespace qsc {

Scheme parse_scheme(const std::string& text) {
  Scheme s;
  std::string part;
  std::stringstream ss(text);
  bool base_seen = false;
  while (std::getline(ss, part, '+')) {
    if (part == "y00") {
      s.base = CipherBase::kY00;
      base_seen = true;
    } else if (part == "qndm") {
      s.base = CipherBase::kQndm;
      base_seen = true;
    } else if (part == "osk") {
      s.osk = true;
    } else if (part == "dsr") {
      s.dsr = true;
    } else {
      throw InvalidParameter("parse_scheme: unknown component '" + part + "'");
    }
  }
  if (!base_seen) throw InvalidParameter("parse_scheme: scheme must start with y00 or qndm");
  return s;
}

std::string scheme_name(const Scheme& scheme) {
  std::string s = scheme.base == CipherBase::kY00 ? "y00" : "qndm";
  if (scheme.osk) s += "+osk";
  if (scheme.dsr) s += "+dsr";
  return s;
}

Encoder Encoder::build(CipherBase base, int m, double amplitude) {
  if (base == CipherBase::kY00) return Encoder(Y00Constellation::build(m, amplitude));
  return Encoder(QndmConstellation::build(m, amplitude));
}

double Encoder::amplitude() const {
  return qndm() ? std::get<QndmConstellation>(impl_).amplitude()
                : std::get<Y00Constellation>(impl_).amplitude();
}

int Encoder::grid_size() const {
  return qndm() ? static_cast<int>(std::get<QndmConstellation>(impl_).points().size())
                : static_cast<int>(std::get<Y00Constellation>(impl_).points().size());
}

double Encoder::grid_spacing() const {
  return qndm() ? std::get<QndmConstellation>(impl_).delta()
                : std::get<Y00Constellation>(impl_).step();
}

const std::vector<LabeledPhase>& Encoder::grid_labels() const {
  return qndm() ? std::get<QndmConstellation>(impl_).points()
                : std::get<Y00Constellation>(impl_).points();
}

int Encoder::index(const SlotKeys& keys, int bprime) const {
  if (qndm())
    return std::get<QndmConstellation>(impl_).encode_index(static_cast<int>(keys.k1),
                                                           static_cast<int>(keys.k2), bprime);
  return std::get<Y00Constellation>(impl_).encode_index(static_cast<int>(keys.k1), bprime);
}

double Encoder::theta_of_index(int index) const {
  return qndm() ? std::get<QndmConstellation>(impl_).theta_of_index(index)
                : std::get<Y00Constellation>(impl_).theta_of_index(index);
}

double Encoder::phase(const SlotKeys& keys, int bprime) const {
  return theta_of_index(index(keys, bprime));
}

void TrialConfig::validate() const {
  if (m < 1) throw InvalidParameter("TrialConfig: M must be positive");
  if (scheme.base == CipherBase::kQndm && m < 2)
    throw InvalidParameter("TrialConfig: QNDM requires M >= 2");
  if (!(amplitude > 0.0)) throw InvalidParameter("TrialConfig: amplitude must be positive");
  if (n_slots < 1) throw InvalidParameter("TrialConfig: need at least one slot");
  if (noise_scale < 0.0) throw InvalidParameter("TrialConfig: negative noise scale");
  if (threads < 1) throw InvalidParameter("TrialConfig: thread count must be positive");
  if (scheme.dsr) {
    // Checked construction enforces the DSR operating range.
    (void)DsrConfig::validated(dsr_strength, amplitude);
  } else if (dsr_strength != 0.0) {
    throw InvalidParameter("TrialConfig: dsr_strength set but scheme lacks +dsr");
  }
  if (plaintext_source == PlaintextSource::kProvided && plaintext.size() != n_slots)
    throw InvalidParameter("TrialConfig: provided plaintext length must equal n_slots");
  if (plaintext_source == PlaintextSource::kFixed && fixed_bit != 0 && fixed_bit != 1)
    throw InvalidParameter("TrialConfig: fixed bit must be 0 or 1");
}

std::vector<std::uint8_t> make_plaintext(const TrialConfig& cfg) {
  std::vector<std::uint8_t> bits(cfg.n_slots);
  switch (cfg.plaintext_source) {
    case PlaintextSource::kFixed:
      std::fill(bits.begin(), bits.end(), static_cast<std::uint8_t>(cfg.fixed_bit));
      break;
    case PlaintextSource::kRandom: {
      CounterRng rng(cfg.master_seed, CounterRng::kPlaintext);
      for (std::size_t i = 0; i < bits.size(); ++i)
        bits[i] = static_cast<std::uint8_t>(rng.bit(i));
      break;
    }
    case PlaintextSource::kProvided:
      bits = cfg.plaintext;
      break;
  }
  return bits;
}

std::vector<double> alice_encode(const TrialConfig& cfg, const Encoder& enc,
                                 std::span<const SlotKeys> keys,
                                 std::span<const std::uint8_t> plaintext) {
  if (keys.size() != plaintext.size())
    throw InvalidParameter("alice_encode: keystream/plaintext length mismatch");
  std::vector<double> phases(keys.size());
  CounterRng dsr_rng(cfg.master_seed, CounterRng::kDsr);
  const double half_width = cfg.scheme.dsr ? cfg.dsr_strength / cfg.amplitude : 0.0;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const int bprime = (plaintext[i] ^ (cfg.scheme.osk ? keys[i].osk : 0)) & 1;
    double theta = enc.phase(keys[i], bprime);
    if (cfg.scheme.dsr) {
      const double u = dsr_rng.uniform01(i);
      theta = canonical_angle(theta + (2.0 * u - 1.0) * half_width);
    }
    phases[i] = theta;
  }
  return phases;
}

BobResult bob_receive(std::span<const double> phases, std::span<const SlotKeys> keys,
                      std::span<const std::uint8_t> plaintext, const Encoder& enc,
                      double noise_scale, std::uint64_t master_seed) {
  if (phases.size() != keys.size() || phases.size() != plaintext.size())
    throw InvalidParameter("bob_receive: length mismatch");
  BobResult r;
  r.samples.resize(phases.size());
  r.decisions.resize(phases.size());
  CounterRng rng(master_seed, CounterRng::kBobNoise);
  const double alpha = enc.amplitude();
  const double sigma = ReceiverModel::homodyne().quadrature_sigma() * noise_scale;
  for (std::size_t i = 0; i < phases.size(); ++i) {
    const double ref = enc.phase(keys[i], 0);  // phase carrying b' = 0
    const double y = alpha * std::cos(phases[i] - ref) + sigma * rng.normal(i);
    r.samples[i] = y;
    const int bprime = y < 0.0 ? 1 : 0;
    const int bit = bprime ^ (keys[i].osk & 1);
    r.decisions[i] = static_cast<std::uint8_t>(bit);
    if (bit != plaintext[i]) ++r.errors;
  }
  r.ber = static_cast<double>(r.errors) / static_cast<double>(phases.size());
  r.ci = wilson_interval(r.errors, phases.size());
  return r;
}

std::vector<cxd> eve_receive(std::span<const double> phases, double amplitude, double noise_scale,
                             std::uint64_t master_seed) {
  std::vector<cxd> samples(phases.size());
  CounterRng rng(master_seed, CounterRng::kEveNoise);
  const double qsig = ReceiverModel::heterodyne().quadrature_sigma() * noise_scale;
  for (std::size_t i = 0; i < phases.size(); ++i) {
    const auto [g1, g2] = rng.normal_pair(i);
    samples[i] = cxd(amplitude * std::cos(phases[i]) + qsig * g1,
                     amplitude * std::sin(phases[i]) + qsig * g2);
  }
  return samples;
}

GridView GridView::of(const Encoder& enc) {
  GridView g;
  g.n = enc.grid_size();
  g.spacing = kTwoPi / static_cast<double>(enc.grid_size());
  g.amplitude = enc.amplitude();
  g.labels = &enc.grid_labels();
  return g;
}

EveDecisions eve_decide(std::span<const cxd> samples, const GridView& grid, EveMode mode,
                        double quadrature_sigma) {
  if (grid.n < 1 || !grid.labels) throw InvalidParameter("eve_decide: invalid grid");
  EveDecisions d;
  if (mode == EveMode::kRunningKey) {
    d.index.resize(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const double th = canonical_angle(std::arg(samples[i]));
      long idx = std::lround(th / grid.spacing) % grid.n;
      d.index[i] = static_cast<std::uint32_t>(idx);
    }
    return d;
  }
  // Binary decision between the even/odd bit mixtures: per-sample
  // log-likelihoods over each bit class, equal weights within a class.
  d.bit.resize(samples.size());
  const double inv_two_var = 1.0 / (2.0 * quadrature_sigma * quadrature_sigma);
  std::vector<cxd> pts(grid.labels->size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double th = (*grid.labels)[k].theta;
    pts[k] = grid.amplitude * cxd(std::cos(th), std::sin(th));
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    double best = -1e300;
    std::vector<double> expo(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) {
      expo[k] = -std::norm(samples[i] - pts[k]) * inv_two_var;
      best = std::max(best, expo[k]);
    }
    double l0 = 0.0, l1 = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      const double w = std::exp(expo[k] - best);
      ((*grid.labels)[k].bit ? l1 : l0) += w;
    }
    d.bit[i] = static_cast<std::uint8_t>(l1 > l0);
  }
  return d;
}

PluginMi empirical_mi(std::span<const std::uint32_t> true_keys,
                      std::span<const std::uint32_t> decisions, std::uint32_t alphabet) {
  return plugin_mutual_information(true_keys, decisions, alphabet, alphabet);
}

namespace {

struct ShardAccumulator {
  std::uint64_t bob_errors = 0;
  std::uint64_t eve_key_errors = 0;
  std::uint64_t eve_bit_errors = 0;
  std::vector<std::uint64_t> joint_k1;  // M x M
  std::vector<std::uint64_t> joint_k2;
  std::vector<std::uint64_t> k1_hist;
};

}  // namespace

TrialReport run_trial(const TrialConfig& cfg) {
  cfg.validate();
  Encoder enc = Encoder::build(cfg.scheme.base, cfg.m, cfg.amplitude);

  KeystreamConfig ks = cfg.keystream;
  ks.m = cfg.m;
  ks.with_osk = cfg.scheme.osk;
  ks.with_k2 = cfg.scheme.base == CipherBase::kQndm;
  const std::vector<SlotKeys> keys = generate_keystream(ks, cfg.n_slots);
  const std::vector<std::uint8_t> plaintext = make_plaintext(cfg);
  const std::vector<double> phases = alice_encode(cfg, enc, keys, plaintext);

  const GridView grid = GridView::of(enc);
  const std::uint32_t m = static_cast<std::uint32_t>(cfg.m);
  const bool qndm = cfg.scheme.base == CipherBase::kQndm;
  const bool mi_tracked = cfg.track_mi && cfg.m <= 2048;

  TrialReport rep;
  rep.scheme = scheme_name(cfg.scheme);
  rep.m = cfg.m;
  rep.amplitude = cfg.amplitude;
  rep.n_slots = cfg.n_slots;
  rep.master_seed = cfg.master_seed;
  rep.noise_scale = cfg.noise_scale;
  rep.dsr_strength = cfg.dsr_strength;
  if (cfg.keep_records) rep.records.resize(cfg.n_slots);

  std::vector<std::uint32_t> k1_true(mi_tracked ? cfg.n_slots : 0);
  std::vector<std::uint32_t> k1_hat(mi_tracked ? cfg.n_slots : 0);
  std::vector<std::uint32_t> k2_true(mi_tracked && qndm ? cfg.n_slots : 0);
  std::vector<std::uint32_t> k2_hat(mi_tracked && qndm ? cfg.n_slots : 0);

  const int n_threads = std::max(1, std::min<int>(cfg.threads, 64));
  std::vector<ShardAccumulator> acc(n_threads);
  const double alpha = cfg.amplitude;
  const double bob_sigma = ReceiverModel::homodyne().quadrature_sigma() * cfg.noise_scale;
  const double eve_qsig = ReceiverModel::heterodyne().quadrature_sigma() * cfg.noise_scale;
  const double inv_two_var =
      cfg.noise_scale > 0.0 ? 1.0 / (2.0 * eve_qsig * eve_qsig) : 1e12;  // noiseless hook
  const std::vector<LabeledPhase>& labels = *grid.labels;

  std::vector<cxd> grid_pts(labels.size());
  for (std::size_t k = 0; k < labels.size(); ++k)
    grid_pts[k] = alpha * cxd(std::cos(labels[k].theta), std::sin(labels[k].theta));

  auto worker = [&](int t, std::size_t lo, std::size_t hi) {
    ShardAccumulator& a = acc[t];
    a.k1_hist.assign(m, 0);
    if (mi_tracked) a.joint_k1.assign(static_cast<std::size_t>(m) * m, 0);
    if (mi_tracked && qndm) a.joint_k2.assign(static_cast<std::size_t>(m) * m, 0);
    CounterRng bob_rng(cfg.master_seed, CounterRng::kBobNoise);
    CounterRng eve_rng(cfg.master_seed, CounterRng::kEveNoise);
    std::vector<double> expo(labels.size());
    for (std::size_t i = lo; i < hi; ++i) {
      // Bob: keyed rotation to the b' = 0 reference, real quadrature.
      const double ref = enc.phase(keys[i], 0);
      const double yb = alpha * std::cos(phases[i] - ref) + bob_sigma * bob_rng.normal(i);
      const int bprime_hat = yb < 0.0 ? 1 : 0;
      const int bob_bit = bprime_hat ^ (cfg.scheme.osk ? (keys[i].osk & 1) : 0);
      if (bob_bit != plaintext[i]) ++a.bob_errors;

      // Eve: keyless heterodyne sample.
      const auto [g1, g2] = eve_rng.normal_pair(i);
      const cxd ye(alpha * std::cos(phases[i]) + eve_qsig * g1,
                   alpha * std::sin(phases[i]) + eve_qsig * g2);

      // Running-key decision: nearest grid phase.
      const double th = canonical_angle(std::arg(ye));
      const std::uint32_t idx =
          static_cast<std::uint32_t>(std::lround(th / grid.spacing) % grid.n);
      const LabeledPhase& lab = labels[idx];
      const bool key_ok = qndm ? (lab.k1 == static_cast<int>(keys[i].k1) &&
                                  lab.k2 == static_cast<int>(keys[i].k2))
                               : (lab.k1 == static_cast<int>(keys[i].k1));
      if (!key_ok) ++a.eve_key_errors;
      a.k1_hist[static_cast<std::uint32_t>(lab.k1 - 1)]++;

      // Binary data decision between the bit mixtures.
      double best = -1e300;
      for (std::size_t k = 0; k < grid_pts.size(); ++k) {
        expo[k] = -std::norm(ye - grid_pts[k]) * inv_two_var;
        best = std::max(best, expo[k]);
      }
      double l0 = 0.0, l1 = 0.0;
      for (std::size_t k = 0; k < grid_pts.size(); ++k) {
        const double w = std::exp(expo[k] - best);
        (labels[k].bit ? l1 : l0) += w;
      }
      const int eve_bit = l1 > l0 ? 1 : 0;
      if (eve_bit != plaintext[i]) ++a.eve_bit_errors;

      if (mi_tracked) {
        k1_true[i] = keys[i].k1 - 1;
        k1_hat[i] = static_cast<std::uint32_t>(lab.k1 - 1);
        a.joint_k1[(keys[i].k1 - 1) * m + (lab.k1 - 1)]++;
        if (qndm) {
          k2_true[i] = keys[i].k2 - 1;
          k2_hat[i] = static_cast<std::uint32_t>(lab.k2 - 1);
          a.joint_k2[(keys[i].k2 - 1) * m + (lab.k2 - 1)]++;
        }
      }
      if (cfg.keep_records) {
        SlotRecord& r = rep.records[i];
        r.slot = i;
        r.theta = phases[i];
        r.bit = plaintext[i];
        r.bob_sample = yb;
        r.eve_re = ye.real();
        r.eve_im = ye.imag();
        r.bob_decision = static_cast<std::uint8_t>(bob_bit);
        r.eve_phase_decision = idx;
        r.eve_bit_decision = static_cast<std::uint8_t>(eve_bit);
      }
    }
  };

  if (n_threads == 1) {
    worker(0, 0, cfg.n_slots);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (cfg.n_slots + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
      const std::size_t lo = std::min<std::size_t>(cfg.n_slots, t * chunk);
      const std::size_t hi = std::min<std::size_t>(cfg.n_slots, lo + chunk);
      pool.emplace_back(worker, t, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  rep.decided_k1_hist.assign(m, 0);
  for (const auto& a : acc) {  // fixed reduction order
    rep.bob_errors += a.bob_errors;
    rep.eve_key_errors += a.eve_key_errors;
    rep.eve_bit_errors += a.eve_bit_errors;
    for (std::uint32_t k = 0; k < m && k < a.k1_hist.size(); ++k)
      rep.decided_k1_hist[k] += a.k1_hist[k];
  }
  const double n = static_cast<double>(cfg.n_slots);
  rep.bob_ber = static_cast<double>(rep.bob_errors) / n;
  rep.bob_ci = wilson_interval(rep.bob_errors, cfg.n_slots);
  rep.eve_key_error_rate = static_cast<double>(rep.eve_key_errors) / n;
  rep.eve_bit_error_rate = static_cast<double>(rep.eve_bit_errors) / n;
  if (mi_tracked) {
    rep.mi_k1 = empirical_mi(k1_true, k1_hat, m);
    if (qndm) rep.mi_k2 = empirical_mi(k2_true, k2_hat, m);
  }
  return rep;
}

void write_trace_csv(const std::string& path, std::span<const SlotRecord> records) {
  std::ofstream out(path);
  if (!out) throw InvalidParameter("write_trace_csv: cannot open " + path);
  out << "slot,theta,bit,bob_sample,eve_re,eve_im,bob_decision,eve_phase_decision,"
         "eve_bit_decision\n";
  out.precision(17);
  for (const auto& r : records) {
    out << r.slot << ',' << r.theta << ',' << static_cast<int>(r.bit) << ',' << r.bob_sample << ','
        << r.eve_re << ',' << r.eve_im << ',' << static_cast<int>(r.bob_decision) << ','
        << r.eve_phase_decision << ',' << static_cast<int>(r.eve_bit_decision) << '\n';
  }
}

double eve_block_symbol_error_mc(int m, double amplitude, SpacingMode mode, std::size_t n_slots,
                                 std::uint64_t seed, double noise_scale) {
  if (m < 2) throw InvalidParameter("eve_block_symbol_error_mc: M must be at least 2");
  if (n_slots < 1) throw InvalidParameter("eve_block_symbol_error_mc: need slots");
  const double delta = mode == SpacingMode::kQndm
                           ? kTwoPi / (static_cast<double>(m) * static_cast<double>(m))
                           : kPi / static_cast<double>(m);
  std::vector<cxd> pts(m);
  for (int k = 0; k < m; ++k) {
    const double th = static_cast<double>(k) * delta;
    pts[k] = amplitude * cxd(std::cos(th), std::sin(th));
  }
  CounterRng pick(seed, 11);
  CounterRng noise(seed, 12);
  const double qsig = ReceiverModel::heterodyne().quadrature_sigma() * noise_scale;
  std::uint64_t errors = 0;
  for (std::size_t i = 0; i < n_slots; ++i) {
    const int truth = static_cast<int>(pick.word(i) % static_cast<std::uint64_t>(m));
    const auto [g1, g2] = noise.normal_pair(i);
    const cxd y = pts[truth] + cxd(qsig * g1, qsig * g2);
    int best = 0;
    double best_d = std::norm(y - pts[0]);
    for (int k = 1; k < m; ++k) {
      const double d = std::norm(y - pts[k]);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    if (best != truth) ++errors;
  }
  return static_cast<double>(errors) / static_cast<double>(n_slots);
}

}  // namespace qsc
