// SPDX-License-Identifier: Apache-2.0
//
// qsc - quantum-noise stream cipher toolkit.
//
// Subcommands:
//   constellation   emit a Y-00 / QNDM constellation as JSON
//   analyze         closed-form error, capacity and unicity report
//   simulate        Monte Carlo trial (Bob keyed homodyne vs Eve heterodyne)
//   kpa             desk-scale exhaustive known-plaintext key search
//   locking         quantum data locking eta comparison
//
// Exit codes: 0 success, 2 parameter error, 3 runtime/numerical error.

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <thread>

#include "qsc/errors.hpp"
#include "qsc/json_io.hpp"
#include "qsc/quantum.hpp"
#include "qsc/receivers.hpp"
#include "qsc/security.hpp"

namespace {

using nlohmann::json;

struct CommonOpts {
  std::string scheme = "y00";
  int m = 16;
  double alpha = 1.0;
  std::uint64_t slots = 100000;
  std::optional<std::uint64_t> seed;
  std::uint64_t key = 1;
  int key_bits = 16;
  int key_bits_2 = 0;
  double lambda = 5.0;
  double rp = 0.0;
  double radius_sigma = 3.0;
  double noise_scale = 1.0;
  int threads = 0;  // 0 = auto
  std::string out;
  std::string trace;
  std::string format = "json";
  std::string plaintext = "random";  // random | zeros | ones
  std::string keystream = "lfsr";    // lfsr | counter
  bool masking_check = false;
  bool noiseless = false;
  bool permute = false;
  bool soft = false;
  int locking_n = 1024;
  double locking_epsilon = 0.0;
};

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QSC_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  const std::uint64_t s = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  std::cerr << "seed: " << s << "\n";  // printed for reproducibility
  return s;
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw qsc::InvalidParameter("cannot open output file " + out_path);
  f << text;
}

// Overlays file values under CLI flags: flags that were typed win.
void apply_config_file(CLI::App& app, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw qsc::InvalidParameter("cannot open config file " + path);
  json j;
  f >> j;
  for (auto& [key, value] : j.items()) {
    CLI::Option* opt = app.get_option_no_throw("--" + key);
    if (!opt) throw qsc::InvalidParameter("config file: unknown option '" + key + "'");
    if (opt->count() > 0) continue;  // explicit flag wins
    opt->add_result(value.is_string() ? value.get<std::string>() : value.dump());
    opt->run_callback();
  }
}

qsc::KeystreamKind parse_keystream(const std::string& text) {
  if (text == "lfsr") return qsc::KeystreamKind::kLfsr;
  if (text == "counter") return qsc::KeystreamKind::kCounterKeyed;
  throw qsc::InvalidParameter("keystream must be lfsr|counter");
}

qsc::TrialConfig make_trial_config(const CommonOpts& o, std::uint64_t seed) {
  qsc::TrialConfig cfg;
  cfg.scheme = qsc::parse_scheme(o.scheme);
  cfg.m = o.m;
  cfg.amplitude = o.alpha;
  cfg.n_slots = o.slots;
  cfg.master_seed = seed;
  cfg.keystream.kind = parse_keystream(o.keystream);
  cfg.keystream.key_bits = o.key_bits;
  cfg.keystream.key = o.key;
  cfg.dsr_strength = cfg.scheme.dsr ? o.rp : 0.0;
  if (o.plaintext == "random") {
    cfg.plaintext_source = qsc::PlaintextSource::kRandom;
  } else if (o.plaintext == "zeros") {
    cfg.plaintext_source = qsc::PlaintextSource::kFixed;
    cfg.fixed_bit = 0;
  } else if (o.plaintext == "ones") {
    cfg.plaintext_source = qsc::PlaintextSource::kFixed;
    cfg.fixed_bit = 1;
  } else {
    throw qsc::InvalidParameter("plaintext must be random|zeros|ones");
  }
  cfg.noise_scale = o.noiseless ? 0.0 : o.noise_scale;
  cfg.threads = resolve_threads(o.threads);
  cfg.keep_records = !o.trace.empty();
  return cfg;
}

int cmd_constellation(const CommonOpts& o) {
  const qsc::Scheme scheme = qsc::parse_scheme(o.scheme);
  json j;
  if (scheme.base == qsc::CipherBase::kY00)
    j = qsc::constellation_json(qsc::Y00Constellation::build(o.m, o.alpha));
  else
    j = qsc::constellation_json(qsc::QndmConstellation::build(o.m, o.alpha));
  emit(o.out, qsc::dump_json(j));
  return 0;
}

// Closed-form pipeline: receiver errors, SRM/Holevo quantities on the
// 2M-state key ensemble, uniform-channel capacity and unicity bounds.
int cmd_analyze(const CommonOpts& o) {
  const qsc::Scheme scheme = qsc::parse_scheme(o.scheme);
  const bool qndm = scheme.base == qsc::CipherBase::kQndm;
  if (o.m < 2) throw qsc::InvalidParameter("analyze: M >= 2 required");
  if (!(o.alpha > 0.0)) throw qsc::InvalidParameter("analyze: alpha must be positive");
  if (o.key_bits < 1) throw qsc::InvalidParameter("analyze: key_bits must be >= 1");

  const auto mode = qndm ? qsc::SpacingMode::kQndm : qsc::SpacingMode::kY00;
  const double bob = qsc::bob_error(o.alpha);
  const double eve_mary = qsc::eve_error_mary(o.m, o.alpha, mode);
  const double eve_binary = qsc::psk_parity_mixture_error(o.m, o.alpha);

  json j;
  j["scheme"] = qsc::scheme_name(scheme);
  j["M"] = o.m;
  j["alpha"] = o.alpha;
  j["key_bits"] = o.key_bits;
  j["bob_error"] = bob;
  j["eve_mary_error"] = eve_mary;
  j["eve_binary_error"] = eve_binary;

  // Exact SRM error of the 2M-state key ensemble plus its Holevo ceiling.
  const std::size_t n2m = 2 * static_cast<std::size_t>(o.m);
  auto psk = qsc::PureStateEnsemble::uniform_psk(n2m, o.alpha);
  std::vector<qsc::cxd> row(n2m);
  auto g = qsc::gram_matrix(psk);
  for (std::size_t k = 0; k < n2m; ++k) row[k] = g(0, k);
  j["srm_error_2m"] = qsc::srm_error_covariant(n2m, row);
  const double holevo = qsc::holevo_information(psk);
  j["holevo_bits"] = holevo;

  qsc::SecurityReport rep;
  rep.key_bits = o.key_bits;
  rep.c1_provenance = "analytic";
  qsc::MaskingReport masking;
  if (scheme.dsr) {
    rep.scenario = qsc::Scenario::kDsr;
    rep.c1_bits_per_slot = qsc::dsr_capacity(o.alpha, o.rp);
    j["rp"] = o.rp;
    masking = qsc::masking_metrics(o.m, o.alpha, qsc::kPi / o.m, 1, 1.0, o.lambda);
  } else {
    rep.scenario = qndm ? qsc::Scenario::kQndm : qsc::Scenario::kY00;
    const double eps = qsc::eve_symbol_epsilon(o.m, o.alpha, mode);
    rep.c1_bits_per_slot = qsc::capacity_uniform(qsc::UniformChannelSpec(o.m, eps));
    j["epsilon"] = eps;
    if (qndm) {
      masking = qsc::masking_metrics(qsc::QndmConstellation::build(o.m, o.alpha), 1.0, o.lambda);
    } else {
      masking = qsc::masking_metrics(qsc::Y00Constellation::build(o.m, o.alpha), 1.0, o.lambda);
    }
  }
  // the Holevo information of the key ensemble is an upper bound on C1
  rep.c1_bits_per_slot = std::min(rep.c1_bits_per_slot, holevo);
  j["masking"] = qsc::to_json(masking);

  if (qndm) {
    rep.key_bits_2 = o.key_bits_2 > 0 ? o.key_bits_2 : o.key_bits;
    auto [u1, u2] = qsc::qndm_unicity(rep.key_bits, rep.key_bits_2, rep.c1_bits_per_slot);
    rep.unicity = u1;
    rep.unicity_2 = u2;
  } else if (scheme.dsr) {
    rep.unicity = qsc::dsr_unicity(o.key_bits, o.alpha, o.rp);
  } else {
    rep.unicity = qsc::unicity_lower_bound(o.key_bits, rep.c1_bits_per_slot);
  }
  j.update(qsc::to_json(rep));
  emit(o.out, qsc::dump_json(j));
  return 0;
}

int cmd_simulate(const CommonOpts& o) {
  const std::uint64_t seed = resolve_seed(o.seed);
  qsc::TrialConfig cfg = make_trial_config(o, seed);
  cfg.validate();

  if (o.masking_check) {
    qsc::MaskingReport m;
    if (cfg.scheme.base == qsc::CipherBase::kQndm)
      m = qsc::masking_metrics(qsc::QndmConstellation::build(o.m, o.alpha), 1.0, o.lambda);
    else
      m = qsc::masking_metrics(qsc::Y00Constellation::build(o.m, o.alpha), 1.0, o.lambda);
    if (!m.condition_met)
      throw qsc::InvalidParameter("masking condition unmet: gamma_q = " +
                                  std::to_string(m.gamma_q) +
                                  " < lambda = " + std::to_string(o.lambda));
  }

  qsc::TrialReport rep = qsc::run_trial(cfg);
  json j = qsc::to_json(rep);

  // Analytic comparison columns.
  const auto mode = cfg.scheme.base == qsc::CipherBase::kQndm ? qsc::SpacingMode::kQndm
                                                              : qsc::SpacingMode::kY00;
  json analytic{{"bob_error", qsc::bob_error(o.alpha)}};
  if (o.m >= 2) {
    analytic["eve_mary_error"] = qsc::eve_error_mary(o.m, o.alpha, mode);
    analytic["eve_binary_error"] = qsc::psk_parity_mixture_error(o.m, o.alpha);
    analytic["c1_bits_per_slot"] = qsc::capacity_uniform(
        qsc::UniformChannelSpec(o.m, qsc::eve_symbol_epsilon(o.m, o.alpha, mode)));
  }
  j["analytic"] = analytic;

  // Empirical security bound from the measured accessible information.
  qsc::SecurityReport sec;
  sec.scenario = cfg.scheme.dsr ? qsc::Scenario::kDsr
                 : cfg.scheme.base == qsc::CipherBase::kQndm ? qsc::Scenario::kQndm
                                                             : qsc::Scenario::kY00;
  sec.key_bits = o.key_bits;
  sec.c1_bits_per_slot = std::max(rep.mi_k1.bits, rep.mi_k2.bits);
  sec.c1_provenance = "empirical";
  if (sec.scenario == qsc::Scenario::kQndm) {
    sec.key_bits_2 = o.key_bits_2 > 0 ? o.key_bits_2 : o.key_bits;
    auto [u1, u2] = qsc::qndm_unicity(sec.key_bits, sec.key_bits_2, sec.c1_bits_per_slot);
    sec.unicity = u1;
    sec.unicity_2 = u2;
  } else {
    sec.unicity = qsc::unicity_lower_bound(sec.key_bits, sec.c1_bits_per_slot);
  }
  j["security"] = qsc::to_json(sec);

  if (!o.trace.empty()) qsc::write_trace_csv(o.trace, rep.records);
  emit(o.out, qsc::dump_json(j));
  return 0;
}

int cmd_kpa(const CommonOpts& o) {
  const std::uint64_t seed = resolve_seed(o.seed);
  qsc::KpaConfig cfg;
  const qsc::Scheme scheme = qsc::parse_scheme(o.scheme);
  if (scheme.dsr) throw qsc::InvalidParameter("kpa: DSR searches are not supported");
  cfg.base = scheme.base;
  cfg.osk = scheme.osk;
  cfg.m = o.m;
  cfg.amplitude = o.alpha;
  cfg.key_bits = o.key_bits;
  cfg.keystream_kind = parse_keystream(o.keystream);
  cfg.acceptance_sigma = o.radius_sigma;
  cfg.noise_sigma = o.noiseless ? 0.0 : o.noise_scale;
  cfg.soft = o.soft;
  cfg.threads = resolve_threads(o.threads);
  cfg.validate();

  const std::uint64_t keyspace = 1ULL << cfg.key_bits;
  const std::uint64_t true_key = o.key % keyspace;
  qsc::KpaExperiment exp = qsc::make_kpa_experiment(cfg, o.slots, true_key, seed);
  std::vector<std::uint8_t> plaintext =
      o.permute ? qsc::permute_plaintext(exp.plaintext, seed) : exp.plaintext;
  qsc::KpaResult res = qsc::kpa_search(exp.samples, plaintext, cfg);

  std::string csv = "n,survivors,equivocation_bits";
  if (cfg.soft) csv += ",soft_equivocation_bits";
  csv += "\n";
  for (std::size_t n = 0; n < res.survivors.size(); ++n) {
    csv += std::to_string(n) + "," + std::to_string(res.survivors[n]) + "," +
           std::to_string(res.equivocation_bits[n]);
    if (cfg.soft) csv += "," + std::to_string(res.soft_equivocation_bits[n]);
    csv += "\n";
  }
  if (!o.out.empty()) {
    emit(o.out, csv);
    std::cout << qsc::dump_json(qsc::kpa_summary_json(res));
  } else if (o.format == "csv") {
    std::cout << csv;
  } else {
    std::cout << qsc::dump_json(qsc::kpa_summary_json(res));
  }
  return 0;
}

int cmd_locking(const CommonOpts& o) {
  if (o.locking_n < 2) throw qsc::InvalidParameter("locking: n must be at least 2");
  const double n = static_cast<double>(o.locking_n);
  const double key_entropy = static_cast<double>(o.key_bits);
  // BB84-style basis locking: with key -> n bits, without -> at most n/2.
  qsc::LockingReport r = qsc::locking_eta(key_entropy, n, n / 2.0);

  qsc::SecurityReport rep;
  rep.scenario = qsc::Scenario::kLocking;
  rep.key_bits = o.key_bits;
  rep.c1_bits_per_slot = n / 2.0;  // keyless accessible information
  rep.c1_provenance = "analytic";
  rep.unicity = qsc::unicity_lower_bound(o.key_bits, n / 2.0);
  rep.eta = r.eta;

  json j = qsc::to_json(rep);
  j["n_bits"] = o.locking_n;
  j["h_x_given_y_bits"] = r.h_x_given_y_bits;
  j["eta_asymptotic"] = qsc::eta_asymptotic(o.locking_n);
  if (o.locking_epsilon > 0.0)
    j["key_requirement_bits"] = qsc::locking_key_requirement(o.locking_epsilon);
  emit(o.out, qsc::dump_json(j));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum-noise stream cipher toolkit"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string config_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file; explicit flags win");
    sub->add_option("--scheme", o.scheme, "y00 | qndm, with +osk / +dsr suffixes");
    sub->add_option("--M", o.m, "number of communication bases");
    sub->add_option("--alpha", o.alpha, "coherent amplitude |alpha|");
    sub->add_option("--slots", o.slots, "number of Monte Carlo slots");
    sub->add_option("--seed", o.seed, "master seed (omit to draw one)");
    sub->add_option("--key", o.key, "secret key value");
    sub->add_option("--key-bits", o.key_bits, "secret key length in bits");
    sub->add_option("--key-bits2", o.key_bits_2, "QNDM second key length");
    sub->add_option("--lambda", o.lambda, "masking threshold Lambda");
    sub->add_option("--rp", o.rp, "DSR strength |R_p| (arc length)");
    sub->add_option("--radius-sigma", o.radius_sigma, "KPA acceptance radius in sigma_he");
    sub->add_option("--noise-scale", o.noise_scale, "receiver noise scale (test hook)");
    sub->add_option("--threads", o.threads, "worker threads (QSC_THREADS fallback)");
    sub->add_option("--out", o.out, "output file (stdout if omitted)");
    sub->add_option("--trace", o.trace, "per-slot CSV trace file");
    sub->add_option("--format", o.format, "json | csv (kpa curve)");
    sub->add_option("--plaintext", o.plaintext, "random | zeros | ones");
    sub->add_option("--keystream", o.keystream, "lfsr | counter");
    sub->add_flag("--masking-check", o.masking_check, "fail fast unless masking condition holds");
    sub->add_flag("--noiseless", o.noiseless, "disable receiver noise (test hook)");
    sub->add_flag("--permute-plaintext", o.permute, "run KPA against permuted plaintext");
    sub->add_flag("--soft", o.soft, "also track likelihood-weighted KPA equivocation");
    sub->add_option("--n", o.locking_n, "locking: message length in bits");
    sub->add_option("--epsilon", o.locking_epsilon, "locking: accessible-information bound");
    return sub;
  };

  CLI::App* c_const = add_common(app.add_subcommand("constellation", "emit constellation JSON"));
  CLI::App* c_analyze = add_common(app.add_subcommand("analyze", "closed-form security report"));
  CLI::App* c_sim = add_common(app.add_subcommand("simulate", "Monte Carlo trial"));
  CLI::App* c_kpa = add_common(app.add_subcommand("kpa", "exhaustive known-plaintext search"));
  CLI::App* c_lock = add_common(app.add_subcommand("locking", "quantum data locking report"));

  try {
    app.parse(argc, argv);
    CLI::App* active = c_const->parsed()     ? c_const
                       : c_analyze->parsed() ? c_analyze
                       : c_sim->parsed()     ? c_sim
                       : c_kpa->parsed()     ? c_kpa
                                             : c_lock;
    if (!config_path.empty()) apply_config_file(*active, config_path);

    if (c_const->parsed()) return cmd_constellation(o);
    if (c_analyze->parsed()) return cmd_analyze(o);
    if (c_sim->parsed()) return cmd_simulate(o);
    if (c_kpa->parsed()) return cmd_kpa(o);
    return cmd_locking(o);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const qsc::InvalidParameter& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
