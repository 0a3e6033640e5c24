// SPDX-License-Identifier: Apache-2.0
#include "qsc/json_io.hpp"

#include <cmath>

namespace qsc {

using nlohmann::json;

namespace {

json point_json(const LabeledPhase& p, bool with_k2) {
  json j{{"theta", p.theta}, {"k1", p.k1}, {"bit", p.bit}};
  if (with_k2) j["k2"] = p.k2;
  return j;
}

}  // namespace

json constellation_json(const Y00Constellation& c) {
  json pts = json::array();
  for (const auto& p : c.points()) pts.push_back(point_json(p, false));
  return json{{"kind", "y00"}, {"M", c.bases()}, {"amplitude", c.amplitude()}, {"points", pts}};
}

json constellation_json(const QndmConstellation& c) {
  json pts = json::array();
  for (const auto& p : c.points()) pts.push_back(point_json(p, true));
  return json{{"kind", "qndm"},
              {"M", c.bases()},
              {"amplitude", c.amplitude()},
              {"delta", c.delta()},
              {"points", pts}};
}

json to_json(const UnicityBound& b) {
  json j{{"capped", b.capped}, {"key_bits", b.key_bits}, {"cap", "2^" + std::to_string(b.key_bits)}};
  if (std::isfinite(b.slots))
    j["slots"] = b.slots;
  else
    j["slots"] = nullptr;
  return j;
}

json to_json(const SecurityReport& r) {
  json j{{"scenario", scenario_name(r.scenario)},
         {"key_bits", r.key_bits},
         {"c1_bits_per_slot", r.c1_bits_per_slot},
         {"c1_provenance", r.c1_provenance}};
  if (r.scenario == Scenario::kQndm) {
    j["key_bits_2"] = r.key_bits_2;
    j["unicity_k1"] = to_json(r.unicity);
    if (r.unicity_2) j["unicity_k2"] = to_json(*r.unicity_2);
  } else {
    j["unicity"] = to_json(r.unicity);
  }
  if (r.eta) j["eta"] = *r.eta;
  return j;
}

json to_json(const MaskingReport& m) {
  return json{{"gamma_q", m.gamma_q},
              {"masked_points", m.masked_points},
              {"condition_met", m.condition_met},
              {"lambda", m.lambda}};
}

json to_json(const LockingReport& r) {
  return json{{"eta", r.eta}, {"h_x_given_y_bits", r.h_x_given_y_bits}};
}

json to_json(const PluginMi& mi) {
  return json{{"bits", mi.bits}, {"bias_bound_bits", mi.bias_bound_bits}, {"samples", mi.samples}};
}

json to_json(const BinomialCi& ci) { return json{{"low", ci.low}, {"high", ci.high}}; }

json to_json(const TrialReport& r) {
  json j{{"scheme", r.scheme},
         {"M", r.m},
         {"amplitude", r.amplitude},
         {"slots", r.n_slots},
         {"seed", r.master_seed},
         {"noise_scale", r.noise_scale},
         {"bob", json{{"errors", r.bob_errors}, {"ber", r.bob_ber}, {"ci", to_json(r.bob_ci)}}},
         {"eve",
          json{{"key_errors", r.eve_key_errors},
               {"key_error_rate", r.eve_key_error_rate},
               {"bit_errors", r.eve_bit_errors},
               {"bit_error_rate", r.eve_bit_error_rate},
               {"mi_k1", to_json(r.mi_k1)},
               {"mi_k2", to_json(r.mi_k2)}}}};
  if (r.dsr_strength > 0.0) j["dsr_strength"] = r.dsr_strength;
  return j;
}

json kpa_summary_json(const KpaResult& r) {
  json j{{"keyspace", r.keyspace},
         {"slots", r.survivors.empty() ? 0 : r.survivors.size() - 1},
         {"final_survivors", r.survivors.empty() ? 0 : r.survivors.back()},
         {"final_equivocation_bits", r.equivocation_bits.empty() ? 0.0 : r.equivocation_bits.back()}};
  if (r.unique_at)
    j["unique_at"] = *r.unique_at;
  else
    j["unique_at"] = nullptr;
  return j;
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace qsc
