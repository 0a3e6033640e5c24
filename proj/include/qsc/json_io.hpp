// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "json.hpp"

#include "qsc/constellation.hpp"
#include "qsc/kpa.hpp"
#include "qsc/security.hpp"
#include "qsc/simulator.hpp"

namespace qsc {

nlohmann::json constellation_json(const Y00Constellation& c);
nlohmann::json constellation_json(const QndmConstellation& c);

nlohmann::json to_json(const UnicityBound& b);
nlohmann::json to_json(const SecurityReport& r);
nlohmann::json to_json(const MaskingReport& m);
nlohmann::json to_json(const LockingReport& r);
nlohmann::json to_json(const PluginMi& mi);
nlohmann::json to_json(const BinomialCi& ci);
nlohmann::json to_json(const TrialReport& r);
nlohmann::json kpa_summary_json(const KpaResult& r);

/// Canonical serialization used wherever byte-identical output matters.
std::string dump_json(const nlohmann::json& j);

}  // namespace qsc
