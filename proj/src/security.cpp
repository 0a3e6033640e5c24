// SPDX-License-Identifier: Apache-2.0
#include "qsc/security.hpp"

#include <cmath>
#include <limits>

#include "qsc/errors.hpp"
#include "qsc/receivers.hpp"

namespace qsc {

std::string UnicityBound::to_string() const {
  if (capped) return "exceeds 2^" + std::to_string(key_bits) + " cap";
  return std::to_string(slots) + " slots";
}

UnicityBound unicity_lower_bound(int key_bits, double c1_bits) {
  if (key_bits < 0) throw InvalidParameter("unicity_lower_bound: negative key size");
  if (c1_bits < 0.0) throw InvalidParameter("unicity_lower_bound: negative capacity");
  UnicityBound b;
  b.key_bits = key_bits;
  if (key_bits == 0) return b;  // nothing to find
  // Exhaustive search ends after at most 2^|K| observations, capping the bound.
  const double cap = key_bits < 1024 ? std::ldexp(1.0, key_bits)
                                     : std::numeric_limits<double>::infinity();
  const double threshold = static_cast<double>(key_bits) * std::ldexp(1.0, -key_bits);
  if (c1_bits <= threshold) {
    b.capped = true;
    b.slots = cap;
  } else {
    b.slots = static_cast<double>(key_bits) / c1_bits;
  }
  return b;
}

UnicityBound dsr_unicity(int key_bits, double amplitude, double r_p) {
  return unicity_lower_bound(key_bits, dsr_capacity(amplitude, r_p));
}

std::pair<UnicityBound, UnicityBound> qndm_unicity(int key_bits_1, int key_bits_2,
                                                   double c1_bits) {
  if (key_bits_1 < 1 || key_bits_2 < 1)
    throw InvalidParameter("qndm_unicity: both key sizes must be at least 1");
  return {unicity_lower_bound(key_bits_1, c1_bits), unicity_lower_bound(key_bits_2, c1_bits)};
}

LockingReport locking_eta(double key_entropy_bits, double info_with_key_bits,
                          double info_without_key_bits) {
  if (!(key_entropy_bits > 0.0)) throw InvalidParameter("locking_eta: key entropy must be positive");
  const double gap = info_with_key_bits - info_without_key_bits;
  if (!(gap > 0.0))
    throw InvalidParameter("locking_eta: info with key must exceed info without key");
  LockingReport r;
  r.eta = key_entropy_bits / gap;
  r.h_x_given_y_bits = key_entropy_bits / r.eta;
  return r;
}

double locking_key_requirement(double epsilon) {
  if (!(epsilon > 0.0) || epsilon > 1.0)
    throw InvalidParameter("locking_key_requirement: epsilon outside (0, 1]");
  return 4.0 * std::log2(1.0 / epsilon);
}

double eta_asymptotic(int n) {
  if (n < 2) throw InvalidParameter("eta_asymptotic: n must be at least 2");
  return std::log2(static_cast<double>(n)) / static_cast<double>(n);
}

const char* scenario_name(Scenario s) {
  switch (s) {
    case Scenario::kY00: return "y00";
    case Scenario::kQndm: return "qndm";
    case Scenario::kDsr: return "dsr";
    case Scenario::kLocking: return "locking";
  }
  return "unknown";
}

}  // namespace qsc
