// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <utility>

namespace qsc {

/// Lower bound on a generalized unicity distance, in slots. When the
/// accessible information is so small that |K|/C1 would exceed the exhaustive
/// search ceiling 2^|K|, the bound is reported as capped at that ceiling.
struct UnicityBound {
  double slots = 0.0;  // min(|K|/C1, 2^|K|); +inf if 2^|K| overflows a double
  bool capped = false;
  int key_bits = 0;

  std::string to_string() const;
};

/// n >= |K| / C1; C1 is the eavesdropper's accessible information in bits per slot.
UnicityBound unicity_lower_bound(int key_bits, double c1_bits);

/// DSR bound n > |K| / log2(pi |alpha| / (2 |R_p|)).
UnicityBound dsr_unicity(int key_bits, double amplitude, double r_p);

/// Independent bounds for the two QNDM keys at the same channel capacity.
std::pair<UnicityBound, UnicityBound> qndm_unicity(int key_bits_1, int key_bits_2, double c1_bits);

struct LockingReport {
  double eta = 0.0;
  double h_x_given_y_bits = 0.0;  // H(K) / eta
};

/// eta = H(K) / (I_with_key - I_without_key); also reports H(X|Y) = H(K)/eta.
LockingReport locking_eta(double key_entropy_bits, double info_with_key_bits,
                          double info_without_key_bits);

/// Secret key entropy needed to lock accessible information below
/// epsilon * log|X|: H(K) ~= 4 log2(1/epsilon), for epsilon in (0, 1].
double locking_key_requirement(double epsilon);

/// Reference trend log2(n)/n for the locking efficiency, n >= 2.
double eta_asymptotic(int n);

enum class Scenario { kY00, kQndm, kDsr, kLocking };

const char* scenario_name(Scenario s);

/// Aggregated security analysis of one scheme configuration.
struct SecurityReport {
  Scenario scenario = Scenario::kY00;
  int key_bits = 0;
  int key_bits_2 = 0;  // QNDM second key; 0 when unused
  double c1_bits_per_slot = 0.0;
  std::string c1_provenance;  // "analytic" or "empirical"
  UnicityBound unicity;
  std::optional<UnicityBound> unicity_2;
  std::optional<double> eta;
};

}  // namespace qsc
