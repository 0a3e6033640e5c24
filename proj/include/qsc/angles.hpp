// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <numbers>

namespace qsc {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Maps an angle into the canonical half-open range [0, 2pi).
inline double canonical_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;  // fmod may land exactly on 2pi after the shift
  return t;
}

/// Shortest distance between two angles on the circle, in [0, pi].
inline double angular_distance(double a, double b) {
  double d = std::fabs(canonical_angle(a) - canonical_angle(b));
  return d > kPi ? kTwoPi - d : d;
}

}  // namespace qsc
