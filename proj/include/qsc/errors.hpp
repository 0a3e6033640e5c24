// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace qsc {

/// Thrown when a caller-supplied parameter violates a documented precondition.
class InvalidParameter : public std::invalid_argument {
 public:
  explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

/// Thrown when an internal numerical consistency check fails, e.g. a Gram
/// matrix whose spectrum dips materially below zero.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qsc
