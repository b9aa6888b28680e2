// spincouple: exact arithmetic for spin-orbit coupling coefficients
// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace spincouple {

/// Inputs name a case outside the closed-form catalogs.
class UnsupportedCaseError : public std::invalid_argument {
public:
  explicit UnsupportedCaseError(const std::string& what_arg)
      : std::invalid_argument(what_arg) {}
};

/// Division that would leave the ring of rational combinations of square roots.
class UnsupportedDivisorError : public std::invalid_argument {
public:
  explicit UnsupportedDivisorError(const std::string& what_arg)
      : std::invalid_argument(what_arg) {}
};

/// A coefficient whose defining ratio has a vanishing denominator.
class UndefinedCoefficientError : public std::invalid_argument {
public:
  explicit UndefinedCoefficientError(const std::string& what_arg)
      : std::invalid_argument(what_arg) {}
};

/// Quantum numbers outside the physical domain of an operation.
class InvalidQuantumNumbersError : public std::invalid_argument {
public:
  explicit InvalidQuantumNumbersError(const std::string& what_arg)
      : std::invalid_argument(what_arg) {}
};

}  // namespace spincouple
