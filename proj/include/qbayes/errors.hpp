//---------------------------------------------------------------------------//
// Copyright 2026 the qbayes developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <stdexcept>
#include <string>

namespace qbayes {

// Non-finite integrand value, zero integrand, or similar numerical failure.
class EvaluationError : public std::runtime_error {
 public:
  explicit EvaluationError(const std::string& what) : std::runtime_error(what) {}
};

// Conditioning on an event that has zero probability under the prior.
class ImpossibleConditioningEvent : public std::runtime_error {
 public:
  explicit ImpossibleConditioningEvent(const std::string& what)
      : std::runtime_error(what) {}
};

// Count asymmetry exceeding the attainable fringe visibility 2ab/(a^2+b^2).
class FringeVisibilityViolation : public std::domain_error {
 public:
  explicit FringeVisibilityViolation(const std::string& what)
      : std::domain_error(what) {}
};

// Request above a hard resource cap (e.g. tensor dimension).
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qbayes
