//---------------------------------------------------------------------------//
// Copyright 2026 the qbayes developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace qbayes::verify {

struct CaseResult {
  std::string name;
  double analytic = 0.0;
  double empirical = 0.0;
  double std_error = 0.0;  // for oracle cases: tolerance / 3
  bool pass = false;
};

//! Monte Carlo verification of the spin closed forms at 3 sigma.
std::vector<CaseResult> run_spin_suite(std::uint64_t replicas,
                                       std::uint64_t seed);
//! Monte Carlo verification of the laser predictive probabilities.
std::vector<CaseResult> run_laser_suite(std::uint64_t replicas,
                                        std::uint64_t seed);
//! Operator-trace oracle against the closed forms; deterministic,
//! tolerance 1e-10.
std::vector<CaseResult> run_oracle_suite();

bool all_pass(const std::vector<CaseResult>& results);
nlohmann::json to_json(const std::vector<CaseResult>& results);

}  // namespace qbayes::verify
