//---------------------------------------------------------------------------//
// Copyright 2026 the qbayes developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include "qbayes/verify.hpp"

#include <cmath>
#include <vector>

#include <nlohmann/json.hpp>

#include "qbayes/laser.hpp"
#include "qbayes/montecarlo.hpp"
#include "qbayes/numerics.hpp"
#include "qbayes/oracle.hpp"
#include "qbayes/spin.hpp"

namespace qbayes::verify {

namespace {

CaseResult mc_case(std::string name, double analytic,
                   const mc::EmpiricalEstimate& est) {
  CaseResult result;
  result.name = std::move(name);
  result.analytic = analytic;
  result.empirical = est.estimate;
  result.std_error = est.std_error;
  result.pass =
      std::fabs(est.estimate - analytic) <= 3.0 * est.std_error + 1e-12;
  return result;
}

spin::SpinRecord make_record(std::uint64_t x_plus, std::uint64_t x_minus,
                             std::uint64_t y_plus = 0,
                             std::uint64_t y_minus = 0,
                             std::uint64_t z_plus = 0,
                             std::uint64_t z_minus = 0) {
  spin::SpinRecord r;
  r.counts[0] = {x_plus, x_minus};
  r.counts[1] = {y_plus, y_minus};
  r.counts[2] = {z_plus, z_minus};
  return r;
}

}  // namespace

std::vector<CaseResult> run_spin_suite(std::uint64_t replicas,
                                       std::uint64_t seed) {
  std::vector<CaseResult> results;
  const auto sphere = BlochPrior::uniform_sphere_surface();
  const auto ball = BlochPrior::uniform_ball();
  std::uint64_t stream_id = 0;

  auto run = [&](std::string name, const BlochPrior& prior,
                 spin::SpinRecord past, spin::SpinRecord future) {
    mc::SpinConditionalCase cond{prior, past, future};
    mc::SeededStream stream(seed, stream_id++);
    const double analytic = spin::conditional_record(future, past, prior);
    results.push_back(
        mc_case(std::move(name), analytic,
                mc::estimate_conditional(cond, replicas, stream)));
  };

  run("spin/repeat-x-1-1", sphere, make_record(1, 0), make_record(1, 0));
  run("spin/cond-x-21-11", sphere, make_record(2, 1), make_record(1, 1));
  run("spin/record-x-21", sphere, make_record(0, 0), make_record(2, 1));
  run("spin/mixed-record-xy", sphere, make_record(0, 0),
      make_record(1, 0, 1, 0));
  run("spin/ball-repeat-x-1-1", ball, make_record(1, 0), make_record(1, 0));
  run("spin/repeat-z-1-2", sphere, make_record(0, 0, 0, 0, 2, 0),
      make_record(0, 0, 0, 0, 1, 0));
  return results;
}

std::vector<CaseResult> run_laser_suite(std::uint64_t replicas,
                                        std::uint64_t seed) {
  std::vector<CaseResult> results;
  std::uint64_t stream_id = 1000;

  auto run = [&](std::string name, double analytic,
                 const mc::LaserConditionalCase& cond) {
    mc::SeededStream stream(seed, stream_id++);
    results.push_back(
        mc_case(std::move(name), analytic,
                mc::estimate_conditional(cond, replicas, stream)));
  };

  {
    // One photon at c, then another package: the 3-to-1 ratio regime.
    laser::BeamParams params{1.0, 1.0, 0.05, 0.0};
    laser::DetectionHistory past({{0.0, 1, 0}});
    mc::LaserConditionalCase cond;
    cond.params = params;
    cond.past = past.events();
    cond.query = mc::LaserConditionalCase::Query::Joint;
    cond.n_c = 1;
    cond.n_d = 0;
    run("laser/p-cc", laser::predict_joint(1, 0, 0.0, past, params), cond);
    cond.n_c = 0;
    cond.n_d = 1;
    run("laser/p-dc", laser::predict_joint(0, 1, 0.0, past, params), cond);
  }
  {
    laser::BeamParams params{1.0, 1.0, 0.1, 0.0};
    laser::DetectionHistory empty;
    mc::LaserConditionalCase cond;
    cond.params = params;
    cond.query = mc::LaserConditionalCase::Query::MarginalC;
    cond.n_c = 0;
    run("laser/empty-p0",
        laser::predict_counts(laser::Detector::C, 0.0, empty, params)
            .probabilities[0],
        cond);
  }
  {
    laser::BeamParams params{1.0, 1.0, 0.3, 0.0};
    laser::DetectionHistory past({{0.0, 1, 0}});
    mc::LaserConditionalCase cond;
    cond.params = params;
    cond.past = past.events();
    cond.query = mc::LaserConditionalCase::Query::MarginalC;
    cond.n_c = 1;
    run("laser/cond-count",
        laser::predict_counts(laser::Detector::C, 0.0, past, params)
            .probabilities[1],
        cond);
  }
  {
    // Different frequencies: predict a quarter beat period later.
    laser::BeamParams params{1.0, 1.0, 0.2, 1.0};
    const double t1 = numerics::two_pi / 4.0;
    laser::DetectionHistory past({{0.0, 2, 0}});
    mc::LaserConditionalCase cond;
    cond.params = params;
    cond.past = past.events();
    cond.future_time = t1;
    cond.query = mc::LaserConditionalCase::Query::MarginalC;
    cond.n_c = 0;
    run("laser/beat-quarter",
        laser::predict_counts(laser::Detector::C, t1, past, params)
            .probabilities[0],
        cond);
  }
  {
    laser::BeamParams params{1.0, 1.0, 1.0, 0.0};
    mc::LaserConditionalCase cond;
    cond.params = params;
    cond.query = mc::LaserConditionalCase::Query::Joint;
    cond.n_c = 1;
    cond.n_d = 0;
    run("laser/apriori-10", laser::apriori_counts(1, 0, params), cond);
  }
  {
    laser::BeamParams params{1.0, 1.0, 0.5, 0.0};
    mc::LaserConditionalCase cond;
    cond.params = params;
    cond.query = mc::LaserConditionalCase::Query::Joint;
    cond.n_c = 0;
    cond.n_d = 0;
    run("laser/apriori-00", laser::apriori_counts(0, 0, params), cond);
  }
  {
    // Direct beam measurement: Poisson with mean eta a^2 = 1.
    laser::BeamParams params{1.0, 0.5, 1.0, 0.0};
    const auto dist =
        laser::direct_count_distribution(laser::Beam::A, params);
    mc::SeededStream stream(seed, stream_id++);
    std::uint64_t hits = 0;
    for (std::uint64_t r = 0; r < replicas; ++r) {
      mc::SeededStream sub = stream.substream(r);
      if (mc::sample_poisson(params.eta * params.a * params.a, sub) == 1) {
        ++hits;
      }
    }
    mc::EmpiricalEstimate est;
    est.sample_count = replicas;
    est.estimate = static_cast<double>(hits) / static_cast<double>(replicas);
    est.std_error = std::sqrt(est.estimate * (1.0 - est.estimate) /
                              static_cast<double>(replicas));
    results.push_back(
        mc_case("laser/direct-p1", dist.probabilities[1], est));
  }
  return results;
}

std::vector<CaseResult> run_oracle_suite() {
  constexpr double tol = 1e-10;
  std::vector<CaseResult> results;
  const auto sphere = BlochPrior::uniform_sphere_surface();

  auto oracle_case = [&](std::string name, double reference, double value) {
    CaseResult result;
    result.name = std::move(name);
    result.analytic = reference;
    result.empirical = value;
    result.std_error = tol / 3.0;
    result.pass = std::fabs(value - reference) <= tol;
    results.push_back(std::move(result));
  };

  // All single-axis records with at most 6 total measurements. The
  // oracle scores one ordered outcome sequence; dividing the closed
  // form by the future multinomial factor matches conventions.
  for (spin::Axis axis : {spin::Axis::X, spin::Axis::Y, spin::Axis::Z}) {
    for (unsigned total = 1; total <= 6; ++total) {
      for (unsigned m = 0; m <= total; ++m) {
        const unsigned n = total - m;
        for (unsigned mp = 0; mp <= m; ++mp) {
          for (unsigned np = 0; np <= n; ++np) {
            std::vector<oracle::MeasurementEvent> past;
            std::vector<oracle::MeasurementEvent> future;
            std::size_t qubit = 0;
            for (unsigned i = 0; i < m; ++i) {
              past.push_back({qubit++, axis, i < mp ? +1 : -1});
            }
            for (unsigned i = 0; i < n; ++i) {
              future.push_back({qubit++, axis, i < np ? +1 : -1});
            }
            const double traced =
                oracle::bayes_conditional(sphere, total, past, future);
            const double multinomial =
                std::exp(numerics::log_factorial(n) -
                         numerics::log_factorial(np) -
                         numerics::log_factorial(n - np));
            const double closed =
                spin::exact_single_axis(np, n - np, mp, m - mp) / multinomial;
            char name[64];
            std::snprintf(name, sizeof(name), "oracle/%c-m%u+%u-n%u+%u",
                          "xyz"[static_cast<int>(axis)], mp, m - mp, np,
                          n - np);
            oracle_case(name, closed, traced);
          }
        }
      }
    }
  }

  // Mixed-axis cross-check of the quadrature path on two qubits.
  {
    std::vector<oracle::MeasurementEvent> future = {
        {0, spin::Axis::X, +1}, {1, spin::Axis::Y, +1}};
    const double traced = oracle::bayes_conditional(sphere, 2, {}, future);
    spin::SpinRecord record;
    record.counts[0] = {1, 0};
    record.counts[1] = {1, 0};
    oracle_case("oracle/mixed-xy", spin::record_probability(record, sphere),
                traced);
  }
  return results;
}

bool all_pass(const std::vector<CaseResult>& results) {
  for (const auto& r : results) {
    if (!r.pass) {
      return false;
    }
  }
  return true;
}

nlohmann::json to_json(const std::vector<CaseResult>& results) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : results) {
    j.push_back({{"case", r.name},
                 {"analytic", r.analytic},
                 {"empirical", r.empirical},
                 {"stderr", r.std_error},
                 {"pass", r.pass}});
  }
  return j;
}

}  // namespace qbayes::verify
