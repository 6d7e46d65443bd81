//---------------------------------------------------------------------------//
// Copyright 2026 the qbayes developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include "qbayes/laser.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qbayes/errors.hpp"

namespace qbayes::laser {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

using numerics::log_factorial;
using numerics::LogWeightedIntegrand;
using numerics::PeriodicGrid;
using numerics::two_pi;

double log_clamped(double v) { return v > 0.0 ? std::log(v) : neg_inf; }

//! Unnormalized log posterior integrand of the phase difference.
LogWeightedIntegrand history_integrand(const DetectionHistory& history,
                                       const BeamParams& params) {
  LogWeightedIntegrand integrand;
  for (const auto& event : history.events()) {
    const double t = event.time;
    if (event.m_c > 0) {
      integrand.log_terms.push_back(
          {static_cast<double>(event.m_c),
           [params, t](double phi) {
             return log_clamped(params.intensity_c(phi, t));
           }});
    }
    if (event.m_d > 0) {
      integrand.log_terms.push_back(
          {static_cast<double>(event.m_d),
           [params, t](double phi) {
             return log_clamped(params.intensity_d(phi, t));
           }});
    }
  }
  return integrand;
}

std::size_t round_up_power_of_two(std::size_t n) {
  std::size_t p = 8;
  while (p < n) {
    p <<= 1;
  }
  return p;
}

//! Grid on which the log integral of the integrand passes the doubling
//! self-check |1 - I(n)/I(2n)| <= 1e-10, starting from start_nodes.
PeriodicGrid converged_grid(const LogWeightedIntegrand& integrand,
                            std::size_t start_nodes) {
  PeriodicGrid grid(round_up_power_of_two(
      start_nodes == 0 ? PeriodicGrid::default_node_count : start_nodes));
  for (;;) {
    const double coarse = numerics::log_integrate(integrand, grid);
    if (2 * grid.node_count() > PeriodicGrid::max_node_count) {
      return grid;
    }
    PeriodicGrid fine = grid.doubled();
    const double refined = numerics::log_integrate(integrand, fine);
    if (std::fabs(1.0 - std::exp(coarse - refined)) <= 1e-10) {
      return fine;
    }
    grid = std::move(fine);
  }
}

PhasePosterior posterior_impl(const DetectionHistory& history,
                              const BeamParams& params,
                              std::size_t node_count) {
  const LogWeightedIntegrand integrand = history_integrand(history, params);
  PeriodicGrid grid = [&] {
    try {
      return converged_grid(integrand, node_count);
    } catch (const EvaluationError&) {
      throw ImpossibleConditioningEvent(
          "phase_posterior: history has zero probability for every phase");
    }
  }();
  const double log_norm = numerics::log_integrate(integrand, grid);
  PhasePosterior posterior{grid, std::vector<double>(grid.node_count())};
  for (std::size_t k = 0; k < grid.node_count(); ++k) {
    const double lv = integrand.log_at(grid.node(k));
    posterior.density[k] = lv == neg_inf ? 0.0 : std::exp(lv - log_norm);
  }
  return posterior;
}

//! Posterior for prediction: uniform phase prior when the history is empty.
PhasePosterior posterior_or_uniform(const DetectionHistory& history,
                                    const BeamParams& params) {
  if (history.empty()) {
    PeriodicGrid grid{};
    return PhasePosterior{grid, std::vector<double>(grid.node_count(),
                                                    1.0 / two_pi)};
  }
  return posterior_impl(history, params, 0);
}

std::uint64_t default_n_max(double mu) {
  return static_cast<std::uint64_t>(
      std::ceil(mu + 10.0 * std::sqrt(mu) + 20.0));
}

//! Tail mass P(X > n_max) of a Poisson with the given mean.
double poisson_tail(double mean, std::uint64_t n_max) {
  double pmf = std::exp(-mean);
  double cdf = pmf;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    pmf *= mean / static_cast<double>(n);
    cdf += pmf;
  }
  return std::max(0.0, 1.0 - cdf);
}

}  // namespace

void BeamParams::validate() const {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("BeamParams: amplitudes must be positive");
  }
  if (!(eta > 0.0) || eta > 1.0) {
    throw std::invalid_argument("BeamParams: eta must be in (0, 1]");
  }
  if (!std::isfinite(delta_omega)) {
    throw std::invalid_argument("BeamParams: delta_omega must be finite");
  }
}

DetectionHistory::DetectionHistory(std::vector<DetectionEvent> events)
    : events_(std::move(events)) {
  for (std::size_t i = 1; i < events_.size(); ++i) {
    if (!(events_[i].time > events_[i - 1].time)) {
      throw std::invalid_argument(
          "DetectionHistory: event times must strictly increase");
    }
  }
}

std::uint64_t DetectionHistory::total_counts() const {
  std::uint64_t t = 0;
  for (const auto& e : events_) {
    t += e.m_c + e.m_d;
  }
  return t;
}

std::uint64_t DetectionHistory::max_count() const {
  std::uint64_t m = 0;
  for (const auto& e : events_) {
    m = std::max({m, e.m_c, e.m_d});
  }
  return m;
}

double PhasePosterior::mass_near(double phi, double halfwidth) const {
  double mass = 0.0;
  for (std::size_t k = 0; k < grid.node_count(); ++k) {
    double d = std::fabs(std::remainder(grid.node(k) - phi, two_pi));
    if (d <= halfwidth) {
      mass += grid.spacing() * density[k];
    }
  }
  return mass;
}

double CountDistribution::mean() const {
  double m = 0.0;
  for (std::size_t n = 1; n < probabilities.size(); ++n) {
    m += static_cast<double>(n) * probabilities[n];
  }
  return m;
}

double CountDistribution::total() const {
  double t = 0.0;
  for (double p : probabilities) {
    t += p;
  }
  return t;
}

PhasePosterior phase_posterior(const DetectionHistory& history,
                               const BeamParams& params,
                               std::size_t node_count) {
  params.validate();
  if (history.empty()) {
    throw std::invalid_argument("phase_posterior: history must be nonempty");
  }
  return posterior_impl(history, params, node_count);
}

CountDistribution predict_counts(Detector detector, double at_time,
                                 const DetectionHistory& history,
                                 const BeamParams& params,
                                 std::uint64_t n_max) {
  params.validate();
  const PhasePosterior posterior = posterior_or_uniform(history, params);
  const double mu_max =
      params.eta * (params.mean_intensity() + params.interference_amplitude());
  if (n_max == 0) {
    n_max = default_n_max(mu_max);
  }
  CountDistribution dist;
  dist.probabilities.assign(n_max + 1, 0.0);
  const auto& grid = posterior.grid;
  for (std::size_t k = 0; k < grid.node_count(); ++k) {
    const double w = grid.spacing() * posterior.density[k];
    if (w == 0.0) {
      continue;
    }
    const double intensity = detector == Detector::C
                                 ? params.intensity_c(grid.node(k), at_time)
                                 : params.intensity_d(grid.node(k), at_time);
    const double mu = params.eta * std::max(0.0, intensity);
    // Poisson pmf recurrence in n, one pass per node.
    double pmf = std::exp(-mu);
    dist.probabilities[0] += w * pmf;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
      pmf *= mu / static_cast<double>(n);
      dist.probabilities[n] += w * pmf;
    }
  }
  dist.tail_bound = poisson_tail(mu_max, n_max);
  return dist;
}

double predict_joint(std::uint64_t n_c, std::uint64_t n_d, double at_time,
                     const DetectionHistory& history,
                     const BeamParams& params) {
  params.validate();
  const PhasePosterior posterior = posterior_or_uniform(history, params);
  const double log_eta = std::log(params.eta);
  const double log_prefactor =
      static_cast<double>(n_c + n_d) * log_eta - log_factorial(n_c) -
      log_factorial(n_d) -
      params.eta * (params.a * params.a + params.b * params.b);
  const auto& grid = posterior.grid;
  double acc = 0.0;
  for (std::size_t k = 0; k < grid.node_count(); ++k) {
    const double w = grid.spacing() * posterior.density[k];
    if (w == 0.0) {
      continue;
    }
    const double ic = std::max(0.0, params.intensity_c(grid.node(k), at_time));
    const double id = std::max(0.0, params.intensity_d(grid.node(k), at_time));
    double lv = 0.0;
    if (n_c > 0) {
      if (ic == 0.0) {
        continue;
      }
      lv += static_cast<double>(n_c) * std::log(ic);
    }
    if (n_d > 0) {
      if (id == 0.0) {
        continue;
      }
      lv += static_cast<double>(n_d) * std::log(id);
    }
    acc += w * std::exp(lv);
  }
  return std::exp(log_prefactor) * acc;
}

LowIntensityPair low_intensity_pair(const BeamParams& params) {
  params.validate();
  const double a2 = params.a * params.a;
  const double b2 = params.b * params.b;
  const double mean = (a2 + b2) / 2.0;
  const double cross = a2 * b2 / (a2 + b2);
  return {params.eta * (mean + cross), params.eta * (mean - cross)};
}

double asymptotic_phase(std::uint64_t m_c, std::uint64_t m_d,
                        const BeamParams& params) {
  params.validate();
  if (m_c + m_d == 0) {
    throw std::invalid_argument("asymptotic_phase: record must be nonempty");
  }
  const double asymmetry =
      (static_cast<double>(m_c) - static_cast<double>(m_d)) /
      static_cast<double>(m_c + m_d);
  const double cos_phi0 = asymmetry / params.fringe_visibility();
  if (std::fabs(cos_phi0) > 1.0) {
    throw FringeVisibilityViolation(
        "asymptotic_phase: count asymmetry " + std::to_string(asymmetry) +
        " exceeds the fringe visibility " +
        std::to_string(params.fringe_visibility()));
  }
  return cos_phi0;
}

double log_apriori_counts(std::uint64_t m_c, std::uint64_t m_d,
                          const BeamParams& params) {
  params.validate();
  LogWeightedIntegrand integrand;
  if (m_c > 0) {
    integrand.log_terms.push_back(
        {static_cast<double>(m_c), [params](double phi) {
           return log_clamped(params.intensity_c(phi, 0.0));
         }});
  }
  if (m_d > 0) {
    integrand.log_terms.push_back(
        {static_cast<double>(m_d), [params](double phi) {
           return log_clamped(params.intensity_d(phi, 0.0));
         }});
  }
  const PeriodicGrid grid = converged_grid(integrand, 0);
  const double log_integral = numerics::log_integrate(integrand, grid);
  return static_cast<double>(m_c + m_d) * std::log(params.eta) -
         log_factorial(m_c) - log_factorial(m_d) -
         params.eta * (params.a * params.a + params.b * params.b) +
         log_integral - std::log(two_pi);
}

double apriori_counts(std::uint64_t m_c, std::uint64_t m_d,
                      const BeamParams& params) {
  return std::exp(log_apriori_counts(m_c, m_d, params));
}

CountDistribution direct_count_distribution(Beam beam,
                                            const BeamParams& params,
                                            std::uint64_t n_max) {
  params.validate();
  const double amp = beam == Beam::A ? params.a : params.b;
  const double mean = params.eta * amp * amp;
  if (n_max == 0) {
    n_max = default_n_max(mean);
  }
  CountDistribution dist;
  dist.probabilities.resize(n_max + 1);
  double pmf = std::exp(-mean);
  dist.probabilities[0] = pmf;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    pmf *= mean / static_cast<double>(n);
    dist.probabilities[n] = pmf;
  }
  dist.tail_bound = poisson_tail(mean, n_max);
  return dist;
}

}  // namespace qbayes::laser
