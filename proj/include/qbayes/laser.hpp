//---------------------------------------------------------------------------//
// Copyright 2026 the qbayes developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "qbayes/numerics.hpp"

namespace qbayes::laser {

/*!
 * Two coherent beams with real amplitudes a and b mixed on a lossless
 * 50/50 splitter, measured by photodetectors of equal efficiency. The
 * detection window is absorbed into eta. delta_omega is the frequency
 * difference of the two lasers.
 */
struct BeamParams {
  double a = 1.0;
  double b = 1.0;
  double eta = 1.0;
  double delta_omega = 0.0;

  void validate() const;

  double mean_intensity() const { return (a * a + b * b) / 2.0; }
  double interference_amplitude() const { return a * b; }
  //! Maximum attainable count asymmetry 2ab/(a^2+b^2).
  double fringe_visibility() const {
    return 2.0 * a * b / (a * a + b * b);
  }
  //! Mean photon flux at detector c for phase difference phi at time t.
  double intensity_c(double phi, double t) const {
    return mean_intensity() +
           interference_amplitude() * std::cos(phi - delta_omega * t);
  }
  double intensity_d(double phi, double t) const {
    return mean_intensity() -
           interference_amplitude() * std::cos(phi - delta_omega * t);
  }
};

struct DetectionEvent {
  double time = 0.0;
  std::uint64_t m_c = 0;
  std::uint64_t m_d = 0;
};

//! Time-ordered photon-count record; one event per package.
class DetectionHistory {
 public:
  DetectionHistory() = default;
  //! Throws std::invalid_argument unless times strictly increase.
  explicit DetectionHistory(std::vector<DetectionEvent> events);

  const std::vector<DetectionEvent>& events() const { return events_; }
  bool empty() const { return events_.empty(); }
  std::uint64_t total_counts() const;
  std::uint64_t max_count() const;

 private:
  std::vector<DetectionEvent> events_;
};

//! Normalized density over the phase difference on a periodic grid;
//! trapezoid integral equals 1.
struct PhasePosterior {
  numerics::PeriodicGrid grid;
  std::vector<double> density;

  //! Posterior mass within +-halfwidth of the angle phi (mod 2pi).
  double mass_near(double phi, double halfwidth) const;
};

struct CountDistribution {
  std::vector<double> probabilities;  // index = photon count
  double tail_bound = 0.0;

  double mean() const;
  double total() const;
};

enum class Detector { C, D };
enum class Beam { A, B };

/*!
 * Posterior density of the phase difference given the detection
 * history: product over events of I_c^{m_c} I_d^{m_d} at the event
 * times, normalized. Node count auto-doubles from the default (or the
 * override) until the grid-doubling self-check passes.
 */
PhasePosterior phase_posterior(const DetectionHistory& history,
                               const BeamParams& params,
                               std::size_t node_count = 0);

/*!
 * Predictive distribution of the photon count at one detector at the
 * given time: the phase posterior integrated against the Poissonian
 * count kernel. n_max = 0 selects ceil(mu + 10 sqrt(mu) + 20) with mu
 * the maximum mean count; the tail bound is the tail of the dominating
 * Poisson. An empty history uses the uniform phase prior.
 */
CountDistribution predict_counts(Detector detector, double at_time,
                                 const DetectionHistory& history,
                                 const BeamParams& params,
                                 std::uint64_t n_max = 0);

//! Joint predictive probability of n_c counts at c and n_d at d in one
//! future package at the given time.
double predict_joint(std::uint64_t n_c, std::uint64_t n_d, double at_time,
                     const DetectionHistory& history, const BeamParams& params);

struct LowIntensityPair {
  double p_cc;  // P(1,0 | 1,0)
  double p_dc;  // P(0,1 | 1,0)
};

//! First-order (low intensity) probabilities of a second detection at c
//! or d after one detection at c. Valid when eta*(a^2+b^2)/2 << 1; the
//! formulas are computed regardless.
LowIntensityPair low_intensity_pair(const BeamParams& params);

//! cos(phi_0) inferred from a large count record:
//! ((a^2+b^2)/(2ab)) (m_c - m_d)/(m_c + m_d). Throws
//! FringeVisibilityViolation when the result exceeds 1 in magnitude.
double asymptotic_phase(std::uint64_t m_c, std::uint64_t m_d,
                        const BeamParams& params);

//! A-priori probability of detecting (m_c, m_d) photons in one package.
double apriori_counts(std::uint64_t m_c, std::uint64_t m_d,
                      const BeamParams& params);
//! Same, in log space (usable when the probability underflows).
double log_apriori_counts(std::uint64_t m_c, std::uint64_t m_d,
                          const BeamParams& params);

//! Counts from one beam measured directly (no splitter): Poisson with
//! mean eta a^2 or eta b^2.
CountDistribution direct_count_distribution(Beam beam,
                                            const BeamParams& params,
                                            std::uint64_t n_max = 0);

}  // namespace qbayes::laser
