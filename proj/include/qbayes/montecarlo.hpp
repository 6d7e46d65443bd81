//---------------------------------------------------------------------------//
// Copyright 2026 the qbayes developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qbayes/laser.hpp"
#include "qbayes/prior.hpp"
#include "qbayes/spin.hpp"

namespace qbayes::mc {

/*!
 * Reproducible random stream: xoshiro256++ seeded through splitmix64
 * from (seed, stream id). Identical (seed, stream id) reproduces
 * identical draws bit for bit on any platform and thread count.
 */
class SeededStream {
 public:
  SeededStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64();
  //! Uniform double in [0, 1) with 53 random bits.
  double next_unit();
  //! Independent stream derived from this stream's identity.
  SeededStream substream(std::uint64_t id) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::array<std::uint64_t, 4> state_;
};

//! Poisson draw: pmf inversion for mean < 10, PTRS transformed
//! rejection above.
std::uint64_t sample_poisson(double mean, SeededStream& stream);

//! Binomial draw by pmf inversion.
std::uint64_t sample_binomial(std::uint64_t n, double p, SeededStream& stream);

//! Draw a Bloch vector from the prior. Surface: uniform cos(theta) and
//! azimuth; ball: rejection from the cube; tabulated: inverse CDF over
//! grid cells with a uniform point inside the chosen cell.
BlochVector sample_bloch(const BlochPrior& prior, SeededStream& stream);

//! Measurement counts per axis (x, y, z).
using MeasurementPlan = std::array<std::uint64_t, 3>;

//! Born-rule sampling: each axis draws a binomial with success
//! probability (1 + component)/2.
spin::SpinRecord simulate_spin_record(const BlochVector& v,
                                      const MeasurementPlan& plan,
                                      SeededStream& stream);

//! Independent Poisson counts per event with means eta*I_c and eta*I_d.
laser::DetectionHistory simulate_detections(double phi,
                                            const laser::BeamParams& params,
                                            const std::vector<double>& times,
                                            SeededStream& stream);

struct EmpiricalEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t sample_count = 0;  // replicas whose past matched
};

//! Rejection-conditioned estimate of P(future record | past record).
struct SpinConditionalCase {
  BlochPrior prior = BlochPrior::uniform_sphere_surface();
  spin::SpinRecord past;
  spin::SpinRecord future;
};

//! Rejection-conditioned estimate for the laser setup. The past is a
//! fixed list of (time, m_c, m_d) events; the future queries one more
//! package at future_time.
struct LaserConditionalCase {
  enum class Query { Joint, MarginalC, MarginalD };

  laser::BeamParams params;
  std::vector<laser::DetectionEvent> past;
  double future_time = 0.0;
  Query query = Query::Joint;
  std::uint64_t n_c = 0;
  std::uint64_t n_d = 0;
};

//! Throws std::invalid_argument when replicas < 10^4 and
//! EvaluationError("conditioning event never sampled") when no replica
//! reproduces the past.
EmpiricalEstimate estimate_conditional(const SpinConditionalCase& cond,
                                       std::uint64_t replicas,
                                       SeededStream& stream);
EmpiricalEstimate estimate_conditional(const LaserConditionalCase& cond,
                                       std::uint64_t replicas,
                                       SeededStream& stream);

}  // namespace qbayes::mc
