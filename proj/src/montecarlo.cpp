//---------------------------------------------------------------------------//
// Copyright 2026 the qbayes developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include "qbayes/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qbayes/errors.hpp"
#include "qbayes/numerics.hpp"

namespace qbayes::mc {

namespace {

using numerics::log_factorial;
using numerics::two_pi;

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

double bernoulli_std_error(double p, std::uint64_t n) {
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

}  // namespace

SeededStream::SeededStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  std::uint64_t s = seed ^ rotl(stream_id, 32) ^ 0xA3C59AC2F0EA1B57ULL;
  for (auto& word : state_) {
    word = splitmix64(s);
  }
}

std::uint64_t SeededStream::next_u64() {
  // xoshiro256++
  const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double SeededStream::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

SeededStream SeededStream::substream(std::uint64_t id) const {
  std::uint64_t s = stream_id_ ^ (id * 0x9E3779B97F4A7C15ULL);
  return SeededStream(seed_, splitmix64(s));
}

std::uint64_t sample_poisson(double mean, SeededStream& stream) {
  if (!(mean >= 0.0)) {
    throw std::invalid_argument("sample_poisson: mean must be >= 0");
  }
  if (mean == 0.0) {
    return 0;
  }
  if (mean < 10.0) {
    // pmf inversion from zero
    const double u = stream.next_unit();
    double pmf = std::exp(-mean);
    double cdf = pmf;
    std::uint64_t k = 0;
    while (cdf < u && k < 2000) {
      ++k;
      pmf *= mean / static_cast<double>(k);
      cdf += pmf;
    }
    return k;
  }
  // PTRS transformed rejection (Hoermann 1993).
  const double smu = std::sqrt(mean);
  const double b = 0.931 + 2.53 * smu;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);
  for (;;) {
    const double u = stream.next_unit() - 0.5;
    const double v = stream.next_unit();
    const double us = 0.5 - std::fabs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) {
      return static_cast<std::uint64_t>(kf);
    }
    if (kf < 0.0 || (us < 0.013 && v > us)) {
      continue;
    }
    const double k = kf;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * log_mean - mean - std::lgamma(k + 1.0)) {
      return static_cast<std::uint64_t>(kf);
    }
  }
}

std::uint64_t sample_binomial(std::uint64_t n, double p, SeededStream& stream) {
  if (!(p >= 0.0) || p > 1.0) {
    throw std::invalid_argument("sample_binomial: p must be in [0, 1]");
  }
  if (n == 0 || p == 0.0) {
    return 0;
  }
  if (p == 1.0) {
    return n;
  }
  // Mode-centered pmf inversion: enumerate k in the fixed order
  // mode, mode+1, mode-1, mode+2, ... accumulating mass until the
  // uniform draw is covered. Avoids the underflow of the (1-p)^n start.
  const double u = stream.next_unit();
  const auto log_pmf = [&](std::uint64_t k) {
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k) +
           static_cast<double>(k) * std::log(p) +
           static_cast<double>(n - k) * std::log1p(-p);
  };
  const std::uint64_t mode = std::min<std::uint64_t>(
      n, static_cast<std::uint64_t>(static_cast<double>(n + 1) * p));
  double cdf = 0.0;
  std::uint64_t lo = mode;
  std::uint64_t hi = mode;
  bool lo_done = false;
  bool hi_done = false;
  cdf += std::exp(log_pmf(mode));
  if (cdf >= u) {
    return mode;
  }
  for (;;) {
    if (!hi_done) {
      if (hi < n) {
        ++hi;
        cdf += std::exp(log_pmf(hi));
        if (cdf >= u) {
          return hi;
        }
      } else {
        hi_done = true;
      }
    }
    if (!lo_done) {
      if (lo > 0) {
        --lo;
        cdf += std::exp(log_pmf(lo));
        if (cdf >= u) {
          return lo;
        }
      } else {
        lo_done = true;
      }
    }
    if (lo_done && hi_done) {
      // Residual mass is rounding error; return the mode.
      return mode;
    }
  }
}

BlochVector sample_bloch(const BlochPrior& prior, SeededStream& stream) {
  switch (prior.kind()) {
    case BlochPrior::Kind::UniformSphereSurface: {
      const double c = 2.0 * stream.next_unit() - 1.0;
      const double az = two_pi * stream.next_unit();
      const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
      return {s * std::cos(az), s * std::sin(az), c};
    }
    case BlochPrior::Kind::UniformBall: {
      for (;;) {
        const double x = 2.0 * stream.next_unit() - 1.0;
        const double y = 2.0 * stream.next_unit() - 1.0;
        const double z = 2.0 * stream.next_unit() - 1.0;
        if (x * x + y * y + z * z <= 1.0) {
          return {x, y, z};
        }
      }
    }
    case BlochPrior::Kind::Tabulated: {
      const TabulatedPrior& table = prior.table();
      double total = 0.0;
      std::vector<double> cdf(table.size());
      std::size_t idx = 0;
      for (std::size_t i = 0; i < table.n_cos; ++i) {
        for (std::size_t j = 0; j < table.n_azimuth; ++j) {
          for (std::size_t k = 0; k < table.n_radius; ++k, ++idx) {
            total += table.density[idx] * table.cell_volume(k);
            cdf[idx] = total;
          }
        }
      }
      const double u = stream.next_unit() * total;
      const std::size_t cell = static_cast<std::size_t>(
          std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      const std::size_t k = cell % table.n_radius;
      const std::size_t j = (cell / table.n_radius) % table.n_azimuth;
      const std::size_t i = cell / (table.n_radius * table.n_azimuth);
      const double dc = 2.0 / static_cast<double>(table.n_cos);
      const double daz = two_pi / static_cast<double>(table.n_azimuth);
      const double dr = 1.0 / static_cast<double>(table.n_radius);
      const double c =
          table.cos_theta(i) + (stream.next_unit() - 0.5) * dc;
      const double az = table.azimuth(j) + (stream.next_unit() - 0.5) * daz;
      // radius pdf inside the cell is proportional to r^2
      const double r0 = table.radius(k) - dr / 2.0;
      const double r1 = r0 + dr;
      const double r = std::cbrt(r0 * r0 * r0 +
                                 stream.next_unit() *
                                     (r1 * r1 * r1 - r0 * r0 * r0));
      const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
      return {r * s * std::cos(az), r * s * std::sin(az), r * c};
    }
  }
  throw std::logic_error("sample_bloch: unreachable");
}

spin::SpinRecord simulate_spin_record(const BlochVector& v,
                                      const MeasurementPlan& plan,
                                      SeededStream& stream) {
  const double comps[3] = {v.x, v.y, v.z};
  spin::SpinRecord record;
  for (int a = 0; a < 3; ++a) {
    const double p = std::clamp((1.0 + comps[a]) / 2.0, 0.0, 1.0);
    const std::uint64_t up = sample_binomial(plan[a], p, stream);
    record.counts[a][0] = up;
    record.counts[a][1] = plan[a] - up;
  }
  return record;
}

laser::DetectionHistory simulate_detections(double phi,
                                            const laser::BeamParams& params,
                                            const std::vector<double>& times,
                                            SeededStream& stream) {
  std::vector<laser::DetectionEvent> events;
  events.reserve(times.size());
  for (double t : times) {
    const double mu_c = params.eta * std::max(0.0, params.intensity_c(phi, t));
    const double mu_d = params.eta * std::max(0.0, params.intensity_d(phi, t));
    events.push_back({t, sample_poisson(mu_c, stream),
                      sample_poisson(mu_d, stream)});
  }
  return laser::DetectionHistory(std::move(events));
}

namespace {

void check_replicas(std::uint64_t replicas) {
  if (replicas < 10'000) {
    throw std::invalid_argument(
        "estimate_conditional: at least 10^4 replicas required");
  }
}

EmpiricalEstimate tally(std::uint64_t hits, std::uint64_t accepted) {
  if (accepted == 0) {
    throw EvaluationError(
        "estimate_conditional: conditioning event never sampled");
  }
  EmpiricalEstimate est;
  est.sample_count = accepted;
  est.estimate = static_cast<double>(hits) / static_cast<double>(accepted);
  est.std_error = bernoulli_std_error(est.estimate, accepted);
  return est;
}

}  // namespace

EmpiricalEstimate estimate_conditional(const SpinConditionalCase& cond,
                                       std::uint64_t replicas,
                                       SeededStream& stream) {
  check_replicas(replicas);
  MeasurementPlan past_plan{};
  MeasurementPlan future_plan{};
  for (int a = 0; a < 3; ++a) {
    past_plan[a] = cond.past.counts[a][0] + cond.past.counts[a][1];
    future_plan[a] = cond.future.counts[a][0] + cond.future.counts[a][1];
  }
  std::uint64_t accepted = 0;
  std::uint64_t hits = 0;
  for (std::uint64_t r = 0; r < replicas; ++r) {
    SeededStream sub = stream.substream(r);
    const BlochVector v = sample_bloch(cond.prior, sub);
    if (simulate_spin_record(v, past_plan, sub) != cond.past) {
      continue;
    }
    ++accepted;
    if (simulate_spin_record(v, future_plan, sub) == cond.future) {
      ++hits;
    }
  }
  return tally(hits, accepted);
}

EmpiricalEstimate estimate_conditional(const LaserConditionalCase& cond,
                                       std::uint64_t replicas,
                                       SeededStream& stream) {
  check_replicas(replicas);
  cond.params.validate();
  std::uint64_t accepted = 0;
  std::uint64_t hits = 0;
  for (std::uint64_t r = 0; r < replicas; ++r) {
    SeededStream sub = stream.substream(r);
    const double phi = two_pi * sub.next_unit();
    bool match = true;
    for (const auto& event : cond.past) {
      const double mu_c =
          cond.params.eta *
          std::max(0.0, cond.params.intensity_c(phi, event.time));
      const double mu_d =
          cond.params.eta *
          std::max(0.0, cond.params.intensity_d(phi, event.time));
      const std::uint64_t m_c = sample_poisson(mu_c, sub);
      const std::uint64_t m_d = sample_poisson(mu_d, sub);
      if (m_c != event.m_c || m_d != event.m_d) {
        match = false;
        break;
      }
    }
    if (!match) {
      continue;
    }
    ++accepted;
    const double mu_c =
        cond.params.eta *
        std::max(0.0, cond.params.intensity_c(phi, cond.future_time));
    const double mu_d =
        cond.params.eta *
        std::max(0.0, cond.params.intensity_d(phi, cond.future_time));
    const std::uint64_t n_c = sample_poisson(mu_c, sub);
    const std::uint64_t n_d = sample_poisson(mu_d, sub);
    bool hit = false;
    switch (cond.query) {
      case LaserConditionalCase::Query::Joint:
        hit = n_c == cond.n_c && n_d == cond.n_d;
        break;
      case LaserConditionalCase::Query::MarginalC:
        hit = n_c == cond.n_c;
        break;
      case LaserConditionalCase::Query::MarginalD:
        hit = n_d == cond.n_d;
        break;
    }
    if (hit) {
      ++hits;
    }
  }
  return tally(hits, accepted);
}

}  // namespace qbayes::mc
