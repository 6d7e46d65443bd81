//---------------------------------------------------------------------------//
// Copyright 2026 the qbayes developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include "qbayes/spin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qbayes/errors.hpp"
#include "qbayes/numerics.hpp"

namespace qbayes::spin {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

using numerics::gauss_legendre_rule;
using numerics::log_factorial;
using numerics::two_pi;

std::size_t sign_index(int sign) {
  if (sign != +1 && sign != -1) {
    throw std::invalid_argument("SpinRecord: sign must be +1 or -1");
  }
  return sign == +1 ? 0 : 1;
}

//! log of prod_axis C(c+ + c-, c+)
double log_multinomial_prefactor(const SpinRecord& record) {
  double acc = 0.0;
  for (const auto& axis : record.counts) {
    acc += log_factorial(axis[0] + axis[1]) - log_factorial(axis[0]) -
           log_factorial(axis[1]);
  }
  return acc;
}

//! log of sum_i exp(L_i), -inf if all terms are -inf.
double log_sum_exp(const std::vector<double>& logs) {
  double max_log = neg_inf;
  for (double v : logs) {
    max_log = std::max(max_log, v);
  }
  if (max_log == neg_inf) {
    return neg_inf;
  }
  double sum = 0.0;
  for (double v : logs) {
    if (v != neg_inf) {
      sum += std::exp(v - max_log);
    }
  }
  return max_log + std::log(sum);
}

//! log of prod_axis ((1+comp)/2)^{c+} ((1-comp)/2)^{c-} at Bloch point v.
double log_likelihood(const SpinRecord& record, const BlochVector& v) {
  const double comps[3] = {v.x, v.y, v.z};
  double acc = 0.0;
  for (int a = 0; a < 3; ++a) {
    const auto& c = record.counts[a];
    if (c[0] > 0) {
      const double up = (1.0 + comps[a]) / 2.0;
      if (up <= 0.0) {
        return neg_inf;
      }
      acc += static_cast<double>(c[0]) * std::log(up);
    }
    if (c[1] > 0) {
      const double down = (1.0 - comps[a]) / 2.0;
      if (down <= 0.0) {
        return neg_inf;
      }
      acc += static_cast<double>(c[1]) * std::log(down);
    }
  }
  return acc;
}

//! Single-axis integral over [-1,1] of ((1+t)/2)^p ((1-t)/2)^q against
//! the prior's marginal in that component. Polynomial-exact.
double log_integral_single_axis(std::uint64_t p, std::uint64_t q,
                                BlochPrior::Kind kind) {
  const unsigned order = static_cast<unsigned>((p + q) / 2 + 3);
  const auto& rule = gauss_legendre_rule(order);
  std::vector<double> logs(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = rule.nodes[i];
    // Marginal of one Bloch component: 1/2 on the sphere surface,
    // 3(1-t^2)/4 on the uniform ball.
    const double marginal = kind == BlochPrior::Kind::UniformSphereSurface
                                ? 0.5
                                : 0.75 * (1.0 - t * t);
    double lv = std::log(rule.weights[i] * marginal);
    if (p > 0) {
      lv += static_cast<double>(p) * std::log((1.0 + t) / 2.0);
    }
    if (q > 0) {
      lv += static_cast<double>(q) * std::log((1.0 - t) / 2.0);
    }
    logs[i] = lv;
  }
  return log_sum_exp(logs);
}

struct WeightedNode {
  BlochVector point;
  double weight;     // quadrature measure including prior density
};

//! Quadrature nodes covering the prior's support; weights integrate the
//! prior density itself to 1.
std::vector<WeightedNode> prior_nodes(const BlochPrior& prior,
                                      std::uint64_t total_counts) {
  std::vector<WeightedNode> out;
  const unsigned order =
      std::max<unsigned>(static_cast<unsigned>(total_counts) + 2, 16);
  const std::size_t n_az =
      std::max<std::size_t>(2 * static_cast<std::size_t>(total_counts) + 8, 16);
  switch (prior.kind()) {
    case BlochPrior::Kind::UniformSphereSurface: {
      const auto& rule = gauss_legendre_rule(order);
      out.reserve(rule.nodes.size() * n_az);
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double c = rule.nodes[i];
        const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        const double w = rule.weights[i] / 2.0 / static_cast<double>(n_az);
        for (std::size_t j = 0; j < n_az; ++j) {
          const double az = two_pi * static_cast<double>(j) /
                            static_cast<double>(n_az);
          out.push_back({{s * std::cos(az), s * std::sin(az), c}, w});
        }
      }
      break;
    }
    case BlochPrior::Kind::UniformBall: {
      const auto& cos_rule = gauss_legendre_rule(order);
      const auto& rad_rule =
          gauss_legendre_rule(static_cast<unsigned>(total_counts / 2 + 3));
      out.reserve(cos_rule.nodes.size() * n_az * rad_rule.nodes.size());
      for (std::size_t k = 0; k < rad_rule.nodes.size(); ++k) {
        const double r = (rad_rule.nodes[k] + 1.0) / 2.0;
        const double wr = rad_rule.weights[k] / 2.0 * 3.0 * r * r;
        for (std::size_t i = 0; i < cos_rule.nodes.size(); ++i) {
          const double c = cos_rule.nodes[i];
          const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
          const double w =
              wr * cos_rule.weights[i] / 2.0 / static_cast<double>(n_az);
          for (std::size_t j = 0; j < n_az; ++j) {
            const double az = two_pi * static_cast<double>(j) /
                              static_cast<double>(n_az);
            out.push_back(
                {{r * s * std::cos(az), r * s * std::sin(az), r * c}, w});
          }
        }
      }
      break;
    }
    case BlochPrior::Kind::Tabulated: {
      const TabulatedPrior& table = prior.table();
      out.reserve(table.size());
      std::size_t idx = 0;
      for (std::size_t i = 0; i < table.n_cos; ++i) {
        const double c = table.cos_theta(i);
        const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        for (std::size_t j = 0; j < table.n_azimuth; ++j) {
          const double az = table.azimuth(j);
          for (std::size_t k = 0; k < table.n_radius; ++k, ++idx) {
            const double r = table.radius(k);
            const double w = table.density[idx] * table.cell_volume(k);
            if (w > 0.0) {
              out.push_back(
                  {{r * s * std::cos(az), r * s * std::sin(az), r * c}, w});
            }
          }
        }
      }
      break;
    }
  }
  return out;
}

//! log of int prior(x) prod_axis ((1+comp)/2)^{c+} ((1-comp)/2)^{c-} d^3x.
double log_record_integral(const SpinRecord& record, const BlochPrior& prior) {
  if (record.empty()) {
    return 0.0;
  }
  if (prior.kind() != BlochPrior::Kind::Tabulated) {
    if (auto axis = record.sole_axis()) {
      const auto& c = record.counts[static_cast<int>(*axis)];
      return log_integral_single_axis(c[0], c[1], prior.kind());
    }
  }
  const auto nodes = prior_nodes(prior, record.total());
  std::vector<double> logs(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    logs[i] = std::log(nodes[i].weight) + log_likelihood(record, nodes[i].point);
  }
  return log_sum_exp(logs);
}

}  // namespace

std::uint64_t& SpinRecord::at(Axis axis, int sign) {
  return counts[static_cast<int>(axis)][sign_index(sign)];
}

std::uint64_t SpinRecord::at(Axis axis, int sign) const {
  return counts[static_cast<int>(axis)][sign_index(sign)];
}

std::uint64_t SpinRecord::axis_total(Axis axis) const {
  const auto& c = counts[static_cast<int>(axis)];
  return c[0] + c[1];
}

std::uint64_t SpinRecord::total() const {
  std::uint64_t t = 0;
  for (const auto& c : counts) {
    t += c[0] + c[1];
  }
  return t;
}

std::optional<Axis> SpinRecord::sole_axis() const {
  std::optional<Axis> found;
  for (int a = 0; a < 3; ++a) {
    if (counts[a][0] + counts[a][1] > 0) {
      if (found) {
        return std::nullopt;
      }
      found = static_cast<Axis>(a);
    }
  }
  return found;
}

SpinRecord SpinRecord::operator+(const SpinRecord& other) const {
  SpinRecord sum = *this;
  for (int a = 0; a < 3; ++a) {
    sum.counts[a][0] += other.counts[a][0];
    sum.counts[a][1] += other.counts[a][1];
  }
  return sum;
}

double record_probability(const SpinRecord& record, const BlochPrior& prior) {
  const double li = log_record_integral(record, prior);
  if (li == neg_inf) {
    return 0.0;
  }
  return std::exp(log_multinomial_prefactor(record) + li);
}

double conditional_record(const SpinRecord& future, const SpinRecord& past,
                          const BlochPrior& prior) {
  const double log_den = log_record_integral(past, prior);
  if (log_den == neg_inf) {
    throw ImpossibleConditioningEvent(
        "conditional_record: past record has zero prior probability");
  }
  if (future.empty()) {
    return 1.0;
  }
  const double log_num = log_record_integral(past + future, prior);
  if (log_num == neg_inf) {
    return 0.0;
  }
  return std::exp(log_multinomial_prefactor(future) + log_num - log_den);
}

double exact_single_axis(std::uint64_t n_plus, std::uint64_t n_minus,
                         std::uint64_t m_plus, std::uint64_t m_minus) {
  const double lf = log_factorial(n_plus + n_minus) - log_factorial(n_plus) -
                    log_factorial(n_minus) +
                    log_factorial(m_plus + m_minus + 1) +
                    log_factorial(m_plus + n_plus) +
                    log_factorial(m_minus + n_minus) -
                    log_factorial(m_plus + m_minus + n_plus + n_minus + 1) -
                    log_factorial(m_plus) - log_factorial(m_minus);
  return std::exp(lf);
}

double asymptotic_single_axis(std::uint64_t n_plus, std::uint64_t n_minus,
                              std::uint64_t m_plus, std::uint64_t m_minus) {
  if (m_plus + m_minus == 0) {
    throw std::invalid_argument(
        "asymptotic_single_axis: past record must be nonempty");
  }
  const double m = static_cast<double>(m_plus + m_minus);
  double log_p = log_factorial(n_plus + n_minus) - log_factorial(n_plus) -
                 log_factorial(n_minus);
  if (n_plus > 0) {
    if (m_plus == 0) {
      return 0.0;
    }
    log_p += static_cast<double>(n_plus) *
             std::log(static_cast<double>(m_plus) / m);
  }
  if (n_minus > 0) {
    if (m_minus == 0) {
      return 0.0;
    }
    log_p += static_cast<double>(n_minus) *
             std::log(static_cast<double>(m_minus) / m);
  }
  return std::exp(log_p);
}

double repeat_probability(std::uint64_t n_plus, std::uint64_t m_plus) {
  return static_cast<double>(m_plus + 1) /
         static_cast<double>(m_plus + n_plus + 1);
}

namespace {
boost::multiprecision::cpp_int factorial_big(std::uint64_t n) {
  boost::multiprecision::cpp_int f = 1;
  for (std::uint64_t k = 2; k <= n; ++k) {
    f *= k;
  }
  return f;
}
}  // namespace

Rational exact_single_axis_rational(std::uint64_t n_plus,
                                    std::uint64_t n_minus,
                                    std::uint64_t m_plus,
                                    std::uint64_t m_minus) {
  using boost::multiprecision::cpp_int;
  const cpp_int num = factorial_big(n_plus + n_minus) *
                      factorial_big(m_plus + m_minus + 1) *
                      factorial_big(m_plus + n_plus) *
                      factorial_big(m_minus + n_minus);
  const cpp_int den =
      factorial_big(n_plus) * factorial_big(n_minus) *
      factorial_big(m_plus + m_minus + n_plus + n_minus + 1) *
      factorial_big(m_plus) * factorial_big(m_minus);
  return Rational(num, den);
}

Rational record_probability_rational(std::uint64_t m_plus,
                                     std::uint64_t m_minus) {
  using boost::multiprecision::cpp_int;
  // Multinomial prefactor times the Beta integral p! q! / (p+q+1)!.
  const cpp_int num = factorial_big(m_plus + m_minus) *
                      factorial_big(m_plus) * factorial_big(m_minus);
  const cpp_int den = factorial_big(m_plus) * factorial_big(m_minus) *
                      factorial_big(m_plus + m_minus + 1);
  return Rational(num, den);
}

Rational repeat_probability_rational(std::uint64_t n_plus,
                                     std::uint64_t m_plus) {
  return Rational(m_plus + 1, m_plus + n_plus + 1);
}

PosteriorDensity posterior_bloch_density(const SpinRecord& past,
                                         const BlochPrior& prior) {
  const auto nodes = prior_nodes(prior, std::max<std::uint64_t>(past.total(), 1));
  PosteriorDensity posterior;
  posterior.nodes.reserve(nodes.size());
  std::vector<double> logs(nodes.size());
  double max_log = neg_inf;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    logs[i] = log_likelihood(past, nodes[i].point);
    max_log = std::max(max_log, logs[i]);
  }
  if (max_log == neg_inf) {
    throw ImpossibleConditioningEvent(
        "posterior_bloch_density: past record has zero prior probability");
  }
  double norm = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double d = logs[i] == neg_inf ? 0.0 : std::exp(logs[i] - max_log);
    posterior.nodes.push_back({nodes[i].point, nodes[i].weight, d});
    norm += nodes[i].weight * d;
  }
  if (norm <= 0.0) {
    throw ImpossibleConditioningEvent(
        "posterior_bloch_density: zero normalizer");
  }
  for (auto& node : posterior.nodes) {
    node.density /= norm;
  }
  return posterior;
}

}  // namespace qbayes::spin
