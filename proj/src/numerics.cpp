//---------------------------------------------------------------------------//
// Copyright 2026 the qbayes developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include "qbayes/numerics.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include "qbayes/errors.hpp"

namespace qbayes::numerics {

namespace {
constexpr double neg_inf = -std::numeric_limits<double>::infinity();

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
}  // namespace

PeriodicGrid::PeriodicGrid(std::size_t node_count) {
  if (node_count < 8 || node_count > max_node_count ||
      !is_power_of_two(node_count)) {
    throw std::invalid_argument(
        "PeriodicGrid: node count must be a power of two in [8, 2^20], got " +
        std::to_string(node_count));
  }
  nodes_.resize(node_count);
  const double h = two_pi / static_cast<double>(node_count);
  for (std::size_t k = 0; k < node_count; ++k) {
    nodes_[k] = h * static_cast<double>(k);
  }
}

double periodic_integrate(const std::function<double(double)>& f,
                          const PeriodicGrid& grid) {
  double sum = 0.0;
  for (std::size_t k = 0; k < grid.node_count(); ++k) {
    const double v = f(grid.node(k));
    if (!std::isfinite(v)) {
      throw EvaluationError("periodic_integrate: non-finite value at node " +
                            std::to_string(k) + " (phi = " +
                            std::to_string(grid.node(k)) + ")");
    }
    sum += v;
  }
  return sum * grid.spacing();
}

QuadratureResult periodic_integrate_with_error(
    const std::function<double(double)>& f, const PeriodicGrid& grid) {
  const double coarse = periodic_integrate(f, grid);
  const double fine = periodic_integrate(f, grid.doubled());
  return {coarse, std::fabs(fine - coarse)};
}

double LogWeightedIntegrand::log_at(double phi) const {
  double acc = 0.0;
  for (const auto& term : log_terms) {
    if (term.exponent == 0.0) {
      continue;
    }
    const double lb = term.log_base(phi);
    if (lb == neg_inf) {
      return neg_inf;
    }
    acc += term.exponent * lb;
  }
  if (extra_log_factor) {
    acc += extra_log_factor(phi);
  }
  return acc;
}

double log_integrate(const LogWeightedIntegrand& integrand,
                     const PeriodicGrid& grid) {
  std::vector<double> logs(grid.node_count());
  double max_log = neg_inf;
  for (std::size_t k = 0; k < grid.node_count(); ++k) {
    const double v = integrand.log_at(grid.node(k));
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
      throw EvaluationError("log_integrate: non-finite value at node " +
                            std::to_string(k));
    }
    logs[k] = v;
    if (v > max_log) {
      max_log = v;
    }
  }
  if (max_log == neg_inf) {
    throw EvaluationError("log_integrate: zero integrand");
  }
  double sum = 0.0;
  for (double v : logs) {
    if (v != neg_inf) {
      sum += std::exp(v - max_log);
    }
  }
  return max_log + std::log(sum * grid.spacing());
}

GaussLegendreRule::GaussLegendreRule(unsigned order) {
  if (order < 2) {
    throw std::invalid_argument("GaussLegendreRule: order must be >= 2");
  }
  const std::size_t n = order;
  nodes.resize(n);
  weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Chebyshev-based starting guess, then Newton on P_n.
    double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t j = 2; j <= n; ++j) {
        const double p2 =
            ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / static_cast<double>(j);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) {
        break;
      }
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

const GaussLegendreRule& gauss_legendre_rule(unsigned order) {
  static std::mutex mutex;
  static std::map<unsigned, GaussLegendreRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) {
    it = cache.emplace(order, GaussLegendreRule(order)).first;
  }
  return it->second;
}

double gauss_legendre_integrate(const std::function<double(double)>& f,
                                unsigned order) {
  const GaussLegendreRule& rule = gauss_legendre_rule(order);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double v = f(rule.nodes[i]);
    if (!std::isfinite(v)) {
      throw EvaluationError(
          "gauss_legendre_integrate: non-finite value at node " +
          std::to_string(i));
    }
    sum += rule.weights[i] * v;
  }
  return sum;
}

double log_factorial(std::uint64_t n) {
  // 20! is the largest factorial representable in 64 bits.
  static const auto table = [] {
    std::vector<double> t(21);
    std::uint64_t f = 1;
    t[0] = 0.0;
    for (std::uint64_t k = 1; k <= 20; ++k) {
      f *= k;
      t[k] = std::log(static_cast<double>(f));
    }
    return t;
  }();
  if (n <= 20) {
    return table[n];
  }
  return std::lgamma(static_cast<double>(n) + 1.0);
}

}  // namespace qbayes::numerics
