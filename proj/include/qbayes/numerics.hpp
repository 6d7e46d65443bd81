//---------------------------------------------------------------------------//
// Copyright 2026 the qbayes developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace qbayes::numerics {

inline constexpr double two_pi = 6.28318530717958647692528676655900577;

/*!
 * Uniform grid of angles k * 2pi / n, k = 0 .. n-1.
 *
 * Node count must be a power of two (so that grids nest under doubling)
 * and at least 8. The trapezoid rule on such a grid is spectrally
 * accurate for smooth 2pi-periodic integrands.
 */
class PeriodicGrid {
 public:
  static constexpr std::size_t default_node_count = 2048;
  static constexpr std::size_t max_node_count = std::size_t{1} << 20;

  explicit PeriodicGrid(std::size_t node_count = default_node_count);

  std::size_t node_count() const { return nodes_.size(); }
  double node(std::size_t k) const { return nodes_[k]; }
  const std::vector<double>& nodes() const { return nodes_; }
  double spacing() const { return two_pi / static_cast<double>(nodes_.size()); }

  PeriodicGrid doubled() const { return PeriodicGrid(2 * node_count()); }

 private:
  std::vector<double> nodes_;
};

struct QuadratureResult {
  double value;
  double doubling_error;  // |I(2n) - I(n)|
};

//! Trapezoid sum (2pi/n) * sum_k f(node_k). Throws EvaluationError on
//! a non-finite node value (the message names the offending node).
double periodic_integrate(const std::function<double(double)>& f,
                          const PeriodicGrid& grid);

//! Same, with the grid-doubling error estimate reported alongside.
QuadratureResult periodic_integrate_with_error(
    const std::function<double(double)>& f, const PeriodicGrid& grid);

/*!
 * Integrand of the form  prod_i base_i(phi)^{e_i} * exp(extra(phi)),
 * held in log form so that large exponents never overflow.
 *
 * A base that vanishes at a node (log_base = -inf) with positive
 * exponent makes the whole node value -inf; such nodes contribute zero
 * weight and are not errors.
 */
struct LogWeightedIntegrand {
  struct Term {
    double exponent;  // >= 0
    std::function<double(double)> log_base;
  };
  std::vector<Term> log_terms;
  std::function<double(double)> extra_log_factor;  // optional, may be empty

  //! log of the integrand at angle phi (-inf where it vanishes).
  double log_at(double phi) const;
};

//! log of the trapezoid sum, computed with a max-shift so that no
//! intermediate overflows. Throws EvaluationError("zero integrand")
//! when every node is -inf.
double log_integrate(const LogWeightedIntegrand& integrand,
                     const PeriodicGrid& grid);

/*!
 * Gauss-Legendre nodes and weights on [-1, 1]; exact for polynomials
 * of degree <= 2*order - 1. Weights sum to 2.
 */
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  explicit GaussLegendreRule(unsigned order);
};

//! Cached rule lookup (thread-safe).
const GaussLegendreRule& gauss_legendre_rule(unsigned order);

//! integral_{-1}^{1} f(x) dx by Gauss-Legendre of the given order (>= 2).
double gauss_legendre_integrate(const std::function<double(double)>& f,
                                unsigned order);

//! log(n!). Exact 64-bit integer path for n <= 20, log-gamma beyond.
double log_factorial(std::uint64_t n);

}  // namespace qbayes::numerics
