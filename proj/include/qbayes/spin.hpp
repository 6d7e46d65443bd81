//---------------------------------------------------------------------------//
// Copyright 2026 the qbayes developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qbayes/prior.hpp"

namespace qbayes::spin {

enum class Axis : int { X = 0, Y = 1, Z = 2 };

/*!
 * Counts of +1/-1 outcomes per Pauli axis. Records count unordered
 * outcomes: two measurement sequences with the same per-axis tallies
 * are the same record.
 */
struct SpinRecord {
  // counts[axis][0] = number of +1 results, counts[axis][1] = -1 results
  std::array<std::array<std::uint64_t, 2>, 3> counts{};

  std::uint64_t& at(Axis axis, int sign);
  std::uint64_t at(Axis axis, int sign) const;
  std::uint64_t axis_total(Axis axis) const;
  std::uint64_t total() const;
  //! Number of axes with at least one count.
  std::optional<Axis> sole_axis() const;  // nullopt if 0 or >1 axes used
  bool empty() const { return total() == 0; }

  SpinRecord operator+(const SpinRecord& other) const;
  bool operator==(const SpinRecord& other) const = default;
};

//! A-priori probability of observing the record (unordered outcomes,
//! multinomial prefactor per axis included).
double record_probability(const SpinRecord& record, const BlochPrior& prior);

//! Conditional probability of the future record given the past record.
//! The multinomial prefactor applies to the future record only.
//! Throws ImpossibleConditioningEvent when the past has zero prior mass.
double conditional_record(const SpinRecord& future, const SpinRecord& past,
                          const BlochPrior& prior);

//! Closed-form single-axis conditional under the uniform-sphere prior:
//! C(n+ + n-, n+) (m+ + m- + 1)! (m+ + n+)! (m- + n-)!
//!   / ((m+ + m- + n+ + n- + 1)! m+! m-!), evaluated in log space.
double exact_single_axis(std::uint64_t n_plus, std::uint64_t n_minus,
                         std::uint64_t m_plus, std::uint64_t m_minus);

//! Large-past limit: binomial with success probability m+/(m+ + m-).
double asymptotic_single_axis(std::uint64_t n_plus, std::uint64_t n_minus,
                              std::uint64_t m_plus, std::uint64_t m_minus);

//! Probability of n+ further +1 results after m+ +1 results:
//! (m+ + 1)/(m+ + n+ + 1).
double repeat_probability(std::uint64_t n_plus, std::uint64_t m_plus);

// Exact-rational fixtures (big-integer arithmetic, totals <= 40).
using Rational = boost::multiprecision::cpp_rational;

Rational exact_single_axis_rational(std::uint64_t n_plus,
                                    std::uint64_t n_minus,
                                    std::uint64_t m_plus,
                                    std::uint64_t m_minus);
//! Uniform-sphere single-axis record probability via the Beta identity:
//! C(m+ + m-, m+) m+! m-! / (m+ + m- + 1)!.
Rational record_probability_rational(std::uint64_t m_plus,
                                     std::uint64_t m_minus);
Rational repeat_probability_rational(std::uint64_t n_plus,
                                     std::uint64_t m_plus);

/*!
 * Posterior density over the prior's support, tabulated on the
 * quadrature grid the inference itself uses. Node weights are the
 * quadrature measure; sum(weight * density) = 1.
 */
struct PosteriorDensity {
  struct Node {
    BlochVector point;
    double weight;
    double density;
  };
  std::vector<Node> nodes;

  //! Posterior mass of the region selected by the predicate.
  template <class Predicate>
  double mass_where(Predicate&& pred) const {
    double m = 0.0;
    for (const auto& node : nodes) {
      if (pred(node.point)) {
        m += node.weight * node.density;
      }
    }
    return m;
  }
};

PosteriorDensity posterior_bloch_density(const SpinRecord& past,
                                         const BlochPrior& prior);

}  // namespace qbayes::spin
