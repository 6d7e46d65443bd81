//---------------------------------------------------------------------------//
// Copyright 2026 the qbayes developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qbayes/prior.hpp"
#include "qbayes/spin.hpp"

namespace qbayes::oracle {

using Matrix = Eigen::MatrixXcd;
using spin::Axis;

//! Hard cap on tensor dimension: at most 10 qubits.
inline constexpr unsigned max_copies = 10;

struct DensityOperator {
  Matrix matrix;
};

struct POVMElement {
  Matrix matrix;
};

//! Hermitian to tol, PSD, trace 1.
bool is_valid_density(const DensityOperator& rho, double tol = 1e-10);
//! Hermitian, PSD, and bounded above by the identity.
bool is_valid_povm_element(const POVMElement& e, double tol = 1e-10);

//! Rank-1 projector (1 + sign * sigma_axis)/2 on one qubit.
POVMElement single_qubit_projector(Axis axis, int sign);

//! Single-qubit density operator (1 + x.sigma)/2.
Matrix bloch_density(const BlochVector& v);

//! n-fold tensor power of (1 + x.sigma)/2. Throws ResourceError above
//! the dimension cap.
DensityOperator product_density(const BlochVector& v, unsigned copies);

struct MeasurementEvent {
  std::size_t qubit;
  Axis axis;
  int sign;  // +1 or -1
};

/*!
 * Conditional probability of the future outcomes given the past
 * outcomes, computed by explicit traces against the prior-averaged
 * density operator on (C^2)^{copies}. All events must address distinct
 * qubits, so the POVM elements commute and one fixed assignment of
 * measurements to qubits suffices (the prior is exchange symmetric).
 * No multinomial factor is applied: this is the probability of one
 * ordered outcome sequence.
 */
double bayes_conditional(const BlochPrior& prior, unsigned copies,
                         std::span<const MeasurementEvent> past,
                         std::span<const MeasurementEvent> future);

}  // namespace qbayes::oracle
