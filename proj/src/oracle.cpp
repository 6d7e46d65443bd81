//---------------------------------------------------------------------------//
// Copyright 2026 the qbayes developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include "qbayes/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <stdexcept>
#include <string>

#include "qbayes/errors.hpp"
#include "qbayes/numerics.hpp"

namespace qbayes::oracle {

namespace {

using numerics::gauss_legendre_rule;
using numerics::two_pi;
using Complex = std::complex<double>;

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix identity2() { return Matrix::Identity(2, 2); }

Matrix pauli(Axis axis) {
  Matrix m(2, 2);
  switch (axis) {
    case Axis::X:
      m << Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0);
      break;
    case Axis::Y:
      m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
      break;
    case Axis::Z:
      m << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0);
      break;
  }
  return m;
}

//! Tensor product over qubits of the given single-qubit operators.
Matrix tensor_chain(const std::vector<Matrix>& ops) {
  Matrix out = ops.front();
  for (std::size_t q = 1; q < ops.size(); ++q) {
    out = kron(out, ops[q]);
  }
  return out;
}

//! Prior-averaged density operator on (C^2)^{copies} by quadrature over
//! the prior's support. Gauss-Legendre in cos(theta) (and radius for the
//! ball) is polynomial exact; uniform azimuth nodes resolve all trig
//! harmonics up to the copies count.
Matrix averaged_density(const BlochPrior& prior, unsigned copies) {
  const unsigned order = copies + 2;
  const std::size_t n_az = 2 * static_cast<std::size_t>(copies) + 4;
  const Eigen::Index dim = Eigen::Index{1} << copies;
  Matrix acc = Matrix::Zero(dim, dim);

  auto accumulate_surface = [&](double radius_scale, double radial_weight) {
    const auto& rule = gauss_legendre_rule(order);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double c = rule.nodes[i];
      const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
      const double w =
          radial_weight * rule.weights[i] / 2.0 / static_cast<double>(n_az);
      for (std::size_t j = 0; j < n_az; ++j) {
        const double az =
            two_pi * static_cast<double>(j) / static_cast<double>(n_az);
        const BlochVector v{radius_scale * s * std::cos(az),
                            radius_scale * s * std::sin(az),
                            radius_scale * c};
        acc += w * product_density(v, copies).matrix;
      }
    }
  };

  switch (prior.kind()) {
    case BlochPrior::Kind::UniformSphereSurface:
      accumulate_surface(1.0, 1.0);
      break;
    case BlochPrior::Kind::UniformBall: {
      const auto& rad = gauss_legendre_rule(copies / 2 + 3);
      for (std::size_t k = 0; k < rad.nodes.size(); ++k) {
        const double r = (rad.nodes[k] + 1.0) / 2.0;
        accumulate_surface(r, rad.weights[k] / 2.0 * 3.0 * r * r);
      }
      break;
    }
    case BlochPrior::Kind::Tabulated:
      throw std::invalid_argument(
          "bayes_conditional: tabulated priors are not supported by the "
          "operator oracle");
  }
  return acc;
}

}  // namespace

bool is_valid_density(const DensityOperator& rho, double tol) {
  const Matrix& m = rho.matrix;
  if (m.rows() != m.cols()) {
    return false;
  }
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    return false;
  }
  if (std::abs(m.trace().real() - 1.0) > 1e-12 ||
      std::abs(m.trace().imag()) > 1e-12) {
    return false;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  return solver.eigenvalues().minCoeff() >= -tol;
}

bool is_valid_povm_element(const POVMElement& e, double tol) {
  const Matrix& m = e.matrix;
  if (m.rows() != m.cols()) {
    return false;
  }
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    return false;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  const auto& ev = solver.eigenvalues();
  return ev.minCoeff() >= -tol && ev.maxCoeff() <= 1.0 + tol;
}

POVMElement single_qubit_projector(Axis axis, int sign) {
  if (sign != +1 && sign != -1) {
    throw std::invalid_argument("single_qubit_projector: sign must be +1/-1");
  }
  Matrix m = (identity2() + static_cast<double>(sign) * pauli(axis)) / 2.0;
  return POVMElement{std::move(m)};
}

Matrix bloch_density(const BlochVector& v) {
  if (v.norm() > 1.0 + 1e-12) {
    throw std::invalid_argument("bloch_density: |x| must be <= 1");
  }
  return (identity2() + v.x * pauli(Axis::X) + v.y * pauli(Axis::Y) +
          v.z * pauli(Axis::Z)) /
         2.0;
}

DensityOperator product_density(const BlochVector& v, unsigned copies) {
  if (copies == 0) {
    throw std::invalid_argument("product_density: copies must be positive");
  }
  if (copies > max_copies) {
    throw ResourceError("product_density: " + std::to_string(copies) +
                        " copies exceed the dimension cap 2^" +
                        std::to_string(max_copies));
  }
  const Matrix single = bloch_density(v);
  Matrix out = single;
  for (unsigned k = 1; k < copies; ++k) {
    out = kron(out, single);
  }
  return DensityOperator{std::move(out)};
}

double bayes_conditional(const BlochPrior& prior, unsigned copies,
                         std::span<const MeasurementEvent> past,
                         std::span<const MeasurementEvent> future) {
  if (copies == 0 || copies > max_copies) {
    throw ResourceError("bayes_conditional: copies must be in [1, " +
                        std::to_string(max_copies) + "]");
  }
  if (past.size() + future.size() > copies) {
    throw std::invalid_argument(
        "bayes_conditional: more measurement events than qubits");
  }
  std::set<std::size_t> seen;
  for (const auto& events : {past, future}) {
    for (const auto& e : events) {
      if (e.qubit >= copies) {
        throw std::invalid_argument("bayes_conditional: qubit index " +
                                    std::to_string(e.qubit) + " out of range");
      }
      if (!seen.insert(e.qubit).second) {
        throw std::invalid_argument(
            "bayes_conditional: repeated qubit index " +
            std::to_string(e.qubit));
      }
    }
  }

  std::vector<Matrix> past_ops(copies, identity2());
  std::vector<Matrix> all_ops(copies, identity2());
  for (const auto& e : past) {
    past_ops[e.qubit] = single_qubit_projector(e.axis, e.sign).matrix;
    all_ops[e.qubit] = past_ops[e.qubit];
  }
  for (const auto& e : future) {
    all_ops[e.qubit] = single_qubit_projector(e.axis, e.sign).matrix;
  }

  const Matrix rho = averaged_density(prior, copies);
  const double den = (rho * tensor_chain(past_ops)).trace().real();
  if (den < 1e-300) {
    throw ImpossibleConditioningEvent(
        "bayes_conditional: past outcomes have zero probability under the "
        "prior");
  }
  const double num = (rho * tensor_chain(all_ops)).trace().real();
  return num / den;
}

}  // namespace qbayes::oracle
