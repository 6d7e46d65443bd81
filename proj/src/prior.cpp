//---------------------------------------------------------------------------//
// Copyright 2026 the qbayes developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#include "qbayes/prior.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qbayes/numerics.hpp"

namespace qbayes {

double TabulatedPrior::cos_theta(std::size_t i) const {
  return -1.0 + (static_cast<double>(i) + 0.5) * 2.0 /
                    static_cast<double>(n_cos);
}

double TabulatedPrior::azimuth(std::size_t j) const {
  return (static_cast<double>(j) + 0.5) * numerics::two_pi /
         static_cast<double>(n_azimuth);
}

double TabulatedPrior::radius(std::size_t k) const {
  return (static_cast<double>(k) + 0.5) / static_cast<double>(n_radius);
}

double TabulatedPrior::cell_volume(std::size_t k_radius) const {
  const double r = radius(k_radius);
  return r * r * (2.0 / static_cast<double>(n_cos)) *
         (numerics::two_pi / static_cast<double>(n_azimuth)) *
         (1.0 / static_cast<double>(n_radius));
}

BlochPrior BlochPrior::uniform_sphere_surface() {
  return BlochPrior(Kind::UniformSphereSurface);
}

BlochPrior BlochPrior::uniform_ball() { return BlochPrior(Kind::UniformBall); }

BlochPrior BlochPrior::tabulated(TabulatedPrior table) {
  if (table.n_cos == 0 || table.n_azimuth == 0 || table.n_radius == 0) {
    throw std::invalid_argument("tabulated prior: empty grid");
  }
  if (table.density.size() != table.size()) {
    throw std::invalid_argument(
        "tabulated prior: density size does not match grid");
  }
  double integral = 0.0;
  std::size_t idx = 0;
  for (std::size_t i = 0; i < table.n_cos; ++i) {
    for (std::size_t j = 0; j < table.n_azimuth; ++j) {
      for (std::size_t k = 0; k < table.n_radius; ++k, ++idx) {
        const double d = table.density[idx];
        if (!(d >= 0.0)) {
          throw std::invalid_argument("tabulated prior: negative density");
        }
        integral += d * table.cell_volume(k);
      }
    }
  }
  if (std::fabs(integral - 1.0) > 1e-8) {
    throw std::invalid_argument(
        "tabulated prior: grid integral is " + std::to_string(integral) +
        ", expected 1 to 1e-8");
  }
  BlochPrior prior(Kind::Tabulated);
  prior.table_ = std::move(table);
  return prior;
}

}  // namespace qbayes
