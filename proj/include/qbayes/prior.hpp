//---------------------------------------------------------------------------//
// Copyright 2026 the qbayes developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace qbayes {

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

/*!
 * User-supplied prior density tabulated on a cell-centered product grid
 * in (cos theta, azimuth, radius). Cell k of each coordinate is centered
 * at the midpoint of its bin; the density is treated as piecewise
 * constant. Values are stored with radius fastest, then azimuth, then
 * cos theta.
 */
struct TabulatedPrior {
  std::size_t n_cos = 0;
  std::size_t n_azimuth = 0;
  std::size_t n_radius = 0;
  std::vector<double> density;

  std::size_t size() const { return n_cos * n_azimuth * n_radius; }
  double cos_theta(std::size_t i) const;
  double azimuth(std::size_t j) const;
  double radius(std::size_t k) const;
  //! Volume element r^2 dr dcos(theta) dazimuth of one cell.
  double cell_volume(std::size_t k_radius) const;
};

/*!
 * A-priori density over Bloch vectors. Three kinds are supported:
 * uniform on the unit sphere surface (pure states), uniform over the
 * unit ball (mixed states), and user-tabulated.
 */
class BlochPrior {
 public:
  enum class Kind { UniformSphereSurface, UniformBall, Tabulated };

  static BlochPrior uniform_sphere_surface();
  static BlochPrior uniform_ball();
  //! Validates normalization: the grid integral must equal 1 to 1e-8.
  static BlochPrior tabulated(TabulatedPrior table);

  Kind kind() const { return kind_; }
  const TabulatedPrior& table() const { return table_; }

 private:
  explicit BlochPrior(Kind kind) : kind_(kind) {}

  Kind kind_;
  TabulatedPrior table_;
};

}  // namespace qbayes
