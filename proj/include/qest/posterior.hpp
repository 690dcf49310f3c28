// Copyright 2026 The qest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QEST_POSTERIOR_HPP
#define QEST_POSTERIOR_HPP

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "qest/bloch.hpp"

namespace qest {

struct GridResolution {
  int n_r = 24;
  int n_theta = 24;
  int n_phi = 48;
};

// Rule converting the final posterior into a single estimated state.
enum class ReadoutMode { bloch_vector, mean_radius };

struct EstimatedState {
  BlochPoint state;
  // False when the integrated Bloch vector vanished and the direction
  // (theta=0, phi=0) is a convention, not an estimate.
  bool direction_defined = true;
};

// Observed outcome judged impossible under the current belief
// (normalization below threshold).
class DegenerateUpdateError : public std::runtime_error {
 public:
  explicit DegenerateUpdateError(double z)
      : std::runtime_error("degenerate Bayes update: normalization " +
                           std::to_string(z)),
        z_(z) {}
  double normalization() const { return z_; }

 private:
  double z_;
};

// Discretized probability density w(r,theta,phi) over the Bloch ball on a
// tensor-product midpoint grid, with the volume Jacobian r^2 sin(theta)
// folded into per-cell quadrature weights. Owned by a single run; updates
// mutate in place.
class PosteriorGrid {
 public:
  // Radial prior w0(r;alpha) with cell weight proportional to
  // r^alpha sin(theta); alpha = 2 is the uniform ball density 3/(4pi).
  // Throws std::invalid_argument for alpha < 0 or resolutions < 2.
  PosteriorGrid(double alpha, GridResolution res);

  std::size_t cell_count() const { return w_.size(); }
  const GridResolution& resolution() const { return res_; }

  // Multiplies in the outcome likelihood and renormalizes. Returns the
  // realized normalization Z. Throws DegenerateUpdateError if Z < 1e-12.
  double bayes_update(const Direction& dir, Outcome out);

  EstimatedState estimated_state(ReadoutMode mode) const;

  // p_i^(est): outcome probability under the current estimated state.
  double predictive_probability(const Direction& dir, Outcome out) const;

  // Differential entropy S = -sum w log2(w) dV in bits; may be negative.
  double entropy() const;

  // Sum of w dV; 1 within 1e-9 after every update.
  double total_mass() const;

  // Per-cell views used by the information-gain evaluator.
  const std::vector<double>& weights() const { return w_; }
  const std::vector<double>& quadrature() const { return quad_; }
  const std::vector<double>& cart_x() const { return x_; }
  const std::vector<double>& cart_y() const { return y_; }
  const std::vector<double>& cart_z() const { return z_; }
  const std::vector<double>& radius() const { return rad_; }

  // Debug dump: header r,theta,phi,w and one row per cell.
  void dump_csv(std::ostream& os) const;

 private:
  GridResolution res_;
  std::vector<double> w_;     // density values at cell midpoints
  std::vector<double> quad_;  // per-cell measure r^2 sin(theta) dr dtheta dphi
  std::vector<double> x_, y_, z_, rad_;  // cell Bloch components and radius
  std::vector<double> theta_mid_, phi_mid_;
};

}  // namespace qest

#endif  // QEST_POSTERIOR_HPP
