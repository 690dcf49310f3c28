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

#include "qest/posterior.hpp"

#include <cmath>
#include <ostream>

namespace qest {

namespace {
constexpr double kDegenerateZ = 1e-12;
}

PosteriorGrid::PosteriorGrid(double alpha, GridResolution res) : res_(res) {
  if (alpha < 0.0)
    throw std::invalid_argument("PosteriorGrid: alpha must be >= 0");
  if (res.n_r < 2 || res.n_theta < 2 || res.n_phi < 2)
    throw std::invalid_argument("PosteriorGrid: resolutions must be >= 2");

  const int nr = res.n_r, nt = res.n_theta, np = res.n_phi;
  const std::size_t n = static_cast<std::size_t>(nr) * nt * np;
  w_.resize(n);
  quad_.resize(n);
  x_.resize(n);
  y_.resize(n);
  z_.resize(n);
  rad_.resize(n);
  theta_mid_.resize(nt);
  phi_mid_.resize(np);

  const double dr = 1.0 / nr;
  const double dth = kPi / nt;
  const double dph = 2.0 * kPi / np;
  for (int j = 0; j < nt; ++j) theta_mid_[j] = (j + 0.5) * dth;
  for (int k = 0; k < np; ++k) phi_mid_[k] = (k + 0.5) * dph;

  std::size_t idx = 0;
  for (int i = 0; i < nr; ++i) {
    const double r = (i + 0.5) * dr;
    // Density with respect to dV is proportional to r^(alpha-2);
    // normalized numerically below so the grid mass is exactly 1.
    const double dens = std::pow(r, alpha - 2.0);
    for (int j = 0; j < nt; ++j) {
      const double st = std::sin(theta_mid_[j]);
      const double ct = std::cos(theta_mid_[j]);
      const double measure = r * r * st * dr * dth * dph;
      for (int k = 0; k < np; ++k, ++idx) {
        w_[idx] = dens;
        quad_[idx] = measure;
        rad_[idx] = r;
        x_[idx] = r * st * std::cos(phi_mid_[k]);
        y_[idx] = r * st * std::sin(phi_mid_[k]);
        z_[idx] = r * ct;
      }
    }
  }

  double mass = 0.0;
  for (std::size_t c = 0; c < n; ++c) mass += w_[c] * quad_[c];
  const double inv = 1.0 / mass;
  for (double& w : w_) w *= inv;
}

double PosteriorGrid::bayes_update(const Direction& dir, Outcome out) {
  const Vec3 u = dir.unit();
  const double sign = (out == Outcome::aligned) ? 1.0 : -1.0;
  const std::size_t n = w_.size();
  double z = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    const double p =
        0.5 * (1.0 + sign * (x_[c] * u.x + y_[c] * u.y + z_[c] * u.z));
    w_[c] *= p;
    z += w_[c] * quad_[c];
  }
  if (z < kDegenerateZ) throw DegenerateUpdateError(z);
  const double inv = 1.0 / z;
  for (double& w : w_) w *= inv;
  return z;
}

EstimatedState PosteriorGrid::estimated_state(ReadoutMode mode) const {
  const std::size_t n = w_.size();
  double bx = 0.0, by = 0.0, bz = 0.0, mean_r = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    const double m = w_[c] * quad_[c];
    bx += m * x_[c];
    by += m * y_[c];
    bz += m * z_[c];
    mean_r += m * rad_[c];
  }
  const double norm = std::sqrt(bx * bx + by * by + bz * bz);
  EstimatedState est;
  if (norm == 0.0) {
    est.direction_defined = false;
    est.state = (mode == ReadoutMode::mean_radius)
                    ? BlochPoint(std::min(mean_r, 1.0), 0.0, 0.0)
                    : BlochPoint(0.0, 0.0, 0.0);
    return est;
  }
  const BlochPoint bloch = BlochPoint::from_cartesian({bx, by, bz});
  if (mode == ReadoutMode::mean_radius) {
    est.state =
        BlochPoint(std::min(mean_r, 1.0), bloch.theta(), bloch.phi());
  } else {
    est.state = bloch;
  }
  return est;
}

double PosteriorGrid::predictive_probability(const Direction& dir,
                                             Outcome out) const {
  const Vec3 u = dir.unit();
  const std::size_t n = w_.size();
  double p1 = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    p1 += w_[c] * quad_[c] *
          (0.5 * (1.0 + x_[c] * u.x + y_[c] * u.y + z_[c] * u.z));
  }
  return out == Outcome::aligned ? p1 : 1.0 - p1;
}

double PosteriorGrid::entropy() const {
  const std::size_t n = w_.size();
  double s = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    const double w = w_[c];
    if (w > 0.0) s -= w * std::log2(w) * quad_[c];
  }
  return s;
}

double PosteriorGrid::total_mass() const {
  double mass = 0.0;
  for (std::size_t c = 0; c < w_.size(); ++c) mass += w_[c] * quad_[c];
  return mass;
}

void PosteriorGrid::dump_csv(std::ostream& os) const {
  os << "r,theta,phi,w\n";
  std::size_t idx = 0;
  const double dr = 1.0 / res_.n_r;
  for (int i = 0; i < res_.n_r; ++i) {
    const double r = (i + 0.5) * dr;
    for (int j = 0; j < res_.n_theta; ++j) {
      for (int k = 0; k < res_.n_phi; ++k, ++idx) {
        os << r << ',' << theta_mid_[j] << ',' << phi_mid_[k] << ','
           << w_[idx] << '\n';
      }
    }
  }
}

}  // namespace qest
