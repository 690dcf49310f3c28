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

#ifndef QEST_BLOCH_HPP
#define QEST_BLOCH_HPP

#include <array>
#include <complex>
#include <cstdint>

#include "qest/rng.hpp"

namespace qest {

inline constexpr double kPi = 3.14159265358979323846;

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

// 3x3 rotation matrix, row-major.
struct Rotation {
  std::array<std::array<double, 3>, 3> m{};

  static Rotation identity();
  // Rotation by `angle` about the given (not necessarily normalized) axis.
  static Rotation about_axis(const Vec3& axis, double angle);
  Vec3 apply(const Vec3& v) const;
};

// A point (r, theta, phi) in the closed Bloch ball; doubles as a mixed
// qubit state. Angles are canonical: theta in [0,pi], phi in [0,2pi), and
// phi = 0 at the poles.
class BlochPoint {
 public:
  BlochPoint() = default;
  // Throws std::invalid_argument outside the canonical ranges.
  BlochPoint(double r, double theta, double phi);

  double r() const { return r_; }
  double theta() const { return theta_; }
  double phi() const { return phi_; }

  Vec3 cartesian() const;
  static BlochPoint from_cartesian(const Vec3& v);

 private:
  double r_ = 0.0, theta_ = 0.0, phi_ = 0.0;
};

// A unit vector (theta_n, phi_n) on the Bloch sphere surface; defines a
// projective measurement axis.
class Direction {
 public:
  Direction() = default;
  Direction(double theta, double phi);

  double theta() const { return theta_; }
  double phi() const { return phi_; }

  Vec3 unit() const;
  static Direction from_cartesian(const Vec3& v);

 private:
  double theta_ = 0.0, phi_ = 0.0;
};

// Measurement outcome: aligned (1) means polarized along the measured
// direction, anti (0) the antipodal result.
enum class Outcome : int { anti = 0, aligned = 1 };

struct DensityMatrix {
  // Row-major 2x2 complex matrix.
  std::array<std::complex<double>, 4> m{};

  std::complex<double> trace() const { return m[0] + m[3]; }
};

DensityMatrix density_matrix(const BlochPoint& p);

// P_i for a projective measurement of `state` along `dir`.
// P1 = (1 + r cos(theta)cos(theta_n) + r sin(theta)sin(theta_n)cos(phi-phi_n))/2,
// P0 = 1 - P1.
double outcome_probability(const BlochPoint& state, const Direction& dir,
                           Outcome out);

// The antipodal measurement axis (pi - theta_n, phi_n + pi).
Direction antipode(const Direction& dir);

// Draws an outcome with the statistics of outcome_probability.
Outcome sample_outcome(Rng& rng, const BlochPoint& state, const Direction& dir);

// Two-level closed form:
// F = (1 + ra.rb + sqrt(1-|ra|^2) sqrt(1-|rb|^2)) / 2.
double fidelity(const BlochPoint& a, const BlochPoint& b);

// Uhlmann fidelity Tr^2 sqrt(sqrt(b) a sqrt(b)) via exact 2x2
// eigendecomposition. Cross-check oracle for the closed form above.
// Throws std::invalid_argument if an eigenvalue is below -1e-9.
double fidelity_matrix_oracle(const DensityMatrix& a, const DensityMatrix& b);

BlochPoint rotate(const BlochPoint& p, const Rotation& rot);
Direction rotate(const Direction& d, const Rotation& rot);

}  // namespace qest

#endif  // QEST_BLOCH_HPP
