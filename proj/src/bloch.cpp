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

#include "qest/bloch.hpp"

#include <cmath>
#include <stdexcept>

namespace qest {

namespace {

// Canonicalize (theta, phi) from a Cartesian unit vector. phi wrapped into
// [0,2pi); phi = 0 at the poles where it is undefined.
void spherical_angles(const Vec3& v, double norm, double& theta, double& phi) {
  if (norm == 0.0) {
    theta = 0.0;
    phi = 0.0;
    return;
  }
  double c = v.z / norm;
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  theta = std::acos(c);
  if (v.x == 0.0 && v.y == 0.0) {
    phi = 0.0;
    return;
  }
  phi = std::atan2(v.y, v.x);
  if (phi < 0.0) phi += 2.0 * kPi;
  if (phi >= 2.0 * kPi) phi = 0.0;
}

double wrap_phi(double phi) {
  double p = std::fmod(phi, 2.0 * kPi);
  if (p < 0.0) p += 2.0 * kPi;
  if (p >= 2.0 * kPi) p = 0.0;
  return p;
}

}  // namespace

Rotation Rotation::identity() {
  Rotation r;
  r.m[0][0] = r.m[1][1] = r.m[2][2] = 1.0;
  return r;
}

Rotation Rotation::about_axis(const Vec3& axis, double angle) {
  double n = std::sqrt(dot(axis, axis));
  if (n == 0.0) throw std::invalid_argument("rotation axis must be nonzero");
  double ux = axis.x / n, uy = axis.y / n, uz = axis.z / n;
  double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
  Rotation r;
  r.m = {{{t * ux * ux + c, t * ux * uy - s * uz, t * ux * uz + s * uy},
          {t * ux * uy + s * uz, t * uy * uy + c, t * uy * uz - s * ux},
          {t * ux * uz - s * uy, t * uy * uz + s * ux, t * uz * uz + c}}};
  return r;
}

Vec3 Rotation::apply(const Vec3& v) const {
  return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
          m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
          m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

BlochPoint::BlochPoint(double r, double theta, double phi)
    : r_(r), theta_(theta), phi_(phi) {
  if (!(r >= 0.0 && r <= 1.0))
    throw std::invalid_argument("BlochPoint: radius must lie in [0,1]");
  if (!(theta >= 0.0 && theta <= kPi))
    throw std::invalid_argument("BlochPoint: theta must lie in [0,pi]");
  if (!(phi >= 0.0 && phi < 2.0 * kPi))
    throw std::invalid_argument("BlochPoint: phi must lie in [0,2pi)");
}

Vec3 BlochPoint::cartesian() const {
  double st = std::sin(theta_);
  return {r_ * st * std::cos(phi_), r_ * st * std::sin(phi_),
          r_ * std::cos(theta_)};
}

BlochPoint BlochPoint::from_cartesian(const Vec3& v) {
  double r = std::sqrt(dot(v, v));
  // Tolerate rounding just past the surface.
  if (r > 1.0 && r < 1.0 + 1e-9) r = 1.0;
  double theta, phi;
  spherical_angles(v, r, theta, phi);
  return BlochPoint(r, theta, phi);
}

Direction::Direction(double theta, double phi) : theta_(theta), phi_(phi) {
  if (!(theta >= 0.0 && theta <= kPi))
    throw std::invalid_argument("Direction: theta must lie in [0,pi]");
  if (!(phi >= 0.0 && phi < 2.0 * kPi))
    throw std::invalid_argument("Direction: phi must lie in [0,2pi)");
}

Vec3 Direction::unit() const {
  double st = std::sin(theta_);
  return {st * std::cos(phi_), st * std::sin(phi_), std::cos(theta_)};
}

Direction Direction::from_cartesian(const Vec3& v) {
  double n = std::sqrt(dot(v, v));
  if (n == 0.0)
    throw std::invalid_argument("Direction: zero vector has no direction");
  double theta, phi;
  spherical_angles(v, n, theta, phi);
  return Direction(theta, phi);
}

DensityMatrix density_matrix(const BlochPoint& p) {
  using C = std::complex<double>;
  double r = p.r(), ct = std::cos(p.theta()), st = std::sin(p.theta());
  C off = 0.5 * r * st * std::exp(C(0.0, -p.phi()));
  DensityMatrix d;
  d.m = {C(0.5 * (1.0 + r * ct), 0.0), off, std::conj(off),
         C(0.5 * (1.0 - r * ct), 0.0)};
  return d;
}

double outcome_probability(const BlochPoint& state, const Direction& dir,
                           Outcome out) {
  double p1 = 0.5 * (1.0 + state.r() * (std::cos(state.theta()) *
                                            std::cos(dir.theta()) +
                                        std::sin(state.theta()) *
                                            std::sin(dir.theta()) *
                                            std::cos(state.phi() - dir.phi())));
  return out == Outcome::aligned ? p1 : 1.0 - p1;
}

Direction antipode(const Direction& dir) {
  return Direction(kPi - dir.theta(), wrap_phi(dir.phi() + kPi));
}

Outcome sample_outcome(Rng& rng, const BlochPoint& state,
                       const Direction& dir) {
  double p1 = outcome_probability(state, dir, Outcome::aligned);
  return rng.uniform01() < p1 ? Outcome::aligned : Outcome::anti;
}

double fidelity(const BlochPoint& a, const BlochPoint& b) {
  Vec3 va = a.cartesian(), vb = b.cartesian();
  double qa = 1.0 - a.r() * a.r();
  double qb = 1.0 - b.r() * b.r();
  if (qa < 0.0) qa = 0.0;
  if (qb < 0.0) qb = 0.0;
  double f = 0.5 * (1.0 + dot(va, vb) + std::sqrt(qa) * std::sqrt(qb));
  if (f < 0.0) f = 0.0;
  if (f > 1.0) f = 1.0;
  return f;
}

namespace {

using C = std::complex<double>;
using Mat2 = std::array<C, 4>;

Mat2 mul(const Mat2& a, const Mat2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
          a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

// Principal square root of a Hermitian PSD 2x2 matrix via eigenvalues:
// sqrt(M) = ((M + sqrt(det) I)) / sqrt(tr + 2 sqrt(det)).
Mat2 herm_sqrt(const Mat2& a) {
  double tr = (a[0] + a[3]).real();
  double det = (a[0] * a[3] - a[1] * a[2]).real();
  if (det < 0.0) det = 0.0;
  double s = std::sqrt(det);
  double denom = std::sqrt(tr + 2.0 * s);
  if (denom == 0.0) return Mat2{C(0), C(0), C(0), C(0)};
  return {(a[0] + s) / denom, a[1] / denom, a[2] / denom, (a[3] + s) / denom};
}

}  // namespace

double fidelity_matrix_oracle(const DensityMatrix& a, const DensityMatrix& b) {
  // Eigenvalues of the product M = sqrt(b) a sqrt(b) (Hermitian PSD);
  // Tr sqrt(M) = sqrt(l1) + sqrt(l2).
  Mat2 sb = herm_sqrt(b.m);
  Mat2 prod = mul(mul(sb, a.m), sb);
  double tr = (prod[0] + prod[3]).real();
  double det = (prod[0] * prod[3] - prod[1] * prod[2]).real();
  double disc = tr * tr - 4.0 * det;
  if (disc < 0.0) disc = 0.0;
  double root = std::sqrt(disc);
  double l1 = 0.5 * (tr + root);
  double l2 = 0.5 * (tr - root);
  if (l1 < -1e-9 || l2 < -1e-9)
    throw std::invalid_argument(
        "fidelity_matrix_oracle: input is not positive semidefinite");
  if (l1 < 0.0) l1 = 0.0;
  if (l2 < 0.0) l2 = 0.0;
  double t = std::sqrt(l1) + std::sqrt(l2);
  double f = t * t;
  if (f > 1.0) f = 1.0;
  return f;
}

BlochPoint rotate(const BlochPoint& p, const Rotation& rot) {
  return BlochPoint::from_cartesian(rot.apply(p.cartesian()));
}

Direction rotate(const Direction& d, const Rotation& rot) {
  return Direction::from_cartesian(rot.apply(d.unit()));
}

}  // namespace qest
