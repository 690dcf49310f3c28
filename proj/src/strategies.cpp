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

#include "qest/strategies.hpp"

#include <bit>
#include <cfloat>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace qest {

namespace {

constexpr double kInvLn2 = 1.4426950408889634;

// log2 for normal positive doubles, accurate to ~1e-14 absolute. Branch-free
// (mantissa offset reduction into [2/3, 4/3)) so the gain inner loop
// vectorizes; the entropy-difference identity tests pin the agreement with
// std::log2 at 1e-8.
inline double fast_log2(double v) {
  constexpr std::uint64_t kOffset = 0x3fe5555555555555ULL;  // ~2/3
  const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  const std::int64_t shifted = static_cast<std::int64_t>(bits - kOffset);
  const double e = static_cast<double>(shifted >> 52);
  const double m = std::bit_cast<double>(
      (static_cast<std::uint64_t>(shifted) & 0x000fffffffffffffULL) + kOffset);
  const double zq = (m - 1.0) / (m + 1.0);
  const double z2 = zq * zq;
  // atanh series for log(m) = 2 atanh((m-1)/(m+1)), |zq| <= 0.2.
  double p = 1.0 / 19.0;
  p = 1.0 / 17.0 + z2 * p;
  p = 1.0 / 15.0 + z2 * p;
  p = 1.0 / 13.0 + z2 * p;
  p = 1.0 / 11.0 + z2 * p;
  p = 1.0 / 9.0 + z2 * p;
  p = 1.0 / 7.0 + z2 * p;
  p = 1.0 / 5.0 + z2 * p;
  p = 1.0 / 3.0 + z2 * p;
  return e + 2.0 * kInvLn2 * (zq + zq * z2 * p);
}

inline double xlog2x(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

}  // namespace

const std::array<Direction, 3>& coordinate_axes() {
  static const std::array<Direction, 3> axes = {
      Direction(kPi / 2.0, 0.0),        // x
      Direction(kPi / 2.0, kPi / 2.0),  // y
      Direction(0.0, 0.0),              // z
  };
  return axes;
}

std::vector<Direction> candidate_sphere_grid(int n_theta, int n_phi) {
  if (n_theta < 1 || n_phi < 1)
    throw std::invalid_argument("candidate grid needs at least one cell");
  std::vector<Direction> out;
  out.reserve(static_cast<std::size_t>(n_theta) * n_phi);
  for (int j = 0; j < n_theta; ++j) {
    const double theta = (j + 0.5) * kPi / n_theta;  // midpoints avoid poles
    for (int k = 0; k < n_phi; ++k) {
      out.emplace_back(theta, 2.0 * kPi * k / n_phi);
    }
  }
  return out;
}

StrategySpec StrategySpec::make(StrategyKind kind) {
  StrategySpec spec;
  spec.kind = kind;
  if (kind == StrategyKind::kullback_all)
    spec.candidates = candidate_sphere_grid();
  return spec;
}

std::string StrategySpec::name() const {
  switch (kind) {
    case StrategyKind::random:
      return "random";
    case StrategyKind::three_axes:
      return "3axes";
    case StrategyKind::kullback_all:
      return "kullback";
    case StrategyKind::kullback_three_axes:
      return "kullback3";
  }
  return "?";
}

StrategySpec StrategySpec::from_name(const std::string& name) {
  if (name == "random") return make(StrategyKind::random);
  if (name == "3axes") return make(StrategyKind::three_axes);
  if (name == "kullback") return make(StrategyKind::kullback_all);
  if (name == "kullback3") return make(StrategyKind::kullback_three_axes);
  throw std::invalid_argument("unknown strategy: " + name);
}

Direction next_direction_random(Rng& rng) {
  const double c = 2.0 * rng.uniform01() - 1.0;
  const double phi = 2.0 * kPi * rng.uniform01();
  return Direction(std::acos(c), phi >= 2.0 * kPi ? 0.0 : phi);
}

Direction next_direction_three_axes(AxisPolicy policy, Rng& rng, int step) {
  const auto& axes = coordinate_axes();
  if (policy == AxisPolicy::round_robin) {
    return axes[static_cast<std::size_t>((step - 1) % 3 + 3) % 3];
  }
  return axes[rng.below(3)];
}

GainEvaluator::GainEvaluator(const PosteriorGrid& grid) {
  const auto& w = grid.weights();
  const auto& q = grid.quadrature();
  const auto& gx = grid.cart_x();
  const auto& gy = grid.cart_y();
  const auto& gz = grid.cart_z();
  const std::size_t n = w.size();
  mass_.reserve(n);
  x_.reserve(n);
  y_.reserve(n);
  z_.reserve(n);
  // Cells carrying less than ~1e-17 of the total mass cannot move the gain
  // by more than ~1e-12 in aggregate; drop them.
  constexpr double kMassFloor = 1e-17;
  for (std::size_t c = 0; c < n; ++c) {
    const double m = w[c] * q[c];
    if (m > kMassFloor) {
      mass_.push_back(m);
      x_.push_back(gx[c]);
      y_.push_back(gy[c]);
      z_.push_back(gz[c]);
      total_mass_ += m;
    }
  }
}

double GainEvaluator::gain(const Direction& dir) const {
  const Vec3 u = dir.unit();
  const std::size_t n = mass_.size();
  const double* m = mass_.data();
  const double* x = x_.data();
  const double* y = y_.data();
  const double* z = z_.data();
  const double ux = u.x, uy = u.y, uz = u.z;
  double outcome_term = 0.0;  // sum_i int w P_i log2(P_i) dV
  double p1 = 0.0;
#pragma omp simd reduction(+ : outcome_term, p1)
  for (std::size_t c = 0; c < n; ++c) {
    // Cell radii are strictly inside the ball, so P_i stays in (0,1).
    const double pa = 0.5 * (1.0 + x[c] * ux + y[c] * uy + z[c] * uz);
    const double pb = 1.0 - pa;
    outcome_term += m[c] * (pa * fast_log2(pa) + pb * fast_log2(pb));
    p1 += m[c] * pa;
  }
  const double p0 = total_mass_ - p1;
  // Gain = sum_i [ int w P_i log2(P_i) dV - Z_i log2(Z_i) ] with
  // Z_i = p_i^(est); outcomes with negligible probability contribute 0.
  return outcome_term - xlog2x(p1) - xlog2x(p0);
}

double kullback_gain(const PosteriorGrid& grid, const Direction& dir) {
  return GainEvaluator(grid).gain(dir);
}

Direction next_direction_kullback(const PosteriorGrid& grid,
                                  const std::vector<Direction>& candidates) {
  if (candidates.empty())
    throw std::invalid_argument("next_direction_kullback: no candidates");
  GainEvaluator eval(grid);
  std::size_t best = 0;
  double best_gain = eval.gain(candidates[0]);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double g = eval.gain(candidates[i]);
    if (g > best_gain) {
      best_gain = g;
      best = i;
    }
  }
  return candidates[best];
}

Direction next_direction(const StrategySpec& spec, const PosteriorGrid& grid,
                         Rng& rng, int step) {
  switch (spec.kind) {
    case StrategyKind::random:
      return next_direction_random(rng);
    case StrategyKind::three_axes:
      return next_direction_three_axes(spec.axis_policy, rng, step);
    case StrategyKind::kullback_all:
      return next_direction_kullback(grid, spec.candidates);
    case StrategyKind::kullback_three_axes: {
      const auto& axes = coordinate_axes();
      static const std::vector<Direction> axis_candidates(axes.begin(),
                                                          axes.end());
      return next_direction_kullback(grid, axis_candidates);
    }
  }
  throw std::logic_error("next_direction: unreachable");
}

Direction first_direction(const StrategySpec& spec, Rng& rng) {
  if (spec.kind == StrategyKind::three_axes)
    return next_direction_three_axes(spec.axis_policy, rng, 1);
  if (spec.kind == StrategyKind::kullback_three_axes)
    return coordinate_axes()[rng.below(3)];
  return next_direction_random(rng);
}

}  // namespace qest
