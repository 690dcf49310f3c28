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

#ifndef QEST_STRATEGIES_HPP
#define QEST_STRATEGIES_HPP

#include <array>
#include <string>
#include <vector>

#include "qest/bloch.hpp"
#include "qest/posterior.hpp"
#include "qest/rng.hpp"

namespace qest {

enum class StrategyKind { random, three_axes, kullback_all, kullback_three_axes };

enum class AxisPolicy { uniform_random, round_robin };

// The minimal quorum: x, y, z measurement axes.
const std::array<Direction, 3>& coordinate_axes();

// Product grid of theta midpoints x uniform phi values; the candidate set
// over which the unrestricted gain maximization runs.
std::vector<Direction> candidate_sphere_grid(int n_theta = 8, int n_phi = 16);

struct StrategySpec {
  StrategyKind kind = StrategyKind::random;
  std::vector<Direction> candidates;  // kullback_all only
  AxisPolicy axis_policy = AxisPolicy::uniform_random;  // three_axes only

  static StrategySpec make(StrategyKind kind);

  std::string name() const;
  static StrategySpec from_name(const std::string& name);
};

// Uniform on the sphere surface: cos(theta) uniform on [-1,1], phi uniform
// on [0,2pi).
Direction next_direction_random(Rng& rng);

// One of the three coordinate axes, either uniformly at random or cycling
// x, y, z by step index (1-based).
Direction next_direction_three_axes(AxisPolicy policy, Rng& rng, int step);

// Expected Kullback-Leibler information gain (bits) of measuring along
// `dir`, averaged over the two outcomes under the predictive distribution.
// Side-effect free; never mutates the grid.
double kullback_gain(const PosteriorGrid& grid, const Direction& dir);

// Argmax of kullback_gain over the candidates; ties broken by lowest index.
Direction next_direction_kullback(const PosteriorGrid& grid,
                                  const std::vector<Direction>& candidates);

// Dispatch on spec.kind. `step` is the 1-based measurement index.
Direction next_direction(const StrategySpec& spec, const PosteriorGrid& grid,
                         Rng& rng, int step);

// First measurement direction: uniform on the sphere, except axis-restricted
// strategies draw uniformly from the allowed axis set.
Direction first_direction(const StrategySpec& spec, Rng& rng);

// Snapshots a grid's nonnegligible cells once so many gain evaluations can
// share the compacted arrays.
class GainEvaluator {
 public:
  explicit GainEvaluator(const PosteriorGrid& grid);
  double gain(const Direction& dir) const;

 private:
  std::vector<double> mass_;  // w * dV per kept cell
  std::vector<double> x_, y_, z_;
  double total_mass_ = 0.0;
};

}  // namespace qest

#endif  // QEST_STRATEGIES_HPP
