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

#ifndef QEST_EXPERIMENT_HPP
#define QEST_EXPERIMENT_HPP

#include <cstdint>
#include <vector>

#include "qest/bloch.hpp"
#include "qest/posterior.hpp"
#include "qest/rng.hpp"
#include "qest/strategies.hpp"

namespace qest {

struct RunConfig {
  int n_systems = 30;
  StrategySpec strategy;
  double alpha = 2.0;
  ReadoutMode readout = ReadoutMode::bloch_vector;
  GridResolution resolution;
  std::uint64_t seed = 0;
  bool record_trajectory = true;
};

struct MeasurementPath {
  Direction initial_direction;
  std::vector<Direction> directions;
  std::vector<Outcome> outcomes;
};

struct RunResult {
  BlochPoint true_state;
  MeasurementPath path;
  // F_1..F_N when record_trajectory, else just F_N.
  std::vector<double> fidelities;
  BlochPoint estimate;
};

struct Aggregate {
  int n_runs = 0;
  int aborted = 0;
  std::vector<double> mean_fidelity;  // <F_n>, n = 1..N
  std::vector<double> stderr_mean;    // standard error of the mean
  std::vector<double> error;          // f_n = 1 - <F_n>
};

// Draws a state from the radial prior: R = u^(1/(alpha+1)), cos(Theta)
// uniform on [-1,1], Phi uniform on [0,2pi).
BlochPoint sample_true_state(Rng& rng, double alpha);

// One full adaptive run: N measurements on `true_state`, Bayes updates, and
// a fidelity record. Throws DegenerateUpdateError on a degenerate update.
RunResult run_single(const RunConfig& cfg, const BlochPoint& true_state,
                     Rng& path_rng);

// n_runs independent runs with substreams derived from (cfg.seed, run
// index); result is independent of thread count and execution order.
// n_threads = 0 means hardware concurrency. Aborted runs are excluded from
// the averages and counted in Aggregate.aborted.
Aggregate monte_carlo(const RunConfig& cfg, int n_runs, int n_threads = 0);

// gamma_n = scheme.error[n] / baseline.error[n]. Throws
// std::invalid_argument on length mismatch; zero denominators yield NaN.
std::vector<double> gamma_ratio(const Aggregate& scheme,
                                const Aggregate& random_baseline);

}  // namespace qest

#endif  // QEST_EXPERIMENT_HPP
