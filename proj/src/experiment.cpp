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

#include "qest/experiment.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace qest {

namespace {
// Substream tags; state draws are shared across strategies for a given
// master seed so sweeps compare strategies on common random states.
constexpr std::uint64_t kStateStream = 0x51e57a7e;
constexpr std::uint64_t kPathStream = 0x9a7;
}  // namespace

BlochPoint sample_true_state(Rng& rng, double alpha) {
  if (alpha < 0.0)
    throw std::invalid_argument("sample_true_state: alpha must be >= 0");
  const double u = rng.uniform01_open_low();
  const double r = std::pow(u, 1.0 / (alpha + 1.0));
  const double c = 2.0 * rng.uniform01() - 1.0;
  double phi = 2.0 * kPi * rng.uniform01();
  if (phi >= 2.0 * kPi) phi = 0.0;
  return BlochPoint(std::min(r, 1.0), std::acos(c), phi);
}

RunResult run_single(const RunConfig& cfg, const BlochPoint& true_state,
                     Rng& path_rng) {
  if (cfg.n_systems < 1)
    throw std::invalid_argument("run_single: need at least one system");

  PosteriorGrid grid(cfg.alpha, cfg.resolution);
  RunResult result;
  result.true_state = true_state;

  const int n = cfg.n_systems;
  result.path.directions.reserve(n);
  result.path.outcomes.reserve(n);
  if (cfg.record_trajectory) result.fidelities.reserve(n);

  Direction dir = first_direction(cfg.strategy, path_rng);
  result.path.initial_direction = dir;

  for (int step = 1; step <= n; ++step) {
    const Outcome out = sample_outcome(path_rng, true_state, dir);
    grid.bayes_update(dir, out);
    result.path.directions.push_back(dir);
    result.path.outcomes.push_back(out);

    if (cfg.record_trajectory || step == n) {
      const EstimatedState est = grid.estimated_state(cfg.readout);
      const double f = fidelity(true_state, est.state);
      if (cfg.record_trajectory)
        result.fidelities.push_back(f);
      else if (step == n)
        result.fidelities.assign(1, f);
      if (step == n) result.estimate = est.state;
    }
    if (step < n) dir = next_direction(cfg.strategy, grid, path_rng, step + 1);
  }
  return result;
}

Aggregate monte_carlo(const RunConfig& cfg, int n_runs, int n_threads) {
  if (n_runs < 1)
    throw std::invalid_argument("monte_carlo: need at least one run");
  if (n_threads <= 0) {
    n_threads = static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads < 1) n_threads = 1;
  }

  const int traj_len = cfg.record_trajectory ? cfg.n_systems : 1;
  std::vector<std::vector<double>> fids(static_cast<std::size_t>(n_runs));
  std::vector<char> ok(static_cast<std::size_t>(n_runs), 0);

  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n_runs) return;
      Rng state_rng(derive_seed(cfg.seed, kStateStream, i));
      Rng path_rng(derive_seed(cfg.seed, kPathStream, i));
      const BlochPoint true_state = sample_true_state(state_rng, cfg.alpha);
      try {
        RunResult r = run_single(cfg, true_state, path_rng);
        fids[i] = std::move(r.fidelities);
        ok[i] = 1;
      } catch (const DegenerateUpdateError&) {
        // Counted as aborted below; never folded into the averages.
      }
    }
  };

  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  Aggregate agg;
  agg.mean_fidelity.assign(traj_len, 0.0);
  agg.stderr_mean.assign(traj_len, 0.0);
  agg.error.assign(traj_len, 0.0);
  std::vector<double> sum(traj_len, 0.0), sumsq(traj_len, 0.0);
  // Fixed-order reduction keyed by run index keeps the aggregate identical
  // for any thread count.
  for (int i = 0; i < n_runs; ++i) {
    if (!ok[i]) {
      ++agg.aborted;
      continue;
    }
    ++agg.n_runs;
    for (int k = 0; k < traj_len; ++k) {
      sum[k] += fids[i][k];
      sumsq[k] += fids[i][k] * fids[i][k];
    }
  }
  if (agg.n_runs == 0)
    throw std::runtime_error("monte_carlo: every run aborted");
  for (int k = 0; k < traj_len; ++k) {
    const double m = sum[k] / agg.n_runs;
    agg.mean_fidelity[k] = m;
    agg.error[k] = 1.0 - m;
    if (agg.n_runs > 1) {
      double var = (sumsq[k] - agg.n_runs * m * m) / (agg.n_runs - 1.0);
      if (var < 0.0) var = 0.0;
      agg.stderr_mean[k] = std::sqrt(var / agg.n_runs);
    }
  }
  return agg;
}

std::vector<double> gamma_ratio(const Aggregate& scheme,
                                const Aggregate& random_baseline) {
  if (scheme.error.size() != random_baseline.error.size())
    throw std::invalid_argument("gamma_ratio: trajectory lengths differ");
  std::vector<double> out(scheme.error.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double denom = random_baseline.error[k];
    out[k] = denom == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                          : scheme.error[k] / denom;
  }
  return out;
}

}  // namespace qest
