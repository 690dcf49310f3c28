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

// Batch front-end: run strategy experiments, sweep all strategies on common
// random states, and post-process results into gamma and baseline ratios.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qest/baseline.hpp"
#include "qest/experiment.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct CommonOpts {
  std::string strategy = "random";
  int n = 30;
  int runs = 2000;
  double alpha = 2.0;
  std::string readout = "bloch";
  std::string grid = "24x24x48";
  std::string candidates = "8x16";
  std::uint64_t seed = 0;
  std::string out;
  std::string axis_policy = "random";
};

std::vector<int> parse_dims(const std::string& s, std::size_t expect) {
  std::vector<int> dims;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, 'x')) dims.push_back(std::stoi(part));
  if (dims.size() != expect)
    throw CLI::ValidationError("expected " + std::to_string(expect) +
                               " dimensions in '" + s + "'");
  return dims;
}

qest::RunConfig build_config(const CommonOpts& o, const std::string& strategy) {
  qest::RunConfig cfg;
  cfg.strategy = qest::StrategySpec::from_name(strategy);
  if (cfg.strategy.kind == qest::StrategyKind::kullback_all) {
    auto dims = parse_dims(o.candidates, 2);
    cfg.strategy.candidates = qest::candidate_sphere_grid(dims[0], dims[1]);
  }
  cfg.strategy.axis_policy = o.axis_policy == "roundrobin"
                                 ? qest::AxisPolicy::round_robin
                                 : qest::AxisPolicy::uniform_random;
  cfg.n_systems = o.n;
  cfg.alpha = o.alpha;
  cfg.readout = o.readout == "mean-radius" ? qest::ReadoutMode::mean_radius
                                           : qest::ReadoutMode::bloch_vector;
  auto g = parse_dims(o.grid, 3);
  cfg.resolution = {g[0], g[1], g[2]};
  cfg.seed = o.seed;
  cfg.record_trajectory = true;
  return cfg;
}

int thread_count() {
  if (const char* env = std::getenv("QEST_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 0;  // experiment module default: all cores
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void write_run_csv(std::ostream& os, const qest::Aggregate& agg,
                   const std::string& strategy, double alpha, int runs,
                   std::uint64_t seed) {
  for (std::size_t k = 0; k < agg.mean_fidelity.size(); ++k) {
    os << (k + 1) << ',' << fmt(agg.mean_fidelity[k]) << ','
       << fmt(agg.stderr_mean[k]) << ',' << fmt(agg.error[k]) << ','
       << strategy << ',' << fmt(alpha) << ',' << runs << ',' << seed << '\n';
  }
}

void check_abort_rate(const qest::Aggregate& agg, int runs) {
  if (agg.aborted * 100 > runs)
    throw std::runtime_error("more than 1% of runs aborted (" +
                             std::to_string(agg.aborted) + "/" +
                             std::to_string(runs) + ")");
}

struct RunCsv {
  std::string strategy;
  double alpha = 0.0;
  std::vector<double> mean_fidelity, stderr_mean, error;
};

RunCsv read_run_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) ||
      line != "n,mean_fidelity,stderr,error,strategy,alpha,runs,seed")
    throw std::runtime_error(path + ": not a run CSV (bad header)");
  RunCsv r;
  int expect = 1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 8)
      throw std::runtime_error(path + ": malformed row '" + line + "'");
    const int n = std::stoi(fields[0]);
    if (n != expect++)
      throw std::runtime_error(path + ": non-contiguous step column");
    r.mean_fidelity.push_back(std::stod(fields[1]));
    r.stderr_mean.push_back(std::stod(fields[2]));
    r.error.push_back(std::stod(fields[3]));
    if (r.mean_fidelity.size() == 1) {
      r.strategy = fields[4];
      r.alpha = std::stod(fields[5]);
    } else if (r.strategy != fields[4]) {
      throw std::runtime_error(path + ": mixed strategies in one file");
    }
  }
  if (r.mean_fidelity.empty())
    throw std::runtime_error(path + ": no data rows");
  return r;
}

const std::vector<std::string> kAllStrategies = {"random", "3axes", "kullback",
                                                 "kullback3"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive single-qubit state estimation experiments"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string scheme_path, reference_path, baseline_path;

  auto add_common = [&](CLI::App* cmd, bool with_strategy) {
    if (with_strategy)
      cmd->add_option("--strategy", o.strategy)
          ->check(CLI::IsMember(kAllStrategies));
    cmd->add_option("--n", o.n)->check(CLI::PositiveNumber);
    cmd->add_option("--runs", o.runs)->check(CLI::PositiveNumber);
    cmd->add_option("--alpha", o.alpha)->check(CLI::NonNegativeNumber);
    cmd->add_option("--readout", o.readout)
        ->check(CLI::IsMember({"bloch", "mean-radius"}));
    cmd->add_option("--grid", o.grid);
    cmd->add_option("--candidates", o.candidates);
    cmd->add_option("--seed", o.seed);
    cmd->add_option("--out", o.out);
    cmd->add_option("--axis-policy", o.axis_policy)
        ->check(CLI::IsMember({"random", "roundrobin"}));
  };

  CLI::App* run = app.add_subcommand("run", "Run one strategy");
  add_common(run, true);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Run all four strategies on common random states");
  add_common(sweep, false);

  CLI::App* gamma = app.add_subcommand(
      "gamma", "Error ratio of a scheme against a reference run CSV");
  gamma->add_option("--scheme", scheme_path)->required();
  gamma->add_option("--reference", reference_path)->required();
  gamma->add_option("--out", o.out);

  CLI::App* bratio = app.add_subcommand(
      "baseline-ratio", "Ratio of a run CSV against a baseline table");
  bratio->add_option("--scheme", scheme_path)->required();
  bratio->add_option("--baseline", baseline_path)->required();
  bratio->add_option("--out", o.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    Output out(o.out);
    std::ostream& os = out.stream();

    if (run->parsed()) {
      qest::RunConfig cfg = build_config(o, o.strategy);
      qest::Aggregate agg = qest::monte_carlo(cfg, o.runs, thread_count());
      check_abort_rate(agg, o.runs);
      os << "n,mean_fidelity,stderr,error,strategy,alpha,runs,seed\n";
      write_run_csv(os, agg, o.strategy, o.alpha, o.runs, o.seed);
    } else if (sweep->parsed()) {
      os << "n,mean_fidelity,stderr,error,strategy,alpha,runs,seed\n";
      for (const std::string& name : kAllStrategies) {
        qest::RunConfig cfg = build_config(o, name);
        qest::Aggregate agg = qest::monte_carlo(cfg, o.runs, thread_count());
        check_abort_rate(agg, o.runs);
        write_run_csv(os, agg, name, o.alpha, o.runs, o.seed);
      }
    } else if (gamma->parsed()) {
      RunCsv scheme = read_run_csv(scheme_path);
      RunCsv ref = read_run_csv(reference_path);
      if (scheme.error.size() != ref.error.size())
        throw std::runtime_error("gamma: scheme and reference N differ");
      if (scheme.alpha != ref.alpha)
        throw std::runtime_error("gamma: scheme and reference alpha differ");
      os << "n,gamma,scheme,reference\n";
      for (std::size_t k = 0; k < scheme.error.size(); ++k) {
        const double g = ref.error[k] == 0.0
                             ? std::numeric_limits<double>::quiet_NaN()
                             : scheme.error[k] / ref.error[k];
        os << (k + 1) << ',' << fmt(g) << ',' << scheme.strategy << ','
           << ref.strategy << '\n';
      }
    } else if (bratio->parsed()) {
      RunCsv scheme = read_run_csv(scheme_path);
      qest::BaselineTable table = qest::BaselineTable::load(baseline_path);
      qest::Aggregate agg;
      agg.n_runs = 1;
      agg.mean_fidelity = scheme.mean_fidelity;
      agg.error = scheme.error;
      agg.stderr_mean = scheme.stderr_mean;
      qest::BaselineRatios ratios =
          qest::ratio_to_baseline(agg, scheme.alpha, table);
      os << (ratios.is_fidelity ? "n,fidelity_ratio\n" : "n,error_ratio\n");
      for (std::size_t k = 0; k < ratios.n.size(); ++k)
        os << ratios.n[k] << ',' << fmt(ratios.ratio[k]) << '\n';
      for (int miss : ratios.missing)
        std::cerr << "warning: no baseline entry for N=" << miss << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
