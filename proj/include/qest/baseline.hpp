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

#ifndef QEST_BASELINE_HPP
#define QEST_BASELINE_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "qest/experiment.hpp"

namespace qest {

// External table of optimal collective-measurement fidelities F_opt (or
// errors f_opt). These values are never computed here; they are input.
struct BaselineTable {
  struct Entry {
    int n = 0;
    double alpha = 0.0;
    double value = 0.0;
  };

  std::vector<Entry> entries;
  bool is_fidelity = true;  // F_opt column vs f_opt column
  std::string source;

  // CSV with header `N,alpha,F_opt` or `N,alpha,f_opt`; `# source: ...`
  // comment lines record provenance. Throws std::runtime_error on parse
  // errors, duplicate (N, alpha) keys, or out-of-range values.
  static BaselineTable parse(std::istream& in);
  static BaselineTable load(const std::string& path);

  // Lookup; returns nullptr when the key is absent.
  const Entry* find(int n, double alpha) const;
};

struct BaselineRatios {
  // fidelity table: ratio = <F_n>/F_opt; error table: ratio = f_opt/f_n.
  bool is_fidelity = true;
  std::vector<int> n;         // steps with a baseline entry
  std::vector<double> ratio;  // parallel to n
  std::vector<int> missing;   // steps with no baseline entry
};

// Ratios of the measured aggregate against the baseline at the given alpha.
// Throws std::invalid_argument if the table has no entries for alpha.
BaselineRatios ratio_to_baseline(const Aggregate& scheme, double alpha,
                                 const BaselineTable& baseline);

}  // namespace qest

#endif  // QEST_BASELINE_HPP
