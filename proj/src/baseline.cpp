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

#include "qest/baseline.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qest {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

BaselineTable BaselineTable::parse(std::istream& in) {
  BaselineTable table;
  std::string line;
  bool have_header = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      const std::string tag = "# source:";
      if (t.rfind(tag, 0) == 0) table.source = trim(t.substr(tag.size()));
      continue;
    }
    if (!have_header) {
      if (t == "N,alpha,F_opt") {
        table.is_fidelity = true;
      } else if (t == "N,alpha,f_opt") {
        table.is_fidelity = false;
      } else {
        throw std::runtime_error(
            "baseline: expected header N,alpha,F_opt or N,alpha,f_opt, got '" +
            t + "'");
      }
      have_header = true;
      continue;
    }
    std::istringstream row(t);
    std::string a, b, c, extra;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',') ||
        !std::getline(row, c, ',')) {
      throw std::runtime_error("baseline: malformed row at line " +
                               std::to_string(lineno));
    }
    if (std::getline(row, extra, ','))
      throw std::runtime_error("baseline: too many columns at line " +
                               std::to_string(lineno));
    Entry e;
    try {
      e.n = std::stoi(trim(a));
      e.alpha = std::stod(trim(b));
      e.value = std::stod(trim(c));
    } catch (const std::exception&) {
      throw std::runtime_error("baseline: bad number at line " +
                               std::to_string(lineno));
    }
    if (e.n < 1 || e.alpha < 0.0)
      throw std::runtime_error("baseline: invalid key at line " +
                               std::to_string(lineno));
    if (table.is_fidelity && !(e.value > 0.0 && e.value <= 1.0))
      throw std::runtime_error("baseline: F_opt must lie in (0,1] at line " +
                               std::to_string(lineno));
    if (table.find(e.n, e.alpha))
      throw std::runtime_error("baseline: duplicate key at line " +
                               std::to_string(lineno));
    table.entries.push_back(e);
  }
  if (!have_header) throw std::runtime_error("baseline: empty file");
  return table;
}

BaselineTable BaselineTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("baseline: cannot open " + path);
  return parse(in);
}

const BaselineTable::Entry* BaselineTable::find(int n, double alpha) const {
  for (const Entry& e : entries) {
    if (e.n == n && e.alpha == alpha) return &e;
  }
  return nullptr;
}

BaselineRatios ratio_to_baseline(const Aggregate& scheme, double alpha,
                                 const BaselineTable& baseline) {
  bool any_alpha = false;
  for (const auto& e : baseline.entries) any_alpha |= (e.alpha == alpha);
  if (!any_alpha)
    throw std::invalid_argument(
        "ratio_to_baseline: baseline has no entries for this alpha");

  BaselineRatios out;
  out.is_fidelity = baseline.is_fidelity;
  for (std::size_t k = 0; k < scheme.mean_fidelity.size(); ++k) {
    const int n = static_cast<int>(k) + 1;
    const BaselineTable::Entry* e = baseline.find(n, alpha);
    if (!e) {
      out.missing.push_back(n);
      continue;
    }
    out.n.push_back(n);
    if (baseline.is_fidelity) {
      out.ratio.push_back(scheme.mean_fidelity[k] / e->value);
    } else {
      const double f = scheme.error[k];
      out.ratio.push_back(f == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                   : e->value / f);
    }
  }
  return out;
}

}  // namespace qest
