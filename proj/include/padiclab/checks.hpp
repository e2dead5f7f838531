// Copyright 2026 The padiclab Authors
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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "padiclab/bigint.hpp"
#include "padiclab/padic.hpp"
#include "padiclab/polyzx.hpp"

namespace padiclab {

struct CheckConfig {
  std::uint32_t p = 3;
  unsigned m = 6;
  unsigned n = 2;
  std::uint64_t height_max = 4;
  unsigned omega_digits = 3;  // the nearest-root sweep takes omega over residues mod p^omega_digits
  std::uint64_t seed = 1;
  unsigned random_trials = 1000;
};

struct CheckSection {
  std::string name;
  bool diagnostic = false;  // diagnostics report statistics, never violations
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::uint64_t skipped = 0;
  std::vector<std::string> examples;  // first few violations
  std::vector<std::pair<std::string, double>> stats;
};

struct CheckReport {
  CheckConfig config;
  std::vector<CheckSection> sections;

  std::uint64_t total_violations() const;
};

CheckReport run_checks(const CheckConfig& config);

// Residues r mod p^m extended from a plain digit-tree scan to depth `depth`:
// every node keeps P(r) == 0 mod p^k. Used as a root-finding oracle.
std::vector<BigInt> scan_root_residues(const IntPoly& P, std::uint32_t p, unsigned m, unsigned depth);

}  // namespace padiclab
