// Copyright 2026 The bqcs Authors
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

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bqcs/instances.hpp"
#include "bqcs/solvers.hpp"

namespace bqcs {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitSolver = 3;

/// Phase-transition sweep over (m, s) cells of planted instances.
struct BenchGrid {
  std::size_t n = 16;
  std::vector<std::size_t> m_values;
  std::vector<std::size_t> s_values;
  std::size_t trials = 10;
  Distribution dist = Distribution::gaussian;
  SolverConfig solver;
  std::optional<double> lambda;  // default_lambda(y) per instance when empty
  bool check_uniqueness = true;
  std::uint64_t seed = 0;
};

struct BenchRow {
  std::size_t m;
  std::size_t n;
  std::size_t s;
  std::size_t trials;
  std::size_t discarded;
  double exact_rate;  // over trials that passed the uniqueness check
  double support_f1_mean;
  double residual_mean;
};

/// seed_trial = root XOR (cell_index * 2^40 + trial_index); cells are ordered
/// m-major over m_values x s_values.
std::uint64_t trial_seed(std::uint64_t root, std::size_t cell_index, std::size_t trial_index);

/// Throws SizeError when a cell exceeds the exhaustive or uniqueness caps.
std::vector<BenchRow> run_bench(const BenchGrid& grid);

/// CSV with header m,n,s,trials,discarded,exact_rate,support_f1_mean,residual_mean
/// and 6 significant digits.
std::string bench_csv(const std::vector<BenchRow>& rows);

/// Entry point of the `bqcs` command. Returns the process exit code:
/// 0 success, 2 validation error, 3 solver or size error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bqcs
