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
#include <optional>
#include <string>
#include <vector>

#include "bqcs/qubo_ising.hpp"

namespace bqcs {

enum class Backend { exhaustive, sa, local };

Backend parse_backend(const std::string& name);
std::string to_string(Backend b);

/// Whether states hold bits {0,1} or spins {-1,+1}.
enum class StateKind { binary, spin };

using State = std::vector<std::int8_t>;

struct Read {
  State state;
  double energy;          // includes the model offset
  double initial_energy;  // energy of the chain's starting state (heuristics only)
};

struct SolveResult {
  StateKind kind = StateKind::spin;
  State best_state;
  double best_energy = 0.0;  // includes the model offset
  /// Every optimal state, exhaustive backend only, at most kMinimizerCap entries.
  std::vector<State> minimizers;
  bool minimizers_truncated = false;
  std::vector<Read> reads;
  Backend backend = Backend::exhaustive;
  std::uint64_t seed = 0;
};

/// Geometric inverse-temperature ramp for simulated annealing.
struct AnnealSchedule {
  std::size_t sweeps = 1000;
  double beta_initial = 0.1;
  double beta_final = 10.0;
  std::size_t reads = 32;

  /// Throws ScheduleError unless sweeps, reads >= 1 and 0 < beta_initial < beta_final.
  void validate() const;

  /// 1000 sweeps, 32 reads, beta 0.1 -> 10 / max|coefficient| (floored at 1e-6).
  /// When that final beta is below 0.1 the initial beta drops to final / 100.
  static AnnealSchedule defaults_for(const IsingModel& model);
};

inline constexpr std::size_t kDefaultExhaustiveCap = 25;
inline constexpr std::size_t kMinimizerCap = 1024;
/// Absolute energy tolerance for declaring two states tied.
inline constexpr double kTieTolerance = 1e-12;

/// Enumerates all 2^n states. Throws SizeError when n > cap_n.
SolveResult solve_exhaustive(const QuboModel& model, std::size_t cap_n = kDefaultExhaustiveCap);
SolveResult solve_exhaustive(const IsingModel& model, std::size_t cap_n = kDefaultExhaustiveCap);

/// Single-spin Metropolis annealing, `sched.reads` independent chains.
SolveResult solve_sa(const IsingModel& model, const AnnealSchedule& sched, std::uint64_t seed);

/// Steepest single-flip descent from `starts` random states.
SolveResult solve_local(const IsingModel& model, std::size_t starts, std::uint64_t seed);

/// Backend choice plus its parameters.
struct SolverConfig {
  Backend backend = Backend::exhaustive;
  std::optional<AnnealSchedule> schedule;  // sa; defaults_for(model) when empty
  std::size_t starts = 50;                  // local
  std::size_t cap_n = kDefaultExhaustiveCap;
};

/// Minimizes a QUBO with any backend. Heuristic backends run on the Ising
/// transform; the result is always reported in binary states with QUBO energies.
SolveResult solve_qubo(const QuboModel& model, const SolverConfig& config, std::uint64_t seed);

/// Dispatches an Ising model to the configured backend.
SolveResult solve_ising(const IsingModel& model, const SolverConfig& config, std::uint64_t seed);

}  // namespace bqcs
