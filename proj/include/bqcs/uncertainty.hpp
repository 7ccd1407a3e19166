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
#include <string>
#include <vector>

#include "bqcs/instances.hpp"
#include "bqcs/solvers.hpp"

namespace bqcs {

/// A(d) = A0 + sum_i d_i A_i.
MeasurementMatrix assemble_A(const UncertainCSInstance& inst, const Vector& d);

/// Least-squares data for the d-subproblem at fixed x:
/// G = [A_1 x, ..., A_r x] (m x r) and c = y - A0 x.
struct LeastSquaresData {
  Matrix G;
  Vector c;
};

LeastSquaresData build_Gc(const UncertainCSInstance& inst, const BinarySignal& x);

/// Unique minimizer of ||G d - c||^2 + ||d||^2 / gamma, i.e. the solution of
/// (G^T G + I / gamma) d = G^T c, via a Cholesky factorization.
Vector solve_d(const Matrix& G, const Vector& c, double gamma);

/// ||A(d) x - y||^2 + ||d||^2 / gamma + lambda ||x||_0.
double uncertain_objective(const UncertainCSInstance& inst, const BinarySignal& x,
                           const Vector& d);

/// ||A(d) x - y||_2.
double uncertain_residual(const UncertainCSInstance& inst, const BinarySignal& x, const Vector& d);

enum class Termination { epsilon, max_iters, stagnation };

std::string to_string(Termination t);

struct RecoveryIterate {
  BinarySignal x;
  Vector d;
  double objective;  // full penalized objective at (x, d)
  double residual;   // ||A(d) x - y||_2
  bool x_accepted;   // false when the x-step candidate was rejected as non-improving
};

struct RecoveryTrace {
  std::vector<RecoveryIterate> iterations;
  Termination terminated_by = Termination::max_iters;
  bool converged = false;  // residual <= eps at exit
};

struct RecoveryOptions {
  SolverConfig solver;
  double eps = 1e-6;
  std::size_t max_iters = 50;
  /// Minimum objective decrease that counts as progress.
  double stagnation_tol = 1e-12;
  /// Consecutive non-improving iterations before stopping.
  std::size_t stagnation_window = 2;
};

/// Alternating minimization over the binary signal x (QUBO solve at fixed d)
/// and the uncertainty parameters d (closed form at fixed x), starting at d = 0.
/// A new x is kept only if it does not increase the full objective at the
/// current d, so the recorded objective never increases.
RecoveryTrace recover(const UncertainCSInstance& inst, const RecoveryOptions& options,
                      std::uint64_t seed);

}  // namespace bqcs
