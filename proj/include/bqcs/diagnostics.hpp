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
#include <vector>

#include "bqcs/instances.hpp"

namespace bqcs {

/// Advisory recovery thresholds quoted in reports; nothing enforces them.
inline constexpr double kRip2sAdvisoryBound = 0.4931;

/// max_{i != j} |<a_i, a_j>| / (||a_i|| ||a_j||). Needs n >= 2 and no zero column.
double mutual_coherence(const MeasurementMatrix& a);

/// Classical coherence sparsity bound 0.5 (1 + 1/mu): signals sparser than this
/// are the unique sparsest solution.
double coherence_sparsity_bound(double mu);

/// Exact restricted isometry constant of order s by enumerating every
/// s-column submatrix: max_S max(sigma_max^2 - 1, 1 - sigma_min^2).
/// Throws CapError when C(n, s) > enum_cap.
double rip_constant(const MeasurementMatrix& a, std::size_t s, std::uint64_t enum_cap = 1'000'000);

struct UniquenessReport {
  bool unique;
  std::vector<BinarySignal> minimizers;  // ascending by bitmask (bit i = x_i)
  double minimum;
};

/// Enumerates {0,1}^n under ||y - A x||^2 + lambda ||x||_0; states within 1e-12
/// of the minimum count as tied.
UniquenessReport verify_uniqueness(const CSInstance& inst, std::size_t cap_n = 20);

struct RecoveryMetrics {
  bool exact_match;
  std::size_t hamming;
  double support_precision;
  double support_recall;
  double support_f1;
  double residual;
};

/// Support metrics; precision is 1 when x_hat is empty, recall is 1 when x_true is.
RecoveryMetrics recovery_metrics(const BinarySignal& x_hat, const BinarySignal& x_true,
                                 const CSInstance& inst);

}  // namespace bqcs
