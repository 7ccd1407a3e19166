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

#include "bqcs/diagnostics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "bqcs/error.hpp"
#include "bqcs/qubo_ising.hpp"
#include "bqcs/solvers.hpp"

namespace bqcs {

double mutual_coherence(const MeasurementMatrix& a) {
  const Matrix& m = a.entries();
  if (m.cols() < 2) throw DimensionError("mutual coherence needs at least two columns");
  Vector norms(m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    norms[j] = m.col(j).norm();
    if (norms[j] == 0.0) throw DegenerateColumnError("column " + std::to_string(j) + " is zero");
  }
  double mu = 0.0;
  for (Eigen::Index i = 0; i < m.cols(); ++i) {
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      mu = std::max(mu, std::abs(m.col(i).dot(m.col(j))) / (norms[i] * norms[j]));
    }
  }
  return std::min(mu, 1.0);
}

double coherence_sparsity_bound(double mu) {
  if (mu <= 0.0) return std::numeric_limits<double>::infinity();
  return 0.5 * (1.0 + 1.0 / mu);
}

namespace {

// C(n, k), or cap + 1 once it exceeds cap.
std::uint64_t bounded_binomial(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  k = std::min(k, n - k);
  long double acc = 1.0L;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (acc > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::uint64_t>(std::llround(acc));
}

}  // namespace

double rip_constant(const MeasurementMatrix& a, std::size_t s, std::uint64_t enum_cap) {
  const std::size_t n = a.cols();
  if (s < 1 || s > n) {
    throw DimensionError("RIP order s = " + std::to_string(s) + " must lie in [1, " +
                         std::to_string(n) + "]");
  }
  const auto count = bounded_binomial(n, s, enum_cap);
  if (count > enum_cap) {
    throw CapError("C(" + std::to_string(n) + ", " + std::to_string(s) +
                   ") submatrices exceed the enumeration cap of " + std::to_string(enum_cap));
  }

  const Matrix& m = a.entries();
  const bool rank_deficient = s > a.rows();
  std::vector<std::size_t> idx(s);
  for (std::size_t i = 0; i < s; ++i) idx[i] = i;
  Matrix sub(m.rows(), static_cast<Eigen::Index>(s));
  double delta = 0.0;
  for (;;) {
    for (std::size_t i = 0; i < s; ++i) {
      sub.col(static_cast<Eigen::Index>(i)) = m.col(static_cast<Eigen::Index>(idx[i]));
    }
    const Eigen::JacobiSVD<Matrix> svd(sub);
    const auto& sv = svd.singularValues();
    const double smax = sv.maxCoeff();
    const double smin = rank_deficient ? 0.0 : sv.minCoeff();
    delta = std::max({delta, smax * smax - 1.0, 1.0 - smin * smin});

    // Next combination in lexicographic order.
    std::size_t i = s;
    while (i > 0 && idx[i - 1] == n - s + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
  return delta;
}

UniquenessReport verify_uniqueness(const CSInstance& inst, std::size_t cap_n) {
  const std::size_t n = inst.n();
  if (n > cap_n || n > 62) {
    throw SizeError("uniqueness check over n = " + std::to_string(n) + " exceeds the cap of " +
                    std::to_string(cap_n));
  }
  const Matrix& a = inst.A().entries();
  const double lambda = inst.lambda();

  // Gray-code walk keeping the residual y - A x up to date.
  Vector r = inst.y();
  double scale = 1.0 + r.squaredNorm() + lambda * static_cast<double>(n);
  for (Eigen::Index j = 0; j < a.cols(); ++j) scale += a.col(j).squaredNorm();
  const double track_tol = 1e-9 * scale;

  std::uint64_t mask = 0;
  std::size_t ones = 0;
  double best = r.squaredNorm();
  std::vector<std::uint64_t> candidates{0};
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    const auto i = static_cast<Eigen::Index>(std::countr_zero(k));
    const std::uint64_t bit = std::uint64_t{1} << i;
    if (mask & bit) {
      r += a.col(i);
      --ones;
    } else {
      r -= a.col(i);
      ++ones;
    }
    mask ^= bit;
    const double value = r.squaredNorm() + lambda * static_cast<double>(ones);
    if (value < best - track_tol) {
      best = value;
      candidates.assign(1, mask);
    } else if (value <= best + track_tol) {
      best = std::min(best, value);
      candidates.push_back(mask);
    }
  }

  auto to_signal = [n](std::uint64_t m) {
    std::vector<std::uint8_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = (m >> i) & 1U;
    return BinarySignal(std::move(v));
  };
  std::vector<std::pair<double, std::uint64_t>> exact;
  double minimum = std::numeric_limits<double>::infinity();
  for (auto m : candidates) {
    const double v = objective(inst, to_signal(m));
    exact.emplace_back(v, m);
    minimum = std::min(minimum, v);
  }
  std::vector<std::uint64_t> tied;
  for (const auto& [v, m] : exact) {
    if (v <= minimum + kTieTolerance) tied.push_back(m);
  }
  std::sort(tied.begin(), tied.end());

  UniquenessReport out{tied.size() == 1, {}, minimum};
  for (auto m : tied) out.minimizers.push_back(to_signal(m));
  return out;
}

RecoveryMetrics recovery_metrics(const BinarySignal& x_hat, const BinarySignal& x_true,
                                 const CSInstance& inst) {
  if (x_hat.size() != x_true.size() || x_hat.size() != inst.n()) {
    throw DimensionError("recovery_metrics needs signals of length n = " +
                         std::to_string(inst.n()));
  }
  std::size_t hamming = 0;
  std::size_t tp = 0;
  for (std::size_t i = 0; i < x_hat.size(); ++i) {
    if (x_hat[i] != x_true[i]) ++hamming;
    if (x_hat[i] && x_true[i]) ++tp;
  }
  const auto predicted = x_hat.sparsity();
  const auto actual = x_true.sparsity();
  const double precision =
      predicted == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(predicted);
  const double recall = actual == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(actual);
  const double f1 =
      precision + recall == 0.0 ? 0.0 : 2.0 * precision * recall / (precision + recall);
  const double residual = (inst.y() - inst.A().entries() * x_hat.to_vector()).norm();
  return {hamming == 0, hamming, precision, recall, f1, residual};
}

}  // namespace bqcs
