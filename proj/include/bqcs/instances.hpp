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
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace bqcs {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Spin configuration, each entry -1 or +1.
using SpinVector = std::vector<std::int8_t>;

/// Dense real m x n sensing matrix with finite entries and m, n >= 1.
class MeasurementMatrix {
 public:
  explicit MeasurementMatrix(Matrix entries);

  std::size_t rows() const { return static_cast<std::size_t>(entries_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(entries_.cols()); }
  const Matrix& entries() const { return entries_; }
  double operator()(std::size_t r, std::size_t c) const {
    return entries_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }

  friend bool operator==(const MeasurementMatrix& a, const MeasurementMatrix& b) {
    return a.entries_.rows() == b.entries_.rows() && a.entries_.cols() == b.entries_.cols() &&
           a.entries_ == b.entries_;
  }

 private:
  Matrix entries_;
};

/// Vector in {0,1}^n.
class BinarySignal {
 public:
  BinarySignal() = default;
  explicit BinarySignal(std::vector<std::uint8_t> values);

  static BinarySignal zeros(std::size_t n);
  static BinarySignal from_support(std::size_t n, const std::vector<std::size_t>& support);
  static BinarySignal from_spins(const SpinVector& spins);

  std::size_t size() const { return values_.size(); }
  std::uint8_t operator[](std::size_t i) const { return values_[i]; }
  const std::vector<std::uint8_t>& values() const { return values_; }

  /// Number of ones.
  std::size_t sparsity() const;
  std::vector<std::size_t> support() const;
  Vector to_vector() const;
  SpinVector to_spins() const;

  friend bool operator==(const BinarySignal&, const BinarySignal&) = default;
  friend auto operator<=>(const BinarySignal&, const BinarySignal&) = default;

 private:
  std::vector<std::uint8_t> values_;
};

/// Standard binary compressive-sensing data: minimize ||y - A x||^2 + lambda ||x||_0.
class CSInstance {
 public:
  CSInstance(MeasurementMatrix a, Vector y, double lambda);

  const MeasurementMatrix& A() const { return a_; }
  const Vector& y() const { return y_; }
  double lambda() const { return lambda_; }
  std::size_t m() const { return a_.rows(); }
  std::size_t n() const { return a_.cols(); }

  CSInstance with_lambda(double lambda) const { return {a_, y_, lambda}; }

  friend bool operator==(const CSInstance& a, const CSInstance& b) {
    return a.a_ == b.a_ && a.y_ == b.y_ && a.lambda_ == b.lambda_;
  }

 private:
  MeasurementMatrix a_;
  Vector y_;
  double lambda_;
};

/// Sensing matrix known up to A(d) = A0 + sum_i d_i A_i.
class UncertainCSInstance {
 public:
  UncertainCSInstance(MeasurementMatrix a0, std::vector<MeasurementMatrix> perturbations,
                      Vector y, double gamma, double lambda);

  const MeasurementMatrix& A0() const { return a0_; }
  const std::vector<MeasurementMatrix>& perturbations() const { return perturbations_; }
  const Vector& y() const { return y_; }
  double gamma() const { return gamma_; }
  double lambda() const { return lambda_; }
  std::size_t m() const { return a0_.rows(); }
  std::size_t n() const { return a0_.cols(); }
  std::size_t r() const { return perturbations_.size(); }

  friend bool operator==(const UncertainCSInstance& a, const UncertainCSInstance& b) {
    return a.a0_ == b.a0_ && a.perturbations_ == b.perturbations_ && a.y_ == b.y_ &&
           a.gamma_ == b.gamma_ && a.lambda_ == b.lambda_;
  }

 private:
  MeasurementMatrix a0_;
  std::vector<MeasurementMatrix> perturbations_;
  Vector y_;
  double gamma_;
  double lambda_;
};

enum class Distribution { gaussian, bernoulli };

Distribution parse_distribution(const std::string& name);

/// Penalty used by the generators: 1e-3 * ||y||^2, floored at 1e-6.
double default_lambda(const Vector& y);

/// i.i.d. N(0, 1/m) (gaussian) or +-1/sqrt(m) (bernoulli) entries.
MeasurementMatrix gen_matrix(std::size_t m, std::size_t n, Distribution dist, std::uint64_t seed);

struct PlantedInstance {
  CSInstance instance;
  BinarySignal truth;
};

/// Random matrix, uniformly random s-subset support, y = A x* exactly.
PlantedInstance gen_planted(std::size_t m, std::size_t n, std::size_t s, Distribution dist,
                            std::uint64_t seed);

struct UncertainPlantedInstance {
  UncertainCSInstance instance;
  BinarySignal truth;
  Vector true_d;
};

/// Gaussian A0..Ar, d ~ N(0, 0.1^2 I), y = A(d) x* (+ e ~ N(0, I/gamma) when `noise`).
UncertainPlantedInstance gen_uncertain_planted(std::size_t m, std::size_t n, std::size_t s,
                                               std::size_t r, double gamma, bool noise,
                                               std::uint64_t seed);

struct GroundTruth {
  BinarySignal x;
  Vector d;  // empty for standard instances
};

/// Contents of an instance document: either form plus an optional truth block.
struct InstanceDocument {
  std::variant<CSInstance, UncertainCSInstance> instance;
  std::optional<GroundTruth> truth;

  bool is_uncertain() const { return std::holds_alternative<UncertainCSInstance>(instance); }
  const CSInstance& standard() const;
  const UncertainCSInstance& uncertain() const;
};

std::string dump_instance(const InstanceDocument& doc);
InstanceDocument parse_instance(const std::string& text);

void save_instance(const InstanceDocument& doc, const std::filesystem::path& path);
InstanceDocument load_instance(const std::filesystem::path& path);

}  // namespace bqcs
