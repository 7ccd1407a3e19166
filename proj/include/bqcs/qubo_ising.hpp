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
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bqcs/instances.hpp"

namespace bqcs {

/// Canonical (i, j) key with i < j.
using Edge = std::pair<std::size_t, std::size_t>;
using QuadraticMap = std::map<Edge, double>;

struct QuadraticTerm {
  std::size_t i;
  std::size_t j;
  double value;
};

namespace detail {

/// Shared storage for QUBO and Ising models. Validates i < j < n, finiteness
/// and duplicate keys.
struct QuadraticData {
  QuadraticData() = default;
  QuadraticData(std::vector<double> linear, QuadraticMap quadratic, double offset);
  QuadraticData(std::vector<double> linear, const std::vector<QuadraticTerm>& terms,
                double offset);

  std::vector<double> linear;
  QuadraticMap quadratic;
  double offset = 0.0;

  /// Largest |coefficient| over linear and quadratic terms (0 for an empty model).
  double max_abs_coefficient() const;

  friend bool operator==(const QuadraticData&, const QuadraticData&) = default;
};

}  // namespace detail

/// Binary quadratic model: sum_i lin[i] x_i + sum_{i<j} quad[i,j] x_i x_j, plus `offset`.
class QuboModel {
 public:
  QuboModel() = default;
  QuboModel(std::vector<double> lin, QuadraticMap quad, double offset)
      : data_(std::move(lin), std::move(quad), offset) {}
  QuboModel(std::vector<double> lin, const std::vector<QuadraticTerm>& terms, double offset)
      : data_(std::move(lin), terms, offset) {}

  std::size_t n() const { return data_.linear.size(); }
  const std::vector<double>& lin() const { return data_.linear; }
  const QuadraticMap& quad() const { return data_.quadratic; }
  double offset() const { return data_.offset; }
  double quad(std::size_t i, std::size_t j) const;
  double max_abs_coefficient() const { return data_.max_abs_coefficient(); }

  /// All coefficients and the offset multiplied by c.
  QuboModel scaled(double c) const;

  friend bool operator==(const QuboModel&, const QuboModel&) = default;

 private:
  detail::QuadraticData data_;
};

/// Spin model: sum_i field[i] z_i + sum_{i<j} coupling[i,j] z_i z_j, plus `offset`.
class IsingModel {
 public:
  IsingModel() = default;
  IsingModel(std::vector<double> field, QuadraticMap coupling, double offset)
      : data_(std::move(field), std::move(coupling), offset) {}
  IsingModel(std::vector<double> field, const std::vector<QuadraticTerm>& terms, double offset)
      : data_(std::move(field), terms, offset) {}

  std::size_t n() const { return data_.linear.size(); }
  const std::vector<double>& field() const { return data_.linear; }
  const QuadraticMap& coupling() const { return data_.quadratic; }
  double offset() const { return data_.offset; }
  double coupling(std::size_t i, std::size_t j) const;
  double max_abs_coefficient() const { return data_.max_abs_coefficient(); }

  IsingModel scaled(double c) const;

  friend bool operator==(const IsingModel&, const IsingModel&) = default;

 private:
  detail::QuadraticData data_;
};

/// QUBO whose energy plus offset equals ||y - A x||^2 + lambda ||x||_0.
///   lin[i]    = lambda + sum_t A_ti (A_ti - 2 y_t)
///   quad[i,j] = 2 sum_t A_ti A_tj
///   offset    = ||y||^2
QuboModel build_qubo(const CSInstance& inst);

/// Energy without the offset.
double qubo_energy(const QuboModel& q, const BinarySignal& x);

/// ||y - A x||^2 + lambda ||x||_0, evaluated directly from the instance.
double objective(const CSInstance& inst, const BinarySignal& x);

/// Substitutes x = (z + 1) / 2; the returned offset absorbs every constant.
IsingModel qubo_to_ising(const QuboModel& q);

/// Energy without the offset. Throws DomainError on entries other than +-1.
double ising_energy(const IsingModel& s, const SpinVector& z);

// Line-oriented text export:
//   # type ising|qubo
//   # n <int>
//   # offset <real>
//   h <i> <real>
//   J <i> <j> <real>
std::string dump_model(const QuboModel& q);
std::string dump_model(const IsingModel& s);

using AnyModel = std::variant<QuboModel, IsingModel>;

AnyModel parse_model(const std::string& text);
void save_model(const AnyModel& model, const std::filesystem::path& path);
AnyModel load_model(const std::filesystem::path& path);

/// Decimal text with 17 significant digits.
std::string format_real(double v);

}  // namespace bqcs
