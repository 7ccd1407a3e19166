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

#include <doctest.h>

#include <bit>
#include <random>

#include "bqcs/diagnostics.hpp"
#include "bqcs/error.hpp"
#include "bqcs/solvers.hpp"
#include "oracles.hpp"

using namespace bqcs;

namespace {

Eigen::MatrixXd upper() {
  Eigen::MatrixXd a(2, 2);
  a << 1.0, 1.0, 0.0, 1.0;
  return a;
}

Eigen::MatrixXd unit_columns(Eigen::MatrixXd a) {
  a.colwise().normalize();
  return a;
}

// Brute-force δ_s via eigenvalues of every Gram submatrix.
double rip_by_gram(const Eigen::MatrixXd& a, std::size_t s) {
  const auto n = static_cast<std::size_t>(a.cols());
  double delta = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != s) continue;
    Eigen::MatrixXd sub(a.rows(), static_cast<Eigen::Index>(s));
    Eigen::Index k = 0;
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1U) sub.col(k++) = a.col(static_cast<Eigen::Index>(i));
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sub.transpose() * sub).eigenvalues();
    delta = std::max({delta, ev.maxCoeff() - 1.0, 1.0 - ev.minCoeff()});
  }
  return delta;
}

}  // namespace

TEST_CASE("mutual coherence") {
  CHECK(mutual_coherence(MeasurementMatrix(Eigen::MatrixXd::Identity(3, 3))) == 0.0);
  CHECK(std::abs(mutual_coherence(MeasurementMatrix(upper())) - 1.0 / std::sqrt(2.0)) <= 1e-12);
  Eigen::MatrixXd dup(3, 3);
  dup << 1, 2, 1, 0, 1, 0, 3, 0, 3;
  CHECK(mutual_coherence(MeasurementMatrix(dup)) == doctest::Approx(1.0).epsilon(1e-14));

  std::mt19937_64 rng(1);
  const auto a = oracle::random_instance(5, 7, rng).A().entries();
  Eigen::MatrixXd scaled = a;
  for (Eigen::Index c = 0; c < scaled.cols(); ++c) scaled.col(c) *= 0.1 + c;
  CHECK(mutual_coherence(MeasurementMatrix(scaled)) ==
        doctest::Approx(mutual_coherence(MeasurementMatrix(a))).epsilon(1e-12));

  Eigen::MatrixXd zero_col = upper();
  zero_col.col(1).setZero();
  CHECK_THROWS_AS(mutual_coherence(MeasurementMatrix(zero_col)), DegenerateColumnError);
  CHECK_THROWS_AS(mutual_coherence(MeasurementMatrix(Eigen::MatrixXd::Ones(3, 1))), DimensionError);
  CHECK(coherence_sparsity_bound(0.5) == doctest::Approx(1.5));
}

TEST_CASE("RIP constants") {
  CHECK(rip_constant(MeasurementMatrix(unit_columns(upper())), 1) <= 1e-15);
  CHECK(std::abs(rip_constant(MeasurementMatrix(unit_columns(upper())), 2) - 1.0 / std::sqrt(2.0)) <=
        1e-10);
  CHECK(rip_constant(MeasurementMatrix(Eigen::MatrixXd::Identity(4, 4)), 3) <= 1e-14);

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = oracle::random_instance(6, 8, rng).A().entries();
    double previous = 0.0;
    for (std::size_t s = 1; s <= 4; ++s) {
      const double d = rip_constant(MeasurementMatrix(a), s);
      CHECK(d == doctest::Approx(rip_by_gram(a, s)).epsilon(1e-10));
      CHECK(d >= previous - 1e-12);
      previous = d;
    }
  }
  CHECK_THROWS_AS(rip_constant(MeasurementMatrix(Eigen::MatrixXd::Identity(3, 3)), 4), DimensionError);
  CHECK_THROWS_AS(rip_constant(MeasurementMatrix(Eigen::MatrixXd::Ones(2, 30)), 10, 1000), CapError);
}

TEST_CASE("verify_uniqueness") {
  SUBCASE("unique identity example") {
    Eigen::VectorXd y(2);
    y << 1.0, 0.0;
    const CSInstance inst(MeasurementMatrix(Eigen::MatrixXd::Identity(2, 2)), y, 0.1);
    const auto r = verify_uniqueness(inst);
    CHECK(r.unique);
    REQUIRE(r.minimizers.size() == 1);
    CHECK(r.minimizers[0] == BinarySignal(std::vector<std::uint8_t>{1, 0}));
    CHECK(r.minimum == doctest::Approx(0.1));
  }
  SUBCASE("tied row example") {
    Eigen::MatrixXd a(1, 2);
    a << 1.0, 1.0;
    Eigen::VectorXd y(1);
    y << 1.0;
    const auto r = verify_uniqueness(CSInstance(MeasurementMatrix(a), y, 0.1));
    CHECK_FALSE(r.unique);
    REQUIRE(r.minimizers.size() == 2);
    CHECK(r.minimizers[0] == BinarySignal(std::vector<std::uint8_t>{1, 0}));
    CHECK(r.minimizers[1] == BinarySignal(std::vector<std::uint8_t>{0, 1}));
  }
  SUBCASE("agrees with the exhaustive solver") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t n = 1 + trial % 12;
      const auto inst = oracle::random_instance(1 + trial % 5, n, rng);
      const auto r = verify_uniqueness(inst);
      const auto ex = solve_exhaustive(build_qubo(inst));
      REQUIRE(r.minimizers.size() == ex.minimizers.size());
      for (std::size_t k = 0; k < ex.minimizers.size(); ++k) {
        const auto& v = r.minimizers[k].values();
        CHECK(State(v.begin(), v.end()) == ex.minimizers[k]);
      }
      CHECK(r.minimum == doctest::Approx(ex.best_energy).epsilon(1e-12));
    }
  }
  SUBCASE("cap") {
    std::mt19937_64 rng(4);
    CHECK_THROWS_AS(verify_uniqueness(oracle::random_instance(3, 21, rng)), SizeError);
  }
}

TEST_CASE("recovery metrics") {
  Eigen::VectorXd y(3);
  y << 1.0, 0.0, 1.0;
  const CSInstance inst(MeasurementMatrix(Eigen::MatrixXd::Identity(3, 3)), y, 0.1);
  const BinarySignal truth(std::vector<std::uint8_t>{1, 0, 1});

  auto m = recovery_metrics(truth, truth, inst);
  CHECK(m.exact_match);
  CHECK(m.hamming == 0);
  CHECK(m.support_f1 == 1.0);
  CHECK(m.residual == 0.0);

  m = recovery_metrics(BinarySignal(std::vector<std::uint8_t>{1, 1, 0}), truth, inst);
  CHECK_FALSE(m.exact_match);
  CHECK(m.hamming == 2);
  CHECK(m.support_precision == 0.5);
  CHECK(m.support_recall == 0.5);
  CHECK(m.support_f1 == 0.5);
  CHECK(m.residual == doctest::Approx(std::sqrt(2.0)));

  m = recovery_metrics(BinarySignal::zeros(3), BinarySignal::zeros(3), inst);
  CHECK(m.exact_match);
  CHECK(m.support_f1 == 1.0);
  CHECK_THROWS_AS(recovery_metrics(BinarySignal::zeros(2), truth, inst), DimensionError);
}
