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

#include <random>

#include "bqcs/error.hpp"
#include "bqcs/solvers.hpp"
#include "oracles.hpp"

using namespace bqcs;

namespace {

QuboModel row_qubo() {
  Eigen::MatrixXd a(1, 2);
  a << 1.0, 1.0;
  Eigen::VectorXd y(1);
  y << 1.0;
  return build_qubo(CSInstance(MeasurementMatrix(a), y, 0.1));
}

QuboModel identity_qubo() {
  Eigen::VectorXd y(2);
  y << 1.0, 0.0;
  return build_qubo(CSInstance(MeasurementMatrix(Eigen::MatrixXd::Identity(2, 2)), y, 0.1));
}

SpinVector as_spins(const State& s) { return SpinVector(s.begin(), s.end()); }

}  // namespace

TEST_CASE("solve_exhaustive worked examples") {
  SUBCASE("single spin aligns against its field") {
    const IsingModel s(std::vector<double>{1.0}, QuadraticMap{}, 0.0);
    const auto r = solve_exhaustive(s);
    CHECK(r.best_state == State{-1});
    CHECK(r.best_energy == -1.0);
    CHECK(r.minimizers.size() == 1);
  }
  SUBCASE("two tied minimizers") {
    const auto r = solve_exhaustive(row_qubo());
    CHECK(r.kind == StateKind::binary);
    CHECK(r.best_energy == doctest::Approx(0.1));
    REQUIRE(r.minimizers.size() == 2);
    CHECK(r.minimizers[0] == State{1, 0});
    CHECK(r.minimizers[1] == State{0, 1});
  }
  SUBCASE("unique minimizer") {
    const auto r = solve_exhaustive(identity_qubo());
    CHECK(r.best_state == State{1, 0});
    CHECK(r.best_energy == doctest::Approx(0.1));
    CHECK(r.minimizers.size() == 1);
  }
  SUBCASE("size cap") {
    const IsingModel big(std::vector<double>(30, 0.0), QuadraticMap{}, 0.0);
    CHECK_THROWS_AS(solve_exhaustive(big), SizeError);
    CHECK_THROWS_AS(solve_exhaustive(IsingModel(std::vector<double>(5, 0.0), QuadraticMap{}, 0), 4),
                    SizeError);
  }
  SUBCASE("minimizer cap on a fully degenerate model") {
    const IsingModel zero(std::vector<double>(12, 0.0), QuadraticMap{}, 0.5);
    const auto r = solve_exhaustive(zero);
    CHECK(r.minimizers.size() == kMinimizerCap);
    CHECK(r.minimizers_truncated);
    CHECK(r.best_energy == 0.5);
  }
}

TEST_CASE("exhaustive oracle soundness against an independent enumeration") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 12;
    const auto s = oracle::random_ising(n, rng, 0.7);
    const auto r = solve_exhaustive(s);
    CHECK(r.best_energy == doctest::Approx(oracle::ising_min_descending(s)).epsilon(1e-12));
    CHECK(std::abs(ising_energy(s, as_spins(r.best_state)) + s.offset() - r.best_energy) <= 1e-12);
    for (const auto& m : r.minimizers) {
      CHECK(std::abs(ising_energy(s, as_spins(m)) + s.offset() - r.best_energy) <= 1e-12);
    }

    const auto inst = oracle::random_instance(1 + trial % 6, n, rng);
    const auto q = build_qubo(inst);
    const auto rq = solve_exhaustive(q);
    CHECK(rq.best_energy == doctest::Approx(oracle::qubo_min_descending(q)).epsilon(1e-12));
  }
}

TEST_CASE("simulated annealing") {
  std::mt19937_64 rng(3);
  const auto s = oracle::random_ising(12, rng);
  const auto sched = AnnealSchedule::defaults_for(s);

  SUBCASE("deterministic given the seed") {
    const auto a = solve_sa(s, sched, 42);
    const auto b = solve_sa(s, sched, 42);
    CHECK(a.best_state == b.best_state);
    CHECK(a.best_energy == b.best_energy);
    REQUIRE(a.reads.size() == b.reads.size());
    for (std::size_t k = 0; k < a.reads.size(); ++k) CHECK(a.reads[k].state == b.reads[k].state);
  }
  SUBCASE("best is never worse than any starting state") {
    AnnealSchedule short_run = sched;
    short_run.sweeps = 3;
    const auto r = solve_sa(s, short_run, 5);
    for (const auto& read : r.reads) {
      CHECK(r.best_energy <= read.initial_energy);
      CHECK(read.energy <= read.initial_energy);
      CHECK(std::abs(ising_energy(s, as_spins(read.state)) + s.offset() - read.energy) <= 1e-12);
    }
  }
  SUBCASE("never below the exhaustive minimum") {
    const auto exact = solve_exhaustive(s);
    const auto r = solve_sa(s, sched, 9);
    CHECK(r.best_energy >= exact.best_energy - 1e-12);
  }
  SUBCASE("schedule validation") {
    AnnealSchedule bad = sched;
    bad.beta_final = bad.beta_initial;
    CHECK_THROWS_AS(solve_sa(s, bad, 0), ScheduleError);
    bad = sched;
    bad.sweeps = 0;
    CHECK_THROWS_AS(solve_sa(s, bad, 0), ScheduleError);
    bad = sched;
    bad.reads = 0;
    CHECK_THROWS_AS(solve_sa(s, bad, 0), ScheduleError);
  }
  SUBCASE("default schedule scales with the coefficients") {
    const auto big = s.scaled(1000.0);
    const auto d = AnnealSchedule::defaults_for(big);
    CHECK(d.beta_final == doctest::Approx(10.0 / big.max_abs_coefficient()));
    CHECK(d.beta_initial < d.beta_final);
    CHECK_NOTHROW(d.validate());
  }
}

TEST_CASE("simulated annealing finds ground states of small random models") {
  std::mt19937_64 rng(2024);
  int hits = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = oracle::random_ising(12, rng);
    const auto exact = solve_exhaustive(s);
    const auto r = solve_sa(s, AnnealSchedule::defaults_for(s), static_cast<std::uint64_t>(trial));
    if (std::abs(r.best_energy - exact.best_energy) <= 1e-9) ++hits;
  }
  CHECK(hits >= 27);
}

TEST_CASE("local descent") {
  SUBCASE("separable model goes all up") {
    const IsingModel s(std::vector<double>(6, -1.0), QuadraticMap{}, 0.0);
    const auto r = solve_local(s, 4, 1);
    for (const auto& read : r.reads) CHECK(read.state == State(6, 1));
  }
  SUBCASE("results are one-flip optimal") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
      const auto s = oracle::random_ising(10, rng);
      const auto r = solve_local(s, 5, static_cast<std::uint64_t>(trial));
      for (const auto& read : r.reads) {
        auto z = as_spins(read.state);
        const double e = ising_energy(s, z);
        for (std::size_t i = 0; i < z.size(); ++i) {
          z[i] = static_cast<std::int8_t>(-z[i]);
          CHECK(ising_energy(s, z) >= e - 1e-9);
          z[i] = static_cast<std::int8_t>(-z[i]);
        }
      }
      CHECK(r.best_energy >= solve_exhaustive(s).best_energy - 1e-12);
    }
  }
  SUBCASE("deterministic") {
    std::mt19937_64 rng(12);
    const auto s = oracle::random_ising(9, rng);
    CHECK(solve_local(s, 7, 3).best_state == solve_local(s, 7, 3).best_state);
  }
}

TEST_CASE("local descent matches the exhaustive optimum on most models") {
  std::mt19937_64 rng(77);
  int hits = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = oracle::random_ising(10, rng);
    const auto exact = solve_exhaustive(s);
    const auto r = solve_local(s, 50, static_cast<std::uint64_t>(trial));
    if (std::abs(r.best_energy - exact.best_energy) <= 1e-9) ++hits;
  }
  MESSAGE("local descent hits: " << hits << "/100");
  CHECK(hits >= 80);
}

TEST_CASE("solve_qubo reports binary states for every backend") {
  const auto q = identity_qubo();
  for (auto b : {Backend::exhaustive, Backend::sa, Backend::local}) {
    SolverConfig cfg;
    cfg.backend = b;
    const auto r = solve_qubo(q, cfg, 1);
    CHECK(r.kind == StateKind::binary);
    CHECK(r.best_state == State{1, 0});
    CHECK(r.best_energy == doctest::Approx(0.1));
  }
  CHECK(parse_backend("sa") == Backend::sa);
  CHECK_THROWS_AS(parse_backend("quantum"), DomainError);
}
