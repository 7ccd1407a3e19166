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

#include "bqcs/uncertainty.hpp"

#include <cmath>

#include "bqcs/error.hpp"
#include "bqcs/qubo_ising.hpp"
#include "bqcs/rng.hpp"

namespace bqcs {

MeasurementMatrix assemble_A(const UncertainCSInstance& inst, const Vector& d) {
  if (static_cast<std::size_t>(d.size()) != inst.r()) {
    throw DimensionError("len(d) = " + std::to_string(d.size()) + " but r = " +
                         std::to_string(inst.r()));
  }
  Matrix a = inst.A0().entries();
  for (std::size_t i = 0; i < inst.r(); ++i) {
    a += d[static_cast<Eigen::Index>(i)] * inst.perturbations()[i].entries();
  }
  return MeasurementMatrix(std::move(a));
}

LeastSquaresData build_Gc(const UncertainCSInstance& inst, const BinarySignal& x) {
  if (x.size() != inst.n()) {
    throw DimensionError("signal length " + std::to_string(x.size()) + " != n = " +
                         std::to_string(inst.n()));
  }
  const Vector xv = x.to_vector();
  LeastSquaresData out;
  out.G.resize(static_cast<Eigen::Index>(inst.m()), static_cast<Eigen::Index>(inst.r()));
  for (std::size_t i = 0; i < inst.r(); ++i) {
    out.G.col(static_cast<Eigen::Index>(i)) = inst.perturbations()[i].entries() * xv;
  }
  out.c = inst.y() - inst.A0().entries() * xv;
  return out;
}

Vector solve_d(const Matrix& G, const Vector& c, double gamma) {
  if (G.rows() != c.size()) {
    throw DimensionError("G has " + std::to_string(G.rows()) + " rows but len(c) = " +
                         std::to_string(c.size()));
  }
  if (!G.allFinite() || !c.allFinite() || !std::isfinite(gamma)) {
    throw NumericError("solve_d received non-finite input");
  }
  if (gamma <= 0) throw DomainError("gamma must be > 0");
  Matrix normal = G.transpose() * G;
  normal.diagonal().array() += 1.0 / gamma;
  Eigen::LLT<Matrix> llt(normal);
  if (llt.info() != Eigen::Success) {
    throw NumericError("normal matrix is not numerically positive definite");
  }
  return llt.solve(G.transpose() * c);
}

double uncertain_residual(const UncertainCSInstance& inst, const BinarySignal& x,
                          const Vector& d) {
  if (x.size() != inst.n()) throw DimensionError("signal length mismatch");
  return (assemble_A(inst, d).entries() * x.to_vector() - inst.y()).norm();
}

double uncertain_objective(const UncertainCSInstance& inst, const BinarySignal& x,
                           const Vector& d) {
  if (x.size() != inst.n()) throw DimensionError("signal length mismatch");
  const double misfit = (assemble_A(inst, d).entries() * x.to_vector() - inst.y()).squaredNorm();
  return misfit + d.squaredNorm() / inst.gamma() +
         inst.lambda() * static_cast<double>(x.sparsity());
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::epsilon:
      return "epsilon";
    case Termination::max_iters:
      return "max_iters";
    case Termination::stagnation:
      return "stagnation";
  }
  return "unknown";
}

RecoveryTrace recover(const UncertainCSInstance& inst, const RecoveryOptions& options,
                      std::uint64_t seed) {
  if (!(options.eps > 0)) throw DomainError("eps must be > 0");
  if (options.max_iters < 1) throw DomainError("max_iters must be >= 1");

  RecoveryTrace trace;
  Vector d = Vector::Zero(static_cast<Eigen::Index>(inst.r()));
  BinarySignal x = BinarySignal::zeros(inst.n());
  double previous = uncertain_objective(inst, x, d);
  std::size_t stalled = 0;

  for (std::size_t it = 1; it <= options.max_iters; ++it) {
    // x-step at fixed d.
    const CSInstance fixed(assemble_A(inst, d), inst.y(), inst.lambda());
    const auto solved = solve_qubo(build_qubo(fixed), options.solver, derive_seed(seed, it));
    const BinarySignal candidate(
        std::vector<std::uint8_t>(solved.best_state.begin(), solved.best_state.end()));
    const bool accepted =
        uncertain_objective(inst, candidate, d) <= uncertain_objective(inst, x, d);
    if (accepted) x = candidate;

    // d-step at fixed x; keep the old d if rounding would make things worse.
    const auto [G, c] = build_Gc(inst, x);
    Vector d_new = solve_d(G, c, inst.gamma());
    if (uncertain_objective(inst, x, d_new) <= uncertain_objective(inst, x, d)) d = std::move(d_new);

    const double obj = uncertain_objective(inst, x, d);
    const double res = uncertain_residual(inst, x, d);
    trace.iterations.push_back({x, d, obj, res, accepted});

    if (res <= options.eps) {
      trace.terminated_by = Termination::epsilon;
      trace.converged = true;
      return trace;
    }
    stalled = previous - obj <= options.stagnation_tol ? stalled + 1 : 0;
    previous = obj;
    if (stalled >= options.stagnation_window) {
      trace.terminated_by = Termination::stagnation;
      return trace;
    }
  }
  trace.terminated_by = Termination::max_iters;
  return trace;
}

}  // namespace bqcs
