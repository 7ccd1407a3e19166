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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bqcs/diagnostics.hpp"
#include "bqcs/error.hpp"
#include "bqcs/hardware.hpp"
#include "bqcs/instances.hpp"
#include "bqcs/qubo_ising.hpp"
#include "bqcs/solvers.hpp"
#include "bqcs/uncertainty.hpp"

namespace py = pybind11;
using namespace bqcs;

namespace {

BinarySignal to_signal(const std::vector<int>& bits) {
  std::vector<std::uint8_t> v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0 && bits[i] != 1) throw DomainError("binary entries must be 0 or 1");
    v[i] = static_cast<std::uint8_t>(bits[i]);
  }
  return BinarySignal(std::move(v));
}

std::vector<int> from_signal(const BinarySignal& x) { return {x.values().begin(), x.values().end()}; }

SpinVector to_spins(const std::vector<int>& z) {
  SpinVector out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] != 1 && z[i] != -1) throw DomainError("spins must be -1 or +1");
    out[i] = static_cast<std::int8_t>(z[i]);
  }
  return out;
}

std::vector<int> widen(const State& s) { return {s.begin(), s.end()}; }

}  // namespace

PYBIND11_MODULE(_bqcs, m) {
  m.doc() = "Binary compressive sensing through QUBO/Ising models";

  static py::exception<Error> base_error(m, "Error");
  static py::exception<ValidationError> validation_error(m, "ValidationError", base_error.ptr());
  static py::exception<SolverError> solver_error(m, "SolverError", base_error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationError& e) {
      py::set_error(validation_error, e.what());
    } catch (const SolverError& e) {
      py::set_error(solver_error, e.what());
    } catch (const Error& e) {
      py::set_error(base_error, e.what());
    }
  });

  // instances
  py::class_<CSInstance>(m, "CSInstance")
      .def(py::init([](const Matrix& a, const Vector& y, double lambda) {
             return CSInstance(MeasurementMatrix(a), y, lambda);
           }),
           py::arg("A"), py::arg("y"), py::arg("lam"))
      .def_property_readonly("A", [](const CSInstance& c) { return c.A().entries(); })
      .def_property_readonly("y", &CSInstance::y)
      .def_property_readonly("lam", &CSInstance::lambda)
      .def_property_readonly("m", &CSInstance::m)
      .def_property_readonly("n", &CSInstance::n);

  py::class_<UncertainCSInstance>(m, "UncertainCSInstance")
      .def(py::init([](const Matrix& a0, const std::vector<Matrix>& ai, const Vector& y,
                       double gamma, double lambda) {
             std::vector<MeasurementMatrix> p;
             for (const auto& a : ai) p.emplace_back(a);
             return UncertainCSInstance(MeasurementMatrix(a0), std::move(p), y, gamma, lambda);
           }),
           py::arg("A0"), py::arg("Ai"), py::arg("y"), py::arg("gamma"), py::arg("lam"))
      .def_property_readonly("A0", [](const UncertainCSInstance& u) { return u.A0().entries(); })
      .def_property_readonly("Ai",
                             [](const UncertainCSInstance& u) {
                               std::vector<Matrix> out;
                               for (const auto& p : u.perturbations()) out.push_back(p.entries());
                               return out;
                             })
      .def_property_readonly("y", &UncertainCSInstance::y)
      .def_property_readonly("gamma", &UncertainCSInstance::gamma)
      .def_property_readonly("lam", &UncertainCSInstance::lambda)
      .def_property_readonly("r", &UncertainCSInstance::r);

  m.def(
      "gen_matrix",
      [](std::size_t rows, std::size_t cols, const std::string& dist, std::uint64_t seed) {
        return gen_matrix(rows, cols, parse_distribution(dist), seed).entries();
      },
      py::arg("m"), py::arg("n"), py::arg("dist") = "gaussian", py::arg("seed") = 0);
  m.def(
      "gen_planted",
      [](std::size_t rows, std::size_t n, std::size_t s, const std::string& dist,
         std::uint64_t seed) {
        auto p = gen_planted(rows, n, s, parse_distribution(dist), seed);
        return py::make_tuple(p.instance, from_signal(p.truth));
      },
      py::arg("m"), py::arg("n"), py::arg("s"), py::arg("dist") = "gaussian", py::arg("seed") = 0,
      "Planted instance and its ground-truth signal.");
  m.def(
      "gen_uncertain_planted",
      [](std::size_t rows, std::size_t n, std::size_t s, std::size_t r, double gamma, bool noise,
         std::uint64_t seed) {
        auto p = gen_uncertain_planted(rows, n, s, r, gamma, noise, seed);
        return py::make_tuple(p.instance, from_signal(p.truth), p.true_d);
      },
      py::arg("m"), py::arg("n"), py::arg("s"), py::arg("r") = 1, py::arg("gamma") = 1e4,
      py::arg("noise") = false, py::arg("seed") = 0);

  // qubo / ising
  py::class_<QuboModel>(m, "QuboModel")
      .def(py::init<std::vector<double>, QuadraticMap, double>(), py::arg("lin"),
           py::arg("quad"), py::arg("offset") = 0.0)
      .def_property_readonly("n", &QuboModel::n)
      .def_property_readonly("lin", [](const QuboModel& q) { return q.lin(); })
      .def_property_readonly("quad", [](const QuboModel& q) { return q.quad(); })
      .def_property_readonly("offset", &QuboModel::offset)
      .def("__repr__", [](const QuboModel& q) { return dump_model(q); });

  py::class_<IsingModel>(m, "IsingModel")
      .def(py::init<std::vector<double>, QuadraticMap, double>(), py::arg("field"),
           py::arg("coupling"), py::arg("offset") = 0.0)
      .def_property_readonly("n", &IsingModel::n)
      .def_property_readonly("field", [](const IsingModel& s) { return s.field(); })
      .def_property_readonly("coupling", [](const IsingModel& s) { return s.coupling(); })
      .def_property_readonly("offset", &IsingModel::offset)
      .def("__repr__", [](const IsingModel& s) { return dump_model(s); });

  m.def("build_qubo", &build_qubo, py::arg("inst"));
  m.def("qubo_to_ising", &qubo_to_ising, py::arg("q"));
  m.def(
      "qubo_energy",
      [](const QuboModel& q, const std::vector<int>& x) { return qubo_energy(q, to_signal(x)); },
      py::arg("q"), py::arg("x"));
  m.def(
      "ising_energy",
      [](const IsingModel& s, const std::vector<int>& z) { return ising_energy(s, to_spins(z)); },
      py::arg("s"), py::arg("z"));
  m.def(
      "objective",
      [](const CSInstance& inst, const std::vector<int>& x) {
        return objective(inst, to_signal(x));
      },
      py::arg("inst"), py::arg("x"));

  // solvers
  py::class_<SolveResult>(m, "SolveResult")
      .def_property_readonly("best_state", [](const SolveResult& r) { return widen(r.best_state); })
      .def_readonly("best_energy", &SolveResult::best_energy)
      .def_property_readonly("minimizers",
                             [](const SolveResult& r) {
                               std::vector<std::vector<int>> out;
                               for (const auto& s : r.minimizers) out.push_back(widen(s));
                               return out;
                             })
      .def_readonly("minimizers_truncated", &SolveResult::minimizers_truncated)
      .def_property_readonly("read_energies",
                             [](const SolveResult& r) {
                               std::vector<double> out;
                               for (const auto& read : r.reads) out.push_back(read.energy);
                               return out;
                             })
      .def_property_readonly("backend", [](const SolveResult& r) { return to_string(r.backend); })
      .def_readonly("seed", &SolveResult::seed);

  m.def(
      "solve_exhaustive", [](const QuboModel& q, std::size_t cap) { return solve_exhaustive(q, cap); },
      py::arg("model"), py::arg("cap_n") = kDefaultExhaustiveCap);
  m.def(
      "solve_exhaustive",
      [](const IsingModel& s, std::size_t cap) { return solve_exhaustive(s, cap); },
      py::arg("model"), py::arg("cap_n") = kDefaultExhaustiveCap);
  m.def(
      "solve_sa",
      [](const IsingModel& s, std::optional<std::size_t> sweeps, std::optional<double> beta0,
         std::optional<double> beta1, std::optional<std::size_t> reads, std::uint64_t seed) {
        auto sched = AnnealSchedule::defaults_for(s);
        if (sweeps) sched.sweeps = *sweeps;
        if (beta0) sched.beta_initial = *beta0;
        if (beta1) sched.beta_final = *beta1;
        if (reads) sched.reads = *reads;
        return solve_sa(s, sched, seed);
      },
      py::arg("model"), py::arg("sweeps") = py::none(), py::arg("beta_initial") = py::none(),
      py::arg("beta_final") = py::none(), py::arg("reads") = py::none(), py::arg("seed") = 0);
  m.def("solve_local", &solve_local, py::arg("model"), py::arg("starts") = 50,
        py::arg("seed") = 0);

  // uncertainty
  m.def("assemble_A",
        [](const UncertainCSInstance& inst, const Vector& d) { return assemble_A(inst, d).entries(); },
        py::arg("inst"), py::arg("d"));
  m.def(
      "build_Gc",
      [](const UncertainCSInstance& inst, const std::vector<int>& x) {
        auto gc = build_Gc(inst, to_signal(x));
        return py::make_tuple(gc.G, gc.c);
      },
      py::arg("inst"), py::arg("x"));
  m.def("solve_d", &solve_d, py::arg("G"), py::arg("c"), py::arg("gamma"));
  m.def(
      "recover",
      [](const UncertainCSInstance& inst, const std::string& backend, double eps,
         std::size_t max_iters, std::uint64_t seed) {
        RecoveryOptions opts;
        opts.solver.backend = parse_backend(backend);
        opts.eps = eps;
        opts.max_iters = max_iters;
        const auto trace = recover(inst, opts, seed);
        py::list its;
        for (const auto& it : trace.iterations) {
          py::dict d;
          d["x"] = from_signal(it.x);
          d["d"] = it.d;
          d["objective"] = it.objective;
          d["residual"] = it.residual;
          d["x_accepted"] = it.x_accepted;
          its.append(d);
        }
        py::dict out;
        out["iterations"] = its;
        out["terminated_by"] = to_string(trace.terminated_by);
        out["converged"] = trace.converged;
        return out;
      },
      py::arg("inst"), py::arg("backend") = "exhaustive", py::arg("eps") = 1e-6,
      py::arg("max_iters") = 50, py::arg("seed") = 0);

  // hardware
  m.def(
      "normalize",
      [](const IsingModel& s) {
        auto r = normalize(s);
        return py::make_tuple(r.model, r.scale);
      },
      py::arg("model"));
  m.def("quantize", &quantize, py::arg("model"), py::arg("bits") = 5);
  m.def(
      "chimera_edges",
      [](std::size_t rows, std::size_t cols, std::size_t t) {
        const auto g = chimera(rows, cols, t);
        return std::vector<Edge>(g.edges().begin(), g.edges().end());
      },
      py::arg("cells_rows"), py::arg("cells_cols"), py::arg("t") = 4);
  m.def(
      "embed_in_cell",
      [](const IsingModel& s, std::size_t t, std::optional<double> chain_strength) {
        const auto g = chimera(1, 1, t);
        const auto emb = cell_clique_embedding(s.n(), g);
        return py::make_tuple(embed(s, g, emb, chain_strength), emb.chains);
      },
      py::arg("model"), py::arg("t") = 4, py::arg("chain_strength") = py::none(),
      "Embeds a model of at most t variables into one Chimera cell.");
  m.def(
      "unembed",
      [](const std::vector<int>& physical, const std::vector<std::vector<std::size_t>>& chains) {
        const auto r = unembed(to_spins(physical), EmbeddingMap{chains});
        return py::make_tuple(std::vector<int>(r.spins.begin(), r.spins.end()), r.broken_chains);
      },
      py::arg("physical"), py::arg("chains"));

  // diagnostics
  m.def("mutual_coherence",
        [](const Matrix& a) { return mutual_coherence(MeasurementMatrix(a)); }, py::arg("A"));
  m.def(
      "rip_constant",
      [](const Matrix& a, std::size_t s, std::uint64_t cap) {
        return rip_constant(MeasurementMatrix(a), s, cap);
      },
      py::arg("A"), py::arg("s"), py::arg("enum_cap") = 1'000'000);
  m.def(
      "verify_uniqueness",
      [](const CSInstance& inst, std::size_t cap) {
        const auto r = verify_uniqueness(inst, cap);
        std::vector<std::vector<int>> mins;
        for (const auto& x : r.minimizers) mins.push_back(from_signal(x));
        return py::make_tuple(r.unique, mins);
      },
      py::arg("inst"), py::arg("cap_n") = 20);

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "dev";
#endif
}
