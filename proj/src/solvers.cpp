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

#include "bqcs/solvers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "bqcs/error.hpp"
#include "bqcs/rng.hpp"

namespace bqcs {

Backend parse_backend(const std::string& name) {
  if (name == "exhaustive") return Backend::exhaustive;
  if (name == "sa") return Backend::sa;
  if (name == "local") return Backend::local;
  throw DomainError("unknown backend \"" + name + "\"");
}

std::string to_string(Backend b) {
  switch (b) {
    case Backend::exhaustive:
      return "exhaustive";
    case Backend::sa:
      return "sa";
    case Backend::local:
      return "local";
  }
  return "unknown";
}

void AnnealSchedule::validate() const {
  if (sweeps < 1) throw ScheduleError("sweeps must be >= 1");
  if (reads < 1) throw ScheduleError("reads must be >= 1");
  if (!(std::isfinite(beta_initial) && beta_initial > 0)) {
    throw ScheduleError("beta_initial must be finite and > 0");
  }
  if (!(std::isfinite(beta_final) && beta_final > beta_initial)) {
    throw ScheduleError("beta_final must be finite and > beta_initial");
  }
}

AnnealSchedule AnnealSchedule::defaults_for(const IsingModel& model) {
  AnnealSchedule s;
  s.beta_final = 10.0 / std::max(model.max_abs_coefficient(), 1e-6);
  if (s.beta_final <= s.beta_initial) s.beta_initial = s.beta_final / 100.0;
  return s;
}

namespace {

// Adjacency in compressed-row form; both directions stored.
struct Neighbors {
  std::vector<std::size_t> start;
  std::vector<std::size_t> index;
  std::vector<double> weight;

  Neighbors(std::size_t n, const QuadraticMap& quad) : start(n + 1, 0) {
    for (const auto& [k, v] : quad) {
      ++start[k.first + 1];
      ++start[k.second + 1];
    }
    for (std::size_t i = 0; i < n; ++i) start[i + 1] += start[i];
    index.resize(start[n]);
    weight.resize(start[n]);
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (const auto& [k, v] : quad) {
      index[fill[k.first]] = k.second;
      weight[fill[k.first]++] = v;
      index[fill[k.second]] = k.first;
      weight[fill[k.second]++] = v;
    }
  }
};

// Variables take values lo or hi; energy = sum h_i v_i + sum_{i<j} W_ij v_i v_j.
struct Enumeration {
  std::uint64_t best_mask = 0;
  std::vector<std::uint64_t> candidates;
  bool truncated = false;
};

Enumeration enumerate(const std::vector<double>& linear, const QuadraticMap& quad, double lo,
                      double hi, double start_energy) {
  const std::size_t n = linear.size();
  const Neighbors adj(n, quad);

  double scale = 1.0;
  for (double v : linear) scale += std::abs(v);
  for (const auto& [k, v] : quad) scale += std::abs(v);
  // Incremental energies drift; keep anything near the running best and
  // settle ties with exact re-evaluation afterwards.
  const double track_tol = 1e-9 * scale;
  constexpr std::size_t kCandidateLimit = 4 * kMinimizerCap;

  std::vector<double> value(n, lo);
  std::vector<double> local(linear);  // h_i + sum_j W_ij v_j
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = adj.start[i]; p < adj.start[i + 1]; ++p) local[i] += adj.weight[p] * lo;
  }

  Enumeration out;
  double energy = start_energy;
  double best = energy;
  std::uint64_t mask = 0;
  out.candidates.push_back(0);

  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < total; ++k) {
    const auto i = static_cast<std::size_t>(std::countr_zero(k));
    const double delta_v = value[i] == lo ? hi - lo : lo - hi;
    energy += delta_v * local[i];
    value[i] += delta_v;
    mask ^= std::uint64_t{1} << i;
    for (std::size_t p = adj.start[i]; p < adj.start[i + 1]; ++p) {
      local[adj.index[p]] += adj.weight[p] * delta_v;
    }

    if (energy < best - track_tol) {
      best = energy;
      out.best_mask = mask;
      out.candidates.clear();
      out.candidates.push_back(mask);
    } else if (energy <= best + track_tol) {
      if (energy < best) {
        best = energy;
        out.best_mask = mask;
      }
      if (out.candidates.size() < kCandidateLimit) {
        out.candidates.push_back(mask);
      } else {
        out.truncated = true;
      }
    }
  }
  if (std::find(out.candidates.begin(), out.candidates.end(), out.best_mask) ==
      out.candidates.end()) {
    out.candidates.push_back(out.best_mask);
  }
  return out;
}

State mask_to_state(std::uint64_t mask, std::size_t n, StateKind kind) {
  State s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool set = (mask >> i) & 1U;
    s[i] = kind == StateKind::binary ? (set ? 1 : 0) : (set ? 1 : -1);
  }
  return s;
}

template <typename Model, typename EnergyFn>
SolveResult finish_exhaustive(const Model& model, const Enumeration& en, StateKind kind,
                              EnergyFn energy_of) {
  const std::size_t n = model.n();
  std::vector<std::pair<double, std::uint64_t>> scored;
  scored.reserve(en.candidates.size());
  for (auto mask : en.candidates) {
    scored.emplace_back(energy_of(mask_to_state(mask, n, kind)) + model.offset(), mask);
  }
  double best = std::numeric_limits<double>::infinity();
  std::uint64_t best_mask = 0;
  for (const auto& [e, mask] : scored) {
    if (e < best || (e == best && mask < best_mask)) {
      best = e;
      best_mask = mask;
    }
  }
  std::vector<std::uint64_t> tied;
  for (const auto& [e, mask] : scored) {
    if (e <= best + kTieTolerance) tied.push_back(mask);
  }
  std::sort(tied.begin(), tied.end());

  SolveResult r;
  r.kind = kind;
  r.backend = Backend::exhaustive;
  r.best_state = mask_to_state(best_mask, n, kind);
  r.best_energy = best;
  r.minimizers_truncated = en.truncated || tied.size() > kMinimizerCap;
  if (tied.size() > kMinimizerCap) tied.resize(kMinimizerCap);
  for (auto mask : tied) r.minimizers.push_back(mask_to_state(mask, n, kind));
  r.reads.push_back({r.best_state, best, best});
  return r;
}

void check_cap(std::size_t n, std::size_t cap_n) {
  if (n > cap_n || n > 62) {
    throw SizeError("exhaustive search over n = " + std::to_string(n) +
                    " variables exceeds the cap of " + std::to_string(std::min<std::size_t>(cap_n, 62)) +
                    "; use a heuristic backend (sa or local)");
  }
}

}  // namespace

SolveResult solve_exhaustive(const QuboModel& model, std::size_t cap_n) {
  check_cap(model.n(), cap_n);
  const auto en = enumerate(model.lin(), model.quad(), 0.0, 1.0, 0.0);
  return finish_exhaustive(model, en, StateKind::binary, [&](const State& s) {
    return qubo_energy(model, BinarySignal(std::vector<std::uint8_t>(s.begin(), s.end())));
  });
}

SolveResult solve_exhaustive(const IsingModel& model, std::size_t cap_n) {
  check_cap(model.n(), cap_n);
  const SpinVector all_down(model.n(), -1);
  const auto en = enumerate(model.field(), model.coupling(), -1.0, 1.0,
                            ising_energy(model, all_down));
  return finish_exhaustive(model, en, StateKind::spin,
                           [&](const State& s) { return ising_energy(model, s); });
}

namespace {

SpinVector random_spins(std::size_t n, Engine& rng) {
  SpinVector z(n);
  std::bernoulli_distribution coin(0.5);
  for (auto& v : z) v = coin(rng) ? 1 : -1;
  return z;
}

std::vector<double> local_fields(const IsingModel& model, const Neighbors& adj,
                                 const SpinVector& z) {
  std::vector<double> g(model.field());
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t p = adj.start[i]; p < adj.start[i + 1]; ++p) {
      g[i] += adj.weight[p] * z[adj.index[p]];
    }
  }
  return g;
}

void flip(SpinVector& z, std::vector<double>& g, const Neighbors& adj, std::size_t i) {
  const double dz = -2.0 * z[i];
  z[i] = static_cast<std::int8_t>(-z[i]);
  for (std::size_t p = adj.start[i]; p < adj.start[i + 1]; ++p) {
    g[adj.index[p]] += adj.weight[p] * dz;
  }
}

SolveResult collect(std::vector<Read> reads, Backend backend, std::uint64_t seed) {
  SolveResult r;
  r.kind = StateKind::spin;
  r.backend = backend;
  r.seed = seed;
  std::size_t best = 0;
  for (std::size_t k = 1; k < reads.size(); ++k) {
    if (reads[k].energy < reads[best].energy) best = k;
  }
  r.best_state = reads[best].state;
  r.best_energy = reads[best].energy;
  r.reads = std::move(reads);
  return r;
}

}  // namespace

SolveResult solve_sa(const IsingModel& model, const AnnealSchedule& sched, std::uint64_t seed) {
  sched.validate();
  const std::size_t n = model.n();
  if (n < 1) throw DimensionError("solve_sa needs at least one variable");
  const Neighbors adj(n, model.coupling());

  std::vector<double> betas(sched.sweeps);
  for (std::size_t k = 0; k < sched.sweeps; ++k) {
    const double frac =
        sched.sweeps == 1 ? 1.0 : static_cast<double>(k) / static_cast<double>(sched.sweeps - 1);
    betas[k] = sched.beta_initial * std::pow(sched.beta_final / sched.beta_initial, frac);
  }

  std::vector<Read> reads;
  reads.reserve(sched.reads);
  for (std::size_t read = 0; read < sched.reads; ++read) {
    Engine rng(derive_seed(seed, read));
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    SpinVector z = random_spins(n, rng);
    const SpinVector initial = z;
    const double initial_energy = ising_energy(model, z) + model.offset();
    auto g = local_fields(model, adj, z);

    double energy = initial_energy;
    double best_energy = energy;
    SpinVector best = z;
    for (double beta : betas) {
      for (std::size_t i = 0; i < n; ++i) {
        const double delta = -2.0 * z[i] * g[i];
        if (delta <= 0.0 || unif(rng) < std::exp(-beta * delta)) {
          flip(z, g, adj, i);
          energy += delta;
          if (energy < best_energy) {
            best_energy = energy;
            best = z;
          }
        }
      }
    }
    double exact = ising_energy(model, best) + model.offset();
    if (exact > initial_energy) {
      best = initial;
      exact = initial_energy;
    }
    reads.push_back({std::move(best), exact, initial_energy});
  }
  return collect(std::move(reads), Backend::sa, seed);
}

SolveResult solve_local(const IsingModel& model, std::size_t starts, std::uint64_t seed) {
  const std::size_t n = model.n();
  if (n < 1) throw DimensionError("solve_local needs at least one variable");
  if (starts < 1) throw DomainError("solve_local needs at least one start");
  const Neighbors adj(n, model.coupling());
  const double threshold = 1e-13 * (1.0 + model.max_abs_coefficient());

  std::vector<Read> reads;
  reads.reserve(starts);
  for (std::size_t start = 0; start < starts; ++start) {
    Engine rng(derive_seed(seed, start));
    SpinVector z = random_spins(n, rng);
    const double initial_energy = ising_energy(model, z) + model.offset();
    auto g = local_fields(model, adj, z);
    for (;;) {
      std::size_t pick = n;
      double best_delta = -threshold;
      for (std::size_t i = 0; i < n; ++i) {
        const double delta = -2.0 * z[i] * g[i];
        if (delta < best_delta) {
          best_delta = delta;
          pick = i;
        }
      }
      if (pick == n) break;
      flip(z, g, adj, pick);
    }
    const double e = ising_energy(model, z) + model.offset();
    reads.push_back({std::move(z), e, initial_energy});
  }
  return collect(std::move(reads), Backend::local, seed);
}

SolveResult solve_ising(const IsingModel& model, const SolverConfig& config, std::uint64_t seed) {
  switch (config.backend) {
    case Backend::exhaustive: {
      auto r = solve_exhaustive(model, config.cap_n);
      r.seed = seed;
      return r;
    }
    case Backend::sa:
      return solve_sa(model, config.schedule.value_or(AnnealSchedule::defaults_for(model)), seed);
    case Backend::local:
      return solve_local(model, config.starts, seed);
  }
  throw DomainError("unknown backend");
}

SolveResult solve_qubo(const QuboModel& model, const SolverConfig& config, std::uint64_t seed) {
  if (config.backend == Backend::exhaustive) {
    auto r = solve_exhaustive(model, config.cap_n);
    r.seed = seed;
    return r;
  }
  auto r = solve_ising(qubo_to_ising(model), config, seed);
  auto to_binary = [&](State& s) {
    for (auto& v : s) v = v > 0 ? 1 : 0;
    return qubo_energy(model, BinarySignal(std::vector<std::uint8_t>(s.begin(), s.end()))) +
           model.offset();
  };
  r.kind = StateKind::binary;
  for (auto& read : r.reads) read.energy = to_binary(read.state);
  std::size_t best = 0;
  for (std::size_t k = 1; k < r.reads.size(); ++k) {
    if (r.reads[k].energy < r.reads[best].energy) best = k;
  }
  r.best_state = r.reads[best].state;
  r.best_energy = r.reads[best].energy;
  return r;
}

}  // namespace bqcs
