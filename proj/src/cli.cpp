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

#include "bqcs/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bqcs/diagnostics.hpp"
#include "bqcs/error.hpp"
#include "bqcs/hardware.hpp"
#include "bqcs/qubo_ising.hpp"
#include "bqcs/uncertainty.hpp"

namespace bqcs {

using json = nlohmann::json;

std::uint64_t trial_seed(std::uint64_t root, std::size_t cell_index, std::size_t trial_index) {
  return root ^ ((static_cast<std::uint64_t>(cell_index) << 40) +
                 static_cast<std::uint64_t>(trial_index));
}

std::vector<BenchRow> run_bench(const BenchGrid& grid) {
  if (grid.n < 1 || grid.trials < 1) throw DomainError("bench needs n >= 1 and trials >= 1");
  if (grid.m_values.empty() || grid.s_values.empty()) throw DomainError("empty m or s list");
  if (grid.check_uniqueness && grid.n > 20) {
    throw SizeError("uniqueness check needs n <= 20, got n = " + std::to_string(grid.n));
  }
  if (grid.solver.backend == Backend::exhaustive && grid.n > grid.solver.cap_n) {
    throw SizeError("exhaustive backend needs n <= " + std::to_string(grid.solver.cap_n));
  }

  std::vector<BenchRow> rows;
  std::size_t cell = 0;
  for (auto m : grid.m_values) {
    for (auto s : grid.s_values) {
      if (m < 1) throw DomainError("m values must be positive");
      if (s > grid.n) throw SparsityError("s = " + std::to_string(s) + " exceeds n");
      std::size_t discarded = 0;
      std::size_t counted = 0;
      std::size_t exact = 0;
      double f1_sum = 0.0;
      double residual_sum = 0.0;
      for (std::size_t t = 0; t < grid.trials; ++t) {
        const auto seed = trial_seed(grid.seed, cell, t);
        auto planted = gen_planted(m, grid.n, s, grid.dist, seed);
        const CSInstance inst =
            grid.lambda ? planted.instance.with_lambda(*grid.lambda) : planted.instance;
        if (grid.check_uniqueness && !verify_uniqueness(inst).unique) {
          ++discarded;
          continue;
        }
        const auto solved = solve_qubo(build_qubo(inst), grid.solver, seed);
        const BinarySignal x_hat(
            std::vector<std::uint8_t>(solved.best_state.begin(), solved.best_state.end()));
        const auto metrics = recovery_metrics(x_hat, planted.truth, inst);
        ++counted;
        exact += metrics.exact_match ? 1 : 0;
        f1_sum += metrics.support_f1;
        residual_sum += metrics.residual;
      }
      const double denom = static_cast<double>(counted);
      const double nan = std::nan("");
      rows.push_back({m, grid.n, s, grid.trials, discarded,
                      counted ? static_cast<double>(exact) / denom : nan,
                      counted ? f1_sum / denom : nan, counted ? residual_sum / denom : nan});
      ++cell;
    }
  }
  return rows;
}

namespace {

std::string g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "m,n,s,trials,discarded,exact_rate,support_f1_mean,residual_mean\n";
  for (const auto& r : rows) {
    out << r.m << ',' << r.n << ',' << r.s << ',' << r.trials << ',' << r.discarded << ','
        << g6(r.exact_rate) << ',' << g6(r.support_f1_mean) << ',' << g6(r.residual_mean) << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Command implementations

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ValidationError("cannot open " + path + " for writing");
  f << text;
  if (!f) throw ValidationError("failed writing " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

bool looks_like_model(const std::string& text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && text[pos] == '#';
}

json state_json(const State& s) {
  json a = json::array();
  for (auto v : s) a.push_back(static_cast<int>(v));
  return a;
}

json solve_json(const SolveResult& r) {
  json j;
  j["backend"] = to_string(r.backend);
  j["seed"] = r.seed;
  j["state_kind"] = r.kind == StateKind::binary ? "binary" : "spin";
  j["best_state"] = state_json(r.best_state);
  j["best_energy"] = r.best_energy;
  if (r.backend == Backend::exhaustive) {
    json mins = json::array();
    for (const auto& s : r.minimizers) mins.push_back(state_json(s));
    j["minimizers"] = std::move(mins);
    j["minimizers_truncated"] = r.minimizers_truncated;
  }
  json reads = json::array();
  for (const auto& read : r.reads) {
    reads.push_back({{"state", state_json(read.state)}, {"energy", read.energy}});
  }
  j["reads"] = std::move(reads);
  return j;
}

json metrics_json(const RecoveryMetrics& m) {
  return {{"exact_match", m.exact_match},
          {"hamming", m.hamming},
          {"support_precision", m.support_precision},
          {"support_recall", m.support_recall},
          {"support_f1", m.support_f1},
          {"residual", m.residual}};
}

json vector_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

std::vector<std::size_t> parse_list(const std::string& text, const char* what) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::logic_error&) {
      throw ParseError(what, "bad list entry \"" + item + "\"");
    }
  }
  if (out.empty()) throw ParseError(what, "empty list");
  return out;
}

// Solver flags shared by solve, recover and bench.
struct SolverFlags {
  std::string backend = "exhaustive";
  std::optional<std::size_t> sweeps;
  std::optional<std::size_t> reads;
  std::optional<double> beta0;
  std::optional<double> beta1;
  std::size_t starts = 50;

  void attach(CLI::App* cmd) {
    cmd->add_option("--backend", backend, "exhaustive | sa | local")->capture_default_str();
    cmd->add_option("--sweeps", sweeps, "SA sweeps per read");
    cmd->add_option("--reads", reads, "SA independent reads");
    cmd->add_option("--beta0", beta0, "SA initial inverse temperature");
    cmd->add_option("--beta1", beta1, "SA final inverse temperature");
    cmd->add_option("--starts", starts, "local-descent random starts")->capture_default_str();
  }

  bool any_schedule_flag() const { return sweeps || reads || beta0 || beta1; }

  /// SA schedule defaults depend on the model; unset flags fall back to them.
  SolverConfig config(const IsingModel* model_for_defaults) const {
    SolverConfig c;
    c.backend = parse_backend(backend);
    c.starts = starts;
    if (c.backend == Backend::sa && any_schedule_flag()) {
      AnnealSchedule s = model_for_defaults ? AnnealSchedule::defaults_for(*model_for_defaults)
                                            : AnnealSchedule{};
      if (sweeps) s.sweeps = *sweeps;
      if (reads) s.reads = *reads;
      if (beta0) s.beta_initial = *beta0;
      if (beta1) s.beta_final = *beta1;
      s.validate();
      c.schedule = s;
    }
    return c;
  }
};

struct GenFlags {
  std::string kind = "cs";
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t s = 0;
  std::size_t r = 1;
  double gamma = 1e4;
  bool noise = false;
  std::string dist = "gaussian";
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen(const GenFlags& f, std::ostream& log) {
  auto make = [&]() -> InstanceDocument {
    if (f.kind == "cs") {
      auto p = gen_planted(f.m, f.n, f.s, parse_distribution(f.dist), f.seed);
      return {std::move(p.instance), GroundTruth{std::move(p.truth), Vector()}};
    }
    if (f.kind == "cs-uncertain") {
      if (f.dist != "gaussian") throw DomainError("cs-uncertain instances are gaussian only");
      auto p = gen_uncertain_planted(f.m, f.n, f.s, f.r, f.gamma, f.noise, f.seed);
      return {std::move(p.instance), GroundTruth{std::move(p.truth), std::move(p.true_d)}};
    }
    throw DomainError("unknown kind \"" + f.kind + "\"");
  };
  save_instance(make(), f.out);
  log << "wrote " << f.out << "\n";
  return kExitOk;
}

struct BuildFlags {
  std::string in;
  std::string form = "ising";
  bool normalize = false;
  std::optional<int> bits;
  std::string out;
};

CSInstance standard_view(const InstanceDocument& doc) {
  if (doc.is_uncertain()) {
    const auto& u = doc.uncertain();
    return {u.A0(), u.y(), u.lambda()};
  }
  return doc.standard();
}

int cmd_build(const BuildFlags& f, std::ostream& log) {
  const auto doc = load_instance(f.in);
  const auto qubo = build_qubo(standard_view(doc));
  if (f.form == "qubo") {
    if (f.normalize || f.bits) throw DomainError("--normalize/--bits apply to --form ising only");
    write_text(f.out, dump_model(qubo));
  } else if (f.form == "ising") {
    auto ising = qubo_to_ising(qubo);
    if (f.normalize) {
      auto nm = normalize(ising);
      log << "normalized by scale " << format_real(nm.scale) << "\n";
      ising = std::move(nm.model);
    }
    if (f.bits) ising = quantize(ising, *f.bits);
    write_text(f.out, dump_model(ising));
  } else {
    throw DomainError("unknown form \"" + f.form + "\"");
  }
  log << "wrote " << f.out << "\n";
  return kExitOk;
}

struct SolveFlags {
  std::string in;
  SolverFlags solver;
  std::optional<double> lambda;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_solve(const SolveFlags& f, std::ostream& log) {
  const auto text = read_text(f.in);
  json report;
  if (looks_like_model(text)) {
    if (f.lambda) throw DomainError("--lambda needs an instance document, not a model file");
    const auto model = parse_model(text);
    if (const auto* q = std::get_if<QuboModel>(&model)) {
      const auto ising = qubo_to_ising(*q);
      report = solve_json(solve_qubo(*q, f.solver.config(&ising), f.seed));
    } else {
      const auto& s = std::get<IsingModel>(model);
      report = solve_json(solve_ising(s, f.solver.config(&s), f.seed));
    }
  } else {
    const auto doc = parse_instance(text);
    CSInstance inst = standard_view(doc);
    if (f.lambda) inst = inst.with_lambda(*f.lambda);
    const auto qubo = build_qubo(inst);
    const auto ising = qubo_to_ising(qubo);
    const auto r = solve_qubo(qubo, f.solver.config(&ising), f.seed);
    report = solve_json(r);
    const BinarySignal x(std::vector<std::uint8_t>(r.best_state.begin(), r.best_state.end()));
    report["x"] = x.values();
    report["objective"] = objective(inst, x);
    if (doc.truth && !doc.is_uncertain()) {
      report["metrics"] = metrics_json(recovery_metrics(x, doc.truth->x, inst));
    }
  }
  write_text(f.out, report.dump(1) + "\n");
  log << "wrote " << f.out << "\n";
  return kExitOk;
}

struct RecoverFlags {
  std::string in;
  SolverFlags solver;
  double eps = 1e-6;
  std::size_t max_iters = 50;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_recover(const RecoverFlags& f, std::ostream& log) {
  const auto doc = load_instance(f.in);
  const auto& inst = doc.uncertain();
  RecoveryOptions opts;
  opts.solver = f.solver.config(nullptr);
  opts.eps = f.eps;
  opts.max_iters = f.max_iters;
  const auto trace = recover(inst, opts, f.seed);

  json j;
  j["terminated_by"] = to_string(trace.terminated_by);
  j["converged"] = trace.converged;
  json its = json::array();
  for (const auto& it : trace.iterations) {
    its.push_back({{"x", it.x.values()},
                   {"d", vector_json(it.d)},
                   {"objective", it.objective},
                   {"residual", it.residual},
                   {"x_accepted", it.x_accepted}});
  }
  j["iterations"] = std::move(its);
  if (doc.truth && !trace.iterations.empty()) {
    const auto& last = trace.iterations.back();
    const CSInstance at_d(assemble_A(inst, last.d), inst.y(), inst.lambda());
    j["metrics"] = metrics_json(recovery_metrics(last.x, doc.truth->x, at_d));
    if (doc.truth->d.size() == last.d.size()) j["d_error"] = (last.d - doc.truth->d).norm();
  }
  write_text(f.out, j.dump(1) + "\n");
  log << "wrote " << f.out << " (" << trace.iterations.size() << " iterations, "
      << to_string(trace.terminated_by) << ")\n";
  return kExitOk;
}

struct DiagnoseFlags {
  std::string in;
  bool coherence = false;
  std::optional<std::size_t> rip;
  bool uniqueness = false;
  std::string out;
};

int cmd_diagnose(const DiagnoseFlags& f, std::ostream& log) {
  const auto doc = load_instance(f.in);
  const CSInstance inst = standard_view(doc);
  const bool all = !f.coherence && !f.rip && !f.uniqueness;
  json j;
  if (f.coherence || all) {
    const double mu = mutual_coherence(inst.A());
    j["coherence"] = {{"mu", mu},
                      {"sparsity_bound", coherence_sparsity_bound(mu)},
                      {"note", "unique sparsest solution guaranteed when ||x||_0 < 0.5 (1 + 1/mu)"}};
  }
  if (f.rip) {
    j["rip"] = {{"order", *f.rip},
                {"delta", rip_constant(inst.A(), *f.rip)},
                {"advisory_bound_delta_2s", kRip2sAdvisoryBound}};
  }
  if (f.uniqueness || (all && inst.n() <= 20)) {
    const auto rep = verify_uniqueness(inst);
    json mins = json::array();
    for (const auto& x : rep.minimizers) mins.push_back(x.values());
    j["uniqueness"] = {{"unique", rep.unique}, {"minimum", rep.minimum}, {"minimizers", mins}};
  }
  write_text(f.out, j.dump(1) + "\n");
  log << "wrote " << f.out << "\n";
  return kExitOk;
}

struct EmbedFlags {
  std::string in;
  std::vector<std::size_t> cells{1, 1};
  std::size_t t = 4;
  std::string embedding;
  std::string chain_strength = "auto";
  std::string out;
};

int cmd_embed(const EmbedFlags& f, std::ostream& log) {
  const auto model = load_model(f.in);
  const auto* ising = std::get_if<IsingModel>(&model);
  if (!ising) throw DomainError("embed expects an Ising model file");
  const auto g = chimera(f.cells.at(0), f.cells.at(1), f.t);
  const EmbeddingMap emb =
      f.embedding.empty() ? cell_clique_embedding(ising->n(), g) : load_embedding(f.embedding);
  std::optional<double> sigma;
  if (f.chain_strength != "auto") {
    try {
      sigma = std::stod(f.chain_strength);
    } catch (const std::logic_error&) {
      throw ParseError("chain-strength", "expected a number or \"auto\"");
    }
  }
  write_text(f.out, dump_model(embed(*ising, g, emb, sigma)));
  log << "wrote " << f.out << "\n";
  return kExitOk;
}

struct BenchFlags {
  std::size_t n = 16;
  std::string m_list;
  std::string s_list;
  std::size_t trials = 10;
  std::string dist = "gaussian";
  SolverFlags solver;
  std::optional<double> lambda;
  bool skip_uniqueness = false;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_bench(const BenchFlags& f, std::ostream& log) {
  BenchGrid grid;
  grid.n = f.n;
  grid.m_values = parse_list(f.m_list, "m-list");
  grid.s_values = parse_list(f.s_list, "s-list");
  grid.trials = f.trials;
  grid.dist = parse_distribution(f.dist);
  grid.solver = f.solver.config(nullptr);
  grid.lambda = f.lambda;
  grid.check_uniqueness = !f.skip_uniqueness;
  grid.seed = f.seed;
  write_text(f.out, bench_csv(run_bench(grid)));
  log << "wrote " << f.out << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Binary compressive sensing via QUBO/Ising models", "bqcs"};
  app.require_subcommand(1);

  GenFlags gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate a planted instance");
  gen_cmd->add_option("--kind", gen.kind, "cs | cs-uncertain")->capture_default_str();
  gen_cmd->add_option("--m", gen.m, "measurements")->required();
  gen_cmd->add_option("--n", gen.n, "signal length")->required();
  gen_cmd->add_option("--s", gen.s, "sparsity")->required();
  gen_cmd->add_option("--r", gen.r, "perturbation matrices")->capture_default_str();
  gen_cmd->add_option("--gamma", gen.gamma, "noise / regularization precision")
      ->capture_default_str();
  gen_cmd->add_flag("--noise", gen.noise, "add N(0, I/gamma) measurement noise");
  gen_cmd->add_option("--dist", gen.dist, "gaussian | bernoulli")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
  gen_cmd->add_option("--out", gen.out)->required();

  BuildFlags build;
  auto* build_cmd = app.add_subcommand("build", "export the QUBO or Ising model of an instance");
  build_cmd->add_option("--in", build.in)->required();
  build_cmd->add_option("--form", build.form, "qubo | ising")->capture_default_str();
  build_cmd->add_flag("--normalize", build.normalize, "scale into hardware ranges");
  build_cmd->add_option("--bits", build.bits, "quantize to this many bits");
  build_cmd->add_option("--out", build.out)->required();

  SolveFlags solve;
  auto* solve_cmd = app.add_subcommand("solve", "minimize an instance or model file");
  solve_cmd->add_option("--in", solve.in)->required();
  solve.solver.attach(solve_cmd);
  solve_cmd->add_option("--lambda", solve.lambda, "override the instance penalty");
  solve_cmd->add_option("--seed", solve.seed)->capture_default_str();
  solve_cmd->add_option("--out", solve.out)->required();

  RecoverFlags rec;
  auto* rec_cmd = app.add_subcommand("recover", "alternating minimization under matrix uncertainty");
  rec_cmd->add_option("--in", rec.in)->required();
  rec.solver.attach(rec_cmd);
  rec_cmd->add_option("--eps", rec.eps)->capture_default_str();
  rec_cmd->add_option("--max-iters", rec.max_iters)->capture_default_str();
  rec_cmd->add_option("--seed", rec.seed)->capture_default_str();
  rec_cmd->add_option("--out", rec.out)->required();

  DiagnoseFlags diag;
  auto* diag_cmd = app.add_subcommand("diagnose", "coherence, RIP and uniqueness diagnostics");
  diag_cmd->add_option("--in", diag.in)->required();
  diag_cmd->add_flag("--coherence", diag.coherence);
  diag_cmd->add_option("--rip", diag.rip, "RIP order s");
  diag_cmd->add_flag("--uniqueness", diag.uniqueness);
  diag_cmd->add_option("--out", diag.out)->required();

  EmbedFlags emb;
  auto* emb_cmd = app.add_subcommand("embed", "embed an Ising model into a Chimera graph");
  emb_cmd->add_option("--in", emb.in)->required();
  emb_cmd->add_option("--cells", emb.cells, "cell rows and columns")->expected(2);
  emb_cmd->add_option("--t", emb.t)->capture_default_str();
  emb_cmd->add_option("--embedding", emb.embedding, "chains JSON file");
  emb_cmd->add_option("--chain-strength", emb.chain_strength)->capture_default_str();
  emb_cmd->add_option("--out", emb.out)->required();

  BenchFlags bench;
  auto* bench_cmd = app.add_subcommand("bench", "recovery-rate sweep over (m, s)");
  bench_cmd->add_option("--n", bench.n)->capture_default_str();
  bench_cmd->add_option("--m-list", bench.m_list, "comma-separated m values")->required();
  bench_cmd->add_option("--s-list", bench.s_list, "comma-separated s values")->required();
  bench_cmd->add_option("--trials", bench.trials)->capture_default_str();
  bench_cmd->add_option("--dist", bench.dist)->capture_default_str();
  bench.solver.attach(bench_cmd);
  bench_cmd->add_option("--lambda", bench.lambda, "fixed penalty instead of the default rule");
  bench_cmd->add_flag("--skip-uniqueness", bench.skip_uniqueness);
  bench_cmd->add_option("--seed", bench.seed)->capture_default_str();
  bench_cmd->add_option("--out", bench.out)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*gen_cmd) return cmd_gen(gen, err);
    if (*build_cmd) return cmd_build(build, err);
    if (*solve_cmd) return cmd_solve(solve, err);
    if (*rec_cmd) return cmd_recover(rec, err);
    if (*diag_cmd) return cmd_diagnose(diag, err);
    if (*emb_cmd) return cmd_embed(emb, err);
    if (*bench_cmd) return cmd_bench(bench, err);
  } catch (const SolverError& e) {
    err << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace bqcs
