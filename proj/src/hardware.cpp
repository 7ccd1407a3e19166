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

#include "bqcs/hardware.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bqcs/error.hpp"

namespace bqcs {

NormalizedModel normalize(const IsingModel& model) {
  double max_field = 0.0;
  for (double v : model.field()) max_field = std::max(max_field, std::abs(v));
  double max_coupling = 0.0;
  for (const auto& [k, v] : model.coupling()) max_coupling = std::max(max_coupling, std::abs(v));

  const double scale = std::max({max_field / kFieldRange, max_coupling / kCouplingRange, 1.0});
  if (scale == 1.0) return {model, 1.0};

  // Division can land one ulp outside the range; clamp it back.
  std::vector<double> field(model.n());
  for (std::size_t i = 0; i < model.n(); ++i) {
    field[i] = std::clamp(model.field()[i] / scale, -kFieldRange, kFieldRange);
  }
  QuadraticMap coupling;
  for (const auto& [k, v] : model.coupling()) {
    coupling.emplace_hint(coupling.end(), k, std::clamp(v / scale, -kCouplingRange, kCouplingRange));
  }
  return {IsingModel(std::move(field), std::move(coupling), model.offset() / scale), scale};
}

namespace {

double snap(double v, double range, double levels) {
  return range * std::round(v / range * levels) / levels;
}

}  // namespace

IsingModel quantize(const IsingModel& model, int bits) {
  if (bits < 2 || bits > 8) throw RangeError("bits must be in [2, 8]");
  const double levels = std::ldexp(1.0, bits - 1) - 1.0;
  constexpr double kSlack = 1e-12;

  std::vector<double> field(model.n());
  for (std::size_t i = 0; i < model.n(); ++i) {
    const double v = model.field()[i];
    if (std::abs(v) > kFieldRange * (1.0 + kSlack)) {
      throw RangeError("field " + std::to_string(i) + " = " + format_real(v) +
                       " outside [-2, 2]; normalize first");
    }
    field[i] = snap(v, kFieldRange, levels);
  }
  QuadraticMap coupling;
  for (const auto& [k, v] : model.coupling()) {
    if (std::abs(v) > kCouplingRange * (1.0 + kSlack)) {
      throw RangeError("coupling (" + std::to_string(k.first) + ", " + std::to_string(k.second) +
                       ") = " + format_real(v) + " outside [-1, 1]; normalize first");
    }
    coupling.emplace_hint(coupling.end(), k, snap(v, kCouplingRange, levels));
  }
  return {std::move(field), std::move(coupling), model.offset()};
}

HardwareGraph::HardwareGraph(std::size_t cells_rows, std::size_t cells_cols, std::size_t t)
    : rows_(cells_rows), cols_(cells_cols), t_(t) {
  if (rows_ < 1 || cols_ < 1 || t_ < 1) {
    throw DimensionError("chimera dimensions must be positive");
  }
  auto add = [&](std::size_t a, std::size_t b) { edges_.emplace(std::min(a, b), std::max(a, b)); };
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      for (std::size_t i = 0; i < t_; ++i) {
        const auto left = node_id({r, c, Side::left, i});
        const auto right = node_id({r, c, Side::right, i});
        for (std::size_t j = 0; j < t_; ++j) add(left, node_id({r, c, Side::right, j}));
        if (c + 1 < cols_) add(right, node_id({r, c + 1, Side::right, i}));
        if (r + 1 < rows_) add(left, node_id({r + 1, c, Side::left, i}));
      }
    }
  }
  adjacency_.resize(node_count());
  for (const auto& [a, b] : edges_) {
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
  }
}

std::size_t HardwareGraph::node_id(const ChimeraNode& n) const {
  return ((n.row * cols_ + n.col) * 2 + static_cast<std::size_t>(n.side)) * t_ + n.k;
}

ChimeraNode HardwareGraph::node(std::size_t id) const {
  ChimeraNode n{};
  n.k = id % t_;
  id /= t_;
  n.side = static_cast<Side>(id % 2);
  id /= 2;
  n.col = id % cols_;
  n.row = id / cols_;
  return n;
}

bool HardwareGraph::has_edge(std::size_t a, std::size_t b) const {
  return edges_.count({std::min(a, b), std::max(a, b)}) > 0;
}

HardwareGraph chimera(std::size_t cells_rows, std::size_t cells_cols, std::size_t t) {
  return HardwareGraph(cells_rows, cells_cols, t);
}

void validate_embedding(const EmbeddingMap& emb, const HardwareGraph& g) {
  std::vector<long> owner(g.node_count(), -1);
  for (std::size_t c = 0; c < emb.chains.size(); ++c) {
    const auto& chain = emb.chains[c];
    if (chain.empty()) throw EmbeddingError("chain " + std::to_string(c) + " is empty");
    for (auto node : chain) {
      if (node >= g.node_count()) {
        throw EmbeddingError("chain " + std::to_string(c) + " names node " +
                             std::to_string(node) + " outside the graph");
      }
      if (owner[node] != -1) {
        throw EmbeddingError("chains are not disjoint: node " + std::to_string(node) +
                             " appears in chains " + std::to_string(owner[node]) + " and " +
                             std::to_string(c));
      }
      owner[node] = static_cast<long>(c);
    }
  }
  for (std::size_t c = 0; c < emb.chains.size(); ++c) {
    const auto& chain = emb.chains[c];
    std::vector<std::size_t> stack{chain.front()};
    std::set<std::size_t> reached{chain.front()};
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      for (auto v : g.neighbors(u)) {
        if (owner[v] == static_cast<long>(c) && reached.insert(v).second) stack.push_back(v);
      }
    }
    if (reached.size() != chain.size()) {
      throw EmbeddingError("chain " + std::to_string(c) + " is not connected");
    }
  }
}

EmbeddingMap cell_clique_embedding(std::size_t k, const HardwareGraph& g) {
  if (g.cells_rows() != 1 || g.cells_cols() != 1) {
    throw DimensionError("cell_clique_embedding expects a single-cell graph");
  }
  if (k < 1 || k > g.t()) {
    throw CapacityError("a single cell with t = " + std::to_string(g.t()) +
                        " holds at most K_" + std::to_string(g.t()) + ", requested K_" +
                        std::to_string(k));
  }
  EmbeddingMap emb;
  for (std::size_t i = 0; i < k; ++i) {
    emb.chains.push_back({g.node_id({0, 0, Side::left, i}), g.node_id({0, 0, Side::right, i})});
  }
  return emb;
}

double auto_chain_strength(const IsingModel& model) {
  return 2.0 * std::max(model.max_abs_coefficient(), 1.0);
}

IsingModel embed(const IsingModel& model, const HardwareGraph& g, const EmbeddingMap& emb,
                 std::optional<double> chain_strength) {
  if (model.n() != emb.chains.size()) {
    throw EmbeddingError("model has " + std::to_string(model.n()) + " variables but embedding has " +
                         std::to_string(emb.chains.size()) + " chains");
  }
  validate_embedding(emb, g);
  const double sigma = chain_strength.value_or(auto_chain_strength(model));
  if (!(std::isfinite(sigma) && sigma > 0)) throw DomainError("chain strength must be > 0");

  std::vector<long> owner(g.node_count(), -1);
  for (std::size_t c = 0; c < emb.chains.size(); ++c) {
    for (auto node : emb.chains[c]) owner[node] = static_cast<long>(c);
  }

  // Physical edges grouped by the (logical) chain pair they join.
  std::map<Edge, std::vector<Edge>> between;
  std::vector<Edge> intra;
  for (const auto& e : g.edges()) {
    const long a = owner[e.first];
    const long b = owner[e.second];
    if (a < 0 || b < 0) continue;
    if (a == b) {
      intra.push_back(e);
    } else {
      const auto lo = static_cast<std::size_t>(std::min(a, b));
      const auto hi = static_cast<std::size_t>(std::max(a, b));
      between[{lo, hi}].push_back(e);
    }
  }

  std::vector<double> field(g.node_count(), 0.0);
  for (std::size_t c = 0; c < emb.chains.size(); ++c) {
    const double share = model.field()[c] / static_cast<double>(emb.chains[c].size());
    for (auto node : emb.chains[c]) field[node] = share;
  }

  QuadraticMap coupling;
  for (const auto& [key, v] : model.coupling()) {
    auto it = between.find(key);
    if (it == between.end()) {
      if (v == 0.0) continue;
      throw EmbeddingError("no physical edge joins chains " + std::to_string(key.first) + " and " +
                           std::to_string(key.second));
    }
    const double share = v / static_cast<double>(it->second.size());
    for (const auto& e : it->second) coupling[e] += share;
  }
  for (const auto& e : intra) coupling[e] -= sigma;

  const double offset = model.offset() + sigma * static_cast<double>(intra.size());
  return {std::move(field), std::move(coupling), offset};
}

Unembedded unembed(const SpinVector& physical, const EmbeddingMap& emb) {
  Unembedded out{SpinVector(emb.chains.size()), 0};
  for (std::size_t c = 0; c < emb.chains.size(); ++c) {
    long sum = 0;
    for (auto node : emb.chains[c]) {
      if (node >= physical.size()) {
        throw DimensionError("physical state too short for chain " + std::to_string(c));
      }
      const auto s = physical[node];
      if (s != 1 && s != -1) throw DomainError("physical spins must be -1 or +1");
      sum += s;
    }
    const auto len = static_cast<long>(emb.chains[c].size());
    out.spins[c] = sum > 0 ? 1 : -1;
    if (std::abs(sum) != len) ++out.broken_chains;
  }
  return out;
}

SpinVector spread_to_chains(const SpinVector& logical, const EmbeddingMap& emb,
                            std::size_t node_count, std::int8_t filler) {
  if (logical.size() != emb.chains.size()) throw DimensionError("logical state length mismatch");
  SpinVector physical(node_count, filler);
  for (std::size_t c = 0; c < emb.chains.size(); ++c) {
    for (auto node : emb.chains[c]) physical.at(node) = logical[c];
  }
  return physical;
}

std::string dump_embedding(const EmbeddingMap& emb) {
  nlohmann::json j;
  j["chains"] = emb.chains;
  return j.dump() + "\n";
}

EmbeddingMap parse_embedding(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("<document>", e.what());
  }
  if (!j.is_object() || !j.contains("chains")) throw ParseError("chains", "missing");
  const auto& chains = j["chains"];
  if (!chains.is_array()) throw ParseError("chains", "expected an array of arrays");
  EmbeddingMap emb;
  for (const auto& chain : chains) {
    if (!chain.is_array()) throw ParseError("chains", "expected an array of node ids");
    std::vector<std::size_t> nodes;
    for (const auto& node : chain) {
      if (!node.is_number_integer() || node.get<long long>() < 0) {
        throw ParseError("chains", "node ids must be nonnegative integers");
      }
      nodes.push_back(node.get<std::size_t>());
    }
    emb.chains.push_back(std::move(nodes));
  }
  return emb;
}

EmbeddingMap load_embedding(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_embedding(ss.str());
}

}  // namespace bqcs
