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
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bqcs/qubo_ising.hpp"

namespace bqcs {

/// Hardware coefficient ranges: fields in [-2, 2], couplings in [-1, 1].
inline constexpr double kFieldRange = 2.0;
inline constexpr double kCouplingRange = 1.0;

struct NormalizedModel {
  IsingModel model;
  double scale;  // original = scale * normalized
};

/// Divides every coefficient and the offset by
/// max(max|field| / 2, max|coupling|, 1).
NormalizedModel normalize(const IsingModel& model);

/// Rounds fields to multiples of 2 / (2^(bits-1) - 1) and couplings to multiples
/// of 1 / (2^(bits-1) - 1), ties away from zero. The offset is untouched.
/// Throws RangeError on unnormalized input.
IsingModel quantize(const IsingModel& model, int bits = 5);

enum class Side { left = 0, right = 1 };

struct ChimeraNode {
  std::size_t row;
  std::size_t col;
  Side side;
  std::size_t k;
};

/// Chimera lattice of cells_rows x cells_cols unit cells, each a complete
/// bipartite K_{t,t} between its left and right halves. Right-side nodes couple
/// to the same k in horizontally adjacent cells, left-side nodes to the same k
/// in vertically adjacent cells.
///
/// Node id = ((row * cells_cols + col) * 2 + side) * t + k.
class HardwareGraph {
 public:
  HardwareGraph(std::size_t cells_rows, std::size_t cells_cols, std::size_t t);

  std::size_t cells_rows() const { return rows_; }
  std::size_t cells_cols() const { return cols_; }
  std::size_t t() const { return t_; }
  std::size_t node_count() const { return rows_ * cols_ * 2 * t_; }
  std::size_t edge_count() const { return edges_.size(); }

  std::size_t node_id(const ChimeraNode& node) const;
  ChimeraNode node(std::size_t id) const;

  /// Canonical (lo, hi) pairs.
  const std::set<Edge>& edges() const { return edges_; }
  bool has_edge(std::size_t a, std::size_t b) const;
  const std::vector<std::size_t>& neighbors(std::size_t id) const { return adjacency_[id]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t t_;
  std::set<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

HardwareGraph chimera(std::size_t cells_rows, std::size_t cells_cols, std::size_t t = 4);

/// One chain of physical nodes per logical variable.
struct EmbeddingMap {
  std::vector<std::vector<std::size_t>> chains;
};

/// Throws EmbeddingError naming the first violated invariant: nonempty chains,
/// nodes inside the graph, disjoint chains, connected chains.
void validate_embedding(const EmbeddingMap& emb, const HardwareGraph& g);

/// Chain i = {left_i, right_i} of a single cell; embeds the complete graph K_k.
EmbeddingMap cell_clique_embedding(std::size_t k, const HardwareGraph& g);

/// Physical model over all g.node_count() nodes. Logical fields are split
/// evenly over chain nodes and couplings over the physical edges joining the
/// two chains. Every intra-chain edge gets -chain_strength, and the offset
/// grows by chain_strength per such edge so aligned chains reproduce logical
/// energies exactly. chain_strength defaults to 2 max(max|coefficient|, 1).
IsingModel embed(const IsingModel& model, const HardwareGraph& g, const EmbeddingMap& emb,
                 std::optional<double> chain_strength = std::nullopt);

double auto_chain_strength(const IsingModel& model);

struct Unembedded {
  SpinVector spins;
  std::size_t broken_chains;
};

/// Majority vote per chain; exact ties resolve to -1.
Unembedded unembed(const SpinVector& physical, const EmbeddingMap& emb);

/// Physical state with every chain set uniformly to the logical spin; nodes
/// outside all chains are set to `filler`.
SpinVector spread_to_chains(const SpinVector& logical, const EmbeddingMap& emb,
                            std::size_t node_count, std::int8_t filler = -1);

std::string dump_embedding(const EmbeddingMap& emb);
EmbeddingMap parse_embedding(const std::string& text);
EmbeddingMap load_embedding(const std::filesystem::path& path);

}  // namespace bqcs
