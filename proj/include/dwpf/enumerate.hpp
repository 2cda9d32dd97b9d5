#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <vector>

#include "dwpf/model.hpp"

namespace dwpf {

/// Spins on every bond of an L x L lattice, doubled units.
///
/// Rows are numbered bottom to top, columns left to right. `h(i, j)` is the
/// horizontal bond of row i entering column j (j = L is the east boundary);
/// `v(i, j)` is the vertical bond of column j entering row i from below
/// (i = L is the north boundary). Vertex (i, j) therefore has
/// west = h(i, j), east = h(i, j+1), south = v(i, j), north = v(i+1, j).
struct LatticeConfig {
  int k = 1;
  int L = 1;
  Eigen::MatrixXi h;  // L x (L+1)
  Eigen::MatrixXi v;  // (L+1) x L

  VertexSpins vertex(int i, int j) const { return {h(i, j), v(i, j), h(i, j + 1), v(i + 1, j)}; }

  /// DW boundary (west +k, east -k, south -k, north +k) and conservation everywhere.
  bool is_valid() const;
  bool operator==(const LatticeConfig& o) const { return k == o.k && L == o.L && h == o.h && v == o.v; }
};

/// L x L integer matrix, entries in -k..k, row and column sums k, partial
/// sums from either end within [0, k].
struct ExtendedASM {
  int k = 1;
  Eigen::MatrixXi entries;

  bool is_valid() const;
  bool operator==(const ExtendedASM& o) const { return k == o.k && entries == o.entries; }
};

/// Guard against runaway searches: counts DFS nodes.
struct EnumerationBudget {
  std::uint64_t max_nodes = 50'000'000;
};

/// Visit every DW configuration exactly once, row by row. Returning false
/// from the visitor stops the walk.
void for_each_config(int k, int L, const std::function<bool(const LatticeConfig&)>& visit,
                     EnumerationBudget budget = {});

std::vector<LatticeConfig> enumerate_configs(int k, int L, EnumerationBudget budget = {});

std::uint64_t count_configs(int k, int L, EnumerationBudget budget = {});

/// entry(i, j) = (west - east) / 2 at vertex (i, j).
ExtendedASM asm_of_config(const LatticeConfig& c);

/// Inverse of asm_of_config: bonds rebuilt from partial row/column sums.
LatticeConfig config_of_asm(const ExtendedASM& a);

/// Weighted sum over every DW configuration with vertex (i, j) evaluated at
/// u = -x_i + y_j. Computed row by row over the vertical-bond frontier;
/// each row is walked depth-first with conservation pruning.
template <typename Real>
Complex<Real> brute_force_pf(const Bracket<Real>& br, int k, const Rapidities& xs, const Rapidities& ys,
                             WeightModel model, EnumerationBudget budget = {});

cdouble brute_force_pf(const BracketParams& p, int k, const Rapidities& xs, const Rapidities& ys,
                       WeightModel model, EnumerationBudget budget = {});

/// Weight model the CLI and verifier use by default for level k.
inline WeightModel default_weight_model(int k) { return k == 1 ? WeightModel::six_vertex : WeightModel::fused; }

}  // namespace dwpf
