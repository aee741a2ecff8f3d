#pragma once

#include "meshc/bruhat.hpp"
#include "meshc/circuit.hpp"

namespace meshc {

/// One k-mode universal chip placed on a contiguous mode group within a
/// stage, with its synthesized internal mesh.
struct CoupledBlock {
  std::vector<int> modes;  // global mode indices, contiguous, size <= k
  Mat unitary;             // the block unitary applied to those rows
  Circuit circuit;         // Clements mesh of `unitary`
};

/// A coupling permutation followed by a layer of disjoint chip blocks.
struct CoupledStage {
  // Row-gather form: the coupling routes source mode images[i] to mode i.
  Permutation coupling;
  std::vector<CoupledBlock> blocks;
};

/// Coupled-chip implementation of an m x n isometry: the inverse of the
/// accumulated stage transform, times the output phase diagonal, carries
/// (I_n; 0) to the target.
struct CoupledCircuit {
  int modes = 0;
  int cols = 0;
  std::vector<CoupledStage> stages;
  // Phases of the diagonal the elimination leaves on the first `cols` rows.
  std::vector<double> phases;

  int stage_count() const { return static_cast<int>(stages.size()); }

  /// m x m unitary whose first `cols` columns reproduce the target.
  Mat evaluate() const;
};

/// Greedy label-sort / triangularize elimination over k-mode chips with free
/// inter-chip permutations. 2 <= k <= m. Pass synthesize_blocks = false to
/// skip the per-block Clements meshes when only the stage count is needed.
CoupledCircuit greedy_coupled(const Isometry& v, int k,
                              bool synthesize_blocks = true);

/// MZI-depth of the coupled design: stage_count * k.
int stage_depth_mzi(const CoupledCircuit& cc, int k);

/// Simplified k = 2 variant with long-range MZIs.
struct LongrangeResult {
  Circuit circuit;  // phases plus long-range MZIs; first cols columns = v
  int layer_count = 0;
};
LongrangeResult greedy_longrange(const Isometry& v);

}  // namespace meshc
