#pragma once

#include <optional>
#include <vector>

#include "meshc/bruhat.hpp"
#include "meshc/circuit.hpp"

namespace meshc {

/// Angles for every slot of a chip layout, in forward slot order (layer by
/// layer, increasing lower mode within a layer).
struct AngleAssignment {
  struct Slot {
    int layer = 0;
    int mode_low = 0;
    MZIParams params;
    bool active = false;
  };

  std::vector<Slot> slots;
  std::vector<double> terminal_phases;  // empty without a terminal layer
  // When the layout has no terminal phase layer, the target is realized only
  // up to these left-over output phases: diag(exp(i*residual)) * circuit = u.
  std::vector<double> residual_phases;
  int used_depth = 0;

  /// The physical circuit: all slots as MZI elements plus the terminal
  /// phase layer when present.
  Circuit to_circuit(const ChipLayout& layout) const;
};

struct Infeasible {
  Permutation residual;     // unsorted Bruhat labels after the full walk
  int first_blocking_layer = 0;  // forward layer index nearest the input
};

struct CompileResult {
  std::optional<AngleAssignment> assignment;
  std::optional<Infeasible> infeasible;

  bool ok() const { return assignment.has_value(); }
};

/// Theorem-1 compiler: decide implementability of u on the layout and
/// compute angles for every slot.
CompileResult compile(const UnitaryMatrix& u, const ChipLayout& layout);

/// Minimal prefix of layers sufficient to implement u; remaining slots are
/// set to inactive (diagonal) settings.
CompileResult shallowest_compile(const UnitaryMatrix& u,
                                 const ChipLayout& layout);

/// True iff sigma is reachable by some swap/no-swap setting of the layout's
/// mixing network (exhaustive set enumeration).
bool reachable_check(const ChipLayout& layout, const Permutation& sigma);

}  // namespace meshc
