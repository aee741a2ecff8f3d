#pragma once

#include <memory>
#include <vector>

#include "meshc/core.hpp"

namespace meshc {

class Circuit;

/// One placed optical element. `kind` selects which fields are meaningful.
struct CircuitElement {
  enum class Kind { MZI, PhaseShifter, Coupling, ChipBlock };

  Kind kind = Kind::MZI;

  // MZI: acts on modes (mode_low, mode_high); long-range MZIs are allowed
  // (mode_high need not be mode_low + 1). `reversed` marks an element whose
  // matrix is the adjoint of mzi_matrix(params), as produced by inverse().
  int mode_low = 0;
  int mode_high = 1;
  MZIParams params;
  bool active = true;
  bool reversed = false;

  // PhaseShifter: mode = mode_low, angle = params.phi.

  // Coupling: perm[i] = destination mode of mode i.
  std::vector<int> perm;

  // ChipBlock: block_modes lists the global modes the nested circuit acts on.
  std::vector<int> block_modes;
  std::shared_ptr<Circuit> block;

  static CircuitElement mzi(int lo, int hi, MZIParams p, bool active = true,
                            bool reversed = false);
  static CircuitElement phase(int mode, double phi);
  static CircuitElement coupling(std::vector<int> perm);
  static CircuitElement chip_block(std::vector<int> modes, Circuit inner);

  /// Matrix of the element on its own modes (2x2 for MZI, full size for
  /// couplings / blocks).
  Mat local_matrix() const;
};

/// Ordered sequence of elements on a fixed number of modes. Elements are
/// applied in sequence order; evaluate() multiplies later elements on the
/// left.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int modes) : modes_(modes) {}

  int modes() const { return modes_; }
  const std::vector<CircuitElement>& elements() const { return elements_; }
  void append(CircuitElement e);

  Mat evaluate() const;
  int mzi_depth() const;
  int mzi_count() const;
  int active_mzi_count() const;

  /// Reversed element order with every element replaced by its adjoint.
  Circuit inverse() const;

 private:
  int modes_ = 0;
  std::vector<CircuitElement> elements_;
};

/// Static chip description: layers of disjoint adjacent mode pairs.
struct ChipLayout {
  int modes = 0;
  // layers[l] = sorted list of low mode indices i, standing for pairs
  // (i, i+1); pairs within a layer are disjoint.
  std::vector<std::vector<int>> layers;
  bool terminal_phase_layer = false;

  int slot_count() const;
  void validate() const;
};

/// Rewrites a circuit of reversed MZIs, phase shifters and couplings into an
/// equivalent standard-form circuit: forward MZIs at the same slots followed
/// by one terminal phase-shifter layer. Evaluation is preserved.
Circuit propagate_phases(const Circuit& c);

}  // namespace meshc
