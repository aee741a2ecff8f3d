#pragma once

#include <utility>
#include <vector>

#include "meshc/circuit.hpp"

namespace meshc {

/// Sequence of comparators (conditional swaps) on `wires` wires, in
/// application order. For the LNN networks built here every comparator is an
/// adjacent pair (i, i+1).
struct ComparatorNetwork {
  int wires = 0;
  std::vector<std::pair<int, int>> comparators;

  int comparator_count() const {
    return static_cast<int>(comparators.size());
  }

  /// Greedy earliest-start layering of the comparator sequence.
  std::vector<std::vector<int>> layers() const;
  int depth() const { return static_cast<int>(layers().size()); }

  /// Layered chip description; the layout layers are the network layers in
  /// REVERSE order so that the compiler's reverse slot walk applies the
  /// comparators in network order.
  ChipLayout to_layout(bool terminal_phase_layer) const;
};

/// Odd-even transposition (brick-wall) network: m alternating layers.
ComparatorNetwork full_sorting_network(int m);

/// Sequential single-label-sort network (Reck shape): depth 2m-3.
ComparatorNetwork reck_network(int m);

/// Network placing labels 0..n-1 sorted on the top wires for every input,
/// with exactly mn - n(n+1)/2 comparators.
ComparatorNetwork partial_sorting_network(int m, int n);

/// Diamond-shaped two-block sorter on 2p wires: p^2 comparators, depth 2p-1;
/// the smallest p labels end in the top block.
ComparatorNetwork diamond_block(int p);

/// True iff the network sorts labels 0..n-1 onto the top wires for every
/// input permutation (exhaustive; wires <= 10).
bool sorts_partially(const ComparatorNetwork& net, int n);

/// True iff the network moves the smallest wires/2 labels into the top half
/// (in any order) for every input permutation.
bool two_block_sorts(const ComparatorNetwork& net);

/// Chip-of-chips arrangement for universal computation on m modes with
/// blocks of size p (§-style coupled design): k(k-1)/2 two-block sorter
/// chips on 2p modes following a k-wire sorting network, then k final
/// p-mode universal chips.
struct BlockLayout {
  enum class Variant { Universal, Diamond };

  int modes = 0;
  int block_size = 0;  // p
  int block_count = 0;  // k = m / p
  Variant variant = Variant::Diamond;

  // Stages of the k-wire sorting network; each stage holds the low block
  // index b of a sorter chip spanning mode blocks b, b+1.
  std::vector<std::vector<int>> sorter_stages;

  int total_mzi_count() const;
  /// Structural slot-layer depth: every sorter stage costs the block's
  /// internal depth, the final universal chips cost p.
  int depth() const;
};

BlockLayout block_layout(int m, int p, BlockLayout::Variant variant);

}  // namespace meshc
