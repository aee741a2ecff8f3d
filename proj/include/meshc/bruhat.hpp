#pragma once

#include <vector>

#include "meshc/core.hpp"

namespace meshc {

/// Permutation stored as images[i] = j, meaning P[i, j] = 1.
struct Permutation {
  std::vector<int> images;

  int size() const { return static_cast<int>(images.size()); }
  bool is_identity() const;
  static Permutation identity(int m);
  Mat matrix() const;
};

/// Triple (u1, p, u2) with u1 upper triangular with unit diagonal, u2 upper
/// triangular with nonzero diagonal, tracking A = u1 P u2.
struct BruhatState {
  Mat u1;
  Permutation p;
  Mat u2;

  Mat reconstruct() const;
};

/// Bruhat decomposition by row elimination from the last row up, pivoting on
/// leftmost nonzeros. Throws NumericError for numerically singular input.
BruhatState bruhat_decompose(const Mat& a);

/// Bruhat state of E.A where E is a 2x2 invertible operator on rows i, i+1
/// of the tracked matrix A.
BruhatState apply_two_mode(const BruhatState& state, int i,
                           const Eigen::Matrix2cd& e);

/// The MZI that swaps rows i, i+1 of P, together with the updated state.
struct SwapResult {
  MZIParams params;
  BruhatState state;
};
SwapResult swap_rows_mzi(const BruhatState& state, int i);

}  // namespace meshc
