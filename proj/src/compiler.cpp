#include "meshc/compiler.hpp"

#include <algorithm>
#include <set>

namespace meshc {

namespace {

// Forward slot list: (layer, low mode), layer by layer, increasing low mode.
std::vector<std::pair<int, int>> forward_slots(const ChipLayout& layout) {
  std::vector<std::pair<int, int>> out;
  for (int l = 0; l < static_cast<int>(layout.layers.size()); ++l) {
    auto sorted = layout.layers[l];
    std::sort(sorted.begin(), sorted.end());
    for (int i : sorted) out.emplace_back(l, i);
  }
  return out;
}

struct WalkResult {
  bool sorted = false;
  BruhatState state;
  // forward slot index -> swap MZI, when the slot is active
  std::vector<std::optional<MZIParams>> emitted;
};

// Reverse walk over the slots of the first `walk_layers` layers; swaps
// whenever the Bruhat labels of the slot's wires are out of order.
WalkResult reverse_walk(const Mat& u,
                        const std::vector<std::pair<int, int>>& slots,
                        int walk_layers) {
  WalkResult w;
  w.state = bruhat_decompose(u);
  w.emitted.assign(slots.size(), std::nullopt);
  for (int idx = static_cast<int>(slots.size()) - 1; idx >= 0; --idx) {
    auto [layer, i] = slots[idx];
    if (layer >= walk_layers) continue;
    auto& images = w.state.p.images;
    if (images[i] > images[i + 1]) {
      SwapResult s = swap_rows_mzi(w.state, i);
      w.state = std::move(s.state);
      w.emitted[idx] = s.params;
    }
  }
  w.sorted = w.state.p.is_identity();
  return w;
}

// Rewrites the reversed circuit (input diagonal d, then per-slot adjoint
// MZIs in forward order) into standard-form per-slot settings, pushing the
// diagonal to the output.
AngleAssignment standardize(const std::vector<std::pair<int, int>>& slots,
                            const std::vector<std::optional<MZIParams>>& emitted,
                            Vec d, bool has_terminal_layer) {
  AngleAssignment a;
  for (size_t idx = 0; idx < slots.size(); ++idx) {
    auto [layer, i] = slots[idx];
    Eigen::Matrix2cd w;
    if (emitted[idx]) {
      w = mzi_matrix(*emitted[idx]).adjoint();
    } else {
      w.setIdentity();
    }
    w.col(0) *= d(i);
    w.col(1) *= d(i + 1);
    MZIWithPhases r = mzi_with_output_phases(w);
    d(i) = r.d1;
    d(i + 1) = r.d2;
    AngleAssignment::Slot slot;
    slot.layer = layer;
    slot.mode_low = i;
    slot.params = r.params;
    slot.active = emitted[idx].has_value();
    a.slots.push_back(slot);
    if (slot.active) a.used_depth = std::max(a.used_depth, layer + 1);
  }
  std::vector<double> phases(d.size());
  for (int i = 0; i < d.size(); ++i) phases[i] = std::arg(d(i));
  if (has_terminal_layer)
    a.terminal_phases = std::move(phases);
  else
    a.residual_phases = std::move(phases);
  return a;
}

CompileResult compile_prefix(const UnitaryMatrix& u, const ChipLayout& layout,
                             int walk_layers) {
  if (layout.modes != u.modes())
    throw DimensionError("compile: layout/unitary mode count mismatch");
  layout.validate();
  auto slots = forward_slots(layout);
  WalkResult w = reverse_walk(u.mat(), slots, walk_layers);
  CompileResult res;
  if (!w.sorted) {
    Infeasible inf;
    inf.residual = w.state.p;
    inf.first_blocking_layer = 0;
    res.infeasible = std::move(inf);
    return res;
  }
  Mat r = w.state.reconstruct();
  Mat diag = r.diagonal().asDiagonal();
  if ((r - diag).norm() > 1e-8 * std::sqrt(static_cast<double>(r.size())))
    throw NumericError("compile: sorted residual is not diagonal");
  Vec d = r.diagonal();
  for (int i = 0; i < d.size(); ++i) d(i) /= std::abs(d(i));
  res.assignment =
      standardize(slots, w.emitted, d, layout.terminal_phase_layer);
  return res;
}

}  // namespace

Circuit AngleAssignment::to_circuit(const ChipLayout& layout) const {
  Circuit c(layout.modes);
  for (const auto& s : slots)
    c.append(CircuitElement::mzi(s.mode_low, s.mode_low + 1, s.params,
                                 s.active));
  for (size_t i = 0; i < terminal_phases.size(); ++i)
    c.append(CircuitElement::phase(static_cast<int>(i), terminal_phases[i]));
  return c;
}

CompileResult compile(const UnitaryMatrix& u, const ChipLayout& layout) {
  return compile_prefix(u, layout, static_cast<int>(layout.layers.size()));
}

CompileResult shallowest_compile(const UnitaryMatrix& u,
                                 const ChipLayout& layout) {
  const int nl = static_cast<int>(layout.layers.size());
  for (int take = 0; take <= nl; ++take) {
    CompileResult r = compile_prefix(u, layout, take);
    if (r.ok()) return r;
    if (take == nl) return r;
  }
  return compile_prefix(u, layout, nl);
}

bool reachable_check(const ChipLayout& layout, const Permutation& sigma) {
  layout.validate();
  if (sigma.size() != layout.modes)
    throw DimensionError("reachable_check: size mismatch");
  std::set<std::vector<int>> reach;
  reach.insert(Permutation::identity(layout.modes).images);
  for (const auto& layer : layout.layers) {
    for (int i : layer) {
      std::set<std::vector<int>> next;
      for (const auto& s : reach) {
        next.insert(s);
        auto t = s;
        std::swap(t[i], t[i + 1]);
        next.insert(std::move(t));
      }
      reach = std::move(next);
    }
  }
  return reach.count(sigma.images) > 0;
}

}  // namespace meshc
