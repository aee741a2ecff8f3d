#include "meshc/coupled.hpp"

#include <algorithm>
#include <numeric>

#include "meshc/synthesis.hpp"

namespace meshc {

namespace {

// Label of each row: leftmost column with an entry above tol, or n for an
// all-zero row.
std::vector<int> row_labels(const Mat& v, double tol) {
  const int m = static_cast<int>(v.rows());
  const int n = static_cast<int>(v.cols());
  std::vector<int> lab(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(v(i, j)) > tol) {
        lab[i] = j;
        break;
      }
  return lab;
}

bool labels_done(const std::vector<int>& lab, int n) {
  for (size_t i = 0; i < lab.size(); ++i)
    if (lab[i] != std::min<int>(static_cast<int>(i), n)) return false;
  return true;
}

int zero_count(const Mat& v, double tol) {
  int z = 0;
  for (int i = 0; i < v.rows(); ++i)
    for (int j = 0; j < v.cols(); ++j)
      if (std::abs(v(i, j)) <= tol) ++z;
  return z;
}

}  // namespace

Mat CoupledCircuit::evaluate() const {
  Mat c = Mat::Identity(modes, modes);
  for (int i = 0; i < cols; ++i) c(i, i) = std::polar(1.0, phases[i]);
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
    for (const auto& b : it->blocks) {
      const int g = static_cast<int>(b.modes.size());
      Mat rows(g, modes);
      for (int r = 0; r < g; ++r) rows.row(r) = c.row(b.modes[r]);
      rows = b.unitary.adjoint() * rows;
      for (int r = 0; r < g; ++r) c.row(b.modes[r]) = rows.row(r);
    }
    // Inverse coupling: scatter row i back to its source images[i].
    Mat scattered(modes, modes);
    for (int i = 0; i < modes; ++i)
      scattered.row(it->coupling.images[i]) = c.row(i);
    c = std::move(scattered);
  }
  return c;
}

CoupledCircuit greedy_coupled(const Isometry& v, int k,
                              bool synthesize_blocks) {
  const int m = v.modes();
  const int n = v.cols();
  if (k < 2 || k > m) throw DimensionError("greedy_coupled: need 2 <= k <= m");
  Mat w = v.mat();
  const double tol = 1e-9 * w.norm();

  CoupledCircuit cc;
  cc.modes = m;
  cc.cols = n;
  int zeros = zero_count(w, tol);
  const int cap = m * n + 2;
  for (int it = 0; it < cap; ++it) {
    std::vector<int> lab = row_labels(w, tol);
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return lab[a] < lab[b]; });
    Mat sorted(m, n);
    std::vector<int> slab(m);
    for (int i = 0; i < m; ++i) {
      sorted.row(i) = w.row(order[i]);
      slab[i] = lab[order[i]];
    }
    w = std::move(sorted);
    if (labels_done(slab, n)) {
      cc.phases.resize(n);
      for (int i = 0; i < n; ++i) cc.phases[i] = std::arg(w(i, i));
      return cc;
    }
    // First pairing opportunity: smallest row with a duplicated label.
    int i_start = 0;
    for (int i = 0; i + 1 < m; ++i)
      if (slab[i] == slab[i + 1]) {
        i_start = i;
        break;
      }
    CoupledStage stage;
    stage.coupling.images = order;
    for (int lo = i_start; lo < m; lo += k) {
      const int hi = std::min(lo + k, m);
      int q = n;
      for (int i = lo; i < hi; ++i) q = std::min(q, slab[i]);
      if (q == n) continue;
      const int wcols = std::min(q + k, n) - q;
      Mat block = w.block(lo, q, hi - lo, wcols);
      Eigen::HouseholderQR<Mat> qr(block);
      Mat u = Mat(qr.householderQ()).adjoint();
      w.middleRows(lo, hi - lo) = u * w.middleRows(lo, hi - lo);
      CoupledBlock b;
      b.modes.resize(hi - lo);
      std::iota(b.modes.begin(), b.modes.end(), lo);
      b.unitary = u;
      if (synthesize_blocks) b.circuit = synth_clements(UnitaryMatrix(u));
      stage.blocks.push_back(std::move(b));
    }
    cc.stages.push_back(std::move(stage));
    int z = zero_count(w, tol);
    if (z < zeros)
      throw NumericError("greedy_coupled: zero count decreased");
    zeros = z;
  }
  throw NumericError("greedy_coupled: no convergence within the safety cap");
}

int stage_depth_mzi(const CoupledCircuit& cc, int k) {
  return cc.stage_count() * k;
}

LongrangeResult greedy_longrange(const Isometry& v) {
  const int m = v.modes();
  const int n = v.cols();
  Mat w = v.mat();
  const double tol = 1e-9 * w.norm();

  struct Op {
    int i, j;
    MZIParams params;
  };
  std::vector<std::vector<Op>> layers;
  const int cap = 10000;
  for (int it = 0; it < cap; ++it) {
    std::vector<int> lab = row_labels(w, tol);
    for (int i = 0; i < n; ++i) lab[i] = std::min(lab[i], i);
    bool done = true;
    for (int i = 0; i < m; ++i)
      if (lab[i] != std::min(i, n)) {
        done = false;
        break;
      }
    if (done) break;
    std::vector<Op> layer;
    for (int val = 0; val < n; ++val) {
      std::vector<int> rows;
      for (int i = 0; i < m; ++i)
        if (lab[i] == val) rows.push_back(i);
      for (size_t a = 0; a + 1 < rows.size(); a += 2) {
        int i = rows[a], j = rows[a + 1];
        MZIParams p = zeroing_angles(w(i, val), w(j, val));
        Eigen::Matrix2cd e = mzi_matrix(p);
        Mat pair(2, n);
        pair.row(0) = w.row(i);
        pair.row(1) = w.row(j);
        pair = e * pair;
        w.row(i) = pair.row(0);
        w.row(j) = pair.row(1);
        layer.push_back({i, j, p});
      }
    }
    if (layer.empty())
      throw NumericError("greedy_longrange: stuck without progress");
    layers.push_back(std::move(layer));
    if (it + 1 == cap)
      throw NumericError("greedy_longrange: no convergence");
  }

  LongrangeResult res;
  res.layer_count = static_cast<int>(layers.size());
  res.circuit = Circuit(m);
  for (int i = 0; i < n; ++i)
    res.circuit.append(CircuitElement::phase(i, std::arg(w(i, i))));
  for (auto lt = layers.rbegin(); lt != layers.rend(); ++lt)
    for (const auto& op : *lt)
      res.circuit.append(
          CircuitElement::mzi(op.i, op.j, op.params, true, /*reversed=*/true));
  return res;
}

}  // namespace meshc
